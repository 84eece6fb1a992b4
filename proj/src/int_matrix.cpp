#include "ridpolar/int_matrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ridpolar {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged rows");
    for (auto v : r) entries_.emplace_back(v);
  }
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                               std::size_t cols_if_empty) {
  IntMatrix m(rows.size(), rows.empty() ? cols_if_empty : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw std::invalid_argument("IntMatrix: ragged rows");
    for (std::size_t c = 0; c < m.cols_; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

IntMatrix IntMatrix::multiply(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("IntMatrix::multiply: dimension mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const BigInt& a = at(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) out.at(r, c) += a * rhs.at(k, c);
    }
  return out;
}

IntMatrix IntMatrix::stack(const IntMatrix& top, const IntMatrix& bottom) {
  if (top.cols_ != bottom.cols_)
    throw std::invalid_argument("IntMatrix::stack: column counts differ");
  IntMatrix out(top.rows_ + bottom.rows_, top.cols_);
  std::copy(top.entries_.begin(), top.entries_.end(), out.entries_.begin());
  std::copy(bottom.entries_.begin(), bottom.entries_.end(),
            out.entries_.begin() + static_cast<std::ptrdiff_t>(top.entries_.size()));
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << at(r, c);
    os << ']';
  }
  os << ']';
  return os.str();
}

ColumnSet::ColumnSet(std::initializer_list<std::size_t> indices)
    : ColumnSet(std::vector<std::size_t>(indices)) {}

ColumnSet::ColumnSet(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
    throw std::invalid_argument("ColumnSet: duplicate index");
  if (!indices_.empty() && indices_.front() == 0)
    throw std::invalid_argument("ColumnSet: indices are 1-based");
}

ColumnSet ColumnSet::all(std::size_t cols) {
  std::vector<std::size_t> idx(cols);
  for (std::size_t j = 0; j < cols; ++j) idx[j] = j + 1;
  return ColumnSet(std::move(idx));
}

ColumnSet ColumnSet::from_mask(std::uint64_t mask, std::size_t cols) {
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < cols; ++j)
    if ((mask >> j) & 1U) idx.push_back(j + 1);
  return ColumnSet(std::move(idx));
}

void ColumnSet::check_within(std::size_t cols) const {
  if (!indices_.empty() && indices_.back() > cols)
    throw std::invalid_argument("ColumnSet: index " + std::to_string(indices_.back()) +
                                " exceeds column count " + std::to_string(cols));
}

IntMatrix select_columns(const IntMatrix& m, const ColumnSet& k) {
  k.check_within(m.cols());
  IntMatrix out(m.rows(), k.size());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t j = 0; j < k.size(); ++j) out.at(r, j) = m.at(r, k.indices()[j] - 1);
  return out;
}

}  // namespace ridpolar
