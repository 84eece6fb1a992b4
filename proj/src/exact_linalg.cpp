#include "ridpolar/exact_linalg.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace ridpolar {
namespace {

using i128 = __int128;

constexpr i128 kI64Max = std::numeric_limits<std::int64_t>::max();
constexpr i128 kI64Min = std::numeric_limits<std::int64_t>::min();

bool fits_i64(i128 v) { return v <= kI64Max && v >= kI64Min; }

// Returns nullopt when an intermediate leaves the 64-bit range.
std::optional<std::size_t> bareiss_rank_i64(std::vector<std::int64_t> a, std::size_t rows,
                                            std::size_t cols) {
  std::int64_t prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p * cols + c] == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(a[p * cols + j], a[r * cols + j]);
    const std::int64_t piv = a[r * cols + c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const std::int64_t lead = a[i * cols + c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        i128 num = static_cast<i128>(piv) * a[i * cols + j] -
                   static_cast<i128>(lead) * a[r * cols + j];
        i128 q = num / prev;
        if (!fits_i64(q)) return std::nullopt;
        a[i * cols + j] = static_cast<std::int64_t>(q);
      }
      a[i * cols + c] = 0;
    }
    prev = piv;
    ++r;
  }
  return r;
}

std::size_t bareiss_rank_big(std::vector<BigInt> a, std::size_t rows, std::size_t cols) {
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p * cols + c] == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(a[p * cols + j], a[r * cols + j]);
    const BigInt piv = a[r * cols + c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const BigInt lead = a[i * cols + c];
      for (std::size_t j = c + 1; j < cols; ++j)
        a[i * cols + j] = (piv * a[i * cols + j] - lead * a[r * cols + j]) / prev;
      a[i * cols + c] = 0;
    }
    prev = piv;
    ++r;
  }
  return r;
}

bool big_fits_i64(const BigInt& v) { return v <= kI64Max && v >= kI64Min; }

}  // namespace

std::size_t rank_int(const IntMatrix& m) {
  if (m.empty()) return 0;
  std::vector<std::int64_t> small;
  small.reserve(m.entries().size());
  for (const auto& v : m.entries()) {
    if (!big_fits_i64(v)) return bareiss_rank_big(m.entries(), m.rows(), m.cols());
    small.push_back(static_cast<std::int64_t>(v));
  }
  if (auto r = bareiss_rank_i64(std::move(small), m.rows(), m.cols())) return *r;
  return bareiss_rank_big(m.entries(), m.rows(), m.cols());
}

std::size_t rank_int(std::span<const std::int64_t> entries, std::size_t rows, std::size_t cols) {
  if (entries.size() != rows * cols)
    throw std::invalid_argument("rank_int: entry count does not match shape");
  if (rows == 0 || cols == 0) return 0;
  if (auto r = bareiss_rank_i64({entries.begin(), entries.end()}, rows, cols)) return *r;
  return bareiss_rank_big({entries.begin(), entries.end()}, rows, cols);
}

std::size_t rank_int(const IntMatrix& m, const ColumnSet& k) {
  if (k.empty()) return 0;
  return rank_int(select_columns(m, k));
}

std::size_t influence(const IntMatrix& a, const IntMatrix& b, const ColumnSet& k) {
  if (a.cols() != b.cols())
    throw std::invalid_argument("influence: A has " + std::to_string(a.cols()) +
                                " columns but B has " + std::to_string(b.cols()));
  k.check_within(a.cols());
  return rank_int(IntMatrix::stack(a, b), k) - rank_int(a, k);
}

std::size_t residual(const IntMatrix& a, const IntMatrix& b, const ColumnSet& k) {
  if (a.cols() != b.cols())
    throw std::invalid_argument("residual: A has " + std::to_string(a.cols()) +
                                " columns but B has " + std::to_string(b.cols()));
  k.check_within(a.cols());
  return rank_int(IntMatrix::stack(a, b), k) - rank_int(b, k);
}

// ---------------------------------------------------------------------------

IncrementalRank::IncrementalRank(std::size_t cols) : cols_(cols) {}

void IncrementalRank::clear() {
  big_ = false;
  pivots_.clear();
  small_.clear();
  big_rows_.clear();
}

void IncrementalRank::promote() {
  big_rows_.clear();
  for (const auto& row : small_) big_rows_.emplace_back(row.begin(), row.end());
  small_.clear();
  big_ = true;
}

bool IncrementalRank::add(std::span<const std::int64_t> row) {
  if (row.size() != cols_) throw std::invalid_argument("IncrementalRank: row length mismatch");
  if (big_) return add_big(std::vector<BigInt>(row.begin(), row.end()));
  std::vector<std::int64_t> r(row.begin(), row.end());
  // add_small leaves the basis untouched when it gives up on overflow.
  std::vector<std::int64_t> copy = r;
  try {
    return add_small(std::move(r));
  } catch (const std::overflow_error&) {
    promote();
    return add_big(std::vector<BigInt>(copy.begin(), copy.end()));
  }
}

bool IncrementalRank::add_small(std::vector<std::int64_t> r) {
  for (std::size_t b = 0; b < pivots_.size(); ++b) {
    const std::size_t p = pivots_[b];
    if (r[p] == 0) continue;
    const auto& basis = small_[b];
    const std::int64_t g = std::gcd(basis[p], r[p]);
    const std::int64_t fb = basis[p] / g;
    const std::int64_t fr = r[p] / g;
    std::int64_t content = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      i128 v = static_cast<i128>(fb) * r[j] - static_cast<i128>(fr) * basis[j];
      if (!fits_i64(v)) throw std::overflow_error("IncrementalRank");
      r[j] = static_cast<std::int64_t>(v);
      content = std::gcd(content, r[j]);
    }
    if (content > 1)
      for (auto& v : r) v /= content;
  }
  std::size_t pivot = 0;
  while (pivot < cols_ && r[pivot] == 0) ++pivot;
  if (pivot == cols_) return false;
  std::int64_t content = 0;
  for (auto v : r) content = std::gcd(content, v);
  if (content > 1)
    for (auto& v : r) v /= content;
  pivots_.push_back(pivot);
  small_.push_back(std::move(r));
  return true;
}

bool IncrementalRank::add_big(std::vector<BigInt> r) {
  for (std::size_t b = 0; b < pivots_.size(); ++b) {
    const std::size_t p = pivots_[b];
    if (r[p] == 0) continue;
    const auto& basis = big_rows_[b];
    const BigInt g = boost::multiprecision::gcd(basis[p], r[p]);
    const BigInt fb = basis[p] / g;
    const BigInt fr = r[p] / g;
    BigInt content = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      r[j] = fb * r[j] - fr * basis[j];
      content = boost::multiprecision::gcd(content, r[j]);
    }
    if (content > 1)
      for (auto& v : r) v /= content;
  }
  std::size_t pivot = 0;
  while (pivot < cols_ && r[pivot] == 0) ++pivot;
  if (pivot == cols_) return false;
  pivots_.push_back(pivot);
  big_rows_.push_back(std::move(r));
  return true;
}

// ---------------------------------------------------------------------------

std::size_t rank_mod_prime(std::span<const std::int64_t> entries, std::size_t rows,
                           std::size_t cols, std::uint64_t prime) {
  if (entries.size() != rows * cols)
    throw std::invalid_argument("rank_mod_prime: entry count does not match shape");
  if (prime < 2 || prime >= (1ULL << 32))
    throw std::invalid_argument("rank_mod_prime: prime must lie in [2, 2^32)");
  const auto p = static_cast<std::int64_t>(prime);
  std::vector<std::uint64_t> a(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i)
    a[i] = static_cast<std::uint64_t>(((entries[i] % p) + p) % p);

  auto inverse = [prime](std::uint64_t x) {
    std::uint64_t result = 1, base = x, e = prime - 2;
    while (e) {
      if (e & 1) result = result * base % prime;
      base = base * base % prime;
      e >>= 1;
    }
    return result;
  };

  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    const std::uint64_t inv = inverse(a[r * cols + c]);
    for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = a[r * cols + j] * inv % prime;
    const std::uint64_t* top = &a[r * cols];
    for (std::size_t i = r + 1; i < rows; ++i) {
      std::uint64_t* row = &a[i * cols];
      const std::uint64_t f = row[c];
      if (f == 0) continue;
      const std::uint64_t neg = prime - f;
      for (std::size_t j = c; j < cols; ++j) row[j] = (row[j] + neg * top[j]) % prime;
    }
    ++r;
  }
  return r;
}

// ---------------------------------------------------------------------------

CauchyBinetAudit cauchy_binet_audit(const Eigen::MatrixXd& phi) {
  const auto m = static_cast<std::size_t>(phi.rows());
  const auto n = static_cast<std::size_t>(phi.cols());
  if (m > n) throw std::invalid_argument("cauchy_binet_audit: more rows than columns");
  if (n > 20) throw std::invalid_argument("cauchy_binet_audit: n > 20 is too large to enumerate");
  if (m > 0) {
    const Eigen::MatrixXd gram = phi * phi.transpose();
    const double dev =
        (gram - Eigen::MatrixXd::Identity(phi.rows(), phi.rows())).cwiseAbs().maxCoeff();
    if (dev > 1e-9)
      throw std::invalid_argument("cauchy_binet_audit: rows are not orthonormal (deviation " +
                                  std::to_string(dev) + ")");
  }

  CauchyBinetAudit out;
  double subsets_total = 1.0;
  for (std::size_t i = 0; i < m; ++i)
    subsets_total = subsets_total * static_cast<double>(n - i) / static_cast<double>(i + 1);
  out.bound = 1.0 / std::sqrt(subsets_total);

  std::vector<std::size_t> pick(m);
  std::iota(pick.begin(), pick.end(), 0);
  Eigen::MatrixXd sub(phi.rows(), phi.rows());
  double compensation = 0.0;
  while (true) {
    for (std::size_t j = 0; j < m; ++j)
      sub.col(static_cast<Eigen::Index>(j)) = phi.col(static_cast<Eigen::Index>(pick[j]));
    const double det = m == 0 ? 1.0 : sub.partialPivLu().determinant();
    // Compensated sum over up to C(20,10) terms.
    const double y = det * det - compensation;
    const double t = out.sum_sq_dets + y;
    compensation = (t - out.sum_sq_dets) - y;
    out.sum_sq_dets = t;
    out.max_abs_det = std::max(out.max_abs_det, std::abs(det));
    ++out.subsets;

    std::size_t i = m;
    while (i > 0 && pick[i - 1] == n - m + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < m; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

}  // namespace ridpolar
