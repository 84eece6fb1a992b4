#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ridpolar {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                             std::size_t cols_if_empty = 0);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  BigInt& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const BigInt& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const BigInt> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }
  const std::vector<BigInt>& entries() const { return entries_; }

  IntMatrix transpose() const;
  IntMatrix multiply(const IntMatrix& rhs) const;

  /// Rows of `top` followed by rows of `bottom`; column counts must agree.
  static IntMatrix stack(const IntMatrix& top, const IntMatrix& bottom);

  bool operator==(const IntMatrix& other) const = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> entries_;
};

/// Duplicate-free set of 1-based column positions, kept in ascending order.
class ColumnSet {
 public:
  ColumnSet() = default;
  ColumnSet(std::initializer_list<std::size_t> indices);
  explicit ColumnSet(std::vector<std::size_t> indices);

  static ColumnSet all(std::size_t cols);
  /// Positions of the set bits of `mask` (bit j means column j+1).
  static ColumnSet from_mask(std::uint64_t mask, std::size_t cols);

  std::span<const std::size_t> indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }

  /// Throws std::invalid_argument if any index exceeds `cols`.
  void check_within(std::size_t cols) const;

 private:
  std::vector<std::size_t> indices_;
};

/// Submatrix made of the columns in `k`, in ascending order.
IntMatrix select_columns(const IntMatrix& m, const ColumnSet& k);

}  // namespace ridpolar
