#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ridpolar/int_matrix.hpp"

namespace ridpolar {

/// Rank over the rationals by fraction-free (Bareiss) elimination.
///
/// Runs in checked 64-bit arithmetic and restarts in arbitrary precision on
/// the first intermediate that does not fit, so the result is always exact.
std::size_t rank_int(const IntMatrix& m);

/// Rank of a dense row-major matrix of 64-bit integers, exact.
std::size_t rank_int(std::span<const std::int64_t> entries, std::size_t rows, std::size_t cols);

/// Rank of the columns `k` of `m`. An empty set has rank 0.
std::size_t rank_int(const IntMatrix& m, const ColumnSet& k);

/// I(A;B)[K] = rank([A;B]_K) - rank(A_K).
std::size_t influence(const IntMatrix& a, const IntMatrix& b, const ColumnSet& k);

/// R(A;B)[K] = rank([A;B]_K) - rank(B_K).
std::size_t residual(const IntMatrix& a, const IntMatrix& b, const ColumnSet& k);

/// Exact row-echelon basis that grows one row at a time.
///
/// `add` reports whether the row raised the rank, i.e. the influence of that
/// row on everything added before it. Rows are kept primitive (content 1), so
/// entries stay small for sign matrices; the basis switches to arbitrary
/// precision if a 64-bit intermediate would overflow.
class IncrementalRank {
 public:
  explicit IncrementalRank(std::size_t cols);

  bool add(std::span<const std::int64_t> row);
  std::size_t rank() const { return pivots_.size(); }
  std::size_t cols() const { return cols_; }
  void clear();

 private:
  bool add_small(std::vector<std::int64_t> row);
  bool add_big(std::vector<BigInt> row);
  void promote();

  std::size_t cols_;
  bool big_ = false;
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<std::int64_t>> small_;
  std::vector<std::vector<BigInt>> big_rows_;
};

/// Rank over GF(p) of a dense row-major integer matrix.
///
/// Never exceeds the rational rank, and equals it unless p divides every
/// nonzero maximal minor. Used where exact elimination is too expensive.
std::size_t rank_mod_prime(std::span<const std::int64_t> entries, std::size_t rows,
                           std::size_t cols, std::uint64_t prime = 2147483647ULL);

struct CauchyBinetAudit {
  double sum_sq_dets = 0.0;
  double max_abs_det = 0.0;
  double bound = 0.0;  // 1 / sqrt(C(n, m))
  std::size_t subsets = 0;
};

/// Enumerates every m-column subset of an m x n matrix with orthonormal rows
/// and records the squared-determinant sum and the largest |det|.
/// Requires m <= n <= 20 and rows orthonormal to 1e-9.
CauchyBinetAudit cauchy_binet_audit(const Eigen::MatrixXd& phi);

}  // namespace ridpolar
