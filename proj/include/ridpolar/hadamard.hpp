#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ridpolar/int_matrix.hpp"

namespace ridpolar {

/// Level of a Sylvester Hadamard matrix: order N = 2^n.
struct HadamardOrder {
  unsigned n = 0;
  std::size_t size() const { return std::size_t{1} << n; }
};

inline constexpr unsigned kMaxMaterializedLevel = 12;

/// Row i (1-based) of the Sylvester matrix H_N: entry j is
/// (-1)^popcount((i-1) & (j-1)).
std::vector<std::int64_t> hadamard_row(unsigned n, std::size_t i);

/// Row order of the interleaved ("shuffled") Hadamard matrix, where rows
/// 2i-1 and 2i of the order-2N matrix are (h_i, h_i) and (h_i, -h_i).
/// Entry i (0-based position) is the 1-based Sylvester row equal to row i+1
/// of the shuffled matrix. This is the bit-reversal permutation.
std::vector<std::size_t> shuffled_row_order(unsigned n);

/// Full Sylvester matrix; only for n <= kMaxMaterializedLevel.
IntMatrix hadamard_matrix(unsigned n);

/// Shuffled matrix built directly by the interleaving recursion.
IntMatrix shuffled_hadamard_matrix(unsigned n);

/// In-place unnormalized Walsh-Hadamard transform in Sylvester order.
void fwht_inplace(std::span<double> x);

/// Returns H_N x. Throws if x.size() != 2^n.
std::vector<double> fwht_apply(unsigned n, std::span<const double> x);

}  // namespace ridpolar
