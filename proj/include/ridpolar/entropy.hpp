#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ridpolar/int_matrix.hpp"
#include "ridpolar/mixture.hpp"

namespace ridpolar {

/// [x]_q stored as the integers floor(q x); the real value is value / q.
struct QuantizedSample {
  std::int64_t q = 1;
  std::vector<std::int64_t> values;
};

QuantizedSample quantize(std::span<const double> x, std::int64_t q);

/// Plug-in entropy in bits of the empirical distribution.
double entropy_plugin(std::span<const std::int64_t> symbols);

struct RidEstimate {
  double slope = 0.0;
  std::vector<std::int64_t> q_list;
  std::vector<double> entropies;
  std::vector<double> ratios;  // H([X]_q) / log2 q
};

/// Draws n_samples from the mixture once and evaluates H([X]_q) on the
/// whole ladder; the slope is the least-squares fit of H against log2 q.
RidEstimate rid_empirical(const MixtureSpec& spec, const std::vector<std::int64_t>& q_list,
                          std::size_t n_samples, std::uint64_t seed);

struct PmfEntry {
  std::int64_t value = 0;
  Rational prob;
};

/// Parses "v:p,v:p,..." with p either a fraction a/b or a decimal.
std::vector<PmfEntry> pmf_from_string(const std::string& text);
Rational parse_rational(const std::string& text);
double entropy_bits(const std::vector<PmfEntry>& pmf);

/// H(Z_i | Z_1..Z_{i-1}) in bits for Z = H_N X, X i.i.d. with the given
/// integer-valued law, by enumerating all s^N inputs (s^N <= 2^20, n <= 4).
/// Probabilities are tabulated exactly; only the final entropies are rounded.
std::vector<double> absorption_profile_exact(unsigned n, const std::vector<PmfEntry>& pmf);

/// CSV q,ratio.
void write_rid_csv(std::ostream& os, const RidEstimate& est);
/// CSV index,entropy_bits (1-based index).
void write_absorption_csv(std::ostream& os, const std::vector<double>& profile);

}  // namespace ridpolar
