#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "ridpolar/int_matrix.hpp"

namespace ridpolar {

enum class Branch { kPlus, kMinus };

/// log2(e) and log2(1 - e), tracked so that values within 2^-52 of 0 or 1
/// keep their magnitude.
struct LogPair {
  double log2_value;
  double log2_complement;
};

/// Erasure-process values at one level, indexed by 0-based row position.
/// Position i carries the label of the binary expansion of i (MSB first),
/// with 0 -> '+' and 1 -> '-'.
struct ErasureProfile {
  unsigned level = 0;
  std::vector<double> values;
  /// Filled only when some value leaves [2^-52, 1 - 2^-52].
  std::vector<LogPair> log_values;

  std::size_t size() const { return values.size(); }
  bool has_logs() const { return !log_values.empty(); }
  /// log2 of value i, from the log track when present.
  double log2_value(std::size_t i) const;
  double mean() const;
};

double erasure_step(double e, Branch sign);

/// The erasure process with initial value alpha at level n (n <= 24),
/// computed by level doubling: position j splits into 2j ('+') and 2j+1 ('-').
ErasureProfile erasure_profile(double alpha, unsigned n);

/// Exact rational profile for n <= 10.
std::vector<Rational> erasure_profile_rational(const Rational& alpha, unsigned n);

/// '+'/'-' label of 0-based position i at level n.
std::string erasure_label(std::size_t i, unsigned n);

struct PolarizedFraction {
  double frac_low = 0.0;
  double frac_high = 0.0;
  double frac_mid = 0.0;
};

/// Fractions of positions with value <= lo, >= hi, and strictly between.
PolarizedFraction polarized_fraction(const ErasureProfile& p, double lo, double hi);

/// Fraction of positions with log2(value) <= log2_threshold. Uses the log
/// track, so thresholds far below the double range are meaningful.
double fraction_below_log2(const ErasureProfile& p, double log2_threshold);

/// CSV with header index,label,value,log2_value (1-based index).
void write_profile_csv(std::ostream& os, const ErasureProfile& p);

}  // namespace ridpolar
