#include "ridpolar/erasure.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace ridpolar {
namespace {

constexpr double kLow = 0x1p-52;
constexpr double kHigh = 1.0 - 0x1p-52;

void check_unit(double e, const char* what) {
  if (!(e >= 0.0 && e <= 1.0))
    throw std::invalid_argument(std::string(what) + ": value " + std::to_string(e) +
                                " outside [0, 1]");
}

LogPair plus_log(const LogPair& p) {
  const double e = std::exp2(p.log2_value);
  LogPair out;
  out.log2_complement = 2.0 * p.log2_complement;
  if (e < 0.5) {
    out.log2_value = p.log2_value + std::log2(2.0 - e);
  } else {
    const double c2 = std::exp2(2.0 * p.log2_complement);  // (1-e)^2
    out.log2_value = std::log1p(-c2) / std::numbers::ln2;
  }
  return out;
}

LogPair minus_log(const LogPair& p) {
  const double e = std::exp2(p.log2_value);
  return {2.0 * p.log2_value, p.log2_complement + std::log2(1.0 + e)};
}

}  // namespace

double ErasureProfile::log2_value(std::size_t i) const {
  return has_logs() ? log_values.at(i).log2_value : std::log2(values.at(i));
}

double ErasureProfile::mean() const {
  double sum = 0.0, comp = 0.0;
  for (double v : values) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return values.empty() ? 0.0 : (sum + comp) / static_cast<double>(values.size());
}

double erasure_step(double e, Branch sign) {
  check_unit(e, "erasure_step");
  return sign == Branch::kPlus ? 2.0 * e - e * e : e * e;
}

ErasureProfile erasure_profile(double alpha, unsigned n) {
  check_unit(alpha, "erasure_profile");
  if (n > 24) throw std::invalid_argument("erasure_profile: level " + std::to_string(n) + " > 24");

  std::vector<double> values{alpha};
  std::vector<LogPair> logs{{std::log2(alpha), std::log2(1.0 - alpha)}};
  for (unsigned level = 0; level < n; ++level) {
    std::vector<double> next(2 * values.size());
    std::vector<LogPair> next_logs(2 * values.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
      const double e = values[j];
      next[2 * j] = 2.0 * e - e * e;
      next[2 * j + 1] = e * e;
      next_logs[2 * j] = plus_log(logs[j]);
      next_logs[2 * j + 1] = minus_log(logs[j]);
    }
    values = std::move(next);
    logs = std::move(next_logs);
  }

  ErasureProfile p;
  p.level = n;
  p.values = std::move(values);
  for (double v : p.values)
    if (v < kLow || v > kHigh) {
      p.log_values = std::move(logs);
      break;
    }
  return p;
}

std::vector<Rational> erasure_profile_rational(const Rational& alpha, unsigned n) {
  if (alpha < 0 || alpha > 1) throw std::invalid_argument("erasure_profile_rational: alpha outside [0, 1]");
  if (n > 10) throw std::invalid_argument("erasure_profile_rational: level " + std::to_string(n) + " > 10");
  std::vector<Rational> values{alpha};
  for (unsigned level = 0; level < n; ++level) {
    std::vector<Rational> next(2 * values.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
      const Rational& e = values[j];
      next[2 * j] = 2 * e - e * e;
      next[2 * j + 1] = e * e;
    }
    values = std::move(next);
  }
  return values;
}

std::string erasure_label(std::size_t i, unsigned n) {
  std::string label(n, '+');
  for (unsigned b = 0; b < n; ++b)
    if ((i >> (n - 1 - b)) & 1U) label[b] = '-';
  return label;
}

PolarizedFraction polarized_fraction(const ErasureProfile& p, double lo, double hi) {
  if (!(lo >= 0.0 && lo < hi && hi <= 1.0))
    throw std::invalid_argument("polarized_fraction: need 0 <= lo < hi <= 1");
  std::size_t low = 0, high = 0;
  for (double v : p.values) {
    if (v <= lo)
      ++low;
    else if (v >= hi)
      ++high;
  }
  const auto total = static_cast<double>(p.values.size());
  PolarizedFraction f;
  f.frac_low = static_cast<double>(low) / total;
  f.frac_high = static_cast<double>(high) / total;
  f.frac_mid = static_cast<double>(p.values.size() - low - high) / total;
  return f;
}

double fraction_below_log2(const ErasureProfile& p, double log2_threshold) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.log2_value(i) <= log2_threshold) ++count;
  return static_cast<double>(count) / static_cast<double>(p.size());
}

void write_profile_csv(std::ostream& os, const ErasureProfile& p) {
  os << "index,label,value,log2_value\n";
  for (std::size_t i = 0; i < p.size(); ++i)
    os << fmt::format("{},{},{:.17g},{:.17g}\n", i + 1, erasure_label(i, p.level), p.values[i],
                      p.log2_value(i));
}

}  // namespace ridpolar
