#include "ridpolar/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace ridpolar {

QuantizedSample quantize(std::span<const double> x, std::int64_t q) {
  if (q < 1) throw std::invalid_argument("q: quantization level must be >= 1");
  QuantizedSample out;
  out.q = q;
  out.values.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]))
      throw std::invalid_argument("x[" + std::to_string(i) + "]: non-finite value");
    const double v = std::floor(static_cast<double>(q) * x[i]);
    if (std::abs(v) > 9.0e18)
      throw std::invalid_argument("x[" + std::to_string(i) + "]: q * x overflows 64 bits");
    out.values.push_back(static_cast<std::int64_t>(v));
  }
  return out;
}

double entropy_plugin(std::span<const std::int64_t> symbols) {
  if (symbols.empty()) throw std::invalid_argument("samples: empty input");
  std::vector<std::int64_t> s(symbols.begin(), symbols.end());
  std::sort(s.begin(), s.end());
  const auto n = static_cast<double>(s.size());
  double h = 0.0;
  for (std::size_t i = 0; i < s.size();) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    const double p = static_cast<double>(j - i) / n;
    h -= p * std::log2(p);
    i = j;
  }
  return h;
}

RidEstimate rid_empirical(const MixtureSpec& spec, const std::vector<std::int64_t>& q_list,
                          std::size_t n_samples, std::uint64_t seed) {
  spec.validate();
  if (q_list.size() < 2) throw std::invalid_argument("q_list: needs at least 2 levels");
  for (std::size_t i = 0; i < q_list.size(); ++i) {
    if (q_list[i] < 2) throw std::invalid_argument("q_list: levels must be >= 2");
    if (i > 0 && q_list[i] <= q_list[i - 1])
      throw std::invalid_argument("q_list: levels must be increasing");
  }
  if (n_samples == 0) throw std::invalid_argument("n_samples: must be >= 1");

  CounterRng rng(seed);
  const std::vector<double> x = spec.sample(n_samples, rng);
  RidEstimate out;
  out.q_list = q_list;
  std::vector<double> lq;
  for (auto q : q_list) {
    const double h = entropy_plugin(quantize(x, q).values);
    lq.push_back(std::log2(static_cast<double>(q)));
    out.entropies.push_back(h);
    out.ratios.push_back(h / lq.back());
  }
  const auto k = static_cast<double>(lq.size());
  const double mx = std::accumulate(lq.begin(), lq.end(), 0.0) / k;
  const double my = std::accumulate(out.entropies.begin(), out.entropies.end(), 0.0) / k;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lq.size(); ++i) {
    sxy += (lq[i] - mx) * (out.entropies[i] - my);
    sxx += (lq[i] - mx) * (lq[i] - mx);
  }
  out.slope = sxy / sxx;
  return out;
}

namespace {

// Decimal digits only; cpp_int would read a leading 0 as an octal prefix.
std::optional<BigInt> parse_decimal(std::string digits) {
  const bool negative = !digits.empty() && digits[0] == '-';
  if (negative) digits.erase(0, 1);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  const BigInt v(digits);
  return negative ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto bad = [&] { return std::invalid_argument("probability: cannot parse '" + text + "'"); };
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const auto num = parse_decimal(text.substr(0, slash));
    const auto den = parse_decimal(text.substr(slash + 1));
    if (!num || !den || *den == 0) throw bad();
    return Rational(*num, *den);
  }
  std::string digits = text;
  BigInt scale = 1;
  if (const auto dot = text.find('.'); dot != std::string::npos) {
    digits = text.substr(0, dot) + text.substr(dot + 1);
    for (std::size_t i = dot + 1; i < text.size(); ++i) scale *= 10;
  }
  const auto value = parse_decimal(digits);
  if (!value) throw bad();
  return Rational(*value, scale);
}

std::vector<PmfEntry> pmf_from_string(const std::string& text) {
  std::vector<PmfEntry> pmf;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = std::min(text.find(',', start), text.size());
    const std::string item = text.substr(start, comma - start);
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("pmf: entry '" + item + "' is not value:probability");
    PmfEntry e;
    try {
      e.value = std::stoll(item.substr(0, colon));
    } catch (const std::logic_error&) {
      throw std::invalid_argument("pmf: value in '" + item + "' is not an integer");
    }
    e.prob = parse_rational(item.substr(colon + 1));
    pmf.push_back(e);
    start = comma + 1;
  }
  return pmf;
}

namespace {

std::vector<PmfEntry> checked_support(const std::vector<PmfEntry>& pmf) {
  if (pmf.empty()) throw std::invalid_argument("pmf: empty law");
  Rational total = 0;
  std::vector<PmfEntry> support;
  for (const auto& e : pmf) {
    if (e.prob < 0) throw std::invalid_argument("pmf: negative probability");
    total += e.prob;
    if (e.prob > 0) support.push_back(e);
  }
  if (total != 1) throw std::invalid_argument("pmf: probabilities sum to " + total.str() + ", expected 1");
  std::vector<std::int64_t> values;
  for (const auto& e : support) values.push_back(e.value);
  std::sort(values.begin(), values.end());
  if (std::adjacent_find(values.begin(), values.end()) != values.end())
    throw std::invalid_argument("pmf: repeated value");
  return support;
}

double log2_big(const BigInt& v) {
  const auto bits = static_cast<long>(boost::multiprecision::msb(v));
  if (bits < 1000) return std::log2(v.convert_to<double>());
  const long shift = bits - 60;
  return std::log2(BigInt(v >> shift).convert_to<double>()) + static_cast<double>(shift);
}

/// Neumaier-compensated sum of -p log2 p over the group sums.
class EntropySum {
 public:
  explicit EntropySum(const BigInt& total) : log_total_(log2_big(total)), total_(total.convert_to<double>()) {}
  void add(const BigInt& w) {
    const double p = w.convert_to<double>() / total_;
    const double term = -p * (log2_big(w) - log_total_);
    const double t = sum_ + term;
    comp_ += std::abs(sum_) >= std::abs(term) ? (sum_ - t) + term : (term - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double log_total_;
  double total_;
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

double entropy_bits(const std::vector<PmfEntry>& pmf) {
  const auto support = checked_support(pmf);
  double h = 0.0;
  for (const auto& e : support) {
    const double p = e.prob.convert_to<double>();
    h -= p * std::log2(p);
  }
  return h;
}

std::vector<double> absorption_profile_exact(unsigned n, const std::vector<PmfEntry>& pmf) {
  if (n > 4) throw std::invalid_argument("n: level must be <= 4");
  const auto support = checked_support(pmf);
  const std::size_t size = std::size_t{1} << n;
  const std::size_t s = support.size();
  std::size_t states = 1;
  for (std::size_t j = 0; j < size; ++j) {
    states *= s;
    if (states > (std::size_t{1} << 20))
      throw std::invalid_argument("pmf: state space s^N exceeds 2^20");
  }
  for (const auto& e : support)
    if (std::abs(e.value) > (std::int64_t{1} << 40))
      throw std::invalid_argument("pmf: value too large for exact tabulation");

  BigInt den = 1;
  for (const auto& e : support) den = boost::multiprecision::lcm(den, denominator(e.prob));
  std::vector<BigInt> weight;
  for (const auto& e : support) weight.push_back(numerator(e.prob) * (den / denominator(e.prob)));

  std::vector<std::int64_t> z(states * size);
  std::vector<BigInt> w(states);
  std::vector<std::size_t> digit(size, 0);
  for (std::size_t idx = 0; idx < states; ++idx) {
    std::int64_t* row = &z[idx * size];
    BigInt prod = 1;
    for (std::size_t j = 0; j < size; ++j) {
      row[j] = support[digit[j]].value;
      prod *= weight[digit[j]];
    }
    w[idx] = std::move(prod);
    for (std::size_t h = 1; h < size; h <<= 1)
      for (std::size_t i = 0; i < size; i += h << 1)
        for (std::size_t j = i; j < i + h; ++j) {
          const std::int64_t a = row[j], b = row[j + h];
          row[j] = a + b;
          row[j + h] = a - b;
        }
    for (std::size_t j = 0; j < size && ++digit[j] == s; ++j) digit[j] = 0;
  }

  std::vector<std::size_t> order(states);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(&z[a * size], &z[a * size] + size, &z[b * size],
                                        &z[b * size] + size);
  });

  BigInt total = 1;
  for (std::size_t j = 0; j < size; ++j) total *= den;

  // joint[i] = H(Z_1..Z_{i+1})
  std::vector<double> joint(size);
  for (std::size_t len = 1; len <= size; ++len) {
    EntropySum acc(total);
    for (std::size_t a = 0; a < states;) {
      const std::int64_t* head = &z[order[a] * size];
      BigInt group = 0;
      std::size_t b = a;
      for (; b < states && std::equal(head, head + len, &z[order[b] * size]); ++b) group += w[order[b]];
      acc.add(group);
      a = b;
    }
    joint[len - 1] = acc.value();
  }
  std::vector<double> profile(size);
  for (std::size_t i = 0; i < size; ++i) profile[i] = joint[i] - (i ? joint[i - 1] : 0.0);
  return profile;
}

void write_rid_csv(std::ostream& os, const RidEstimate& est) {
  os << "q,ratio\n";
  for (std::size_t i = 0; i < est.q_list.size(); ++i)
    fmt::print(os, "{},{:.17g}\n", est.q_list[i], est.ratios[i]);
}

void write_absorption_csv(std::ostream& os, const std::vector<double>& profile) {
  os << "index,entropy_bits\n";
  for (std::size_t i = 0; i < profile.size(); ++i) fmt::print(os, "{},{:.17g}\n", i + 1, profile[i]);
}

}  // namespace ridpolar
