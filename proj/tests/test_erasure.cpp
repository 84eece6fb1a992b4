#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "ridpolar/erasure.hpp"
#include "ridpolar/rng.hpp"

using namespace ridpolar;

TEST_CASE("erasure step") {
  CHECK(erasure_step(0.5, Branch::kPlus) == 0.75);
  CHECK(erasure_step(0.5, Branch::kMinus) == 0.25);
  for (auto b : {Branch::kPlus, Branch::kMinus}) {
    CHECK(erasure_step(1.0, b) == 1.0);
    CHECK(erasure_step(0.0, b) == 0.0);
  }
  CHECK_THROWS_AS(erasure_step(1.5, Branch::kPlus), std::invalid_argument);
}

TEST_CASE("erasure profile small levels") {
  CHECK(erasure_profile(0.5, 1).values == std::vector<double>{0.75, 0.25});
  CHECK(erasure_profile(0.5, 2).values == std::vector<double>{0.9375, 0.5625, 0.4375, 0.0625});
  for (double v : erasure_profile(1.0, 7).values) CHECK(v == 1.0);
  CHECK(erasure_profile(0.3, 0).values == std::vector<double>{0.3});
  CHECK_THROWS_AS(erasure_profile(0.5, 25), std::invalid_argument);
  CHECK_THROWS_AS(erasure_profile(-0.1, 3), std::invalid_argument);
}

TEST_CASE("labels are most-significant bit first") {
  CHECK(erasure_label(0, 3) == "+++");
  CHECK(erasure_label(1, 3) == "++-");
  CHECK(erasure_label(4, 3) == "-++");
  CHECK(erasure_label(7, 3) == "---");
}

TEST_CASE("each value follows its label path") {
  const unsigned n = 20;
  const ErasureProfile p = erasure_profile(0.37, n);
  CounterRng rng(31);
  for (int k = 0; k < 100; ++k) {
    const std::size_t i = rng.below(p.size());
    double e = 0.37;
    for (char c : erasure_label(i, n)) e = erasure_step(e, c == '+' ? Branch::kPlus : Branch::kMinus);
    REQUIRE(p.values[i] == e);
  }
}

TEST_CASE("rational profile matches the double recursion") {
  const Rational alpha(3, 7);
  const auto exact = erasure_profile_rational(alpha, 6);
  const auto approx = erasure_profile(3.0 / 7.0, 6);
  REQUIRE(exact.size() == approx.size());
  for (std::size_t i = 0; i < exact.size(); ++i)
    CHECK(std::abs(exact[i].convert_to<double>() - approx.values[i]) <= 1e-14);
  Rational sum = 0;
  for (const auto& v : exact) sum += v;
  CHECK(sum / Rational(exact.size()) == alpha);
}

TEST_CASE("martingale: profile mean equals alpha") {
  for (int k = 0; k <= 10; ++k) {
    const double alpha = k / 10.0;
    for (unsigned n : {1u, 5u, 12u, 20u}) REQUIRE(std::abs(erasure_profile(alpha, n).mean() - alpha) <= 1e-12);
  }
}

TEST_CASE("monotone embedding across alpha") {
  const unsigned n = 16;
  auto prev = erasure_profile(0.0, n);
  for (int k = 1; k <= 10; ++k) {
    const auto cur = erasure_profile(k / 10.0, n);
    for (std::size_t i = 0; i < cur.size(); ++i) REQUIRE(cur.values[i] >= prev.values[i]);
    prev = cur;
  }
}

TEST_CASE("polarization") {
  CHECK(polarized_fraction(erasure_profile(0.0, 10), 0.1, 0.9).frac_low == 1.0);
  const ErasureProfile p = erasure_profile(0.5, 20);
  CHECK(polarized_fraction(p, 0.1, 0.9).frac_mid <= 0.12);
  const double beta_threshold = -std::pow(static_cast<double>(p.size()), 0.3);
  CHECK(fraction_below_log2(p, beta_threshold) >= 0.40);

  for (double eps : {0.1, 0.01}) {
    double last = 1.0;
    for (unsigned n = 4; n <= 20; ++n) {
      const double mid = polarized_fraction(erasure_profile(0.5, n), eps, 1.0 - eps).frac_mid;
      REQUIRE(mid <= last);
      last = mid;
    }
  }
  CHECK_THROWS_AS(polarized_fraction(p, 0.9, 0.1), std::invalid_argument);
}

TEST_CASE("log track agrees with log2 of representable values") {
  const ErasureProfile p = erasure_profile(0.5, 22);
  REQUIRE(p.has_logs());
  std::size_t checked = 0;
  for (std::size_t i = 0; i < p.size(); i += 997) {
    const double v = p.values[i];
    if (v > 1e-200 && v < 0.5) {
      CHECK(std::abs(p.log2_value(i) - std::log2(v)) <= 1e-9 * std::max(1.0, std::abs(std::log2(v))));
      ++checked;
    }
  }
  CHECK(checked > 0);
  // The all-minus path squares 22 times: log2 value = 2^22 * log2(0.5).
  CHECK(p.log2_value(p.size() - 1) == -std::ldexp(1.0, 22));
}

TEST_CASE("profile csv") {
  std::ostringstream os;
  write_profile_csv(os, erasure_profile(0.5, 1));
  CHECK(os.str() == "index,label,value,log2_value\n1,+,0.75,-0.41503749927884381\n2,-,0.25,-2\n");
}
