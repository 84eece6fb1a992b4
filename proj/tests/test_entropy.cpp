#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "ridpolar/entropy.hpp"
#include "ridpolar/hadamard.hpp"
#include "ridpolar/mixture.hpp"
#include "ridpolar/rng.hpp"

using namespace ridpolar;

namespace {

// H(Z_i | Z^{i-1}) = H(Z^i) - H(Z^{i-1}) with joint prefix laws tabulated
// in maps over all inputs.
std::vector<double> absorption_by_prefix_maps(unsigned n, const std::vector<std::pair<int, double>>& law) {
  const std::size_t size = std::size_t{1} << n, s = law.size();
  std::size_t states = 1;
  for (std::size_t i = 0; i < size; ++i) states *= s;
  std::vector<std::vector<std::int64_t>> h;
  for (std::size_t r = 1; r <= size; ++r) h.push_back(hadamard_row(n, r));

  std::vector<std::map<std::vector<std::int64_t>, double>> prefix(size);
  for (std::size_t code = 0; code < states; ++code) {
    std::vector<int> x(size);
    double p = 1.0;
    std::size_t c = code;
    for (std::size_t j = 0; j < size; ++j, c /= s) {
      x[j] = law[c % s].first;
      p *= law[c % s].second;
    }
    std::vector<std::int64_t> z;
    for (std::size_t i = 0; i < size; ++i) {
      std::int64_t v = 0;
      for (std::size_t j = 0; j < size; ++j) v += h[i][j] * x[j];
      z.push_back(v);
      prefix[i][z] += p;
    }
  }
  std::vector<double> out;
  double prev = 0.0;
  for (const auto& m : prefix) {
    double hz = 0.0;
    for (const auto& [k, p] : m) hz -= p * std::log2(p);
    out.push_back(hz - prev);
    prev = hz;
  }
  return out;
}

}  // namespace

TEST_CASE("quantization") {
  const std::vector<double> x = {0.5, -0.5, 1.0, 0.74};
  const auto q = quantize(x, 2);
  CHECK(q.q == 2);
  CHECK(q.values == std::vector<std::int64_t>{1, -1, 2, 1});
  CHECK_THROWS_AS(quantize(x, 0), std::invalid_argument);
  CHECK_THROWS_AS(quantize(std::vector<double>{NAN}, 4), std::invalid_argument);
  CHECK_THROWS_AS(quantize(std::vector<double>{1e300}, 1024), std::invalid_argument);
}

TEST_CASE("plug-in entropy") {
  CHECK(entropy_plugin(std::vector<std::int64_t>{5}) == 0.0);
  CHECK(entropy_plugin(std::vector<std::int64_t>{1, 2, 2, 1}) == doctest::Approx(1.0));
  CHECK(entropy_plugin(std::vector<std::int64_t>{0, 1, 2, 3, 4, 5, 6, 7}) == doctest::Approx(3.0));
  CHECK_THROWS_AS(entropy_plugin(std::vector<std::int64_t>{}), std::invalid_argument);

  CounterRng rng(71);
  std::vector<std::int64_t> sym(1000000);
  for (auto& v : sym) {
    const double u = rng.uniform01();
    v = u < 0.5 ? 0 : u < 0.75 ? 1 : u < 0.875 ? 2 : 3;
  }
  CHECK(std::abs(entropy_plugin(sym) - 1.75) <= 5e-3);
}

TEST_CASE("empirical rid recovers the continuous weight") {
  std::vector<std::int64_t> ladder;
  for (int k = 4; k <= 10; ++k) ladder.push_back(std::int64_t{1} << k);
  for (double delta : {0.0, 0.5, 1.0}) {
    const auto est = rid_empirical(MixtureSpec::bernoulli_gaussian(delta), ladder, 1000000, 7);
    CHECK(std::abs(est.slope - delta) <= 0.05);
    CHECK(est.ratios.size() == ladder.size());
  }
  const auto a = rid_empirical(MixtureSpec::bernoulli_gaussian(0.3), ladder, 1000, 9);
  const auto b = rid_empirical(MixtureSpec::bernoulli_gaussian(0.3), ladder, 1000, 9);
  CHECK(a.entropies == b.entropies);
  CHECK_THROWS_AS(rid_empirical(MixtureSpec::bernoulli_gaussian(0.3), {16}, 100, 1), std::invalid_argument);
  CHECK_THROWS_AS(rid_empirical(MixtureSpec::bernoulli_gaussian(0.3), {32, 16}, 100, 1),
                  std::invalid_argument);
}

TEST_CASE("pmf parsing") {
  const auto pmf = pmf_from_string("0:19/20,1:1/20");
  REQUIRE(pmf.size() == 2);
  CHECK(pmf[1].value == 1);
  CHECK(pmf[1].prob == Rational(1, 20));
  CHECK(pmf_from_string("0:0.95,1:0.05")[0].prob == Rational(19, 20));
  CHECK(parse_rational("-3/4") == Rational(-3, 4));
  CHECK(parse_rational("019/020") == Rational(19, 20));
  CHECK(parse_rational("0.05") == Rational(1, 20));
  CHECK_THROWS_AS(parse_rational("0x10"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(pmf_from_string("0-1"), std::invalid_argument);
  CHECK(entropy_bits(pmf_from_string("0:1/2,1:1/2")) == doctest::Approx(1.0));
}

TEST_CASE("absorption profiles") {
  const auto half = absorption_profile_exact(1, pmf_from_string("0:1/2,1:1/2"));
  CHECK(half[0] == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(half[1] == doctest::Approx(0.5).epsilon(1e-15));

  for (double v : absorption_profile_exact(3, pmf_from_string("4:1"))) CHECK(v == 0.0);

  const auto law = pmf_from_string("0:19/20,1:1/20");
  const double h = entropy_bits(law);
  for (unsigned n = 0; n <= 4; ++n) {
    const auto p = absorption_profile_exact(n, law);
    const auto oracle = absorption_by_prefix_maps(n, {{0, 0.95}, {1, 0.05}});
    REQUIRE(p.size() == oracle.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      CHECK(std::abs(p[i] - oracle[i]) <= 1e-9);
      CHECK(p[i] >= 0.0);
      sum += p[i];
    }
    CHECK(std::abs(sum - static_cast<double>(p.size()) * h) <= 1e-10);
  }

  const auto three = absorption_profile_exact(2, pmf_from_string("-1:1/4,0:1/2,1:1/4"));
  const auto oracle3 = absorption_by_prefix_maps(2, {{-1, 0.25}, {0, 0.5}, {1, 0.25}});
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(three[i] - oracle3[i]) <= 1e-9);

  CHECK_THROWS_AS(absorption_profile_exact(5, law), std::invalid_argument);
  CHECK_THROWS_AS(absorption_profile_exact(4, pmf_from_string("0:1/4,1:1/4,2:1/4,3:1/4")),
                  std::invalid_argument);
  CHECK_THROWS_AS(absorption_profile_exact(2, pmf_from_string("0:1/2,1:1/4")), std::invalid_argument);
}

TEST_CASE("entropy csv output") {
  std::ostringstream os;
  write_absorption_csv(os, {1.5, 0.5});
  CHECK(os.str() == "index,entropy_bits\n1,1.5\n2,0.5\n");
}
