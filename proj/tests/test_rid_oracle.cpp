#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "ridpolar/erasure.hpp"
#include "ridpolar/rid_oracle.hpp"
#include "ridpolar/rng.hpp"
#include "ridpolar/verify.hpp"

using namespace ridpolar;

namespace {

LinearModel random_model(CounterRng& rng, std::size_t rows, std::size_t cols) {
  std::vector<std::vector<std::int64_t>> r(rows, std::vector<std::int64_t>(cols));
  for (auto& row : r)
    for (auto& v : row) v = static_cast<std::int64_t>(rng.below(7)) - 3;
  LinearModel m{IntMatrix::from_rows(r, cols), {}};
  for (std::size_t j = 0; j < cols; ++j) m.deltas.push_back(rng.uniform01());
  return m;
}

std::string error_of(auto&& f) {
  try {
    f();
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("rid of simple models") {
  CHECK(rid_exact({IntMatrix::identity(3), {0.2, 0.5, 0.7}}) == doctest::Approx(1.4).epsilon(1e-14));
  CHECK(rid_exact({IntMatrix{{1}}, {0.3}}) == doctest::Approx(0.3).epsilon(1e-15));
  const double d = 0.3;
  CHECK(rid_exact({IntMatrix{{1, 1}}, {d, d}}) == doctest::Approx(2 * d - d * d).epsilon(1e-15));

  const std::vector<Rational> q = {Rational(1, 3), Rational(2, 5)};
  CHECK(rid_exact(IntMatrix{{1, 1}}, q) == Rational(1) - Rational(2, 3) * Rational(3, 5));
}

TEST_CASE("conditional rid examples") {
  const double d = 0.4;
  const LinearModel x{IntMatrix{{1, 1}}, {d, d}};
  CHECK(cond_rid_exact(x, IntMatrix{{1, -1}}) == doctest::Approx(d * d).epsilon(1e-15));
  CHECK(cond_rid_exact(x, x.a) == 0.0);
  CHECK(cond_rid_exact(x, IntMatrix(0, 2)) == doctest::Approx(rid_exact(x)).epsilon(1e-15));
}

TEST_CASE("monte carlo estimates") {
  const LinearModel zero{IntMatrix{{1, 2}, {3, 4}}, {0.0, 0.0}};
  const auto e0 = rid_mc(zero, 1000, 1);
  CHECK(e0.estimate == 0.0);
  CHECK(e0.std_error == 0.0);
  const LinearModel full{IntMatrix{{1, 2, 3}, {2, 4, 6}}, {1.0, 1.0, 1.0}};
  const auto e1 = rid_mc(full, 1000, 1);
  CHECK(e1.estimate == 1.0);
  CHECK(e1.std_error == 0.0);

  const auto e = rid_mc({IntMatrix{{1, 1}}, {0.5, 0.5}}, 100000, 5);
  CHECK(std::abs(e.estimate - 0.75) <= 4 * e.std_error);

  std::size_t outside = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    CounterRng rng(41, s);
    const LinearModel m = random_model(rng, 1 + rng.below(3), 1 + rng.below(5));
    const auto est = rid_mc(m, 4000, s);
    if (std::abs(est.estimate - rid_exact(m)) > 4 * est.std_error + 1e-12) ++outside;
  }
  // Each check fails with probability below 1e-4 under a normal approximation.
  CHECK(outside <= 1);
}

TEST_CASE("monte carlo is reproducible") {
  const LinearModel m{IntMatrix{{1, 1, 0}, {0, 1, 1}}, {0.3, 0.6, 0.9}};
  const auto a = rid_mc(m, 5000, 17);
  const auto b = rid_mc(m, 5000, 17);
  CHECK(a.estimate == b.estimate);
  CHECK(a.std_error == b.std_error);
  const auto c = cond_rid_mc(m, IntMatrix{{1, 0, 0}}, 20000, 3);
  CHECK(std::abs(c.estimate - cond_rid_exact(m, IntMatrix{{1, 0, 0}})) <= 4 * c.std_error);
}

TEST_CASE("renyi information") {
  const LinearModel x{IntMatrix{{1, 0, 0}}, {0.5, 0.5, 0.5}};
  CHECK(renyi_info(x, IntMatrix{{0, 1, 1}}) == 0.0);
  const LinearModel y{IntMatrix{{1, 2, -1}}, {0.2, 0.5, 0.9}};
  CHECK(renyi_info(y, y.a) == doctest::Approx(rid_exact(y)).epsilon(1e-15));

  for (std::uint64_t s = 0; s < 200; ++s) {
    CounterRng rng(42, s);
    const std::size_t k = 1 + rng.below(5);
    const LinearModel a = random_model(rng, 1 + rng.below(3), k);
    LinearModel b = random_model(rng, 1 + rng.below(3), k);
    b.deltas = a.deltas;
    const double stacked = rid_exact({IntMatrix::stack(a.a, b.a), a.deltas});
    REQUIRE(std::abs(renyi_info(a, b.a) - (rid_exact(a) + rid_exact(b) - stacked)) <= 1e-12);
    REQUIRE(cond_rid_exact(a, b.a) <= rid_exact(a) + 1e-12);
  }
}

TEST_CASE("property suite") {
  const CheckResult r = check_rid_properties(500, 9);
  CHECK_MESSAGE(r.passed, r.detail);
}

TEST_CASE("hadamard profile equals the erasure recursion") {
  for (double d : {0.0, 1.0}) {
    const auto p = hadamard_rid_profile(2, d, OracleMethod::kExact);
    for (double v : p.values) CHECK(v == d);
  }
  const double d = 0.3;
  const auto p1 = hadamard_rid_profile(1, d, OracleMethod::kExact);
  CHECK(p1.values[0] == doctest::Approx(2 * d - d * d).epsilon(1e-15));
  CHECK(p1.values[1] == doctest::Approx(d * d).epsilon(1e-15));

  for (unsigned n = 1; n <= 3; ++n)
    for (const Rational& q : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
      const auto oracle = hadamard_rid_profile_rational(n, q);
      CHECK(oracle == erasure_profile_rational(q, n));
      CHECK(hadamard_rid_profile_rational(n, q, RowOrder::kShuffled).size() == oracle.size());
      Rational mean = 0;
      for (const auto& v : oracle) mean += v;
      CHECK(mean / Rational(oracle.size()) == q);
    }
}

TEST_CASE("shuffled and sylvester orders give the same profile") {
  for (unsigned n = 1; n <= 3; ++n) {
    const auto a = hadamard_rid_profile_rational(n, Rational(2, 5), RowOrder::kSylvester);
    const auto b = hadamard_rid_profile_rational(n, Rational(2, 5), RowOrder::kShuffled);
    CHECK(a == b);
  }
}

TEST_CASE("monte carlo hadamard profile") {
  const auto exact = erasure_profile(0.5, 4);
  const auto mc = hadamard_rid_profile(4, 0.5, OracleMethod::kMonteCarlo, 4000, 7);
  std::size_t outside = 0;
  for (std::size_t i = 0; i < exact.size(); ++i)
    if (std::abs(mc.values[i] - exact.values[i]) > 4 * mc.std_errors[i] + 3.0 / 4000) ++outside;
  CHECK(outside <= 1);
}

TEST_CASE("joint profiles") {
  const std::vector<Rational> deltas = {Rational(1, 3), Rational(3, 5)};
  const auto j0 = joint_rid_profile_rational(0, {1, 0}, {1, 1}, deltas);
  CHECK(j0.i_profile == std::vector<Rational>{Rational(1, 3)});
  CHECK(j0.j_profile == std::vector<Rational>{Rational(3, 5)});
  for (unsigned n = 1; n <= 2; ++n) {
    auto r = check_joint_equivalence(n, {1, 0}, {1, 1}, deltas);
    CHECK_MESSAGE(r.passed, r.detail);
    r = check_joint_equivalence(n, {1, 1}, {1, -1}, deltas);
    CHECK_MESSAGE(r.passed, r.detail);
  }
  const auto dbl = joint_rid_profile(1, {1, 1}, {1, -1}, {0.5, 0.5}, OracleMethod::kExact);
  const auto want = erasure_profile(0.25, 1);
  for (std::size_t i = 0; i < 2; ++i) CHECK(dbl.j_profile.values[i] == doctest::Approx(want.values[i]));
}

TEST_CASE("oracle input validation") {
  CHECK(error_of([] { rid_exact({IntMatrix{{1, 1, 1}}, {0.5, 0.5}}); }).find("deltas") == 0);
  CHECK(error_of([] { rid_exact({IntMatrix{{1}}, {1.5}}); }).find("deltas") == 0);
  CHECK(error_of([] { cond_rid_exact({IntMatrix{{1, 1}}, {0.5, 0.5}}, IntMatrix{{1}}); }).find("B") == 0);
  OracleLimits tight;
  tight.max_exact_columns = 3;
  CHECK_THROWS_AS(rid_exact({IntMatrix(1, 4), {0.1, 0.1, 0.1, 0.1}}, tight), std::invalid_argument);
  CHECK_THROWS_AS(hadamard_rid_profile(5, 0.5, OracleMethod::kExact), std::invalid_argument);
}

TEST_CASE("model json") {
  const auto j = nlohmann::json::parse(R"({"A": [[1, 2], [0, -1]], "deltas": [0.25, 0.5]})");
  const LinearModel m = model_from_json(j);
  CHECK(m.a == IntMatrix{{1, 2}, {0, -1}});
  CHECK(model_to_json(m) == j);
  CHECK(error_of([] { model_from_json(nlohmann::json::parse(R"({"A": [[1, 2]], "deltas": [0.5]})")); })
            .find("deltas") == 0);
  CHECK(error_of([] { model_from_json(nlohmann::json::parse(R"({"A": [[1, 2], [1]], "deltas": [0.5, 0.5]})")); })
            .find("A[1]") == 0);
}
