#include "ridpolar/verify.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ridpolar/erasure.hpp"
#include "ridpolar/rid_oracle.hpp"
#include "ridpolar/rng.hpp"

namespace ridpolar {
namespace {

std::string first_mismatch(const std::vector<Rational>& got, const std::vector<Rational>& want) {
  if (got.size() != want.size())
    return fmt::format("length {} vs {}", got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i)
    if (got[i] != want[i])
      return fmt::format("index {}: {} vs {}", i + 1, got[i].str(), want[i].str());
  return {};
}

IntMatrix random_matrix(CounterRng& rng, std::size_t rows, std::size_t cols) {
  std::vector<std::vector<std::int64_t>> r(rows, std::vector<std::int64_t>(cols));
  for (auto& row : r)
    for (auto& v : row) v = static_cast<std::int64_t>(rng.below(7)) - 3;
  return IntMatrix::from_rows(r, cols);
}

/// Product of random elementary operations: determinant +-1.
IntMatrix random_unimodular(CounterRng& rng, std::size_t size) {
  std::vector<std::vector<std::int64_t>> t(size, std::vector<std::int64_t>(size, 0));
  for (std::size_t i = 0; i < size; ++i) t[i][i] = 1;
  for (int step = 0; step < 6 && size > 1; ++step) {
    const std::size_t i = rng.below(size);
    std::size_t j = rng.below(size - 1);
    if (j >= i) ++j;
    const auto c = static_cast<std::int64_t>(rng.below(5)) - 2;
    for (std::size_t k = 0; k < size; ++k) t[i][k] += c * t[j][k];
    if (rng.bernoulli(0.3)) std::swap(t[i], t[j]);
  }
  if (size == 1 && rng.bernoulli(0.5)) t[0][0] = -1;
  return IntMatrix::from_rows(t, size);
}

}  // namespace

CheckResult check_profile_equivalence(unsigned n, const Rational& delta) {
  CheckResult r;
  r.name = fmt::format("profile n={} delta={}", n, delta.str());
  const auto oracle = hadamard_rid_profile_rational(n, delta);
  const auto closed = erasure_profile_rational(delta, n);
  r.detail = first_mismatch(oracle, closed);
  r.passed = r.detail.empty();
  return r;
}

CheckResult check_joint_equivalence(unsigned n, const std::vector<std::int64_t>& a,
                                    const std::vector<std::int64_t>& b,
                                    const std::vector<Rational>& deltas) {
  CheckResult r;
  r.name = fmt::format("joint n={} a=({}) b=({})", n, fmt::join(a, ","), fmt::join(b, ","));
  const IntMatrix am = IntMatrix::from_rows({a}, a.size());
  const IntMatrix bm = IntMatrix::from_rows({b}, b.size());
  const Rational d_x = rid_exact(am, deltas);
  const Rational d_y_given_x = cond_rid_exact(bm, deltas, am);
  const auto joint = joint_rid_profile_rational(n, a, b, deltas);
  std::string bad = first_mismatch(joint.i_profile, erasure_profile_rational(d_x, n));
  if (!bad.empty()) bad = "I: " + bad;
  if (bad.empty()) {
    bad = first_mismatch(joint.j_profile, erasure_profile_rational(d_y_given_x, n));
    if (!bad.empty()) bad = "J: " + bad;
  }
  r.detail = bad.empty() ? fmt::format("d(X)={} d(Y|X)={}", d_x.str(), d_y_given_x.str()) : bad;
  r.passed = bad.empty();
  return r;
}

CheckResult check_rid_properties(std::size_t models, std::uint64_t seed, double tol) {
  CheckResult r;
  r.name = fmt::format("rid properties on {} models", models);
  double worst = 0.0;
  std::string where;
  auto note = [&](double err, const std::string& what, std::size_t idx) {
    if (err > worst) {
      worst = err;
      where = fmt::format("{} (model {})", what, idx);
    }
  };
  for (std::size_t idx = 0; idx < models; ++idx) {
    CounterRng rng(seed, idx);
    const std::size_t k = 1 + rng.below(6);
    const std::size_t ra = 1 + rng.below(4);
    const std::size_t rb = 1 + rng.below(4);
    LinearModel x{random_matrix(rng, ra, k), {}};
    for (std::size_t j = 0; j < k; ++j) x.deltas.push_back(rng.uniform01());
    const IntMatrix b = random_matrix(rng, rb, k);
    const LinearModel y{b, x.deltas};
    const LinearModel xy{IntMatrix::stack(x.a, b), x.deltas};

    const double d_x = rid_exact(x), d_y = rid_exact(y), d_xy = rid_exact(xy);
    const double d_x_given_y = cond_rid_exact(x, b), d_y_given_x = cond_rid_exact(y, x.a);
    note(std::abs(d_xy - (d_y + d_x_given_y)), "chain rule d(X,Y) = d(Y) + d(X|Y)", idx);
    note(std::abs(d_xy - (d_x + d_y_given_x)), "chain rule d(X,Y) = d(X) + d(Y|X)", idx);

    const LinearModel tx{random_unimodular(rng, ra).multiply(x.a), x.deltas};
    note(std::abs(rid_exact(tx) - d_x), "invariance d(TX) = d(X)", idx);
    note(std::abs(cond_rid_exact(tx, b) - d_x_given_y), "invariance d(TX|Y) = d(X|Y)", idx);

    const double i_xy = renyi_info(x, b), i_yx = renyi_info(y, x.a);
    note(std::abs(i_xy - i_yx), "symmetry I(X;Y) = I(Y;X)", idx);
    note(std::max(0.0, -i_xy), "nonnegativity I(X;Y) >= 0", idx);
  }
  r.passed = worst <= tol;
  r.detail = worst == 0.0 ? "max error 0" : fmt::format("max error {:.3g} at {}", worst, where);
  return r;
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  std::vector<CheckResult> out;
  const Rational deltas[] = {Rational(1, 4), Rational(1, 2), Rational(3, 4)};
  for (unsigned n = 1; n <= std::min(options.max_n, 4u); ++n)
    for (const auto& d : deltas) out.push_back(check_profile_equivalence(n, d));
  const std::vector<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>> gens = {
      {{1, 0}, {1, 1}}, {{1, 1}, {1, -1}}};
  const std::vector<Rational> joint_deltas = {Rational(1, 3), Rational(1, 2)};
  for (unsigned n = 1; n <= std::min(options.max_n, 2u); ++n)
    for (const auto& [a, b] : gens) out.push_back(check_joint_equivalence(n, a, b, joint_deltas));
  out.push_back(check_rid_properties(options.models, options.seed));
  return out;
}

}  // namespace ridpolar
