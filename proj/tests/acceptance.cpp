#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "ridpolar/denoiser.hpp"
#include "ridpolar/encoder.hpp"
#include "ridpolar/entropy.hpp"
#include "ridpolar/erasure.hpp"
#include "ridpolar/exact_linalg.hpp"
#include "ridpolar/phase_transition.hpp"
#include "ridpolar/rid_oracle.hpp"
#include "ridpolar/rng.hpp"
#include "ridpolar/verify.hpp"

using namespace ridpolar;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < limit_seconds;
  const bool ok = o.passed && in_time;
  if (!ok) ++failures;
  fmt::print("{} [{}] {}: {} ({:.1f}s{})\n", ok ? "PASS" : "FAIL", id, name, o.detail, secs,
             in_time ? "" : ", over time limit");
  std::fflush(stdout);
}

double normal_pdf(double x, double sd) {
  return std::exp(-0.5 * x * x / (sd * sd)) / (sd * std::sqrt(2 * std::numbers::pi));
}

double posterior_mean_quadrature(double u, double tau, double delta) {
  const double lo = std::min(u, 0.0) - 15.0, hi = std::max(u, 0.0) + 15.0;
  const std::size_t steps = 60000;
  const double h = (hi - lo) / steps;
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double x = lo + h * static_cast<double>(k);
    const double w = (k == 0 || k == steps) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    const double f = w * normal_pdf(x, 1.0) * normal_pdf(u - x, tau);
    num += x * f;
    den += f;
  }
  num *= delta * h / 3;
  den = den * delta * h / 3 + (1 - delta) * normal_pdf(u, tau);
  return num / den;
}

double binomial(unsigned n, unsigned k) {
  double r = 1.0;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

int main() {
  criterion(1, "hadamard profile equals erasure profile (exact)", 60, [] {
    std::size_t checked = 0;
    for (unsigned n = 1; n <= 3; ++n)
      for (const Rational& d : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
        const CheckResult r = check_profile_equivalence(n, d);
        if (!r.passed) return Outcome{false, r.name + ": " + r.detail};
        ++checked;
      }
    return Outcome{true, fmt::format("{} (n, delta) cases bit-identical", checked)};
  });

  criterion(2, "joint profile J equals erasure profile of d(Y|X) (exact)", 300, [] {
    const std::vector<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>> pairs = {
        {{1, 0}, {1, 1}}, {{1, 1}, {1, -1}}};
    const std::vector<std::vector<Rational>> delta_sets = {{Rational(1, 3), Rational(1, 2)},
                                                           {Rational(1, 4), Rational(3, 5)}};
    std::size_t checked = 0;
    for (unsigned n = 1; n <= 2; ++n)
      for (const auto& [a, b] : pairs)
        for (const auto& ds : delta_sets) {
          const CheckResult r = check_joint_equivalence(n, a, b, ds);
          if (!r.passed) return Outcome{false, r.name + ": " + r.detail};
          ++checked;
        }
    return Outcome{true, fmt::format("{} cases bit-identical", checked)};
  });

  criterion(3, "rid property suite on 500 random models", 60, [] {
    const CheckResult r = check_rid_properties(500, 2024, 1e-12);
    return Outcome{r.passed, r.detail};
  });

  criterion(4, "polarization, martingale and monotone embedding", 60, [] {
    double worst_mean = 0.0;
    for (int k = 1; k <= 9; ++k) {
      const double a = k / 10.0;
      worst_mean = std::max(worst_mean, std::abs(erasure_profile(a, 20).mean() - a));
    }
    const double mid = polarized_fraction(erasure_profile(0.5, 20), 0.1, 0.9).frac_mid;
    bool monotone = true;
    auto prev = erasure_profile(0.1, 16);
    for (int k = 2; k <= 9 && monotone; ++k) {
      const auto cur = erasure_profile(k / 10.0, 16);
      for (std::size_t i = 0; i < cur.size(); ++i) monotone = monotone && cur.values[i] >= prev.values[i];
      prev = cur;
    }
    return Outcome{worst_mean <= 1e-12 && mid <= 0.12 && monotone,
                   fmt::format("max |mean - alpha| = {:.2e}, frac_mid = {:.4f}, monotone = {}", worst_mean, mid,
                               monotone)};
  });

  criterion(5, "single-terminal rate and certificate at n = 20", 60, [] {
    double worst_gap = 0.0;
    bool certified = true;
    for (int k = 1; k <= 9; ++k) {
      const double delta = k / 10.0;
      const auto plan = build_single(20, delta, 0.1);
      worst_gap = std::max(worst_gap, std::abs(plan.rate - delta));
      const auto p = erasure_profile(delta, 20);
      long double off = 0.0L;
      std::size_t next = 0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (next < plan.rows.size() && plan.rows[next] == i + 1) {
          ++next;
          continue;
        }
        off += p.values[i];
      }
      certified = certified && off <= static_cast<long double>(p.size()) * 0.1L * delta;
    }
    return Outcome{worst_gap <= 0.08 && certified,
                   fmt::format("max |rate - delta| = {:.4f}, certificates hold = {}", worst_gap, certified)};
  });

  criterion(6, "two-terminal corner point at n = 16", 60, [] {
    // X = Z1, Y = Z1 + Z2 with weights (1/2, 1/4): d(X) = 1/2, d(Y|X) = 1/4,
    // d(X|Y) = 1/8, d(X,Y) = 3/4.
    const LinearModel xy{IntMatrix{{1, 0}, {1, 1}}, {0.5, 0.25}};
    const LinearModel x{IntMatrix{{1, 0}}, xy.deltas};
    const LinearModel y{IntMatrix{{1, 1}}, xy.deltas};
    const double d_x = rid_exact(x), d_xy = rid_exact(xy);
    const double d_y_given_x = cond_rid_exact(y, x.a), d_x_given_y = cond_rid_exact(x, y.a);
    const auto mp = build_multi(16, d_x, d_y_given_x, 0.1);
    const RatePoint r = mp.rates();
    const RegionCheck rc = region_check(r, d_x_given_y, d_y_given_x, d_xy, 0.1);
    const bool ok = std::abs(r.rho_x - 0.5) <= 0.10 && std::abs(r.rho_y - 0.25) <= 0.10 &&
                    mp.joint_rep_bound <= 0.1 && rc.inside && std::abs(d_x - 0.5) <= 1e-12 &&
                    std::abs(d_y_given_x - 0.25) <= 1e-12;
    return Outcome{ok, fmt::format("rates ({:.4f}, {:.4f}), joint certificate {:.4f}, region check {}", r.rho_x,
                                   r.rho_y, mp.joint_rep_bound, rc.inside ? "inside" : "outside")};
  });

  criterion(7, "absorption profile n = 4, Bernoulli(0.05)", 60, [] {
    const auto law = pmf_from_string("0:19/20,1:1/20");
    const double h = entropy_bits(law);
    const auto p = absorption_profile_exact(4, law);
    double sum = 0.0;
    std::size_t below = 0;
    for (double v : p) {
      sum += v;
      if (v < h) ++below;
    }
    const bool conserved = std::abs(sum - 16 * h) <= 1e-10;
    return Outcome{conserved && below >= 12,
                   fmt::format("|sum - 16 H| = {:.2e}, {} of 16 entries below H = {:.5f} (need >= 12)",
                               std::abs(sum - 16 * h), below, h)};
  });

  criterion(8, "empirical rid with 1e6 samples", 300, [] {
    std::vector<std::int64_t> ladder;
    for (int k = 4; k <= 10; ++k) ladder.push_back(std::int64_t{1} << k);
    std::string detail;
    bool ok = true;
    for (double delta : {0.0, 0.5, 1.0}) {
      const double slope = rid_empirical(MixtureSpec::bernoulli_gaussian(delta), ladder, 1000000, 8).slope;
      ok = ok && std::abs(slope - delta) <= 0.05;
      detail += fmt::format("{}delta {} -> {:.4f}", detail.empty() ? "" : ", ", delta, slope);
    }
    return Outcome{ok, detail};
  });

  criterion(9, "phase transitions at N = 512, 50 trials", 7200, [] {
    PtConfig base;
    base.n = 9;
    for (int k = 0; k <= 10; ++k) base.delta_grid.push_back(k / 10.0);
    base.rate_grid = uniform_grid(0.025);
    base.trials = 50;
    base.target_mse = 0.01;
    base.seed = 1;
    std::map<std::string, std::vector<PtRow>> curves;
    for (const auto& [algo, family] : std::vector<std::pair<Algorithm, ContinuousFamily>>{
             {Algorithm::kAmp, ContinuousFamily::kGaussian},
             {Algorithm::kL1, ContinuousFamily::kGaussian},
             {Algorithm::kL1, ContinuousFamily::kLaplace},
             {Algorithm::kL1, ContinuousFamily::kUniform}}) {
      PtConfig c = base;
      c.algo = algo;
      c.family = family;
      curves[to_string(algo) + "/" + to_string(family)] = pt_sweep(c);
    }
    const double tol = 1e-9;
    std::vector<std::string> problems;
    for (const auto& [name, rows] : curves)
      for (const auto& r : rows)
        if (!(r.min_rate >= r.delta - 0.025 - tol))
          problems.push_back(fmt::format("(a) {} at delta {}: rate {}", name, r.delta, r.min_rate));
    const auto& amp = curves["amp/gaussian"];
    const auto& l1 = curves["l1/gaussian"];
    for (std::size_t i = 0; i < amp.size(); ++i)
      if (!(amp[i].min_rate <= l1[i].min_rate + tol))
        problems.push_back(fmt::format("(b) delta {}: amp {} > l1 {}", amp[i].delta, amp[i].min_rate, l1[i].min_rate));
    double widest = 0.0;
    for (std::size_t i = 0; i < l1.size(); ++i) {
      const double rates[] = {l1[i].min_rate, curves["l1/laplace"][i].min_rate, curves["l1/uniform"][i].min_rate};
      const double spread = *std::max_element(std::begin(rates), std::end(rates)) -
                            *std::min_element(std::begin(rates), std::end(rates));
      widest = std::max(widest, spread);
      if (!(spread <= 0.05 + tol))
        problems.push_back(fmt::format("(c) delta {}: l1 rates gaussian {} laplace {} uniform {}", l1[i].delta,
                                       rates[0], rates[1], rates[2]));
    }
    auto count = [&](char part) {
      return std::count_if(problems.begin(), problems.end(), [&](const std::string& p) { return p[1] == part; });
    };
    std::string detail = fmt::format("(a) {} violations, (b) {} violations, (c) widest l1 family spread {:.3f}",
                                     count('a'), count('b'), widest);
    for (const auto& p : problems) detail += "; " + p;
    return Outcome{problems.empty(), detail};
  });

  criterion(10, "posterior-mean denoiser against quadrature", 60, [] {
    double worst_value = 0.0, worst_deriv = 0.0;
    for (double delta : {0.1, 0.5, 0.9})
      for (double tau : {0.1, 1.0, 3.0}) {
        const MixtureSpec spec = MixtureSpec::bernoulli_gaussian(delta);
        for (int k = 0; k < 100; ++k) {
          const double u = -5.0 + 10.0 * k / 99.0;
          const DenoiseResult r = denoise_bg(u, tau, spec);
          worst_value = std::max(worst_value, std::abs(r.value - posterior_mean_quadrature(u, tau, delta)));
          const double h = 1e-3;
          auto f = [&](double v) { return denoise_bg(v, tau, spec).value; };
          const double fd = (-f(u + 2 * h) + 8 * f(u + h) - 8 * f(u - h) + f(u - 2 * h)) / (12 * h);
          worst_deriv = std::max(worst_deriv, std::abs(r.derivative - fd));
        }
      }
    return Outcome{worst_value <= 1e-6 && worst_deriv <= 1e-5,
                   fmt::format("max value error {:.2e}, max derivative error {:.2e}", worst_value, worst_deriv)};
  });

  criterion(11, "cauchy-binet audit on orthonormal rows", 60, [] {
    double worst_sum = 0.0;
    bool bound_ok = true;
    for (std::uint64_t s = 0; s < 100; ++s) {
      CounterRng rng(11, s);
      const auto n = static_cast<Eigen::Index>(1 + rng.below(10));
      const auto m = static_cast<Eigen::Index>(1 + rng.below(static_cast<std::uint64_t>(n)));
      Eigen::MatrixXd g(n, m);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < m; ++j) g(i, j) = rng.normal();
      const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
      const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, m);
      const auto audit = cauchy_binet_audit(q.transpose());
      worst_sum = std::max(worst_sum, std::abs(audit.sum_sq_dets - 1.0));
      const double floor = 1.0 / std::sqrt(binomial(static_cast<unsigned>(n), static_cast<unsigned>(m)));
      bound_ok = bound_ok && audit.max_abs_det >= floor - 1e-12;
    }
    return Outcome{worst_sum <= 1e-8 && bound_ok,
                   fmt::format("max |sum - 1| = {:.2e}, max >= 1/sqrt(C(n,m)) = {}", worst_sum, bound_ok)};
  });

  fmt::print("{} of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
