#include "ridpolar/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ridpolar/denoiser.hpp"
#include "ridpolar/hadamard.hpp"

namespace ridpolar {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

double mse(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s / static_cast<double>(a.size());
}

/// Phi_S scaled by a constant, applied through the fast transform.
class ScaledOperator {
 public:
  ScaledOperator(const MeasurementPlan& plan, double scale)
      : plan_(plan), scale_(scale), buf_(plan.size()) {}

  void forward(std::span<const double> x, std::span<double> out) {
    std::copy(x.begin(), x.end(), buf_.begin());
    fwht_inplace(buf_);
    for (std::size_t k = 0; k < plan_.rows.size(); ++k) out[k] = scale_ * buf_[plan_.rows[k] - 1];
  }

  void adjoint(std::span<const double> v, std::span<double> out) {
    std::fill(buf_.begin(), buf_.end(), 0.0);
    for (std::size_t k = 0; k < plan_.rows.size(); ++k) buf_[plan_.rows[k] - 1] = v[k];
    fwht_inplace(buf_);
    for (std::size_t i = 0; i < buf_.size(); ++i) out[i] = scale_ * buf_[i];
  }

 private:
  const MeasurementPlan& plan_;
  double scale_;
  std::vector<double> buf_;
};

void check_inputs(std::span<const double> y, const MeasurementPlan& plan,
                  std::span<const double> truth) {
  if (plan.rows.empty()) throw std::invalid_argument("plan: zero-rate plan has no measurements");
  if (y.size() != plan.rows.size())
    throw std::invalid_argument("y: length " + std::to_string(y.size()) + " does not match " +
                                std::to_string(plan.rows.size()) + " plan rows");
  if (!truth.empty() && truth.size() != plan.size())
    throw std::invalid_argument("truth: length " + std::to_string(truth.size()) +
                                " does not match N = " + std::to_string(plan.size()));
}

double relative_residual(const MeasurementPlan& plan, std::span<const double> x,
                         std::span<const double> y) {
  const std::vector<double> fx = measure(plan, x);
  double r = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) r += (fx[k] - y[k]) * (fx[k] - y[k]);
  const double ny = norm2(y);
  return ny > 0.0 ? std::sqrt(r / ny) : std::sqrt(r);
}

template <class F>
double simpson(F&& f, double lo, double hi, std::size_t intervals) {
  const double h = (hi - lo) / static_cast<double>(intervals);
  double s = f(lo) + f(hi);
  for (std::size_t i = 1; i < intervals; ++i)
    s += (i % 2 ? 4.0 : 2.0) * f(lo + h * static_cast<double>(i));
  return s * h / 3.0;
}

double std_normal_pdf(double w) { return std::exp(-0.5 * w * w) / std::sqrt(2.0 * std::numbers::pi); }

}  // namespace

double denoiser_mse(double tau, const MixtureSpec& spec) {
  if (!(tau >= 0.0)) throw std::invalid_argument("tau: must be >= 0");
  if (tau == 0.0) return 0.0;
  constexpr double kLimit = 12.0;
  constexpr std::size_t kIntervals = 4800;
  const double t2 = tau * tau;
  double total = 0.0;
  if (spec.delta < 1.0) {
    for (const auto& a : spec.atoms) {
      if (a.probability <= 0.0) continue;
      const double part = simpson(
          [&](double w) {
            const double e = denoise_bg(a.location + tau * w, tau, spec).value - a.location;
            return std_normal_pdf(w) * e * e;
          },
          -kLimit, kLimit, kIntervals);
      total += (1.0 - spec.delta) * a.probability * part;
    }
  }
  if (spec.delta > 0.0) {
    const double s = std::sqrt(1.0 + t2);
    const double part = simpson(
        [&](double v) {
          const double u = s * v;
          const double e = denoise_bg(u, tau, spec).value - u / (1.0 + t2);
          return std_normal_pdf(v) * e * e;
        },
        -kLimit, kLimit, kIntervals);
    total += spec.delta * (part + t2 / (1.0 + t2));
  }
  return total;
}

double state_evolution_step(double tau, double gamma, const MixtureSpec& spec) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma: must be > 0");
  return denoiser_mse(tau, spec) / gamma;
}

RecoveryTrace amp_recover(std::span<const double> y, const MeasurementPlan& plan,
                          const MixtureSpec& spec, const AmpOptions& options,
                          std::span<const double> truth) {
  check_inputs(y, plan, truth);
  spec.validate();
  if (spec.family != ContinuousFamily::kGaussian)
    throw std::invalid_argument("family: AMP denoiser needs a gaussian continuous part");

  const std::size_t size = plan.size();
  const std::size_t m = plan.rows.size();
  const double gamma = static_cast<double>(m) / static_cast<double>(size);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  ScaledOperator op(plan, scale);

  std::vector<double> ya(m);
  for (std::size_t k = 0; k < m; ++k) ya[k] = scale * y[k];
  const double signal_level = norm2(ya) / static_cast<double>(m);

  double second_moment = spec.delta;
  for (const auto& a : spec.atoms)
    second_moment += (1.0 - spec.delta) * a.probability * a.location * a.location;
  double tau2_se = second_moment / gamma;

  RecoveryTrace trace;
  std::vector<double> xh(size, 0.0), xnew(size), r(size), ax(m), z(m), zprev(m, 0.0);
  double onsager = 0.0;
  for (std::size_t t = 0; t < options.max_iters; ++t) {
    op.forward(xh, ax);
    for (std::size_t k = 0; k < m; ++k) z[k] = ya[k] - ax[k] + onsager / gamma * zprev[k];
    const double tau2 =
        options.tau_rule == TauRule::kEmpirical ? norm2(z) / static_cast<double>(m) : tau2_se;
    if (!std::isfinite(tau2) || tau2 > 1e12 * (signal_level + 1.0)) {
      trace.diverged = true;
      break;
    }
    const double tau = tau2 < 1e-300 ? 0.0 : std::sqrt(tau2);

    op.adjoint(z, r);
    double deriv_sum = 0.0, change = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < size; ++i) {
      const DenoiseResult d = denoise_bg(r[i] + xh[i], tau, spec);
      xnew[i] = d.value;
      deriv_sum += d.derivative;
      change += (d.value - xh[i]) * (d.value - xh[i]);
      finite = finite && std::isfinite(d.value);
    }
    const double err = truth.empty() ? kNaN : mse(xnew, truth);
    trace.iterations.push_back({t + 1, err, tau});
    if (!finite || (!truth.empty() && err > 1e6)) {
      trace.diverged = true;
      xh.swap(xnew);
      break;
    }
    xh.swap(xnew);
    zprev.swap(z);
    onsager = deriv_sum / static_cast<double>(size);
    if (options.tau_rule == TauRule::kStateEvolution) tau2_se = state_evolution_step(tau, gamma, spec);

    if (tau2 <= 1e-28 * signal_level || change <= 1e-28 * std::max(norm2(xh), 1e-300)) {
      trace.converged = true;
      break;
    }
  }

  trace.estimate = xh;
  trace.relative_residual = relative_residual(plan, xh, y);
  if (truth.empty()) {
    trace.final_mse = kNaN;
  } else {
    trace.final_mse = mse(xh, truth);
    trace.success = !trace.diverged && trace.final_mse <= options.target_mse;
  }
  return trace;
}

RecoveryTrace l1_recover(std::span<const double> y, const MeasurementPlan& plan,
                         const L1Options& options, std::span<const double> truth) {
  check_inputs(y, plan, truth);
  if (!(options.tol > 0.0)) throw std::invalid_argument("tol: must be > 0");

  const std::size_t size = plan.size();
  const std::size_t m = plan.rows.size();
  const double scale = 1.0 / std::sqrt(static_cast<double>(size));
  ScaledOperator op(plan, scale);

  std::vector<double> b(m);
  for (std::size_t k = 0; k < m; ++k) b[k] = scale * y[k];

  RecoveryTrace trace;
  std::vector<double> x(size, 0.0), xnew(size), yk(size, 0.0), grad(size), res(m);

  op.adjoint(b, grad);
  double lambda0 = 0.0;
  for (double g : grad) lambda0 = std::max(lambda0, std::abs(g));
  const double lambda_min = 1e-9 * lambda0;
  double lambda = 0.5 * lambda0;
  double t_k = 1.0;

  if (lambda0 == 0.0) {
    trace.converged = true;
    trace.iterations.push_back({1, truth.empty() ? kNaN : mse(x, truth), 0.0});
  }
  for (std::size_t it = 0; lambda0 > 0.0 && it < options.max_iters; ++it) {
    op.forward(yk, res);
    for (std::size_t k = 0; k < m; ++k) res[k] -= b[k];
    op.adjoint(res, grad);
    for (std::size_t i = 0; i < size; ++i) {
      const double v = yk[i] - grad[i];
      xnew[i] = std::copysign(std::max(std::abs(v) - lambda, 0.0), v);
    }
    double diff = 0.0, restart = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
      diff += (xnew[i] - x[i]) * (xnew[i] - x[i]);
      restart += (yk[i] - xnew[i]) * (xnew[i] - x[i]);
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_k * t_k));
    if (restart > 0.0) {
      t_k = 1.0;
      yk = xnew;
    } else {
      const double mom = (t_k - 1.0) / t_next;
      for (std::size_t i = 0; i < size; ++i) yk[i] = xnew[i] + mom * (xnew[i] - x[i]);
      t_k = t_next;
    }
    x.swap(xnew);
    trace.iterations.push_back({it + 1, truth.empty() ? kNaN : mse(x, truth), lambda});

    if (std::sqrt(diff) <= options.tol * std::max(std::sqrt(norm2(x)), 1e-300)) {
      if (lambda <= lambda_min) {
        trace.converged = true;
        break;
      }
      lambda = std::max(0.5 * lambda, lambda_min);
      t_k = 1.0;
      yk = x;
    }
  }

  // Exact projection onto {A x = b}; A has orthonormal rows.
  op.forward(x, res);
  for (std::size_t k = 0; k < m; ++k) res[k] -= b[k];
  op.adjoint(res, grad);
  for (std::size_t i = 0; i < size; ++i) x[i] -= grad[i];

  trace.estimate = x;
  trace.relative_residual = relative_residual(plan, x, y);
  if (truth.empty()) {
    trace.final_mse = kNaN;
  } else {
    trace.final_mse = mse(x, truth);
    trace.success = trace.final_mse <= options.target_mse;
  }
  return trace;
}

}  // namespace ridpolar
