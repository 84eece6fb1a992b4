#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ridpolar/encoder.hpp"
#include "ridpolar/mixture.hpp"

namespace ridpolar {

struct IterationRecord {
  std::size_t iter = 0;
  double mse = 0.0;  // NaN when the true signal is not supplied
  double tau = 0.0;  // AMP: effective noise level; l1: regularization weight
};

struct RecoveryTrace {
  std::vector<IterationRecord> iterations;
  std::vector<double> estimate;
  double final_mse = 0.0;
  bool success = false;
  bool converged = false;
  bool diverged = false;
  /// ||Phi_S x_hat - y|| / ||y|| (0 when y = 0).
  double relative_residual = 0.0;
};

enum class TauRule { kEmpirical, kStateEvolution };

struct AmpOptions {
  std::size_t max_iters = 1000;
  double target_mse = 0.01;
  TauRule tau_rule = TauRule::kEmpirical;
};

/// AMP with the prior-matched posterior-mean denoiser on A = Phi_S / sqrt(m):
///   z_t     = y - A x_t + (1/gamma) z_{t-1} <eta'_{t-1}>
///   x_{t+1} = eta_t(A^T z_t + x_t)
/// starting from x_0 = 0, z_{-1} = 0, with gamma = m / N.
/// `truth`, when non-empty, is used only for the per-iteration MSE.
RecoveryTrace amp_recover(std::span<const double> y, const MeasurementPlan& plan,
                          const MixtureSpec& spec, const AmpOptions& options = {},
                          std::span<const double> truth = {});

/// One step of the scalar state evolution: (1/gamma) E[(eta(X + tau W) - X)^2].
double state_evolution_step(double tau, double gamma, const MixtureSpec& spec);

/// E[(eta(X + tau W) - X)^2] by composite Simpson quadrature.
double denoiser_mse(double tau, const MixtureSpec& spec);

struct L1Options {
  std::size_t max_iters = 2000;
  double tol = 1e-6;
  double target_mse = 0.01;
};

/// Basis pursuit min ||x||_1 s.t. Phi_S x = y: FISTA with adaptive restart
/// on lambda ||x||_1 + 0.5 ||A x - b||^2 (A = Phi_S / sqrt(N), which has
/// orthonormal rows), lambda halved between stages, then an exact projection
/// onto the constraint set.
RecoveryTrace l1_recover(std::span<const double> y, const MeasurementPlan& plan,
                         const L1Options& options = {}, std::span<const double> truth = {});

}  // namespace ridpolar
