#pragma once

#include "ridpolar/mixture.hpp"

namespace ridpolar {

struct DenoiseResult {
  double value = 0.0;
  double derivative = 0.0;
};

/// Posterior mean E[X | X + tau W = u] and its derivative in u, for
/// X ~ (1 - delta) sum_k p_k delta_{a_k} + delta N(0, 1) and W ~ N(0, 1).
///
/// The continuous family must be Gaussian. At tau = 0 the observation is
/// exact: the result is (u, 1) when delta > 0, otherwise the nearest atom
/// with derivative 0.
DenoiseResult denoise_bg(double u, double tau, const MixtureSpec& spec);

}  // namespace ridpolar
