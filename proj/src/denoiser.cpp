#include "ridpolar/denoiser.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ridpolar {

DenoiseResult denoise_bg(double u, double tau, const MixtureSpec& spec) {
  if (!(tau >= 0.0)) throw std::invalid_argument("tau: must be >= 0");
  if (spec.family != ContinuousFamily::kGaussian)
    throw std::invalid_argument("family: the posterior mean needs a gaussian continuous part");

  if (tau == 0.0) {
    if (spec.delta > 0.0) return {u, 1.0};
    double best = spec.atoms.front().location;
    for (const auto& a : spec.atoms)
      if (a.probability > 0.0 && std::abs(a.location - u) < std::abs(best - u)) best = a.location;
    return {best, 0.0};
  }

  const double t2 = tau * tau;

  struct Comp {
    double logw;
    double score;  // d/du log likelihood
    double mean;   // posterior mean given the component
    double slope;  // d/du of mean
  };
  std::vector<Comp> comps;
  comps.reserve(spec.atoms.size() + 1);
  if (spec.delta > 0.0) {
    const double v = 1.0 + t2;
    comps.push_back({std::log(spec.delta) - 0.5 * std::log(v) - 0.5 * u * u / v, -u / v, u / v,
                     1.0 / v});
  }
  if (spec.delta < 1.0) {
    for (const auto& a : spec.atoms) {
      if (a.probability <= 0.0) continue;
      const double r = u - a.location;
      comps.push_back({std::log((1.0 - spec.delta) * a.probability) - 0.5 * std::log(t2) -
                           0.5 * r * r / t2,
                       -r / t2, a.location, 0.0});
    }
  }

  double top = -std::numeric_limits<double>::infinity();
  for (const auto& c : comps) top = std::max(top, c.logw);
  double total = 0.0;
  std::vector<double> w(comps.size());
  for (std::size_t k = 0; k < comps.size(); ++k) {
    w[k] = std::exp(comps[k].logw - top);
    total += w[k];
  }
  double value = 0.0, mean_score = 0.0;
  for (std::size_t k = 0; k < comps.size(); ++k) {
    w[k] /= total;
    value += w[k] * comps[k].mean;
    mean_score += w[k] * comps[k].score;
  }
  double derivative = 0.0;
  for (std::size_t k = 0; k < comps.size(); ++k)
    derivative += w[k] * (comps[k].slope + (comps[k].score - mean_score) * comps[k].mean);
  return {value, derivative};
}

}  // namespace ridpolar
