#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ridpolar/rng.hpp"

namespace ridpolar {

/// Unit-variance continuous component of a mixture source.
enum class ContinuousFamily { kGaussian, kLaplace, kUniform };

std::string to_string(ContinuousFamily f);
ContinuousFamily family_from_string(const std::string& name);

struct Atom {
  double location = 0.0;
  double probability = 1.0;
};

/// X = Theta U + (1 - Theta) V with Theta ~ Bernoulli(delta), U drawn from
/// the continuous family, V from the atom list.
struct MixtureSpec {
  double delta = 0.0;
  ContinuousFamily family = ContinuousFamily::kGaussian;
  std::vector<Atom> atoms{{0.0, 1.0}};

  static MixtureSpec bernoulli_gaussian(double delta);

  void validate() const;
  bool is_spike_at_zero() const;

  double sample(CounterRng& rng) const;
  std::vector<double> sample(std::size_t count, CounterRng& rng) const;
  /// Draw from the continuous family alone.
  double sample_continuous(CounterRng& rng) const;
};

MixtureSpec mixture_from_json(const nlohmann::json& j);
nlohmann::json mixture_to_json(const MixtureSpec& s);

}  // namespace ridpolar
