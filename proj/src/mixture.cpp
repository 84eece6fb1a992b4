#include "ridpolar/mixture.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ridpolar {

std::string to_string(ContinuousFamily f) {
  switch (f) {
    case ContinuousFamily::kGaussian:
      return "gaussian";
    case ContinuousFamily::kLaplace:
      return "laplace";
    case ContinuousFamily::kUniform:
      return "uniform";
  }
  return "unknown";
}

ContinuousFamily family_from_string(const std::string& name) {
  if (name == "gaussian") return ContinuousFamily::kGaussian;
  if (name == "laplace") return ContinuousFamily::kLaplace;
  if (name == "uniform") return ContinuousFamily::kUniform;
  throw std::invalid_argument("family: unknown continuous family '" + name +
                              "' (expected gaussian, laplace or uniform)");
}

MixtureSpec MixtureSpec::bernoulli_gaussian(double delta) {
  MixtureSpec s;
  s.delta = delta;
  s.validate();
  return s;
}

void MixtureSpec::validate() const {
  if (!(delta >= 0.0 && delta <= 1.0))
    throw std::invalid_argument("delta: value " + std::to_string(delta) + " outside [0, 1]");
  if (atoms.empty()) throw std::invalid_argument("atoms: at least one atom is required");
  double total = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!(atoms[i].probability >= 0.0) || !std::isfinite(atoms[i].location))
      throw std::invalid_argument("atoms[" + std::to_string(i) + "]: invalid atom");
    total += atoms[i].probability;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("atoms: probabilities sum to " + std::to_string(total) +
                                ", expected 1");
}

bool MixtureSpec::is_spike_at_zero() const {
  return atoms.size() == 1 && atoms.front().location == 0.0;
}

double MixtureSpec::sample_continuous(CounterRng& rng) const {
  switch (family) {
    case ContinuousFamily::kGaussian:
      return rng.normal();
    case ContinuousFamily::kLaplace: {
      // scale 1/sqrt(2) gives unit variance
      const double u = rng.uniform01() - 0.5;
      const double mag = -std::log1p(-2.0 * std::abs(u)) / std::numbers::sqrt2;
      return u < 0 ? -mag : mag;
    }
    case ContinuousFamily::kUniform:
      return std::numbers::sqrt3 * (2.0 * rng.uniform01() - 1.0);
  }
  return 0.0;
}

double MixtureSpec::sample(CounterRng& rng) const {
  const bool continuous = rng.bernoulli(delta);
  if (continuous) return sample_continuous(rng);
  if (atoms.size() == 1) return atoms.front().location;
  double u = rng.uniform01();
  for (const auto& a : atoms) {
    if (u < a.probability) return a.location;
    u -= a.probability;
  }
  return atoms.back().location;
}

std::vector<double> MixtureSpec::sample(std::size_t count, CounterRng& rng) const {
  std::vector<double> out(count);
  for (auto& v : out) v = sample(rng);
  return out;
}

MixtureSpec mixture_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("prior: expected a JSON object");
  MixtureSpec s;
  if (!j.contains("delta") || !j.at("delta").is_number())
    throw std::invalid_argument("delta: missing or not a number");
  s.delta = j.at("delta").get<double>();
  if (j.contains("family")) {
    if (!j.at("family").is_string()) throw std::invalid_argument("family: expected a string");
    s.family = family_from_string(j.at("family").get<std::string>());
  }
  if (j.contains("atoms")) {
    const auto& ja = j.at("atoms");
    if (!ja.is_array()) throw std::invalid_argument("atoms: expected an array");
    s.atoms.clear();
    for (std::size_t i = 0; i < ja.size(); ++i) {
      const auto& a = ja[i];
      if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
        throw std::invalid_argument("atoms[" + std::to_string(i) +
                                    "]: expected [location, probability]");
      s.atoms.push_back({a[0].get<double>(), a[1].get<double>()});
    }
  }
  s.validate();
  return s;
}

nlohmann::json mixture_to_json(const MixtureSpec& s) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& a : s.atoms) atoms.push_back({a.location, a.probability});
  return {{"delta", s.delta}, {"family", to_string(s.family)}, {"atoms", atoms}};
}

}  // namespace ridpolar
