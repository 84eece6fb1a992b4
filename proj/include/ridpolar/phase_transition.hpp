#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ridpolar/mixture.hpp"
#include "ridpolar/recovery.hpp"

namespace ridpolar {

enum class Algorithm { kAmp, kL1 };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& name);

struct PtConfig {
  unsigned n = 9;
  std::vector<double> delta_grid;
  std::vector<double> rate_grid;
  ContinuousFamily family = ContinuousFamily::kGaussian;
  Algorithm algo = Algorithm::kAmp;
  std::size_t trials = 50;
  double target_mse = 0.01;
  double success_threshold = 0.5;
  std::uint64_t seed = 0;
  /// 0: RIDPOLAR_THREADS, else hardware concurrency.
  unsigned threads = 0;
  std::size_t amp_max_iters = 1000;
  std::size_t l1_max_iters = 2000;
  double l1_tol = 1e-6;

  void validate() const;
};

struct PtRow {
  double delta = 0.0;
  Algorithm algo = Algorithm::kAmp;
  ContinuousFamily family = ContinuousFamily::kGaussian;
  double min_rate = 0.0;  // NaN when no grid rate succeeds
  double success_prob = 0.0;
};

/// Rates from step to 1 in increments of step.
std::vector<double> uniform_grid(double step);

/// For each delta, rows are the m = round(rate N) largest erasure-profile
/// entries. Rates are scanned upward and the first one whose success
/// frequency reaches the threshold is reported. A rate is abandoned as soon
/// as enough failures make the threshold unreachable; trials at a given
/// (delta, trial index) reuse the same signal for every rate and algorithm.
std::vector<PtRow> pt_sweep(const PtConfig& config);

/// Signal for one sweep trial.
std::vector<double> pt_signal(const PtConfig& config, std::size_t delta_index, double delta,
                              std::size_t trial);

PtConfig pt_config_from_json(const nlohmann::json& j);
nlohmann::json pt_config_to_json(const PtConfig& c);

unsigned default_thread_count();

}  // namespace ridpolar
