#include "ridpolar/phase_transition.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

#include "ridpolar/encoder.hpp"

namespace ridpolar {

std::string to_string(Algorithm a) { return a == Algorithm::kAmp ? "amp" : "l1"; }

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "amp") return Algorithm::kAmp;
  if (name == "l1") return Algorithm::kL1;
  throw std::invalid_argument("algo: unknown algorithm '" + name + "' (expected amp or l1)");
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("RIDPOLAR_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void PtConfig::validate() const {
  if (n > 16) throw std::invalid_argument("n: level must be <= 16");
  if (delta_grid.empty()) throw std::invalid_argument("delta_grid: must be nonempty");
  if (rate_grid.empty()) throw std::invalid_argument("rate_grid: must be nonempty");
  for (double d : delta_grid)
    if (!(d >= 0.0 && d <= 1.0)) throw std::invalid_argument("delta_grid: value outside [0, 1]");
  for (std::size_t i = 0; i < rate_grid.size(); ++i) {
    if (!(rate_grid[i] > 0.0 && rate_grid[i] <= 1.0))
      throw std::invalid_argument("rate_grid: value outside (0, 1]");
    if (i > 0 && rate_grid[i] <= rate_grid[i - 1])
      throw std::invalid_argument("rate_grid: must be increasing");
  }
  if (trials == 0) throw std::invalid_argument("trials: must be >= 1");
  if (!(target_mse > 0.0)) throw std::invalid_argument("target_mse: must be > 0");
  if (!(success_threshold > 0.0 && success_threshold <= 1.0))
    throw std::invalid_argument("success_threshold: value outside (0, 1]");
  if (algo == Algorithm::kAmp && family != ContinuousFamily::kGaussian)
    throw std::invalid_argument("family: the AMP denoiser is matched to the gaussian family only");
}

std::vector<double> uniform_grid(double step) {
  if (!(step > 0.0 && step <= 1.0)) throw std::invalid_argument("step: value outside (0, 1]");
  const auto count = static_cast<std::size_t>(std::llround(1.0 / step));
  std::vector<double> g;
  for (std::size_t k = 1; k <= count; ++k) g.push_back(static_cast<double>(k) / static_cast<double>(count));
  return g;
}

std::vector<double> pt_signal(const PtConfig& config, std::size_t delta_index, double delta,
                              std::size_t trial) {
  MixtureSpec spec;
  spec.delta = delta;
  spec.family = config.family;
  CounterRng rng(config.seed, (static_cast<std::uint64_t>(delta_index) << 32) | trial);
  return spec.sample(std::size_t{1} << config.n, rng);
}

namespace {

PtRow sweep_one(const PtConfig& c, std::size_t delta_index) {
  const double delta = c.delta_grid[delta_index];
  const std::size_t size = std::size_t{1} << c.n;
  const auto need =
      static_cast<std::size_t>(std::ceil(c.success_threshold * static_cast<double>(c.trials) - 1e-9));
  MixtureSpec spec;
  spec.delta = delta;
  spec.family = c.family;

  std::vector<std::vector<double>> signals(c.trials);
  PtRow row{delta, c.algo, c.family, std::numeric_limits<double>::quiet_NaN(), 0.0};
  for (double rate : c.rate_grid) {
    const auto m = static_cast<std::size_t>(std::llround(rate * static_cast<double>(size)));
    const MeasurementPlan plan = build_top_rows(c.n, delta, m);
    std::size_t ok = 0, bad = 0;
    for (std::size_t t = 0; t < c.trials && bad + need <= c.trials; ++t) {
      if (signals[t].empty()) signals[t] = pt_signal(c, delta_index, delta, t);
      const auto& x = signals[t];
      bool success;
      if (m == 0) {
        double s = 0.0;
        for (double v : x) s += v * v;
        success = s / static_cast<double>(size) <= c.target_mse;
      } else {
        const std::vector<double> y = measure(plan, x);
        if (c.algo == Algorithm::kAmp) {
          AmpOptions o;
          o.max_iters = c.amp_max_iters;
          o.target_mse = c.target_mse;
          success = amp_recover(y, plan, spec, o, x).success;
        } else {
          L1Options o;
          o.max_iters = c.l1_max_iters;
          o.tol = c.l1_tol;
          o.target_mse = c.target_mse;
          success = l1_recover(y, plan, o, x).success;
        }
      }
      (success ? ok : bad) += 1;
    }
    if (bad + need <= c.trials) {
      row.min_rate = rate;
      row.success_prob = static_cast<double>(ok) / static_cast<double>(c.trials);
      break;
    }
  }
  return row;
}

}  // namespace

std::vector<PtRow> pt_sweep(const PtConfig& config) {
  config.validate();
  std::vector<PtRow> rows(config.delta_grid.size());
  const unsigned threads = std::min<std::size_t>(
      config.threads ? config.threads : default_thread_count(), config.delta_grid.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = sweep_one(config, i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < rows.size() && !failed; i = next++) {
        try {
          rows[i] = sweep_one(config, i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return rows;
}

PtConfig pt_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  PtConfig c;
  auto read = [&](const char* key, auto& out) {
    if (!j.contains(key)) return;
    try {
      j.at(key).get_to(out);
    } catch (const nlohmann::json::exception&) {
      throw std::invalid_argument(std::string(key) + ": wrong type");
    }
  };
  read("n", c.n);
  read("delta_grid", c.delta_grid);
  read("rate_grid", c.rate_grid);
  if (j.contains("rate_step") && !j.contains("rate_grid")) {
    double step = 0.025;
    read("rate_step", step);
    c.rate_grid = uniform_grid(step);
  }
  if (c.rate_grid.empty()) c.rate_grid = uniform_grid(0.025);
  std::string family = to_string(c.family), algo = to_string(c.algo);
  read("family", family);
  read("algo", algo);
  c.family = family_from_string(family);
  c.algo = algorithm_from_string(algo);
  read("trials", c.trials);
  read("target_mse", c.target_mse);
  read("success_threshold", c.success_threshold);
  read("seed", c.seed);
  read("threads", c.threads);
  read("amp_max_iters", c.amp_max_iters);
  read("l1_max_iters", c.l1_max_iters);
  read("l1_tol", c.l1_tol);
  return c;
}

nlohmann::json pt_config_to_json(const PtConfig& c) {
  return {{"n", c.n},
          {"delta_grid", c.delta_grid},
          {"rate_grid", c.rate_grid},
          {"family", to_string(c.family)},
          {"algo", to_string(c.algo)},
          {"trials", c.trials},
          {"target_mse", c.target_mse},
          {"success_threshold", c.success_threshold},
          {"seed", c.seed},
          {"amp_max_iters", c.amp_max_iters},
          {"l1_max_iters", c.l1_max_iters},
          {"l1_tol", c.l1_tol}};
}

}  // namespace ridpolar
