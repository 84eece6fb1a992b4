#include "ridpolar/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include "ridpolar/csv_svg.hpp"
#include "ridpolar/encoder.hpp"
#include "ridpolar/entropy.hpp"
#include "ridpolar/erasure.hpp"
#include "ridpolar/phase_transition.hpp"
#include "ridpolar/recovery.hpp"
#include "ridpolar/rid_oracle.hpp"
#include "ridpolar/verify.hpp"

namespace ridpolar {
namespace {

using nlohmann::json;

constexpr int kValidationError = 1;
constexpr int kVerificationFailure = 2;

std::string read_file(const std::string& path, const std::string& what) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(what + ": cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path, const std::string& what) {
  try {
    return json::parse(read_file(path, what));
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(what + ": malformed JSON in '" + path + "': " + e.what());
  }
}

void write_file(const std::string& path, const std::string& content, const std::string& what) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument(what + ": cannot write '" + path + "'");
  out << content;
}

/// Whitespace-separated numbers, or a JSON array.
std::vector<double> read_vector(const std::string& path, const std::string& what) {
  const std::string text = read_file(path, what);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    try {
      return json::parse(text).get<std::vector<double>>();
    } catch (const json::exception& e) {
      throw std::invalid_argument(what + ": malformed array in '" + path + "': " + e.what());
    }
  }
  std::vector<double> v;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::logic_error&) {
      throw std::invalid_argument(what + ": entry " + std::to_string(v.size() + 1) +
                                  " ('" + tok + "') is not a number");
    }
  }
  return v;
}

std::string format_vector(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += fmt::format("{:.17g}\n", x);
  return s;
}

/// Options shared by every subcommand, plus config-file lookup where a flag
/// given on the command line wins over the config value.
struct Common {
  CLI::App* app = nullptr;
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  bool json_summary = false;
  json config = json::object();

  void add(CLI::App* sub, bool with_out = true) {
    app = sub;
    sub->add_option("--config", config_path, "JSON file with parameter values");
    sub->add_option("--seed", seed, "Seed for all randomness");
    sub->add_flag("--json", json_summary, "Print a JSON summary to stdout");
    if (with_out) sub->add_option("--out", out_path, "Output file");
  }

  void load() {
    if (!config_path.empty()) {
      config = read_json(config_path, "config");
      if (!config.is_object()) throw std::invalid_argument("config: expected a JSON object");
    }
    seed = pick("--seed", "seed", seed);
    out_path = pick("--out", "out", out_path);
  }

  template <class T>
  T pick(const std::string& flag, const std::string& key, const T& value) const {
    if (app->get_option_no_throw(flag) != nullptr && app->count(flag) > 0) return value;
    if (config.contains(key)) {
      try {
        return config.at(key).get<T>();
      } catch (const json::exception&) {
        throw std::invalid_argument(key + ": wrong type in config");
      }
    }
    return value;
  }

  template <class T>
  T require(const std::string& flag, const std::string& key, const T& value) const {
    if (app->count(flag) == 0 && !config.contains(key))
      throw std::invalid_argument(key + ": required (" + flag + " or config key)");
    return pick(flag, key, value);
  }

  /// Data goes to --out, or to stdout unless a JSON summary was requested.
  void emit(std::ostream& out, const std::string& data, const std::string& what) const {
    if (!out_path.empty())
      write_file(out_path, data, what);
    else if (!json_summary)
      out << data;
  }
};

MixtureSpec load_prior(const Common& c, const std::string& prior_path, double delta,
                       const std::string& family) {
  if (!prior_path.empty()) {
    MixtureSpec s = mixture_from_json(read_json(prior_path, "prior"));
    s.validate();
    return s;
  }
  MixtureSpec s;
  s.delta = c.require("--delta", "delta", delta);
  s.family = family_from_string(c.pick("--family", "family", family));
  s.validate();
  return s;
}

// erasure-profile ------------------------------------------------------------

struct ErasureCmd {
  Common c;
  double alpha = 0.5;
  unsigned n = 0;
  double lo = 0.1, hi = 0.9;

  void setup(CLI::App& app) {
    auto* sub = app.add_subcommand("erasure-profile", "Erasure-process profile as CSV");
    c.add(sub);
    sub->add_option("--alpha", alpha, "Initial value in [0, 1]");
    sub->add_option("--n", n, "Level (N = 2^n)");
    sub->add_option("--lo", lo, "Lower polarization threshold");
    sub->add_option("--hi", hi, "Upper polarization threshold");
  }

  int run(std::ostream& out) {
    c.load();
    alpha = c.require("--alpha", "alpha", alpha);
    n = c.require("--n", "n", n);
    const ErasureProfile p = erasure_profile(alpha, n);
    std::ostringstream csv;
    write_profile_csv(csv, p);
    c.emit(out, csv.str(), "out");
    const PolarizedFraction f = polarized_fraction(p, c.pick("--lo", "lo", lo), c.pick("--hi", "hi", hi));
    if (c.json_summary)
      out << json{{"n", n}, {"alpha", alpha}, {"size", p.size()}, {"mean", p.mean()},
                  {"frac_low", f.frac_low}, {"frac_high", f.frac_high}, {"frac_mid", f.frac_mid}}
                 .dump()
          << "\n";
    return 0;
  }
};

// rid ------------------------------------------------------------------------

struct RidCmd {
  Common c;
  std::string model_path, given_path, method = "exact";
  std::size_t trials = 10000;

  void setup(CLI::App& app) {
    auto* sub = app.add_subcommand("rid", "Information dimension of a linear model");
    c.add(sub, false);
    sub->add_option("--model", model_path, "Model JSON {A, deltas}");
    sub->add_option("--given", given_path, "Second observation JSON {B} for d(X|Y) and I(X;Y)");
    sub->add_option("--method", method, "exact or mc");
    sub->add_option("--trials", trials, "Monte Carlo trials");
  }

  int run(std::ostream& out) {
    c.load();
    model_path = c.require("--model", "model", model_path);
    given_path = c.pick("--given", "given", given_path);
    method = c.pick("--method", "method", method);
    trials = c.pick("--trials", "trials", trials);
    if (method != "exact" && method != "mc")
      throw std::invalid_argument("method: expected exact or mc, got '" + method + "'");
    const LinearModel m = model_from_json(read_json(model_path, "model"));
    json s = {{"method", method}, {"columns", m.a.cols()}};
    if (method == "exact") {
      s["d"] = rid_exact(m);
    } else {
      const McEstimate e = rid_mc(m, trials, c.seed);
      s["d"] = e.estimate;
      s["std_error"] = e.std_error;
    }
    if (!given_path.empty()) {
      const json g = read_json(given_path, "given");
      if (!g.is_object() || !g.contains("B")) throw std::invalid_argument("B: missing");
      const LinearModel gm = model_from_json({{"A", g.at("B")}, {"deltas", m.deltas}});
      if (method == "exact") {
        s["d_given"] = cond_rid_exact(m, gm.a);
        s["renyi_info"] = renyi_info(m, gm.a);
      } else {
        const McEstimate e = cond_rid_mc(m, gm.a, trials, c.seed);
        s["d_given"] = e.estimate;
        s["d_given_std_error"] = e.std_error;
      }
    }
    if (c.json_summary) {
      out << s.dump() << "\n";
    } else {
      fmt::print(out, "d(X) = {:.17g}\n", s["d"].get<double>());
      if (s.contains("d_given")) fmt::print(out, "d(X|Y) = {:.17g}\n", s["d_given"].get<double>());
      if (s.contains("renyi_info"))
        fmt::print(out, "I(X;Y) = {:.17g}\n", s["renyi_info"].get<double>());
    }
    return 0;
  }
};

// verify ---------------------------------------------------------------------

struct VerifyCmd {
  Common c;
  unsigned max_n = 3;
  std::size_t models = 500;

  void setup(CLI::App& app) {
    auto* sub = app.add_subcommand("verify", "Oracle cross-checks and property suite");
    c.add(sub, false);
    sub->add_option("--max-n", max_n, "Largest level for the profile checks (<= 4)");
    sub->add_option("--models", models, "Random models in the property suite");
  }

  int run(std::ostream& out) {
    c.load();
    VerifyOptions o;
    o.max_n = c.pick("--max-n", "max_n", max_n);
    o.models = c.pick("--models", "models", models);
    o.seed = c.seed;
    if (o.max_n > 4) throw std::invalid_argument("max_n: exact profiles are limited to n <= 4");
    const auto results = run_verification(o);
    bool all = true;
    json checks = json::array();
    for (const auto& r : results) {
      all = all && r.passed;
      checks.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
      if (!c.json_summary) fmt::print(out, "{}  {:<40}  {}\n", r.passed ? "PASS" : "FAIL", r.name, r.detail);
    }
    if (c.json_summary) out << json{{"passed", all}, {"checks", checks}}.dump() << "\n";
    return all ? 0 : kVerificationFailure;
  }
};

// plan / plan-multi ----------------------------------------------------------

struct PlanCmd {
  Common c;
  unsigned n = 0;
  double delta = 0.0, epsilon = 0.1;
  std::vector<double> deltas;

  void setup(CLI::App& app) {
    auto* sub = app.add_subcommand("plan", "Single-terminal measurement plan as JSON");
    c.add(sub);
    sub->add_option("--n", n, "Level (N = 2^n)");
    sub->add_option("--delta", delta, "Information dimension of the source");
    sub->add_option("--epsilon", epsilon, "REP slack in (0, 1)");
    sub->add_option("--deltas", deltas, "Comma-separated set for a universal plan")->delimiter(',');
  }

  int run(std::ostream& out) {
    c.load();
    n = c.require("--n", "n", n);
    epsilon = c.pick("--epsilon", "epsilon", epsilon);
    deltas = c.pick("--deltas", "deltas", deltas);
    const MeasurementPlan plan = deltas.empty()
                                     ? build_single(n, c.require("--delta", "delta", delta), epsilon)
                                     : universal_plan(n, deltas, epsilon);
    const json pj = plan_to_json(plan);
    c.emit(out, pj.dump() + "\n", "out");
    if (c.json_summary)
      out << json{{"measurements", plan.rows.size()}, {"rate", plan.rate},
                  {"threshold", plan.threshold}, {"rep_bound", plan.rep_bound}}
                 .dump()
          << "\n";
    return 0;
  }
};

struct PlanMultiCmd {
  Common c;
  unsigned n = 0;
  double dx = 0.0, dyx = 0.0, dxy_given = -1.0, epsilon = 0.1;

  void setup(CLI::App& app) {
    auto* sub = app.add_subcommand("plan-multi", "Two-terminal corner-point plans as JSON");
    c.add(sub);
    sub->add_option("--n", n, "Level (N = 2^n)");
    sub->add_option("--dx", dx, "d(X)");
    sub->add_option("--dyx", dyx, "d(Y|X)");
    sub->add_option("--dxgy", dxy_given, "d(X|Y), enables the region check");
    sub->add_option("--epsilon", epsilon, "REP slack in (0, 1)");
  }

  int run(std::ostream& out) {
    c.load();
    n = c.require("--n", "n", n);
    dx = c.require("--dx", "dx", dx);
    dyx = c.require("--dyx", "dyx", dyx);
    dxy_given = c.pick("--dxgy", "dxgy", dxy_given);
    epsilon = c.pick("--epsilon", "epsilon", epsilon);
    const MultiPlan mp = build_multi(n, dx, dyx, epsilon);
    const RatePoint rp = mp.rates();
    json doc = {{"plan_x", plan_to_json(mp.plan_x)},
                {"plan_y", plan_to_json(mp.plan_y)},
                {"rates", {rp.rho_x, rp.rho_y}},
                {"joint_rep_bound", mp.joint_rep_bound}};
    if (dxy_given >= 0.0) {
      const RegionCheck rc = region_check(rp, dxy_given, dyx, dx + dyx, epsilon);
      doc["region_check"] = {{"inside", rc.inside}, {"violations", rc.violations}};
    }
    c.emit(out, doc.dump() + "\n", "out");
    if (c.json_summary) {
      json s = {{"rates", {rp.rho_x, rp.rho_y}}, {"joint_rep_bound", mp.joint_rep_bound}};
      if (doc.contains("region_check")) s["region_check"] = doc["region_check"];
      out << s.dump() << "\n";
    }
    return 0;
  }
};

// measure / recover ----------------------------------------------------------

struct MeasureCmd {
  Common c;
  std::string plan_path, signal_path;

  void setup(CLI::App& app) {
    auto* sub = app.add_subcommand("measure", "Apply a plan to a signal");
    c.add(sub);
    sub->add_option("--plan", plan_path, "Plan JSON");
    sub->add_option("--signal", signal_path, "Signal file (one value per line or JSON array)");
  }

  int run(std::ostream& out) {
    c.load();
    const MeasurementPlan plan =
        plan_from_json(read_json(c.require("--plan", "plan", plan_path), "plan"));
    const auto x = read_vector(c.require("--signal", "signal", signal_path), "signal");
    const auto y = measure(plan, x);
    c.emit(out, format_vector(y), "out");
    if (c.json_summary) out << json{{"measurements", y.size()}, {"n", plan.level}}.dump() << "\n";
    return 0;
  }
};

struct RecoverCmd {
  Common c;
  std::string plan_path, y_path, prior_path, truth_path, trace_path;
  std::string algo = "amp", family = "gaussian", tau_rule = "empirical";
  double delta = 0.0, target_mse = 0.01, tol = 1e-6;
  std::size_t max_iters = 0;

  void setup(CLI::App& app) {
    auto* sub = app.add_subcommand("recover", "Recover a signal with AMP or basis pursuit");
    c.add(sub);
    sub->add_option("--plan", plan_path, "Plan JSON");
    sub->add_option("--measurements", y_path, "Measurement file");
    sub->add_option("--prior", prior_path, "Mixture JSON {delta, family, atoms}");
    sub->add_option("--delta", delta, "Bernoulli-Gaussian weight when no prior file is given");
    sub->add_option("--family", family, "Continuous family when no prior file is given");
    sub->add_option("--algo", algo, "amp or l1");
    sub->add_option("--truth", truth_path, "True signal, for the MSE trace");
    sub->add_option("--max-iters", max_iters, "Iteration limit (default 1000 for amp, 2000 for l1)");
    sub->add_option("--target-mse", target_mse, "Success threshold");
    sub->add_option("--tol", tol, "l1 stopping tolerance");
    sub->add_option("--tau-rule", tau_rule, "empirical or se");
    sub->add_option("--trace", trace_path, "Trace CSV iter,mse,tau");
  }

  int run(std::ostream& out) {
    c.load();
    const MeasurementPlan plan =
        plan_from_json(read_json(c.require("--plan", "plan", plan_path), "plan"));
    const auto y = read_vector(c.require("--measurements", "measurements", y_path), "measurements");
    truth_path = c.pick("--truth", "truth", truth_path);
    const auto truth = truth_path.empty() ? std::vector<double>{} : read_vector(truth_path, "truth");
    const Algorithm a = algorithm_from_string(c.pick("--algo", "algo", algo));
    target_mse = c.pick("--target-mse", "target_mse", target_mse);
    max_iters = c.pick("--max-iters", "max_iters", max_iters);

    RecoveryTrace trace;
    if (a == Algorithm::kAmp) {
      const MixtureSpec spec = load_prior(c, c.pick("--prior", "prior", prior_path), delta, family);
      AmpOptions o;
      if (max_iters) o.max_iters = max_iters;
      o.target_mse = target_mse;
      const std::string rule = c.pick("--tau-rule", "tau_rule", tau_rule);
      if (rule == "se")
        o.tau_rule = TauRule::kStateEvolution;
      else if (rule != "empirical")
        throw std::invalid_argument("tau_rule: expected empirical or se, got '" + rule + "'");
      trace = amp_recover(y, plan, spec, o, truth);
    } else {
      L1Options o;
      if (max_iters) o.max_iters = max_iters;
      o.tol = c.pick("--tol", "tol", tol);
      o.target_mse = target_mse;
      trace = l1_recover(y, plan, o, truth);
    }
    c.emit(out, format_vector(trace.estimate), "out");
    trace_path = c.pick("--trace", "trace", trace_path);
    if (!trace_path.empty()) {
      std::string csv = "iter,mse,tau\n";
      for (const auto& r : trace.iterations) csv += fmt::format("{},{:.17g},{:.17g}\n", r.iter, r.mse, r.tau);
      write_file(trace_path, csv, "trace");
    }
    if (c.json_summary) {
      json s = {{"algo", to_string(a)},
                {"iterations", trace.iterations.size()},
                {"converged", trace.converged},
                {"diverged", trace.diverged},
                {"relative_residual", trace.relative_residual}};
      if (!truth.empty()) {
        s["final_mse"] = trace.final_mse;
        s["success"] = trace.success;
      }
      out << s.dump() << "\n";
    }
    return 0;
  }
};

// pt-sweep -------------------------------------------------------------------

struct PtCmd {
  Common c;
  unsigned n = 9, threads = 0;
  std::vector<double> deltas;
  double rate_step = 0.025, target_mse = 0.01;
  std::string family = "gaussian", algo = "amp", svg_path, from_csv;
  std::size_t trials = 50;

  void setup(CLI::App& app) {
    auto* sub = app.add_subcommand("pt-sweep", "Phase-transition sweep to CSV and SVG");
    c.add(sub);
    sub->add_option("--n", n, "Level (N = 2^n)");
    sub->add_option("--deltas", deltas, "Comma-separated delta grid")->delimiter(',');
    sub->add_option("--rate-step", rate_step, "Rate grid step");
    sub->add_option("--family", family, "gaussian, laplace or uniform");
    sub->add_option("--algo", algo, "amp or l1");
    sub->add_option("--trials", trials, "Trials per grid point");
    sub->add_option("--target-mse", target_mse, "Success threshold");
    sub->add_option("--threads", threads, "Worker threads (default RIDPOLAR_THREADS or all cores)");
    sub->add_option("--svg", svg_path, "SVG plot path");
    sub->add_option("--from-csv", from_csv, "Only render the SVG from an existing sweep CSV");
  }

  int run(std::ostream& out) {
    c.load();
    svg_path = c.pick("--svg", "svg", svg_path);
    if (!from_csv.empty()) {
      if (svg_path.empty()) throw std::invalid_argument("svg: required with --from-csv");
      std::istringstream in(read_file(from_csv, "from-csv"));
      const auto rows = read_pt_csv(in);
      std::ostringstream svg;
      write_pt_svg(svg, rows);
      write_file(svg_path, svg.str(), "svg");
      if (c.json_summary) out << json{{"rows", rows.size()}}.dump() << "\n";
      return 0;
    }
    PtConfig cfg = pt_config_from_json(c.config);
    cfg.seed = c.seed;
    cfg.n = c.pick("--n", "n", n);
    if (c.app->count("--deltas")) cfg.delta_grid = deltas;
    if (c.app->count("--rate-step")) cfg.rate_grid = uniform_grid(rate_step);
    if (c.app->count("--family")) cfg.family = family_from_string(family);
    if (c.app->count("--algo")) cfg.algo = algorithm_from_string(algo);
    if (c.app->count("--trials")) cfg.trials = trials;
    if (c.app->count("--target-mse")) cfg.target_mse = target_mse;
    if (c.app->count("--threads")) cfg.threads = threads;
    if (cfg.delta_grid.empty())
      for (int k = 0; k <= 10; ++k) cfg.delta_grid.push_back(k / 10.0);
    cfg.validate();

    const auto rows = pt_sweep(cfg);
    std::ostringstream csv;
    write_pt_csv(csv, rows);
    c.emit(out, csv.str(), "out");
    if (!svg_path.empty()) {
      std::istringstream in(csv.str());
      std::ostringstream svg;
      write_pt_svg(svg, read_pt_csv(in));
      write_file(svg_path, svg.str(), "svg");
    }
    if (c.json_summary) {
      json pts = json::array();
      for (const auto& r : rows)
        pts.push_back({{"delta", r.delta},
                       {"min_rate", std::isnan(r.min_rate) ? json(nullptr) : json(r.min_rate)},
                       {"success_prob", r.success_prob}});
      out << json{{"config", pt_config_to_json(cfg)}, {"points", pts}}.dump() << "\n";
    }
    return 0;
  }
};

// absorption / rid-empirical -------------------------------------------------

struct AbsorptionCmd {
  Common c;
  unsigned n = 0;
  std::string pmf;

  void setup(CLI::App& app) {
    auto* sub = app.add_subcommand("absorption", "Exact conditional entropies of H_N X");
    c.add(sub);
    sub->add_option("--n", n, "Level (<= 4)");
    sub->add_option("--pmf", pmf, "Law as value:probability pairs, e.g. 0:19/20,1:1/20");
  }

  int run(std::ostream& out) {
    c.load();
    n = c.require("--n", "n", n);
    const auto law = pmf_from_string(c.require("--pmf", "pmf", pmf));
    const auto profile = absorption_profile_exact(n, law);
    std::ostringstream csv;
    write_absorption_csv(csv, profile);
    c.emit(out, csv.str(), "out");
    if (c.json_summary) {
      const double h = entropy_bits(law);
      double sum = 0.0;
      std::size_t below = 0;
      for (double v : profile) {
        sum += v;
        below += v < h;
      }
      out << json{{"n", n}, {"entropy_bits", h}, {"sum", sum},
                  {"expected_sum", static_cast<double>(profile.size()) * h}, {"below_entropy", below}}
                 .dump()
          << "\n";
    }
    return 0;
  }
};

struct RidEmpiricalCmd {
  Common c;
  double delta = 0.0;
  std::string family = "gaussian", prior_path;
  std::vector<std::int64_t> q_list = {16, 32, 64, 128, 256, 512, 1024};
  std::size_t samples = 1000000;

  void setup(CLI::App& app) {
    auto* sub = app.add_subcommand("rid-empirical", "Plug-in entropy estimate of the information dimension");
    c.add(sub);
    sub->add_option("--prior", prior_path, "Mixture JSON {delta, family, atoms}");
    sub->add_option("--delta", delta, "Continuous weight when no prior file is given");
    sub->add_option("--family", family, "Continuous family when no prior file is given");
    sub->add_option("--q-list", q_list, "Comma-separated increasing levels")->delimiter(',');
    sub->add_option("--samples", samples, "Sample count");
  }

  int run(std::ostream& out) {
    c.load();
    const MixtureSpec spec = load_prior(c, c.pick("--prior", "prior", prior_path), delta, family);
    const auto est = rid_empirical(spec, c.pick("--q-list", "q_list", q_list),
                                   c.pick("--samples", "samples", samples), c.seed);
    std::ostringstream csv;
    write_rid_csv(csv, est);
    c.emit(out, csv.str(), "out");
    if (c.json_summary)
      out << json{{"slope", est.slope}, {"q_list", est.q_list}, {"ratios", est.ratios}}.dump() << "\n";
    return 0;
  }
};

// audit-rep ------------------------------------------------------------------

struct AuditCmd {
  Common c;
  std::string plan_path, prior_path, family = "gaussian";
  double delta = 0.0;
  unsigned q = 1024;
  std::size_t samples = 200;

  void setup(CLI::App& app) {
    auto* sub = app.add_subcommand("audit-rep", "Monte Carlo REP ratio of a plan");
    c.add(sub, false);
    sub->add_option("--plan", plan_path, "Plan JSON");
    sub->add_option("--prior", prior_path, "Mixture JSON {delta, family, atoms}");
    sub->add_option("--delta", delta, "Continuous weight when no prior file is given");
    sub->add_option("--family", family, "Continuous family when no prior file is given");
    sub->add_option("--q", q, "Quantization level (>= 2)");
    sub->add_option("--samples", samples, "Continuity patterns to sample");
  }

  int run(std::ostream& out) {
    c.load();
    const MeasurementPlan plan =
        plan_from_json(read_json(c.require("--plan", "plan", plan_path), "plan"));
    const MixtureSpec spec = load_prior(c, c.pick("--prior", "prior", prior_path), delta, family);
    const RepAudit a = rep_audit_empirical(plan, spec, c.pick("--q", "q", q),
                                           c.pick("--samples", "samples", samples), c.seed);
    if (c.json_summary)
      out << json{{"ratio", a.ratio}, {"std_error", a.std_error}, {"samples", a.samples}}.dump() << "\n";
    else
      fmt::print(out, "ratio = {:.6g} +- {:.2g} ({} samples)\n", a.ratio, a.std_error, a.samples);
    return 0;
  }
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Information dimension, Hadamard polarization and partial-Hadamard recovery"};
  app.require_subcommand(1);
  ErasureCmd erasure;
  RidCmd rid;
  VerifyCmd verify;
  PlanCmd plan;
  PlanMultiCmd plan_multi;
  MeasureCmd meas;
  RecoverCmd recover;
  PtCmd pt;
  AbsorptionCmd absorption;
  RidEmpiricalCmd rid_emp;
  AuditCmd audit;
  erasure.setup(app);
  rid.setup(app);
  verify.setup(app);
  plan.setup(app);
  plan_multi.setup(app);
  meas.setup(app);
  recover.setup(app);
  pt.setup(app);
  absorption.setup(app);
  rid_emp.setup(app);
  audit.setup(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  }

  try {
    if (erasure.c.app->parsed()) return erasure.run(out);
    if (rid.c.app->parsed()) return rid.run(out);
    if (verify.c.app->parsed()) return verify.run(out);
    if (plan.c.app->parsed()) return plan.run(out);
    if (plan_multi.c.app->parsed()) return plan_multi.run(out);
    if (meas.c.app->parsed()) return meas.run(out);
    if (recover.c.app->parsed()) return recover.run(out);
    if (pt.c.app->parsed()) return pt.run(out);
    if (absorption.c.app->parsed()) return absorption.run(out);
    if (rid_emp.c.app->parsed()) return rid_emp.run(out);
    if (audit.c.app->parsed()) return audit.run(out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  }
  return kValidationError;
}

}  // namespace ridpolar
