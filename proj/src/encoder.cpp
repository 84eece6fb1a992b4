#include "ridpolar/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ridpolar/erasure.hpp"
#include "ridpolar/exact_linalg.hpp"
#include "ridpolar/hadamard.hpp"

namespace ridpolar {
namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("epsilon: value " + std::to_string(epsilon) +
                                " outside (0, 1)");
}

void check_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::invalid_argument(std::string(name) + ": value " + std::to_string(v) +
                                " outside [0, 1]");
}

double off_mass(const std::vector<double>& values, const std::vector<std::size_t>& rows) {
  std::vector<char> kept(values.size(), 0);
  for (auto r : rows) kept[r - 1] = 1;
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!kept[i]) sum += values[i];
  return sum;
}

MeasurementPlan threshold_plan(unsigned n, double delta, double epsilon) {
  MeasurementPlan plan;
  plan.level = n;
  plan.threshold = epsilon * delta;
  if (delta == 0.0) return plan;
  const ErasureProfile p = erasure_profile(delta, n);
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.values[i] >= plan.threshold) plan.rows.push_back(i + 1);
  plan.rate = static_cast<double>(plan.rows.size()) / static_cast<double>(p.size());
  plan.rep_bound = off_mass(p.values, plan.rows) / (static_cast<double>(p.size()) * delta);
  return plan;
}

}  // namespace

MeasurementPlan build_single(unsigned n, double delta, double epsilon) {
  check_epsilon(epsilon);
  check_unit(delta, "delta");
  return threshold_plan(n, delta, epsilon);
}

MeasurementPlan build_top_rows(unsigned n, double delta, std::size_t m) {
  check_unit(delta, "delta");
  const ErasureProfile p = erasure_profile(delta, n);
  if (m > p.size())
    throw std::invalid_argument("m: " + std::to_string(m) + " rows requested from N = " +
                                std::to_string(p.size()));
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p.values[a] > p.values[b]; });
  MeasurementPlan plan;
  plan.level = n;
  for (std::size_t k = 0; k < m; ++k) plan.rows.push_back(order[k] + 1);
  std::sort(plan.rows.begin(), plan.rows.end());
  plan.threshold = m == 0 ? 1.0 : p.values[order[m - 1]];
  plan.rate = static_cast<double>(m) / static_cast<double>(p.size());
  plan.rep_bound =
      delta == 0.0 ? 0.0 : off_mass(p.values, plan.rows) / (static_cast<double>(p.size()) * delta);
  return plan;
}

MultiPlan build_multi(unsigned n, double d_x, double d_y_given_x, double epsilon) {
  check_epsilon(epsilon);
  check_unit(d_x, "d_x");
  check_unit(d_y_given_x, "d_y_given_x");
  MultiPlan out;
  out.plan_x = threshold_plan(n, d_x, epsilon);
  out.plan_y = threshold_plan(n, d_y_given_x, epsilon);
  const double total = d_x + d_y_given_x;
  if (total > 0.0) {
    const auto size = static_cast<double>(out.plan_x.size());
    const double residual_x = out.plan_x.rep_bound * size * d_x;
    const double residual_y = out.plan_y.rep_bound * size * d_y_given_x;
    out.joint_rep_bound = (residual_x + residual_y) / (size * total);
  }
  return out;
}

RatePoint time_share(const RatePoint& a, const RatePoint& b, double lambda) {
  check_unit(lambda, "lambda");
  return {lambda * a.rho_x + (1.0 - lambda) * b.rho_x, lambda * a.rho_y + (1.0 - lambda) * b.rho_y};
}

double off_plan_mass(const MeasurementPlan& plan, double delta) {
  check_unit(delta, "delta");
  return off_mass(erasure_profile(delta, plan.level).values, plan.rows);
}

MeasurementPlan universal_plan(unsigned n, const std::vector<double>& deltas, double epsilon) {
  if (deltas.empty()) throw std::invalid_argument("deltas: the set is empty");
  for (std::size_t i = 0; i < deltas.size(); ++i)
    if (!(deltas[i] > 0.0 && deltas[i] <= 1.0))
      throw std::invalid_argument("deltas[" + std::to_string(i) + "]: value " +
                                  std::to_string(deltas[i]) + " outside (0, 1]");
  return build_single(n, *std::max_element(deltas.begin(), deltas.end()), epsilon);
}

std::vector<double> measure(const MeasurementPlan& plan, std::span<const double> x) {
  if (x.size() != plan.size())
    throw std::invalid_argument("measure: signal length " + std::to_string(x.size()) +
                                " does not match N = " + std::to_string(plan.size()));
  std::vector<double> full(x.begin(), x.end());
  fwht_inplace(full);
  std::vector<double> y(plan.rows.size());
  for (std::size_t k = 0; k < plan.rows.size(); ++k) y[k] = full[plan.rows[k] - 1];
  return y;
}

std::vector<double> measure_adjoint(const MeasurementPlan& plan, std::span<const double> v) {
  if (v.size() != plan.rows.size())
    throw std::invalid_argument("measure_adjoint: length " + std::to_string(v.size()) +
                                " does not match " + std::to_string(plan.rows.size()) + " rows");
  std::vector<double> full(plan.size(), 0.0);
  for (std::size_t k = 0; k < plan.rows.size(); ++k) full[plan.rows[k] - 1] = v[k];
  fwht_inplace(full);  // H is symmetric
  return full;
}

RepAudit rep_audit_empirical(const MeasurementPlan& plan, const MixtureSpec& spec, unsigned q,
                             std::size_t samples, std::uint64_t seed) {
  spec.validate();
  if (spec.delta == 0.0)
    throw std::invalid_argument("delta: the ratio is undefined for a source with zero dimension");
  if (q < 2) throw std::invalid_argument("q: quantization level must be >= 2");
  if (samples == 0) throw std::invalid_argument("samples: must be >= 1");

  const std::size_t size = plan.size();
  const std::size_t m = plan.rows.size();
  std::vector<std::vector<std::int64_t>> rows;
  rows.reserve(m);
  for (auto r : plan.rows) rows.push_back(hadamard_row(plan.level, r));

  std::vector<double> res(samples), dim(samples);
  std::vector<std::size_t> cont;
  std::vector<std::int64_t> sub;
  for (std::size_t s = 0; s < samples; ++s) {
    CounterRng rng(seed, s);
    cont.clear();
    for (std::size_t j = 0; j < size; ++j)
      if (rng.bernoulli(spec.delta)) cont.push_back(j);
    std::size_t rank = 0;
    if (!cont.empty() && m > 0) {
      sub.assign(m * cont.size(), 0);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < cont.size(); ++j) sub[i * cont.size() + j] = rows[i][cont[j]];
      rank = m * cont.size() <= 4096 ? rank_int(sub, m, cont.size())
                                     : rank_mod_prime(sub, m, cont.size());
    }
    dim[s] = static_cast<double>(cont.size());
    res[s] = static_cast<double>(cont.size() - rank);
  }

  RepAudit out;
  out.samples = samples;
  const double total_dim = std::accumulate(dim.begin(), dim.end(), 0.0);
  const double total_res = std::accumulate(res.begin(), res.end(), 0.0);
  if (total_dim == 0.0) return out;
  out.ratio = total_res / total_dim;
  if (samples > 1) {
    const double mean_dim = total_dim / static_cast<double>(samples);
    double ss = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
      const double d = res[s] - out.ratio * dim[s];
      ss += d * d;
    }
    const auto n = static_cast<double>(samples);
    out.std_error = std::sqrt(ss / (n * (n - 1.0))) / mean_dim;
  }
  return out;
}

RegionCheck region_check(const RatePoint& p, double d_x_given_y, double d_y_given_x, double d_xy,
                         double epsilon) {
  constexpr double kSlack = 1e-12;
  RegionCheck out;
  if (p.rho_x + p.rho_y < d_xy * (1.0 - epsilon) - kSlack)
    out.violations.push_back("rho_x + rho_y >= d(X,Y)(1 - eps)");
  if (p.rho_x < d_x_given_y - epsilon * d_xy - kSlack)
    out.violations.push_back("rho_x >= d(X|Y) - eps d(X,Y)");
  if (p.rho_y < d_y_given_x - epsilon * d_xy - kSlack)
    out.violations.push_back("rho_y >= d(Y|X) - eps d(X,Y)");
  out.inside = out.violations.empty();
  return out;
}

nlohmann::json plan_to_json(const MeasurementPlan& plan) {
  return {{"n", plan.level},
          {"rows", plan.rows},
          {"threshold", plan.threshold},
          {"rate", plan.rate},
          {"rep_bound", plan.rep_bound}};
}

MeasurementPlan plan_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("plan: expected a JSON object");
  for (const char* key : {"n", "rows"})
    if (!j.contains(key)) throw std::invalid_argument(std::string(key) + ": missing");
  if (!j.at("n").is_number_unsigned() || j.at("n").get<unsigned>() > 24)
    throw std::invalid_argument("n: expected an integer level in [0, 24]");
  if (!j.at("rows").is_array()) throw std::invalid_argument("rows: expected an array");
  MeasurementPlan plan;
  plan.level = j.at("n").get<unsigned>();
  const std::size_t size = plan.size();
  for (std::size_t k = 0; k < j.at("rows").size(); ++k) {
    const auto& r = j.at("rows")[k];
    if (!r.is_number_unsigned() || r.get<std::size_t>() < 1 || r.get<std::size_t>() > size)
      throw std::invalid_argument("rows[" + std::to_string(k) + "]: expected an index in [1, " +
                                  std::to_string(size) + "]");
    plan.rows.push_back(r.get<std::size_t>());
  }
  std::vector<std::size_t> sorted = plan.rows;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("rows: duplicate row index");
  plan.rate = static_cast<double>(plan.rows.size()) / static_cast<double>(size);
  if (j.contains("threshold")) plan.threshold = j.at("threshold").get<double>();
  if (j.contains("rep_bound")) plan.rep_bound = j.at("rep_bound").get<double>();
  return plan;
}

}  // namespace ridpolar
