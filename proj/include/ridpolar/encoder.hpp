#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "ridpolar/mixture.hpp"

namespace ridpolar {

/// Rows of the Sylvester matrix H_N kept as measurements.
struct MeasurementPlan {
  unsigned level = 0;
  std::vector<std::size_t> rows;  // 1-based, ascending
  double threshold = 0.0;
  double rate = 0.0;
  /// Off-plan profile mass over N * d; zero when d = 0.
  double rep_bound = 0.0;

  std::size_t size() const { return std::size_t{1} << level; }
  std::size_t measurements() const { return rows.size(); }
};

struct RatePoint {
  double rho_x = 0.0;
  double rho_y = 0.0;
};

/// Keeps every row whose erasure-profile value is >= epsilon * delta.
MeasurementPlan build_single(unsigned n, double delta, double epsilon);

/// The m rows with the largest profile values (ties to the lower index).
MeasurementPlan build_top_rows(unsigned n, double delta, std::size_t m);

/// Corner-point plans for a two-terminal source: plan_x from the profile
/// with initial value d(X), plan_y from the profile with initial value d(Y|X).
struct MultiPlan {
  MeasurementPlan plan_x;
  MeasurementPlan plan_y;
  double joint_rep_bound = 0.0;

  RatePoint rates() const { return {plan_x.rate, plan_y.rate}; }
};

MultiPlan build_multi(unsigned n, double d_x, double d_y_given_x, double epsilon);

/// Rate pair of using corner `a` a fraction lambda of the time and `b` otherwise.
RatePoint time_share(const RatePoint& a, const RatePoint& b, double lambda);

/// Sum over rows outside the plan of the profile with initial value delta.
double off_plan_mass(const MeasurementPlan& plan, double delta);

/// Plan for the largest delta in the set; valid for every member because
/// profiles of smaller deltas are pointwise dominated.
MeasurementPlan universal_plan(unsigned n, const std::vector<double>& deltas, double epsilon);

/// Phi_S x: the Hadamard transform restricted to the plan rows, in plan order.
std::vector<double> measure(const MeasurementPlan& plan, std::span<const double> x);

/// Phi_S^T v for v indexed like the plan rows.
std::vector<double> measure_adjoint(const MeasurementPlan& plan, std::span<const double> v);

struct RepAudit {
  double ratio = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Monte Carlo estimate of d(X^N | Phi X^N) / d(X^N) from sampled
/// continuity patterns: per pattern, |C| - rank(Phi_{S,C}) over |C|.
/// `q` is validated (>= 2) but the ratio is the high-resolution limit.
RepAudit rep_audit_empirical(const MeasurementPlan& plan, const MixtureSpec& spec, unsigned q,
                             std::size_t samples, std::uint64_t seed);

struct RegionCheck {
  bool inside = true;
  std::vector<std::string> violations;
};

/// Tests rho_x + rho_y >= d(X,Y)(1-eps), rho_x >= d(X|Y) - eps d(X,Y) and
/// rho_y >= d(Y|X) - eps d(X,Y).
RegionCheck region_check(const RatePoint& p, double d_x_given_y, double d_y_given_x, double d_xy,
                         double epsilon);

nlohmann::json plan_to_json(const MeasurementPlan& plan);
MeasurementPlan plan_from_json(const nlohmann::json& j);

}  // namespace ridpolar
