#pragma once

// Information dimension of linear images of independent nonsingular
// variables, computed from ranks of column-restricted integer matrices.
//
// A model X = A Z has Z_j independent, each continuous with probability
// delta_j. For a continuity pattern Theta (true = continuous), C_Theta is the
// set of continuous columns and
//   d(X)     = E[ rank(A_C) ]
//   d(X | Y) = E[ rank([A;B]_C) - rank(B_C) ]   for Y = B Z.
// Exact mode enumerates all 2^k patterns; Monte Carlo mode samples them.

#include <cstddef>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "ridpolar/int_matrix.hpp"

namespace ridpolar {

struct LinearModel {
  IntMatrix a;
  std::vector<double> deltas;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct OracleLimits {
  /// Largest column count enumerated exactly (2^k patterns).
  std::size_t max_exact_columns = 22;
  /// Largest N = 2^n (or k*N for joint profiles) for exact profiles.
  std::size_t max_exact_profile_columns = 16;
  unsigned max_mc_level = 12;
};

enum class OracleMethod { kExact, kMonteCarlo };
enum class RowOrder { kSylvester, kShuffled };

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

double rid_exact(const LinearModel& m, const OracleLimits& limits = {});
Rational rid_exact(const IntMatrix& a, const std::vector<Rational>& deltas,
                   const OracleLimits& limits = {});

double cond_rid_exact(const LinearModel& m, const IntMatrix& b, const OracleLimits& limits = {});
Rational cond_rid_exact(const IntMatrix& a, const std::vector<Rational>& deltas, const IntMatrix& b,
                        const OracleLimits& limits = {});

McEstimate rid_mc(const LinearModel& m, std::size_t trials, std::uint64_t seed);
McEstimate cond_rid_mc(const LinearModel& m, const IntMatrix& b, std::size_t trials,
                       std::uint64_t seed);

/// I_R(X;Y) = d(X) - d(X|Y).
double renyi_info(const LinearModel& m, const IntMatrix& b, const OracleLimits& limits = {});
Rational renyi_info(const IntMatrix& a, const std::vector<Rational>& deltas, const IntMatrix& b,
                    const OracleLimits& limits = {});

struct ProfileEstimate {
  std::vector<double> values;
  std::vector<double> std_errors;  // zeros in exact mode
};

/// Entry i: d(Z_i | Z_1..Z_{i-1}) for Z = H_N X with X i.i.d., continuous
/// with probability delta, as E[influence(H^{i-1}; h_i)[C_Theta]].
ProfileEstimate hadamard_rid_profile(unsigned n, double delta, OracleMethod method,
                                     std::size_t trials = 0, std::uint64_t seed = 0,
                                     RowOrder order = RowOrder::kSylvester,
                                     const OracleLimits& limits = {});
std::vector<Rational> hadamard_rid_profile_rational(unsigned n, const Rational& delta,
                                                    RowOrder order = RowOrder::kSylvester,
                                                    const OracleLimits& limits = {});

/// Two-terminal profiles for X = sum a_j E_j, Y = sum b_j E_j:
///   i_profile[i] = d(Z_i | Z^{i-1}),  j_profile[i] = d(W_i | W^{i-1}, Z^N)
/// with Z = H_N X, W = H_N Y, evaluated on the Kronecker matrices H_N (x) a^T.
struct JointProfile {
  ProfileEstimate i_profile;
  ProfileEstimate j_profile;
};
struct JointProfileRational {
  std::vector<Rational> i_profile;
  std::vector<Rational> j_profile;
};

JointProfile joint_rid_profile(unsigned n, const std::vector<std::int64_t>& a,
                               const std::vector<std::int64_t>& b, const std::vector<double>& deltas,
                               OracleMethod method, std::size_t trials = 0,
                               std::uint64_t seed = 0, const OracleLimits& limits = {});
JointProfileRational joint_rid_profile_rational(unsigned n, const std::vector<std::int64_t>& a,
                                                const std::vector<std::int64_t>& b,
                                                const std::vector<Rational>& deltas,
                                                const OracleLimits& limits = {});

LinearModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const LinearModel& m);

}  // namespace ridpolar
