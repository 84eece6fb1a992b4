#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ridpolar/int_matrix.hpp"

namespace ridpolar {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Rank-oracle Hadamard profile against the rational erasure profile,
/// compared entry by entry for exact equality.
CheckResult check_profile_equivalence(unsigned n, const Rational& delta);

/// Two-terminal profiles against erasure profiles started at d(X) and at
/// d(Y|X) (the latter from the conditional rank oracle).
CheckResult check_joint_equivalence(unsigned n, const std::vector<std::int64_t>& a,
                                    const std::vector<std::int64_t>& b,
                                    const std::vector<Rational>& deltas);

/// Chain rule, invariance under unimodular transforms, symmetry and
/// nonnegativity of Renyi information on random integer models.
CheckResult check_rid_properties(std::size_t models, std::uint64_t seed, double tol = 1e-12);

struct VerifyOptions {
  unsigned max_n = 3;
  std::uint64_t seed = 0;
  std::size_t models = 500;
};

std::vector<CheckResult> run_verification(const VerifyOptions& options);

}  // namespace ridpolar
