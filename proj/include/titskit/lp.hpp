#pragma once

#include "titskit/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace titskit {

/// One row a·x (relation) rhs.
struct LinearConstraint {
  RationalVector normal;
  Rational rhs;
};

/// Conjunction of a·x = b, a·x > b and a·x >= b over x in Q^dim.
struct FeasibilityProblem {
  std::size_t dim = 0;
  std::vector<LinearConstraint> equalities;
  std::vector<LinearConstraint> strict;
  std::vector<LinearConstraint> weak;
};

/// Exact feasibility oracle. Returns a rational point satisfying every
/// constraint (strict ones strictly) or std::nullopt when none exists.
///
/// Two-phase dense simplex over Q with Bland's rule. Free variables are split
/// into positive and negative parts; strict rows share one slack s, capped at
/// 1, which phase two maximizes. The system is feasible iff the optimum s is
/// positive. Throws DimensionMismatch if a normal has the wrong length.
std::optional<RationalVector> lp_feasible(const FeasibilityProblem& problem);

}  // namespace titskit
