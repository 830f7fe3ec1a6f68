#pragma once

#include "afx/linalg/types.hpp"

#include <optional>
#include <vector>

namespace afx {

enum class Relation { LessEq, GreaterEq, Equal };

/// coeffs . x  (rel)  rhs
struct LinearConstraint {
  RatVector coeffs;
  Relation rel = Relation::LessEq;
  Rat rhs = 0;
};

/// Infeasibility proof for a constraint system. Every constraint is read in
/// "<=" form (a ">=" row is negated); the multipliers y satisfy y_i >= 0 on
/// inequality rows, sum_i y_i a_i = 0 and sum_i y_i b_i < 0.
struct FarkasCertificate {
  RatVector multipliers;
};

struct LpResult {
  std::optional<RatVector> point;
  std::optional<FarkasCertificate> farkas;

  bool feasible() const { return point.has_value(); }
};

/// Decides feasibility of a system of rational linear constraints over Q^dim
/// with free variables. Returns an exact feasible point or a Farkas
/// certificate; exactly one of the two is set.
LpResult exact_lp_feasible(std::size_t dim, const std::vector<LinearConstraint>& constraints);

bool satisfies(const RatVector& x, const std::vector<LinearConstraint>& constraints);
bool verify_farkas(std::size_t dim, const std::vector<LinearConstraint>& constraints,
                   const FarkasCertificate& cert);

}  // namespace afx
