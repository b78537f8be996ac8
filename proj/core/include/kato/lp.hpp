#pragma once

#include <optional>
#include <vector>

#include "kato/exact.hpp"

namespace kato {

struct LinearConstraint {
  RatVec coeffs;
  Rat rhs;
};

/// Exact feasibility: find rational x with a.x == rhs for every equality and
/// a.x >= rhs for every inequality, or report absence. Phase-one simplex with
/// Bland's rule, so the answer is exact and the search cannot cycle.
std::optional<RatVec> lp_feasible(const std::vector<LinearConstraint>& equalities,
                                  const std::vector<LinearConstraint>& inequalities_ge);

}  // namespace kato
