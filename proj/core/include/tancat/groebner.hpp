/*
 * groebner.hpp
 * ------------
 * Buchberger's algorithm and Groebner normal forms over Q, fixed
 * grevlex order.  The S-polynomial loop uses the sugar selection
 * strategy and both of Buchberger's pair-discarding criteria, and a
 * step budget (default 10^6 reductions, overridable through the
 * TANCAT_STEP_BUDGET environment variable) guards runaway inputs.
 */
#pragma once

#include "tancat/poly.hpp"

namespace tancat {

struct StepBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Current budget: TANCAT_STEP_BUDGET if set, else 10^6.
long groebner_step_budget();

// Remainder of full multivariate division of p by basis (every term
// reduced).  The basis need not be a Groebner basis; the result is only
// canonical when it is.
Poly division_remainder(const Poly& p, const std::vector<Poly>& basis);

// Reduced Groebner basis of <gens>, monic, sorted ascending by leading
// monomial.  Throws StepBudgetExceeded when the reduction budget runs out.
std::vector<Poly> buchberger(const std::vector<Poly>& gens);

}  // namespace tancat
