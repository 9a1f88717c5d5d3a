#pragma once

#include <array>
#include <optional>
#include <vector>

#include "khardy/measurement.hpp"

namespace khardy {

/*
 * Local hidden-variable analysis. A deterministic local strategy assigns a
 * definite answer to both questions on each side; local models are mixtures
 * of the 16 strategies. Feasibility of a set of observed values is decided
 * exactly with rational arithmetic, so the verdict carries no floating-point
 * caveat.
 */

struct LhvStrategy {
    Outcome left_strangeness = Outcome::K0;   // K0 or K0bar
    Outcome left_lifetime = Outcome::KS;      // KS or KL
    Outcome right_strangeness = Outcome::K0;
    Outcome right_lifetime = Outcome::KS;

    // Whether this strategy produces the joint outcome of observable
    // 0: (K0, K0bar), 1: (K0, K_L), 2: (K_L, K0bar), 3: (K_S, K_S).
    bool contributes(int observable) const;
};

// All 16 deterministic strategies, index = 8*[left K0bar] + 4*[left KL]
//                                        + 2*[right K0bar] + [right KL].
const std::array<LhvStrategy, 16>& enumerate_strategies();

// An interval constraint [max(0, target - tolerance), target + tolerance]
// on one observable; unset target leaves the observable free.
struct LhvConstraint {
    std::optional<double> target;
    double tolerance = 1e-9;
};

// Constraints in the observable order of HardyObservables.
struct LhvConstraints {
    LhvConstraint p_k0_k0bar;
    LhvConstraint p_k0_kl;
    LhvConstraint p_kl_k0bar;
    LhvConstraint p_ks_ks;
};

struct FeasibilityReport {
    bool feasible = false;
    // When feasible: 16 nonnegative strategy weights summing to 1 that
    // reproduce every constrained observable within its tolerance.
    std::vector<double> witness;
    // When infeasible: by how much the targets exceed the local bound
    // P(K0,K0bar) <= P(K0,K_L) + P(K_L,K0bar) + P(K_S,K_S) (the facet of the
    // local polytope behind the Hardy argument); falls back to the exact
    // phase-1 infeasibility residual when that bound is not the cause.
    double violation = 0.0;
    // Minimum feasible P(K_S,K_S), reported when it was left unconstrained
    // and the rest is feasible. Exact: with zero-tolerance dyadic targets the
    // value round-trips to the input double bit for bit.
    std::optional<double> min_p_ks_ks;
};

// Decides whether any mixture of deterministic local strategies reproduces
// the constrained observables, via an exact rational two-phase simplex.
// Rejects targets outside [0, 1] and negative tolerances.
FeasibilityReport lhv_feasibility(const LhvConstraints& constraints);

}  // namespace khardy
