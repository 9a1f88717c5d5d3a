#pragma once

#include <array>

#include "khardy/physics.hpp"

namespace khardy {

/*
 * Two-kaon pure states and the operations of a regeneration experiment:
 * basis changes between the lifetime and strangeness views, the thin
 * regenerator slab, and decay-weighted free evolution restricted to the
 * undecayed subensemble.
 *
 * Basis vector order per side:
 *   Lifetime    = { K_S, K_L }
 *   Strangeness = { K0, K0bar }
 * with K_S = (K0 + K0bar)/sqrt(2) and K_L = (K0 - K0bar)/sqrt(2)
 * (CP violation neglected). Amplitude index = 2*left + right.
 */

enum class Basis { Lifetime, Strangeness };
enum class Side { Left, Right };

struct TwoKaonState {
    std::array<Complex, 4> amp{};
    Basis left = Basis::Lifetime;
    Basis right = Basis::Lifetime;

    double norm_squared() const;
};

// Result of propagating the undecayed subensemble: the renormalized state
// together with the probability that both kaons survived to that time.
struct EvolutionResult {
    TwoKaonState state;
    double survival_probability = 1.0;
};

// Maximally entangled antisymmetric pair, amplitudes (0, 1/sqrt2, -1/sqrt2, 0)
// tagged with the requested basis. The antisymmetric combination has the same
// amplitude pattern in every basis, so no transform is involved.
TwoKaonState make_antisymmetric(Basis basis = Basis::Lifetime);

// State proportional to
//   K_S K_L - K_L K_S + ll * K_L K_L + ss * K_S K_S,
// normalized by sqrt(2 + |ll|^2 + |ss|^2), in the lifetime basis.
TwoKaonState make_state_from_weights(Complex ll, Complex ss);

// The ll = -1, ss = 0 member of the family above, whose joint probabilities
// realize the Hardy-type contradiction.
TwoKaonState make_hardy_state();

// Re-expresses the state in the requested per-side bases. The per-side mixing
// matrix is its own inverse, so the same map serves both directions and the
// round trip restores the input exactly up to rounding.
TwoKaonState transform_basis(const TwoKaonState& state, Basis left, Basis right);

// Thin coherent regenerator acting on one beam of a lifetime-basis state:
//   K_S -> K_S + r K_L,   K_L -> K_L + r K_S   (to first order in r),
// followed by renormalization. Rejects |r| >= 1 and non-lifetime input.
TwoKaonState apply_regenerator(const TwoKaonState& state, const RegenParams& r,
                               Side side);

// Free evolution of both kaons for proper time t (in tau_S), keeping only the
// undecayed subensemble: amplitudes pick up exp(i delta_m t) on K_S relative
// to K_L plus the decay weights exp(-gamma t / 2), then the state is
// renormalized. The squared norm before renormalization is the survival
// probability. Requires a lifetime-basis state and t >= 0.
EvolutionResult evolve_undecayed(const TwoKaonState& state, double t,
                                 const PhysicsParams& params);

// Weight of the K_L K_L component (relative to the antisymmetric part) that a
// right-side regenerator r develops after evolving for time t:
//   -r * exp( (gamma_s - gamma_l) t / 2 ) * exp( -i delta_m t ).
// Its magnitude grows with t; the Hardy condition is ll = -1.
Complex ll_weight(const RegenParams& r, double t, const PhysicsParams& params);

// Companion K_S K_S weight, ss = -r^2 / ll. Rejects ll = 0.
Complex ss_weight(const RegenParams& r, Complex ll);

// Physical equality: component-wise within tol after aligning the global
// phase. The phase is fixed on the largest-magnitude amplitude of `a` (at
// least 1/2 for a normalized state), which keeps the alignment
// well-conditioned even when other amplitudes are relatively tiny.
bool states_equal_up_to_phase(const TwoKaonState& a, const TwoKaonState& b,
                              double tol = 1e-12);

}  // namespace khardy
