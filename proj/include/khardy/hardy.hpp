#pragma once

#include <array>
#include <string>

#include "khardy/measurement.hpp"

namespace khardy {

/*
 * Solving for the Hardy condition and classifying experimental results.
 *
 * A right-side regenerator of magnitude r develops the K_L K_L weight
 * ll(t) = -r exp((gamma_s - gamma_l) t / 2) exp(-i delta_m t); the Hardy
 * condition ll = -1 fixes both the flight time and the phase of r.
 */

struct HardyCertificate {
    double t_hardy = 0.0;       // proper time with |ll| = 1, in tau_S
    double regen_phase = 0.0;   // required arg(r) in [0, 2pi) so that ll = -1
    Complex ll_value;           // achieved ll weight (== -1 up to rounding)
    Complex ss_value;           // residual ss weight at t_hardy
    // (P(K0,K_L), P(K_L,K0bar), P(K_S,K_S)) of the full achieved state,
    // ideal detectors. The first two vanish identically at ll = -1; the
    // third is the O(r^4) leftover of the ss weight.
    std::array<double, 3> residuals{};
    // P(K0,K0bar) with the ss weight neglected: exactly 1/12 at ll = -1.
    double fraction = 0.0;
    // Set when t_hardy < 10 tau_S, where the neglected ss weight is no
    // longer bounded by 7e-3 * r.
    bool short_flight_warning = false;
};

// Solves |ll(t)| = 1 in closed form, t = 2 ln(1/r_abs) / (gamma_s - gamma_l),
// and picks arg(r) = delta_m * t (mod 2pi) so that ll = -1.
// Requires r_abs in (0, 1).
HardyCertificate solve_hardy_time(double r_abs, const PhysicsParams& params);

// The three probabilities that must vanish for the Hardy argument, evaluated
// on a given normalized state with ideal detectors.
std::array<double, 3> hardy_residuals(const TwoKaonState& state);

enum class Verdict { LrRefuted, QmRefuted, Inconclusive };

const char* verdict_name(Verdict v);

struct VerdictReport {
    Verdict verdict = Verdict::Inconclusive;
    std::string detail;
};

// What quantum mechanics predicts for P(K0,K0bar), used to tell an
// inconclusive run from one that refutes the quantum prediction itself.
struct QmExpectation {
    double p_k0_k0bar = 1.0 / 12.0;
    double exclusion_tolerance = 0.0;
};

// Classifies measured Hardy observables against per-observable tolerances:
//   - any of P(K0,K_L), P(K_L,K0bar), P(K_S,K_S) above tolerance
//       -> Inconclusive (names the failing observable);
//   - P(K0,K0bar) above the local-realistic bound
//     P(K0,K_L) + P(K_L,K0bar) + P(K_S,K_S) + sum of tolerances
//       -> LrRefuted;
//   - all four compatible with zero but the expected P(K0,K0bar) excluded
//       -> QmRefuted;
//   - otherwise Inconclusive.
// Tolerances follow the observable order of HardyObservables.
VerdictReport contradiction_verdict(const HardyObservables& observed,
                                    const std::array<double, 4>& tolerances,
                                    const QmExpectation& expected = {});

}  // namespace khardy
