#pragma once

#include <complex>

namespace khardy {

using Complex = std::complex<double>;

/*
 * Unit conventions used throughout:
 *   - proper time is measured in K_S lifetimes (tau_S = 1/Gamma_S),
 *   - decay rates are measured in units of Gamma_S,
 *   - hbar = 1, so the mass splitting delta_m is also in units of Gamma_S.
 * Default values are the standard Gamma_S/Gamma_L ~ 579 and
 * delta_m/Gamma_S ~ 0.47 ratios of the neutral kaon system.
 */
struct PhysicsParams {
    double gamma_s = 1.0;
    double gamma_l = 1.0 / 579.0;
    double delta_m = 0.47;  // m_L - m_S, positive for the defaults

    // Requires gamma_s > gamma_l >= 0 and finite delta_m.
    void validate() const;
};

// Coherent regeneration parameter r, stored as magnitude and phase (radians).
// The perturbative regime requires magnitude < 1; typical configured values
// lie in [1e-3, 1e-2].
struct RegenParams {
    double magnitude = 0.005;
    double phase = 0.0;

    Complex value() const { return std::polar(magnitude, phase); }

    // Requires 0 <= magnitude < 1 and finite phase.
    void validate() const;
};

}  // namespace khardy
