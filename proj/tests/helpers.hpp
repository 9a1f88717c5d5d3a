#pragma once

#include <cmath>
#include <random>

#include "khardy/kaon_state.hpp"

namespace khardy::testing {

// Haar-ish random normalized two-kaon state in the lifetime basis.
inline TwoKaonState random_state(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    TwoKaonState s;
    double n2 = 0.0;
    do {
        n2 = 0.0;
        for (auto& a : s.amp) {
            a = Complex(gauss(rng), gauss(rng));
            n2 += std::norm(a);
        }
    } while (n2 < 1e-12);
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : s.amp) a *= inv;
    s.left = Basis::Lifetime;
    s.right = Basis::Lifetime;
    return s;
}

inline TwoKaonState state_from_amps(Complex a0, Complex a1, Complex a2,
                                    Complex a3,
                                    Basis left = Basis::Lifetime,
                                    Basis right = Basis::Lifetime) {
    TwoKaonState s;
    s.amp = {a0, a1, a2, a3};
    s.left = left;
    s.right = right;
    return s;
}

}  // namespace khardy::testing
