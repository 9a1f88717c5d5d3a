#include "khardy/kaon_state.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace khardy {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void require_lifetime(const TwoKaonState& state, const char* op) {
    if (state.left != Basis::Lifetime || state.right != Basis::Lifetime) {
        throw std::invalid_argument(std::string(op) +
                                    ": state must be in the lifetime basis");
    }
}

TwoKaonState normalized(TwoKaonState state) {
    const double n2 = state.norm_squared();
    if (!(n2 > 0.0)) {
        throw std::domain_error("cannot normalize a null state");
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : state.amp) a *= inv;
    return state;
}

}  // namespace

void PhysicsParams::validate() const {
    if (!std::isfinite(gamma_s) || !std::isfinite(gamma_l) ||
        !std::isfinite(delta_m)) {
        throw std::domain_error("physics parameters must be finite");
    }
    if (!(gamma_l >= 0.0) || !(gamma_s > gamma_l)) {
        throw std::domain_error("physics requires gamma_s > gamma_l >= 0");
    }
}

void RegenParams::validate() const {
    if (!std::isfinite(magnitude) || !std::isfinite(phase)) {
        throw std::domain_error("regeneration parameter must be finite");
    }
    if (!(magnitude >= 0.0) || magnitude >= 1.0) {
        throw std::domain_error(
            "regeneration magnitude must lie in [0, 1): perturbative regime");
    }
}

double TwoKaonState::norm_squared() const {
    double sum = 0.0;
    for (const auto& a : amp) sum += std::norm(a);
    return sum;
}

TwoKaonState make_antisymmetric(Basis basis) {
    TwoKaonState s;
    s.amp = {Complex(0.0), Complex(kInvSqrt2), Complex(-kInvSqrt2),
             Complex(0.0)};
    s.left = basis;
    s.right = basis;
    return s;
}

TwoKaonState make_state_from_weights(Complex ll, Complex ss) {
    const double inv =
        1.0 / std::sqrt(2.0 + std::norm(ll) + std::norm(ss));
    TwoKaonState s;
    s.amp = {ss * inv, Complex(inv), Complex(-inv), ll * inv};
    s.left = Basis::Lifetime;
    s.right = Basis::Lifetime;
    return s;
}

TwoKaonState make_hardy_state() {
    return make_state_from_weights(Complex(-1.0), Complex(0.0));
}

TwoKaonState transform_basis(const TwoKaonState& state, Basis left,
                             Basis right) {
    TwoKaonState out = state;
    if (left != out.left) {
        for (int j = 0; j < 2; ++j) {
            const Complex a = out.amp[j];
            const Complex b = out.amp[2 + j];
            out.amp[j] = (a + b) * kInvSqrt2;
            out.amp[2 + j] = (a - b) * kInvSqrt2;
        }
        out.left = left;
    }
    if (right != out.right) {
        for (int i = 0; i < 2; ++i) {
            const Complex a = out.amp[2 * i];
            const Complex b = out.amp[2 * i + 1];
            out.amp[2 * i] = (a + b) * kInvSqrt2;
            out.amp[2 * i + 1] = (a - b) * kInvSqrt2;
        }
        out.right = right;
    }
    return out;
}

TwoKaonState apply_regenerator(const TwoKaonState& state, const RegenParams& r,
                               Side side) {
    require_lifetime(state, "apply_regenerator");
    r.validate();
    const Complex rv = r.value();
    TwoKaonState out = state;
    if (side == Side::Right) {
        for (int i = 0; i < 2; ++i) {
            const Complex a_s = out.amp[2 * i];
            const Complex a_l = out.amp[2 * i + 1];
            out.amp[2 * i] = a_s + rv * a_l;
            out.amp[2 * i + 1] = a_l + rv * a_s;
        }
    } else {
        for (int j = 0; j < 2; ++j) {
            const Complex a_s = out.amp[j];
            const Complex a_l = out.amp[2 + j];
            out.amp[j] = a_s + rv * a_l;
            out.amp[2 + j] = a_l + rv * a_s;
        }
    }
    return normalized(out);
}

EvolutionResult evolve_undecayed(const TwoKaonState& state, double t,
                                 const PhysicsParams& params) {
    require_lifetime(state, "evolve_undecayed");
    params.validate();
    if (!(t >= 0.0)) {
        throw std::domain_error("evolution time must be >= 0");
    }
    // exp(i delta_m t) on K_S relative to K_L (global K_L phase dropped),
    // decay weights exp(-gamma t / 2) per side.
    const Complex f_s =
        std::polar(std::exp(-0.5 * params.gamma_s * t), params.delta_m * t);
    const Complex f_l = Complex(std::exp(-0.5 * params.gamma_l * t));
    const std::array<Complex, 2> f = {f_s, f_l};

    EvolutionResult result;
    result.state = state;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            result.state.amp[2 * i + j] *= f[i] * f[j];
        }
    }
    // Ratio, not the raw post-evolution norm: exact 1.0 at t = 0 and
    // insensitive to rounding in the input normalization.
    result.survival_probability =
        result.state.norm_squared() / state.norm_squared();
    result.state = normalized(result.state);
    return result;
}

Complex ll_weight(const RegenParams& r, double t, const PhysicsParams& params) {
    r.validate();
    params.validate();
    if (!(t >= 0.0)) {
        throw std::domain_error("evolution time must be >= 0");
    }
    const double growth = std::exp(0.5 * (params.gamma_s - params.gamma_l) * t);
    return -r.value() * std::polar(growth, -params.delta_m * t);
}

Complex ss_weight(const RegenParams& r, Complex ll) {
    r.validate();
    if (ll == Complex(0.0)) {
        throw std::domain_error("ss_weight: ll weight must be nonzero");
    }
    const Complex rv = r.value();
    return -rv * rv / ll;
}

bool states_equal_up_to_phase(const TwoKaonState& a, const TwoKaonState& b,
                              double tol) {
    if (a.left != b.left || a.right != b.right) return false;
    std::size_t lead = 0;
    for (std::size_t i = 1; i < a.amp.size(); ++i) {
        if (std::abs(a.amp[i]) > std::abs(a.amp[lead])) lead = i;
    }
    if (std::abs(a.amp[lead]) == 0.0) {
        return b.norm_squared() <= tol * tol;
    }
    if (std::abs(b.amp[lead]) == 0.0) return false;
    const Complex rot = (b.amp[lead] / std::abs(b.amp[lead])) *
                        std::conj(a.amp[lead] / std::abs(a.amp[lead]));
    for (std::size_t i = 0; i < a.amp.size(); ++i) {
        if (std::abs(a.amp[i] * rot - b.amp[i]) > tol) return false;
    }
    return true;
}

}  // namespace khardy
