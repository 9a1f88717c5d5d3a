#include "khardy/hardy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace khardy {

namespace {

std::string format_prob(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

}  // namespace

HardyCertificate solve_hardy_time(double r_abs, const PhysicsParams& params) {
    params.validate();
    if (!(r_abs > 0.0) || !(r_abs < 1.0)) {
        throw std::domain_error("solve_hardy_time: r_abs must lie in (0, 1)");
    }
    HardyCertificate cert;
    // |ll(t)| = r_abs * exp((gamma_s - gamma_l) t / 2) = 1.
    cert.t_hardy =
        2.0 * std::log(1.0 / r_abs) / (params.gamma_s - params.gamma_l);
    // ll carries exp(-i delta_m t) on top of the -r prefactor; cancelling the
    // oscillation phase leaves ll = -1.
    const double two_pi = 2.0 * std::numbers::pi;
    double phase = std::fmod(params.delta_m * cert.t_hardy, two_pi);
    if (phase < 0.0) phase += two_pi;
    cert.regen_phase = phase;

    const RegenParams r{r_abs, cert.regen_phase};
    cert.ll_value = ll_weight(r, cert.t_hardy, params);
    cert.ss_value = ss_weight(r, cert.ll_value);
    cert.residuals =
        hardy_residuals(make_state_from_weights(cert.ll_value, cert.ss_value));
    // The quoted fraction neglects the O(r^2) ss weight, as the argument does;
    // it is exactly 1/12 at ll = -1. The residuals above keep the full state.
    const TwoKaonState truncated =
        make_state_from_weights(cert.ll_value, Complex(0.0));
    cert.fraction = joint_probabilities(truncated, all_settings()[0])
                        .probability({Outcome::K0, Outcome::K0bar});
    cert.short_flight_warning = cert.t_hardy < 10.0;
    return cert;
}

std::array<double, 3> hardy_residuals(const TwoKaonState& state) {
    const auto& settings = all_settings();
    return {
        joint_probabilities(state, settings[1])
            .probability({Outcome::K0, Outcome::KL}),
        joint_probabilities(state, settings[2])
            .probability({Outcome::KL, Outcome::K0bar}),
        joint_probabilities(state, settings[3])
            .probability({Outcome::KS, Outcome::KS}),
    };
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::LrRefuted: return "LR-REFUTED";
        case Verdict::QmRefuted: return "QM-REFUTED";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

VerdictReport contradiction_verdict(const HardyObservables& observed,
                                    const std::array<double, 4>& tolerances,
                                    const QmExpectation& expected) {
    const std::array<double, 4> p = {observed.p_k0_k0bar, observed.p_k0_kl,
                                     observed.p_kl_k0bar, observed.p_ks_ks};
    static const std::array<const char*, 4> names = {
        "P(K0,K0bar)", "P(K0,KL)", "P(KL,K0bar)", "P(KS,KS)"};
    for (int i = 0; i < 4; ++i) {
        if (!(p[i] >= 0.0) || !(tolerances[i] >= 0.0)) {
            throw std::invalid_argument(
                "contradiction_verdict: observables and tolerances must be "
                "nonnegative");
        }
    }

    // The argument needs the three null observables to actually be null.
    for (int i = 1; i < 4; ++i) {
        if (p[i] > tolerances[i]) {
            return {Verdict::Inconclusive,
                    std::string(names[i]) + " not compatible with zero (" +
                        format_prob(p[i]) + " > " + format_prob(tolerances[i]) +
                        ")"};
        }
    }

    const double bound = p[1] + p[2] + p[3] + tolerances[0] + tolerances[1] +
                         tolerances[2] + tolerances[3];
    if (p[0] > bound) {
        return {Verdict::LrRefuted,
                std::string(names[0]) + " = " + format_prob(p[0]) +
                    " exceeds the local-realistic bound " + format_prob(bound)};
    }

    if (p[0] <= tolerances[0] &&
        expected.p_k0_k0bar - p[0] > expected.exclusion_tolerance) {
        return {Verdict::QmRefuted,
                "all four observables compatible with zero; expected " +
                    std::string(names[0]) + " = " +
                    format_prob(expected.p_k0_k0bar) + " excluded"};
    }

    return {Verdict::Inconclusive,
            std::string(names[0]) +
                " not separable from zero and from the local-realistic bound"};
}

}  // namespace khardy
