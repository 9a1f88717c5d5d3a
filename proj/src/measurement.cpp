#include "khardy/measurement.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace khardy {

namespace {

Outcome outcome_for(Basis basis, int index) {
    if (basis == Basis::Strangeness) {
        return index == 0 ? Outcome::K0 : Outcome::K0bar;
    }
    return index == 0 ? Outcome::KS : Outcome::KL;
}

// Per-side classical response: (reported outcome, weight) pairs for one
// definite outcome. Weights sum to 1.
using Response = std::vector<std::pair<Outcome, double>>;

Response respond(Outcome o, const DetectorModel& d) {
    switch (o) {
        case Outcome::K0:
            return {{Outcome::K0, d.eta}, {Outcome::Unidentified, 1.0 - d.eta}};
        case Outcome::K0bar:
            return {{Outcome::K0bar, d.etabar},
                    {Outcome::Unidentified, 1.0 - d.etabar}};
        case Outcome::KS:
            return {{Outcome::KS, d.lifetime_eff * (1.0 - d.misid)},
                    {Outcome::KL, d.lifetime_eff * d.misid},
                    {Outcome::Unidentified, 1.0 - d.lifetime_eff}};
        case Outcome::KL:
            return {{Outcome::KL, d.lifetime_eff * (1.0 - d.misid)},
                    {Outcome::KS, d.lifetime_eff * d.misid},
                    {Outcome::Unidentified, 1.0 - d.lifetime_eff}};
        case Outcome::Unidentified:
            break;
    }
    throw std::invalid_argument(
        "fold_detector: input table must be ideal (no Unidentified rows)");
}

}  // namespace

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::K0: return "K0";
        case Outcome::K0bar: return "K0bar";
        case Outcome::KS: return "KS";
        case Outcome::KL: return "KL";
        case Outcome::Unidentified: return "unidentified";
    }
    return "?";
}

const std::array<MeasurementSetting, 4>& all_settings() {
    static const std::array<MeasurementSetting, 4> settings = {{
        {Basis::Strangeness, Basis::Strangeness},
        {Basis::Strangeness, Basis::Lifetime},
        {Basis::Lifetime, Basis::Strangeness},
        {Basis::Lifetime, Basis::Lifetime},
    }};
    return settings;
}

int setting_index(const MeasurementSetting& setting) {
    const auto& all = all_settings();
    for (int i = 0; i < 4; ++i) {
        if (all[i] == setting) return i;
    }
    return -1;
}

double ProbabilityTable::total() const {
    double sum = 0.0;
    for (const auto& [outcome, p] : entries) sum += p;
    return sum;
}

double ProbabilityTable::probability(const JointOutcome& outcome) const {
    const auto it = entries.find(outcome);
    return it == entries.end() ? 0.0 : it->second;
}

void DetectorModel::validate() const {
    const auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!in_unit(eta) || !in_unit(etabar) || !in_unit(lifetime_eff)) {
        throw std::domain_error("detector efficiencies must lie in [0, 1]");
    }
    if (!(misid >= 0.0) || misid >= 0.5) {
        throw std::domain_error("detector misid must lie in [0, 1/2)");
    }
}

ProbabilityTable joint_probabilities(const TwoKaonState& state,
                                     const MeasurementSetting& setting) {
    if (std::abs(state.norm_squared() - 1.0) > 1e-9) {
        throw std::invalid_argument(
            "joint_probabilities: state must be normalized");
    }
    const TwoKaonState s = transform_basis(state, setting.left, setting.right);
    ProbabilityTable table;
    table.setting = setting;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            table.entries[{outcome_for(setting.left, i),
                           outcome_for(setting.right, j)}] =
                std::norm(s.amp[2 * i + j]);
        }
    }
    return table;
}

ProbabilityTable fold_detector(const ProbabilityTable& table,
                               const DetectorModel& detector) {
    detector.validate();
    ProbabilityTable folded;
    folded.setting = table.setting;
    for (const auto& [outcome, p] : table.entries) {
        for (const auto& [left, w_left] : respond(outcome.left, detector)) {
            for (const auto& [right, w_right] :
                 respond(outcome.right, detector)) {
                folded.entries[{left, right}] += p * w_left * w_right;
            }
        }
    }
    return folded;
}

HardyObservables hardy_observables(const TwoKaonState& state,
                                   const DetectorModel& detector) {
    const auto& settings = all_settings();
    const auto folded = [&](int i) {
        return fold_detector(joint_probabilities(state, settings[i]), detector);
    };
    HardyObservables obs;
    obs.p_k0_k0bar = folded(0).probability({Outcome::K0, Outcome::K0bar});
    obs.p_k0_kl = folded(1).probability({Outcome::K0, Outcome::KL});
    obs.p_kl_k0bar = folded(2).probability({Outcome::KL, Outcome::K0bar});
    obs.p_ks_ks = folded(3).probability({Outcome::KS, Outcome::KS});
    return obs;
}

}  // namespace khardy
