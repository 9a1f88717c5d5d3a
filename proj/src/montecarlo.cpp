#include "khardy/montecarlo.hpp"

#include <cmath>
#include <stdexcept>

namespace khardy {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

JointOutcome sample_from_table(const ProbabilityTable& table, double u) {
    double cumulative = 0.0;
    const JointOutcome* last_positive = nullptr;
    for (const auto& [outcome, p] : table.entries) {
        cumulative += p;
        if (p > 0.0) {
            if (u < cumulative) return outcome;
            last_positive = &outcome;
        }
    }
    // u landed in the rounding sliver above the accumulated total.
    if (last_positive == nullptr) {
        throw std::domain_error("sample_event: table has no probability mass");
    }
    return *last_positive;
}

const std::array<const char*, 4>& observable_names() {
    static const std::array<const char*, 4> names = {
        "P(K0,K0bar)", "P(K0,KL)", "P(KL,K0bar)", "P(KS,KS)"};
    return names;
}

const std::array<JointOutcome, 4>& observable_outcomes() {
    static const std::array<JointOutcome, 4> outcomes = {{
        {Outcome::K0, Outcome::K0bar},
        {Outcome::K0, Outcome::KL},
        {Outcome::KL, Outcome::K0bar},
        {Outcome::KS, Outcome::KS},
    }};
    return outcomes;
}

}  // namespace

RngStream RngStream::for_setting(std::uint64_t seed, int setting_index) {
    RngStream stream;
    stream.key = splitmix64(splitmix64(seed) ^
                            (static_cast<std::uint64_t>(setting_index) + 1));
    return stream;
}

double RngStream::uniform_at(std::uint64_t key, std::uint64_t index) {
    // SplitMix64 output at stream position `index`; the top 53 bits scale to
    // a double in [0, 1) exactly, identically on every platform.
    const std::uint64_t bits =
        splitmix64(key + index * 0x9e3779b97f4a7c15ULL);
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

void ExperimentConfig::validate() const {
    physics.validate();
    regen.validate();
    detector.validate();
    if (!(evolution_time >= 0.0)) {
        throw std::domain_error("evolution time must be >= 0");
    }
    if (events_per_setting < 1) {
        throw std::domain_error("events_per_setting must be >= 1");
    }
    if (settings.empty()) {
        throw std::domain_error("at least one measurement setting is required");
    }
    std::array<bool, 4> seen{};
    for (const int s : settings) {
        if (s < 0 || s > 3) {
            throw std::domain_error("setting indices must be 0..3");
        }
        if (seen[s]) throw std::domain_error("duplicate measurement setting");
        seen[s] = true;
    }
    if (!(significance_multiplier >= 0.0)) {
        throw std::domain_error("significance multiplier must be >= 0");
    }
}

EvolutionResult prepare_preselected_state(const ExperimentConfig& config) {
    const TwoKaonState pair = make_antisymmetric();
    const TwoKaonState regenerated =
        apply_regenerator(pair, config.regen, Side::Right);
    return evolve_undecayed(regenerated, config.evolution_time, config.physics);
}

JointOutcome sample_event(const TwoKaonState& state,
                          const MeasurementSetting& setting,
                          const DetectorModel& detector, RngStream& stream) {
    const ProbabilityTable table =
        fold_detector(joint_probabilities(state, setting), detector);
    return sample_from_table(table, stream.next_uniform());
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    const EvolutionResult prepared = prepare_preselected_state(config);

    ExperimentResult result;
    result.counts.events_per_setting = config.events_per_setting;
    result.counts.survival_probability = prepared.survival_probability;
    for (const int index : config.settings) {
        const MeasurementSetting setting = all_settings()[index];
        const ProbabilityTable table = fold_detector(
            joint_probabilities(prepared.state, setting), config.detector);
        RngStream stream = RngStream::for_setting(config.seed, index);
        SettingCounts counts;
        counts.setting = setting;
        for (long n = 0; n < config.events_per_setting; ++n) {
            ++counts.counts[sample_from_table(table, stream.next_uniform())];
        }
        result.counts.per_setting.push_back(std::move(counts));
    }
    result.counts.total_surviving =
        config.events_per_setting * static_cast<long>(config.settings.size());
    result.counts.expected_generated =
        static_cast<double>(result.counts.total_surviving) /
        prepared.survival_probability;
    result.stats = significance_report(result.counts, config);
    return result;
}

StatReport significance_report(const CountsTable& counts,
                               const ExperimentConfig& config) {
    const EvolutionResult prepared = prepare_preselected_state(config);
    const HardyObservables qm =
        hardy_observables(prepared.state, config.detector);
    const std::array<double, 4> qm_values = {qm.p_k0_k0bar, qm.p_k0_kl,
                                             qm.p_kl_k0bar, qm.p_ks_ks};

    StatReport report;
    std::array<double, 4> estimates{};
    std::array<double, 4> tolerances{};
    bool all_measured = true;
    int first_missing = -1;
    for (int k = 0; k < 4; ++k) {
        ObservableStat& stat = report.observables[k];
        stat.name = observable_names()[k];
        stat.qm_prediction = qm_values[k];
        const MeasurementSetting setting = all_settings()[k];
        const SettingCounts* found = nullptr;
        for (const auto& sc : counts.per_setting) {
            if (sc.setting == setting) {
                found = &sc;
                break;
            }
        }
        if (found == nullptr) {
            all_measured = false;
            if (first_missing < 0) first_missing = k;
            continue;
        }
        stat.measured = true;
        const auto it = found->counts.find(observable_outcomes()[k]);
        stat.count = it == found->counts.end() ? 0 : it->second;
        stat.trials = counts.events_per_setting;
        stat.estimate =
            static_cast<double>(stat.count) / static_cast<double>(stat.trials);
        stat.std_error = std::sqrt(stat.estimate * (1.0 - stat.estimate) /
                                   static_cast<double>(stat.trials));
        // z-scores saturate at 1e9 when the error estimate vanishes; the
        // verdict below never consumes them.
        const auto z_score = [&](double diff) {
            double se = stat.std_error;
            if (se <= 0.0) return diff == 0.0 ? 0.0 : std::copysign(1e9, diff);
            return diff / se;
        };
        stat.z_zero = z_score(stat.estimate);
        stat.z_qm = z_score(stat.estimate - qm_values[k]);
        estimates[k] = stat.estimate;
        tolerances[k] = config.significance_multiplier * stat.std_error;
    }

    if (!all_measured) {
        report.verdict = {Verdict::Inconclusive,
                          std::string(observable_names()[first_missing]) +
                              " not measured (setting " +
                              std::to_string(first_missing + 1) + " absent)"};
        return report;
    }

    // The quantum prediction is excluded only when the expected count is
    // separable from zero at the configured significance.
    QmExpectation expectation;
    expectation.p_k0_k0bar = qm_values[0];
    expectation.exclusion_tolerance =
        config.significance_multiplier *
        std::sqrt(qm_values[0] * (1.0 - qm_values[0]) /
                  static_cast<double>(counts.events_per_setting));
    report.verdict = contradiction_verdict(
        HardyObservables{estimates[0], estimates[1], estimates[2],
                         estimates[3]},
        tolerances, expectation);
    return report;
}

}  // namespace khardy
