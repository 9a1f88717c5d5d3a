#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "khardy/hardy.hpp"
#include "khardy/measurement.hpp"

namespace khardy {

/*
 * Seeded Monte Carlo emulation of the experiment. Randomness is a
 * counter-based SplitMix64 stream addressed by (per-setting key, event
 * index), so results are bit-identical across platforms and independent of
 * how the event loop is scheduled. Each event consumes exactly one uniform.
 */

struct RngStream {
    std::uint64_t key = 0;
    std::uint64_t counter = 0;

    // Decorrelated stream for one measurement setting of one run.
    static RngStream for_setting(std::uint64_t seed, int setting_index);

    // Random access: the uniform in [0, 1) at a given event index.
    static double uniform_at(std::uint64_t key, std::uint64_t index);

    double next_uniform() { return uniform_at(key, counter++); }
};

struct ExperimentConfig {
    PhysicsParams physics;
    RegenParams regen;
    double evolution_time = 0.0;  // proper time T, in tau_S
    DetectorModel detector;
    long events_per_setting = 120000;
    std::uint64_t seed = 42;
    // Indices into all_settings(); per-setting event counts are fixed, so a
    // subset only drops tables.
    std::vector<int> settings = {0, 1, 2, 3};
    // Confidence multiplier for the binomial z-tests (default 3 sigma).
    double significance_multiplier = 3.0;

    void validate() const;
};

struct SettingCounts {
    MeasurementSetting setting;
    std::map<JointOutcome, long> counts;
};

struct CountsTable {
    std::vector<SettingCounts> per_setting;
    long events_per_setting = 0;
    long total_surviving = 0;  // events across settings (all post-selection)
    // Survival probability of the evolved pair; the sampled events represent
    // this fraction of the generated ones.
    double survival_probability = 1.0;
    double expected_generated = 0.0;  // total_surviving / survival_probability
};

struct ObservableStat {
    std::string name;
    bool measured = false;
    long count = 0;
    long trials = 0;
    double estimate = 0.0;
    double std_error = 0.0;       // binomial, sqrt(p(1-p)/n) at the estimate
    double z_zero = 0.0;          // distance from 0 in standard errors
    double z_qm = 0.0;            // distance from the quantum prediction
    double qm_prediction = 0.0;   // detector-folded quantum value
};

struct StatReport {
    std::array<ObservableStat, 4> observables;
    VerdictReport verdict;
};

struct ExperimentResult {
    CountsTable counts;
    StatReport stats;
};

// The state actually measured: antisymmetric pair, right-side regenerator,
// decay-weighted evolution to the configured time, renormalized to the
// undecayed subensemble.
EvolutionResult prepare_preselected_state(const ExperimentConfig& config);

// One event: inverse-CDF draw from the detector-folded joint table, walking
// outcomes in their fixed declaration order. Zero-probability outcomes can
// never be drawn.
JointOutcome sample_event(const TwoKaonState& state,
                          const MeasurementSetting& setting,
                          const DetectorModel& detector, RngStream& stream);

// Samples events_per_setting events for every configured setting and attaches
// the statistical summary. Deterministic for a fixed config.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Binomial z-test summary of a counts table against the quantum predictions
// of the configured state, plus the verdict at tolerances
// significance_multiplier * SE. Settings absent from the counts leave their
// observable unmeasured and the verdict Inconclusive.
StatReport significance_report(const CountsTable& counts,
                               const ExperimentConfig& config);

}  // namespace khardy
