#pragma once

#include <array>
#include <compare>
#include <map>

#include "khardy/kaon_state.hpp"

namespace khardy {

/*
 * Joint measurement outcomes and probability tables. Each side measures
 * either strangeness (K0 vs K0bar) or lifetime (K_S vs K_L); imperfect
 * detectors are folded in classically on top of the ideal quantum table.
 */

// Declaration order fixes the serialization and sampling order.
enum class Outcome { K0, K0bar, KS, KL, Unidentified };

const char* outcome_name(Outcome o);

struct MeasurementSetting {
    Basis left = Basis::Strangeness;
    Basis right = Basis::Strangeness;

    friend bool operator==(const MeasurementSetting&,
                           const MeasurementSetting&) = default;
};

// The four canonical settings, indexed 0..3 and reported 1-based:
//   {1} (strangeness, strangeness), {2} (strangeness, lifetime),
//   {3} (lifetime, strangeness),    {4} (lifetime, lifetime).
const std::array<MeasurementSetting, 4>& all_settings();
int setting_index(const MeasurementSetting& setting);

struct JointOutcome {
    Outcome left = Outcome::Unidentified;
    Outcome right = Outcome::Unidentified;

    friend auto operator<=>(const JointOutcome&, const JointOutcome&) = default;
};

struct ProbabilityTable {
    MeasurementSetting setting;
    std::map<JointOutcome, double> entries;

    double total() const;
    // 0 for outcomes absent from the table.
    double probability(const JointOutcome& outcome) const;
};

/*
 * Detector response. Strangeness outcomes are identified with efficiency
 * eta (K0) or etabar (K0bar) and otherwise lost; lifetime outcomes are
 * identified with efficiency lifetime_eff and, when identified, flipped to
 * the other lifetime label with probability misid. Lifetime detection is
 * taken as ideal by default (decay observation).
 */
struct DetectorModel {
    double eta = 1.0;
    double etabar = 1.0;
    double lifetime_eff = 1.0;
    double misid = 0.0;

    // Requires all efficiencies in [0, 1] and misid in [0, 1/2).
    void validate() const;
};

// Ideal joint probabilities |amplitude|^2 in the setting's bases.
// Requires a normalized state; entries sum to 1.
ProbabilityTable joint_probabilities(const TwoKaonState& state,
                                     const MeasurementSetting& setting);

// Classical fold of the detector response onto an ideal table. The result
// gains Unidentified rows and still sums to 1. Rejects tables that already
// contain Unidentified outcomes.
ProbabilityTable fold_detector(const ProbabilityTable& table,
                               const DetectorModel& detector);

// The four joint probabilities of the Hardy-type argument, read from the
// detector-folded tables of the four canonical settings.
struct HardyObservables {
    double p_k0_k0bar = 0.0;  // setting {1}, (K0, K0bar)
    double p_k0_kl = 0.0;     // setting {2}, (K0, K_L)
    double p_kl_k0bar = 0.0;  // setting {3}, (K_L, K0bar)
    double p_ks_ks = 0.0;     // setting {4}, (K_S, K_S)
};

HardyObservables hardy_observables(const TwoKaonState& state,
                                   const DetectorModel& detector);

}  // namespace khardy
