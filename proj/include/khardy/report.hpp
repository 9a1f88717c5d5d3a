#pragma once

#include <string>

#include "json.hpp"

#include "khardy/config.hpp"
#include "khardy/lhv.hpp"

namespace khardy {

/*
 * Report documents. Key order is fixed, floating-point numbers are written
 * with 12 significant digits, and the writer is deterministic, so re-emitting
 * a parsed report reproduces it byte for byte.
 */

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

// Deterministic serialization (2-space indent, "%.12g" doubles, fixed key
// order). Rejects non-finite numbers.
std::string to_json_string(const Json& doc);

// Echo of the fully resolved configuration, mirroring the config file layout.
Json config_to_json(const RunConfig& config);

// predict: ideal and detector-folded probability tables for the configured
// settings plus the four Hardy observables.
Json build_predict_document(const RunConfig& config);
std::string predict_tables_csv(const RunConfig& config);

// solve: Hardy certificate for the configured r magnitude.
Json build_solve_document(const RunConfig& config);

// simulate: counts per setting plus the statistical summary and verdict.
Json build_simulate_document(const RunConfig& config,
                             const ExperimentResult& result);
std::string simulate_counts_csv(const ExperimentResult& result);

// lhv-check: feasibility of explicitly given observables plus the verdict.
Json build_lhv_document(const RunConfig& config,
                        const LhvConstraints& constraints,
                        const FeasibilityReport& feasibility,
                        const VerdictReport& verdict);

}  // namespace khardy
