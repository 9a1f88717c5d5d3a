#pragma once

#include <stdexcept>
#include <string>

#include "khardy/montecarlo.hpp"

namespace khardy {

// Raised for any malformed run configuration: unreadable file, syntax error,
// unknown key, wrong type, or out-of-range value. The message names the
// offending key by its dotted path.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct OutputOptions {
    std::string format = "json";  // "json" or "csv"
    std::string path;             // empty = stdout
};

struct RunConfig {
    ExperimentConfig experiment;
    OutputOptions output;
};

/*
 * JSON run configuration. Every section and key is optional; omitted keys
 * take the defaults of the corresponding struct. Unknown keys are rejected.
 *
 *   {
 *     "physics":  { "gamma_s": 1.0, "gamma_l": 0.001727, "delta_m": 0.47 },
 *     "regen":    { "r_abs": 0.005, "r_arg": 0.0 },
 *     "state":    { "T": 0.0 },
 *     "detector": { "eta": 1.0, "etabar": 1.0,
 *                   "lifetime_eff": 1.0, "misid": 0.0 },
 *     "mc":       { "events_per_setting": 120000, "seed": 42 },
 *     "output":   { "format": "json", "path": "" }
 *   }
 */
RunConfig load_config_file(const std::string& path);

// Parses the same document from a string (used by tests).
RunConfig parse_config(const std::string& text);

}  // namespace khardy
