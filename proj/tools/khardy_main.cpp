#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "khardy/hardy.hpp"
#include "khardy/report.hpp"

namespace {

using namespace khardy;

RunConfig base_config(const std::string& path) {
    return path.empty() ? RunConfig{} : load_config_file(path);
}

// Re-points the run at the Hardy certificate: evolution time t_hardy and the
// regeneration phase that makes the ll weight exactly -1.
void apply_hardy_point(RunConfig& config) {
    const HardyCertificate cert = solve_hardy_time(
        config.experiment.regen.magnitude, config.experiment.physics);
    config.experiment.regen.phase = cert.regen_phase;
    config.experiment.evolution_time = cert.t_hardy;
}

void emit(const OutputOptions& output, std::string text) {
    if (!text.empty() && text.back() != '\n') text += '\n';
    if (output.path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output.path);
    if (!out) {
        throw std::runtime_error("cannot write output file: " + output.path);
    }
    out << text;
    if (!out) {
        throw std::runtime_error("failed writing output file: " + output.path);
    }
}

std::vector<int> to_setting_indices(const std::vector<int>& one_based) {
    std::vector<int> indices;
    indices.reserve(one_based.size());
    for (const int s : one_based) indices.push_back(s - 1);
    return indices;
}

// Observables file for lhv-check: the four Hardy probabilities plus an
// optional shared tolerance. Command-line values override file values.
struct ObsInput {
    std::array<std::optional<double>, 4> p;
    std::optional<double> tolerance;
};

ObsInput load_obs_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read observables file: " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("observables parse error: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("observables root must be an object");
    }
    static const std::array<const char*, 4> keys = {"p_k0_k0bar", "p_k0_kl",
                                                    "p_kl_k0bar", "p_ks_ks"};
    ObsInput obs;
    for (const auto& item : doc.items()) {
        bool known = false;
        for (int k = 0; k < 4; ++k) {
            if (item.key() == keys[k]) {
                if (!item.value().is_number()) {
                    throw ConfigError("observables key " + item.key() +
                                      ": expected a number");
                }
                obs.p[k] = item.value().get<double>();
                known = true;
                break;
            }
        }
        if (!known && item.key() == "tolerance") {
            if (!item.value().is_number()) {
                throw ConfigError("observables key tolerance: expected a number");
            }
            obs.tolerance = item.value().get<double>();
            known = true;
        }
        if (!known) {
            throw ConfigError("unknown observables key: " + item.key());
        }
    }
    return obs;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Hardy-type tests of local realism with entangled neutral kaon "
        "pairs: predictions, certificate solving, Monte Carlo emulation, "
        "and local-model feasibility checks.",
        "khardy"};
    app.require_subcommand(1);

    std::string config_path;
    std::string format_flag;
    std::string out_flag;
    std::vector<int> settings_flag;
    bool at_hardy_point = false;
    std::uint64_t seed_flag = 0;
    long events_flag = 0;
    double confidence_flag = 3.0;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path,
                        "JSON run configuration file");
        sub->add_option("--out", out_flag,
                        "Write the report to this path instead of stdout");
    };
    const auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format_flag, "Output format")
            ->check(CLI::IsMember({"json", "csv"}));
    };
    const auto add_settings = [&](CLI::App* sub) {
        sub->add_option("--setting", settings_flag,
                        "Restrict to a measurement setting (repeatable)")
            ->check(CLI::Range(1, 4));
        sub->add_flag("--at-hardy-point", at_hardy_point,
                      "Evolve to the Hardy certificate of the configured r");
    };

    CLI::App* predict = app.add_subcommand(
        "predict",
        "Joint probability tables and Hardy observables of the configured "
        "state");
    add_common(predict);
    add_format(predict);
    add_settings(predict);

    CLI::App* solve = app.add_subcommand(
        "solve",
        "Certificate of the Hardy condition for the configured r magnitude");
    add_common(solve);

    CLI::App* simulate = app.add_subcommand(
        "simulate", "Seeded Monte Carlo run with statistical verdict");
    add_common(simulate);
    add_format(simulate);
    add_settings(simulate);
    simulate->add_option("--seed", seed_flag, "Override mc.seed");
    simulate
        ->add_option("--events", events_flag,
                     "Override mc.events_per_setting")
        ->check(CLI::PositiveNumber);
    simulate
        ->add_option("--confidence", confidence_flag,
                     "Significance multiplier for the binomial z-tests")
        ->check(CLI::NonNegativeNumber);

    CLI::App* lhv = app.add_subcommand(
        "lhv-check",
        "Exact feasibility of observables under local hidden-variable "
        "models");
    add_common(lhv);
    std::array<std::optional<double>, 4> p_flags;
    double tol_flag = 1e-9;
    std::string obs_file;
    lhv->add_option("--p1", p_flags[0], "P(K0,K0bar), setting {1}")
        ->check(CLI::NonNegativeNumber);
    lhv->add_option("--p2", p_flags[1], "P(K0,KL), setting {2}")
        ->check(CLI::NonNegativeNumber);
    lhv->add_option("--p3", p_flags[2], "P(KL,K0bar), setting {3}")
        ->check(CLI::NonNegativeNumber);
    lhv->add_option("--p4", p_flags[3], "P(KS,KS), setting {4}")
        ->check(CLI::NonNegativeNumber);
    lhv->add_option("--tol", tol_flag, "Shared tolerance on the observables")
        ->check(CLI::NonNegativeNumber);
    lhv->add_option("--obs-file", obs_file,
                    "JSON file with the four observables");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        RunConfig config = base_config(config_path);
        if (!format_flag.empty()) config.output.format = format_flag;
        if (!out_flag.empty()) config.output.path = out_flag;
        if (!settings_flag.empty()) {
            config.experiment.settings = to_setting_indices(settings_flag);
        }
        if (at_hardy_point) apply_hardy_point(config);

        if (app.got_subcommand(predict)) {
            config.experiment.validate();
            if (config.output.format == "csv") {
                emit(config.output, predict_tables_csv(config));
            } else {
                emit(config.output,
                     to_json_string(build_predict_document(config)));
            }
        } else if (app.got_subcommand(solve)) {
            emit(config.output, to_json_string(build_solve_document(config)));
        } else if (app.got_subcommand(simulate)) {
            if (simulate->count("--seed") > 0) {
                config.experiment.seed = seed_flag;
            }
            if (simulate->count("--events") > 0) {
                config.experiment.events_per_setting = events_flag;
            }
            config.experiment.significance_multiplier = confidence_flag;
            config.experiment.validate();
            const ExperimentResult result = run_experiment(config.experiment);
            if (config.output.format == "csv") {
                emit(config.output, simulate_counts_csv(result));
            } else {
                emit(config.output,
                     to_json_string(build_simulate_document(config, result)));
            }
        } else if (app.got_subcommand(lhv)) {
            if (!obs_file.empty()) {
                const ObsInput file = load_obs_file(obs_file);
                for (int k = 0; k < 4; ++k) {
                    if (!p_flags[k]) p_flags[k] = file.p[k];
                }
                if (lhv->count("--tol") == 0 && file.tolerance) {
                    tol_flag = *file.tolerance;
                }
            }
            for (int k = 0; k < 4; ++k) {
                if (!p_flags[k]) {
                    throw ConfigError(
                        "lhv-check needs all four observables (--p1..--p4 or "
                        "--obs-file)");
                }
            }
            LhvConstraints constraints;
            constraints.p_k0_k0bar = {p_flags[0], tol_flag};
            constraints.p_k0_kl = {p_flags[1], tol_flag};
            constraints.p_kl_k0bar = {p_flags[2], tol_flag};
            constraints.p_ks_ks = {p_flags[3], tol_flag};
            const FeasibilityReport feasibility =
                lhv_feasibility(constraints);

            const DetectorModel& det = config.experiment.detector;
            QmExpectation expected;
            expected.p_k0_k0bar = det.eta * det.etabar / 12.0;
            const VerdictReport verdict = contradiction_verdict(
                HardyObservables{*p_flags[0], *p_flags[1], *p_flags[2],
                                 *p_flags[3]},
                {tol_flag, tol_flag, tol_flag, tol_flag}, expected);
            emit(config.output,
                 to_json_string(build_lhv_document(config, constraints,
                                                   feasibility, verdict)));
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
