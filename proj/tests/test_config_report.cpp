#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>

#include "doctest.h"
#include "khardy/report.hpp"

using namespace khardy;

namespace {

bool message_contains(const std::function<void()>& fn,
                      const std::string& needle) {
    try {
        fn();
    } catch (const ConfigError& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

RunConfig hardy_run_config() {
    RunConfig config;
    const HardyCertificate cert = solve_hardy_time(
        config.experiment.regen.magnitude, config.experiment.physics);
    config.experiment.regen.phase = cert.regen_phase;
    config.experiment.evolution_time = cert.t_hardy;
    return config;
}

}  // namespace

TEST_CASE("empty config yields the documented defaults") {
    const RunConfig config = parse_config("{}");
    CHECK(config.experiment.physics.gamma_s == 1.0);
    CHECK(config.experiment.physics.gamma_l == doctest::Approx(1.0 / 579.0));
    CHECK(config.experiment.physics.delta_m == 0.47);
    CHECK(config.experiment.regen.magnitude == 0.005);
    CHECK(config.experiment.regen.phase == 0.0);
    CHECK(config.experiment.evolution_time == 0.0);
    CHECK(config.experiment.detector.eta == 1.0);
    CHECK(config.experiment.events_per_setting == 120000);
    CHECK(config.experiment.seed == 42);
    CHECK(config.output.format == "json");
    CHECK(config.output.path.empty());
}

TEST_CASE("config values land in the right fields") {
    const RunConfig config = parse_config(R"({
        "physics": {"gamma_l": 0.002, "delta_m": 0.5},
        "regen": {"r_abs": 0.003, "r_arg": 1.25},
        "state": {"T": 11.5},
        "detector": {"eta": 0.9, "etabar": 0.8, "lifetime_eff": 0.95,
                     "misid": 0.01},
        "mc": {"events_per_setting": 500, "seed": 7},
        "output": {"format": "csv", "path": "out.csv"}
    })");
    CHECK(config.experiment.physics.gamma_l == 0.002);
    CHECK(config.experiment.physics.delta_m == 0.5);
    CHECK(config.experiment.regen.magnitude == 0.003);
    CHECK(config.experiment.regen.phase == 1.25);
    CHECK(config.experiment.evolution_time == 11.5);
    CHECK(config.experiment.detector.etabar == 0.8);
    CHECK(config.experiment.detector.misid == 0.01);
    CHECK(config.experiment.events_per_setting == 500);
    CHECK(config.experiment.seed == 7);
    CHECK(config.output.format == "csv");
    CHECK(config.output.path == "out.csv");
}

TEST_CASE("unknown keys are rejected with their dotted path") {
    CHECK(message_contains(
        [] { parse_config(R"({"detector": {"etta": 1.0}})"); },
        "detector.etta"));
    CHECK(message_contains([] { parse_config(R"({"physic": {}})"); },
                           "physic"));
    CHECK(message_contains(
        [] { parse_config(R"({"mc": {"events": 10}})"); }, "mc.events"));
}

TEST_CASE("type and range violations name the offending key") {
    CHECK(message_contains(
        [] { parse_config(R"({"physics": {"gamma_s": "fast"}})"); },
        "physics.gamma_s"));
    CHECK(message_contains(
        [] { parse_config(R"({"regen": {"r_abs": 1.0}})"); }, "regen.r_abs"));
    CHECK(message_contains(
        [] { parse_config(R"({"state": {"T": -1.0}})"); }, "state.T"));
    CHECK(message_contains(
        [] { parse_config(R"({"detector": {"misid": 0.5}})"); },
        "detector.misid"));
    CHECK(message_contains(
        [] { parse_config(R"({"mc": {"events_per_setting": 0}})"); },
        "mc.events_per_setting"));
    CHECK(message_contains(
        [] { parse_config(R"({"mc": {"seed": -4}})"); }, "mc.seed"));
    CHECK(message_contains(
        [] { parse_config(R"({"output": {"format": "xml"}})"); },
        "output.format"));
    CHECK(message_contains(
        [] { parse_config(R"({"physics": {"gamma_l": 2.0}})"); },
        "physics.gamma_s"));
}

TEST_CASE("syntactically broken documents are reported as config errors") {
    CHECK_THROWS_AS(parse_config("{"), ConfigError);
    CHECK_THROWS_AS(parse_config("[]"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"physics": 3})"), ConfigError);
}

TEST_CASE("config files round through the filesystem") {
    namespace fs = std::filesystem;
    const fs::path path =
        fs::temp_directory_path() / "khardy_config_test.json";
    {
        std::ofstream out(path);
        out << R"({"regen": {"r_abs": 0.004}})";
    }
    const RunConfig config = load_config_file(path.string());
    CHECK(config.experiment.regen.magnitude == 0.004);
    fs::remove(path);
    CHECK_THROWS_AS(load_config_file(path.string()), ConfigError);
}

TEST_CASE("json writer keeps twelve significant digits") {
    Json j = Json::object();
    j["a"] = 1.0 / 12.0;
    j["b"] = 2.0833333328993056e-10;
    j["c"] = 1.0;
    j["d"] = static_cast<std::int64_t>(120000);
    const std::string text = to_json_string(j);
    CHECK(text.find("0.0833333333333") != std::string::npos);
    CHECK(text.find("2.0833333329e-10") != std::string::npos);
    CHECK(text.find("120000") != std::string::npos);
}

TEST_CASE("report documents re-emit byte-identically after parsing") {
    const RunConfig config = hardy_run_config();

    const std::string predict = to_json_string(build_predict_document(config));
    CHECK(to_json_string(Json::parse(predict)) == predict);

    const std::string solve = to_json_string(build_solve_document(config));
    CHECK(to_json_string(Json::parse(solve)) == solve);

    RunConfig small = config;
    small.experiment.events_per_setting = 200;
    const ExperimentResult result = run_experiment(small.experiment);
    const std::string simulate =
        to_json_string(build_simulate_document(small, result));
    CHECK(to_json_string(Json::parse(simulate)) == simulate);

    LhvConstraints cons;
    cons.p_k0_k0bar = {1.0 / 12.0, 1e-9};
    cons.p_k0_kl = {0.0, 1e-9};
    cons.p_kl_k0bar = {0.0, 1e-9};
    cons.p_ks_ks = {0.0, 1e-9};
    const FeasibilityReport feas = lhv_feasibility(cons);
    const VerdictReport verdict = contradiction_verdict(
        HardyObservables{1.0 / 12.0, 0.0, 0.0, 0.0},
        {1e-9, 1e-9, 1e-9, 1e-9});
    const std::string lhv =
        to_json_string(build_lhv_document(config, cons, feas, verdict));
    CHECK(to_json_string(Json::parse(lhv)) == lhv);
}

TEST_CASE("predict document carries the library values at full precision") {
    const RunConfig config = hardy_run_config();
    const Json doc = build_predict_document(config);
    CHECK(doc.at("schema_version").get<std::string>() == kSchemaVersion);
    CHECK(doc.at("command").get<std::string>() == "predict");

    const EvolutionResult prepared =
        prepare_preselected_state(config.experiment);
    const HardyObservables obs =
        hardy_observables(prepared.state, config.experiment.detector);
    const Json parsed = Json::parse(to_json_string(doc));
    const double reported =
        parsed.at("hardy_observables").at("p_k0_k0bar").get<double>();
    CHECK(std::abs(reported - obs.p_k0_k0bar) <=
          1e-11 * std::abs(obs.p_k0_k0bar));
    const double survival =
        parsed.at("survival_probability").get<double>();
    CHECK(std::abs(survival - prepared.survival_probability) <=
          1e-11 * prepared.survival_probability);

    // Config echo mirrors the resolved values.
    CHECK(doc.at("config").at("regen").at("r_arg").get<double>() ==
          config.experiment.regen.phase);
    CHECK(doc.at("config").at("mc").at("seed").get<std::uint64_t>() == 42);
}

TEST_CASE("solve document reports the certificate") {
    const RunConfig config{};
    const Json doc = build_solve_document(config);
    const auto& cert = doc.at("certificate");
    CHECK(std::abs(cert.at("t_hardy").get<double>() - 10.615) <= 1e-3);
    CHECK(cert.at("short_flight_warning").get<bool>() == false);
    CHECK(std::abs(cert.at("fraction").get<double>() - 1.0 / 12.0) <= 1e-9);
    CHECK(std::abs(cert.at("ll_weight").at("re").get<double>() + 1.0) <= 1e-9);
}

TEST_CASE("csv outputs have the documented shape") {
    const RunConfig config = hardy_run_config();
    const std::string csv = predict_tables_csv(config);
    CHECK(csv.rfind("setting,left,right,probability\n", 0) == 0);
    // Four settings, nine folded cells each, plus the header.
    std::size_t lines = 0;
    for (const char c : csv) {
        if (c == '\n') ++lines;
    }
    CHECK(lines == 1 + 4 * 9);

    RunConfig small = config;
    small.experiment.events_per_setting = 100;
    const ExperimentResult result = run_experiment(small.experiment);
    const std::string counts_csv = simulate_counts_csv(result);
    CHECK(counts_csv.rfind("setting,left,right,count\n", 0) == 0);
}

TEST_CASE("simulate document records verdict and statistics") {
    RunConfig config = hardy_run_config();
    config.experiment.events_per_setting = 120000;
    const ExperimentResult result = run_experiment(config.experiment);
    const Json doc = build_simulate_document(config, result);
    CHECK(doc.at("statistics").at("verdict").get<std::string>() ==
          "LR-REFUTED");
    const auto& observables = doc.at("statistics").at("observables");
    REQUIRE(observables.size() == 4);
    CHECK(observables[0].at("name").get<std::string>() == "P(K0,K0bar)");
    CHECK(observables[0].at("trials").get<long>() == 120000);
    CHECK(doc.at("counts").at("settings").size() == 4);
}
