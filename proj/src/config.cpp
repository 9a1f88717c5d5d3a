#include "khardy/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace khardy {

namespace {

using Json = nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
    throw ConfigError(message);
}

[[noreturn]] void fail_key(const std::string& path, const std::string& what) {
    fail("config key " + path + ": " + what);
}

void reject_unknown(const Json& obj, const std::string& prefix,
                    std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* name : allowed) {
            if (item.key() == name) {
                known = true;
                break;
            }
        }
        if (!known) fail("unknown config key: " + prefix + item.key());
    }
}

Json section(const Json& doc, const char* name) {
    if (!doc.contains(name)) return Json::object();
    const Json& s = doc.at(name);
    if (!s.is_object()) {
        fail_key(name, "expected an object");
    }
    return s;
}

double read_number(const Json& obj, const std::string& path, const char* key,
                   double fallback) {
    if (!obj.contains(key)) return fallback;
    const Json& v = obj.at(key);
    if (!v.is_number()) fail_key(path + key, "expected a number");
    return v.get<double>();
}

long read_count(const Json& obj, const std::string& path, const char* key,
                long fallback) {
    if (!obj.contains(key)) return fallback;
    const Json& v = obj.at(key);
    if (!v.is_number_integer() && !v.is_number_unsigned()) {
        fail_key(path + key, "expected an integer");
    }
    return v.get<long>();
}

std::uint64_t read_seed(const Json& obj, const std::string& path,
                        const char* key, std::uint64_t fallback) {
    if (!obj.contains(key)) return fallback;
    const Json& v = obj.at(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
        return static_cast<std::uint64_t>(v.get<std::int64_t>());
    }
    fail_key(path + key, "expected a nonnegative integer");
}

std::string read_string(const Json& obj, const std::string& path,
                        const char* key, const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    const Json& v = obj.at(key);
    if (!v.is_string()) fail_key(path + key, "expected a string");
    return v.get<std::string>();
}

RunConfig config_from_json(const Json& doc) {
    if (!doc.is_object()) fail("config root must be an object");
    reject_unknown(doc, "",
                   {"physics", "regen", "state", "detector", "mc", "output"});
    RunConfig config;
    ExperimentConfig& exp = config.experiment;

    const Json physics = section(doc, "physics");
    reject_unknown(physics, "physics.", {"gamma_s", "gamma_l", "delta_m"});
    exp.physics.gamma_s =
        read_number(physics, "physics.", "gamma_s", exp.physics.gamma_s);
    exp.physics.gamma_l =
        read_number(physics, "physics.", "gamma_l", exp.physics.gamma_l);
    exp.physics.delta_m =
        read_number(physics, "physics.", "delta_m", exp.physics.delta_m);
    if (!(exp.physics.gamma_l >= 0.0)) {
        fail_key("physics.gamma_l", "must be >= 0");
    }
    if (!(exp.physics.gamma_s > exp.physics.gamma_l)) {
        fail_key("physics.gamma_s", "must exceed gamma_l");
    }
    if (!std::isfinite(exp.physics.delta_m)) {
        fail_key("physics.delta_m", "must be finite");
    }

    const Json regen = section(doc, "regen");
    reject_unknown(regen, "regen.", {"r_abs", "r_arg"});
    exp.regen.magnitude =
        read_number(regen, "regen.", "r_abs", exp.regen.magnitude);
    exp.regen.phase = read_number(regen, "regen.", "r_arg", exp.regen.phase);
    if (!(exp.regen.magnitude >= 0.0) || exp.regen.magnitude >= 1.0) {
        fail_key("regen.r_abs", "must lie in [0, 1)");
    }
    if (!std::isfinite(exp.regen.phase)) {
        fail_key("regen.r_arg", "must be finite");
    }

    const Json state = section(doc, "state");
    reject_unknown(state, "state.", {"T"});
    exp.evolution_time = read_number(state, "state.", "T", exp.evolution_time);
    if (!(exp.evolution_time >= 0.0)) fail_key("state.T", "must be >= 0");

    const Json detector = section(doc, "detector");
    reject_unknown(detector, "detector.",
                   {"eta", "etabar", "lifetime_eff", "misid"});
    exp.detector.eta =
        read_number(detector, "detector.", "eta", exp.detector.eta);
    exp.detector.etabar =
        read_number(detector, "detector.", "etabar", exp.detector.etabar);
    exp.detector.lifetime_eff = read_number(detector, "detector.",
                                            "lifetime_eff",
                                            exp.detector.lifetime_eff);
    exp.detector.misid =
        read_number(detector, "detector.", "misid", exp.detector.misid);
    const auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!in_unit(exp.detector.eta)) fail_key("detector.eta", "must lie in [0, 1]");
    if (!in_unit(exp.detector.etabar)) {
        fail_key("detector.etabar", "must lie in [0, 1]");
    }
    if (!in_unit(exp.detector.lifetime_eff)) {
        fail_key("detector.lifetime_eff", "must lie in [0, 1]");
    }
    if (!(exp.detector.misid >= 0.0) || exp.detector.misid >= 0.5) {
        fail_key("detector.misid", "must lie in [0, 1/2)");
    }

    const Json mc = section(doc, "mc");
    reject_unknown(mc, "mc.", {"events_per_setting", "seed"});
    exp.events_per_setting = read_count(mc, "mc.", "events_per_setting",
                                        exp.events_per_setting);
    if (exp.events_per_setting < 1) {
        fail_key("mc.events_per_setting", "must be >= 1");
    }
    exp.seed = read_seed(mc, "mc.", "seed", exp.seed);

    const Json output = section(doc, "output");
    reject_unknown(output, "output.", {"format", "path"});
    config.output.format =
        read_string(output, "output.", "format", config.output.format);
    config.output.path =
        read_string(output, "output.", "path", config.output.path);
    if (config.output.format != "json" && config.output.format != "csv") {
        fail_key("output.format", "must be \"json\" or \"csv\"");
    }
    return config;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        fail(std::string("config parse error: ") + e.what());
    }
    return config_from_json(doc);
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot read config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace khardy
