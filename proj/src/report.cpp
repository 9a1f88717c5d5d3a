#include "khardy/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "khardy/hardy.hpp"

namespace khardy {

namespace {

std::string format_double(double x) {
    if (!std::isfinite(x)) {
        throw std::runtime_error("report contains a non-finite number");
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string quote(const std::string& s) { return Json(s).dump(); }

void write_value(std::string& out, const Json& v, int indent) {
    const std::string pad(indent, ' ');
    const std::string inner(indent + 2, ' ');
    switch (v.type()) {
        case Json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            std::size_t i = 0;
            for (const auto& item : v.items()) {
                out += inner + quote(item.key()) + ": ";
                write_value(out, item.value(), indent + 2);
                if (++i < v.size()) out += ",";
                out += "\n";
            }
            out += pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < v.size(); ++i) {
                out += inner;
                write_value(out, v[i], indent + 2);
                if (i + 1 < v.size()) out += ",";
                out += "\n";
            }
            out += pad + "]";
            return;
        }
        case Json::value_t::string:
            out += quote(v.get<std::string>());
            return;
        case Json::value_t::boolean:
            out += v.get<bool>() ? "true" : "false";
            return;
        case Json::value_t::number_integer:
            out += std::to_string(v.get<std::int64_t>());
            return;
        case Json::value_t::number_unsigned:
            out += std::to_string(v.get<std::uint64_t>());
            return;
        case Json::value_t::number_float:
            out += format_double(v.get<double>());
            return;
        case Json::value_t::null:
            out += "null";
            return;
        default:
            throw std::runtime_error("unsupported value in report document");
    }
}

const char* basis_name(Basis b) {
    return b == Basis::Strangeness ? "strangeness" : "lifetime";
}

Json setting_to_json(const MeasurementSetting& setting) {
    Json j = Json::object();
    j["index"] = setting_index(setting) + 1;
    j["left"] = basis_name(setting.left);
    j["right"] = basis_name(setting.right);
    return j;
}

Json complex_to_json(const Complex& z) {
    Json j = Json::object();
    j["re"] = z.real();
    j["im"] = z.imag();
    return j;
}

Json table_entries_to_json(const ProbabilityTable& table) {
    Json entries = Json::array();
    for (const auto& [outcome, p] : table.entries) {
        Json e = Json::object();
        e["left"] = outcome_name(outcome.left);
        e["right"] = outcome_name(outcome.right);
        e["probability"] = p;
        entries.push_back(std::move(e));
    }
    return entries;
}

Json observables_to_json(const HardyObservables& obs) {
    Json j = Json::object();
    j["p_k0_k0bar"] = obs.p_k0_k0bar;
    j["p_k0_kl"] = obs.p_k0_kl;
    j["p_kl_k0bar"] = obs.p_kl_k0bar;
    j["p_ks_ks"] = obs.p_ks_ks;
    return j;
}

Json verdict_to_json(const VerdictReport& verdict) {
    Json j = Json::object();
    j["verdict"] = verdict_name(verdict.verdict);
    j["detail"] = verdict.detail;
    return j;
}

Json document_head(const char* command, const RunConfig& config) {
    Json doc = Json::object();
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = command;
    doc["config"] = config_to_json(config);
    return doc;
}

}  // namespace

std::string to_json_string(const Json& doc) {
    std::string out;
    write_value(out, doc, 0);
    return out;
}

Json config_to_json(const RunConfig& config) {
    const ExperimentConfig& exp = config.experiment;
    Json doc = Json::object();
    Json physics = Json::object();
    physics["gamma_s"] = exp.physics.gamma_s;
    physics["gamma_l"] = exp.physics.gamma_l;
    physics["delta_m"] = exp.physics.delta_m;
    doc["physics"] = std::move(physics);
    Json regen = Json::object();
    regen["r_abs"] = exp.regen.magnitude;
    regen["r_arg"] = exp.regen.phase;
    doc["regen"] = std::move(regen);
    Json state = Json::object();
    state["T"] = exp.evolution_time;
    doc["state"] = std::move(state);
    Json detector = Json::object();
    detector["eta"] = exp.detector.eta;
    detector["etabar"] = exp.detector.etabar;
    detector["lifetime_eff"] = exp.detector.lifetime_eff;
    detector["misid"] = exp.detector.misid;
    doc["detector"] = std::move(detector);
    Json mc = Json::object();
    mc["events_per_setting"] = static_cast<std::int64_t>(exp.events_per_setting);
    mc["seed"] = exp.seed;
    doc["mc"] = std::move(mc);
    Json output = Json::object();
    output["format"] = config.output.format;
    output["path"] = config.output.path;
    doc["output"] = std::move(output);
    return doc;
}

Json build_predict_document(const RunConfig& config) {
    const ExperimentConfig& exp = config.experiment;
    exp.validate();
    const EvolutionResult prepared = prepare_preselected_state(exp);

    Json doc = document_head("predict", config);
    doc["survival_probability"] = prepared.survival_probability;
    Json tables = Json::array();
    for (const int index : exp.settings) {
        const MeasurementSetting setting = all_settings()[index];
        const ProbabilityTable ideal =
            joint_probabilities(prepared.state, setting);
        Json t = Json::object();
        t["setting"] = setting_to_json(setting);
        t["ideal"] = table_entries_to_json(ideal);
        t["folded"] = table_entries_to_json(fold_detector(ideal, exp.detector));
        tables.push_back(std::move(t));
    }
    doc["tables"] = std::move(tables);
    doc["hardy_observables"] =
        observables_to_json(hardy_observables(prepared.state, exp.detector));
    return doc;
}

std::string predict_tables_csv(const RunConfig& config) {
    const ExperimentConfig& exp = config.experiment;
    exp.validate();
    const EvolutionResult prepared = prepare_preselected_state(exp);
    std::string out = "setting,left,right,probability\n";
    for (const int index : exp.settings) {
        const MeasurementSetting setting = all_settings()[index];
        const ProbabilityTable folded = fold_detector(
            joint_probabilities(prepared.state, setting), exp.detector);
        for (const auto& [outcome, p] : folded.entries) {
            out += std::to_string(index + 1);
            out += ',';
            out += outcome_name(outcome.left);
            out += ',';
            out += outcome_name(outcome.right);
            out += ',';
            out += format_double(p);
            out += '\n';
        }
    }
    return out;
}

Json build_solve_document(const RunConfig& config) {
    const ExperimentConfig& exp = config.experiment;
    const HardyCertificate cert =
        solve_hardy_time(exp.regen.magnitude, exp.physics);
    Json doc = document_head("solve", config);
    Json c = Json::object();
    c["t_hardy"] = cert.t_hardy;
    c["regen_phase"] = cert.regen_phase;
    c["ll_weight"] = complex_to_json(cert.ll_value);
    c["ss_weight"] = complex_to_json(cert.ss_value);
    Json residuals = Json::object();
    residuals["p_k0_kl"] = cert.residuals[0];
    residuals["p_kl_k0bar"] = cert.residuals[1];
    residuals["p_ks_ks"] = cert.residuals[2];
    c["residuals"] = std::move(residuals);
    c["fraction"] = cert.fraction;
    c["short_flight_warning"] = cert.short_flight_warning;
    doc["certificate"] = std::move(c);
    return doc;
}

Json build_simulate_document(const RunConfig& config,
                             const ExperimentResult& result) {
    Json doc = document_head("simulate", config);

    Json counts = Json::object();
    counts["events_per_setting"] =
        static_cast<std::int64_t>(result.counts.events_per_setting);
    counts["total_surviving"] =
        static_cast<std::int64_t>(result.counts.total_surviving);
    counts["survival_probability"] = result.counts.survival_probability;
    counts["expected_generated"] = result.counts.expected_generated;
    Json settings = Json::array();
    for (const auto& sc : result.counts.per_setting) {
        Json s = Json::object();
        s["setting"] = setting_to_json(sc.setting);
        Json entries = Json::array();
        for (const auto& [outcome, n] : sc.counts) {
            Json e = Json::object();
            e["left"] = outcome_name(outcome.left);
            e["right"] = outcome_name(outcome.right);
            e["count"] = static_cast<std::int64_t>(n);
            entries.push_back(std::move(e));
        }
        s["entries"] = std::move(entries);
        settings.push_back(std::move(s));
    }
    counts["settings"] = std::move(settings);
    doc["counts"] = std::move(counts);

    Json stats = Json::object();
    Json observables = Json::array();
    for (const auto& stat : result.stats.observables) {
        Json o = Json::object();
        o["name"] = stat.name;
        o["measured"] = stat.measured;
        o["count"] = static_cast<std::int64_t>(stat.count);
        o["trials"] = static_cast<std::int64_t>(stat.trials);
        o["estimate"] = stat.estimate;
        o["std_error"] = stat.std_error;
        o["z_zero"] = stat.z_zero;
        o["z_qm"] = stat.z_qm;
        o["qm_prediction"] = stat.qm_prediction;
        observables.push_back(std::move(o));
    }
    stats["observables"] = std::move(observables);
    stats["verdict"] = verdict_name(result.stats.verdict.verdict);
    stats["detail"] = result.stats.verdict.detail;
    doc["statistics"] = std::move(stats);
    return doc;
}

std::string simulate_counts_csv(const ExperimentResult& result) {
    std::string out = "setting,left,right,count\n";
    for (const auto& sc : result.counts.per_setting) {
        const int index = setting_index(sc.setting) + 1;
        for (const auto& [outcome, n] : sc.counts) {
            out += std::to_string(index);
            out += ',';
            out += outcome_name(outcome.left);
            out += ',';
            out += outcome_name(outcome.right);
            out += ',';
            out += std::to_string(n);
            out += '\n';
        }
    }
    return out;
}

Json build_lhv_document(const RunConfig& config,
                        const LhvConstraints& constraints,
                        const FeasibilityReport& feasibility,
                        const VerdictReport& verdict) {
    Json doc = document_head("lhv-check", config);
    const std::array<std::pair<const char*, const LhvConstraint*>, 4> items = {{
        {"p_k0_k0bar", &constraints.p_k0_k0bar},
        {"p_k0_kl", &constraints.p_k0_kl},
        {"p_kl_k0bar", &constraints.p_kl_k0bar},
        {"p_ks_ks", &constraints.p_ks_ks},
    }};
    Json cs = Json::object();
    for (const auto& [name, c] : items) {
        Json j = Json::object();
        if (c->target) {
            j["target"] = *c->target;
        } else {
            j["target"] = nullptr;
        }
        j["tolerance"] = c->tolerance;
        cs[name] = std::move(j);
    }
    doc["constraints"] = std::move(cs);

    Json f = Json::object();
    f["feasible"] = feasibility.feasible;
    f["violation"] = feasibility.violation;
    if (feasibility.witness.empty()) {
        f["witness"] = nullptr;
    } else {
        f["witness"] = feasibility.witness;
    }
    if (feasibility.min_p_ks_ks) {
        f["min_p_ks_ks"] = *feasibility.min_p_ks_ks;
    } else {
        f["min_p_ks_ks"] = nullptr;
    }
    doc["feasibility"] = std::move(f);
    doc["verdict"] = verdict_to_json(verdict);
    return doc;
}

}  // namespace khardy
