#include "relayfric/config.hpp"

#include <fstream>

#include "relayfric/errors.hpp"

namespace relayfric {

namespace {

using nlohmann::json;

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) throw ConfigError("config: unknown field '" + where + key + "'");
    }
}

double get_num(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw ConfigError(std::string("config: field '") + key + "' must be a number");
    return j[key].get<double>();
}

bool get_bool(const json& j, const char* key, bool fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_boolean()) throw ConfigError(std::string("config: field '") + key + "' must be a boolean");
    return j[key].get<bool>();
}

ScenarioConfig make_preset(double k, double c, double c_f, double s, FrictionModel model,
                           double gamma, double x1_0, double reference, double t_end,
                           double dt_max, double event_tol, double radius, unsigned stride,
                           bool pad) {
    ScenarioConfig cfg;
    cfg.plant.k = k;
    cfg.plant.c = c;
    cfg.plant.friction = FrictionParams{c_f, s, model};
    cfg.plant.gamma = gamma;
    cfg.initial_position = x1_0;
    cfg.reference = reference;
    cfg.t_end = t_end;
    cfg.dt_max = dt_max;
    cfg.event_tol = event_tol;
    cfg.convergence_radius = radius;
    cfg.sample_stride = stride;
    cfg.pad_to_t_end = pad;
    return cfg;
}

}  // namespace

Scenario ScenarioConfig::to_scenario() const {
    Scenario sc;
    sc.plant = plant;
    if (physical) {
        if (!(physical->mass > 0.0) || !(physical->force_constant > 0.0))
            throw ConfigError("config: physical block requires mass > 0 and force_constant > 0");
        const double scale = physical->force_constant / physical->mass;
        sc.plant.k *= scale;
        sc.plant.c *= scale;
        sc.plant.gamma *= scale;
    }
    sc.x0.x1 = initial_position - reference;
    sc.x0.x2 = initial_velocity;
    if (sc.plant.actuator_lag) sc.x0.actuator_state = 0.0;
    sc.t_end = t_end;
    sc.dt_max = dt_max;
    sc.event_tol = event_tol;
    sc.convergence_radius = convergence_radius;
    sc.rest_velocity_tol = rest_velocity_tol;
    sc.sample_stride = sample_stride;
    sc.pad_to_t_end = pad_to_t_end;
    sc.weighted_norm = weighted_norm;
    validate(sc);
    return sc;
}

const std::map<std::string, ScenarioConfig>& preset_registry() {
    static const std::map<std::string, ScenarioConfig> registry = [] {
        std::map<std::string, ScenarioConfig> r;
        r["twisting-baseline"] = make_preset(0, 0, 1.0, 0, FrictionModel::Discontinuous, 1.5, 1.0,
                                             0.0, 10.0, 1e-3, 1e-10, 1e-6, 1, false);
        r["fig4-limit-cycle"] = make_preset(0, 0, 50.0, 500.0, FrictionModel::Presliding, 60.0,
                                            1.0, 0.0, 3.0, 5e-6, 1e-12, 1e-8, 10, false);
        for (const auto& [name, ref] : {std::pair<const char*, double>{"lab-2mm", 0.002},
                                        {"lab-4mm", 0.004},
                                        {"lab-6mm", 0.006}}) {
            r[name] = make_preset(5600.0, 150.0, 1.148, 0, FrictionModel::Discontinuous, 1.214,
                                  0.0, ref, 2.0, 1e-4, 1e-10, 1e-6, 1, true);
        }
        for (auto& [name, cfg] : r) cfg.preset = name;
        return r;
    }();
    return registry;
}

ScenarioConfig parse_config(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("config: document must be an object");
    check_keys(doc,
               {"preset", "plant", "initial", "reference", "t_end", "dt_max", "event_tol",
                "convergence_radius", "rest_velocity_tol", "sample_stride", "pad_to_t_end",
                "weighted_norm", "spectrum_window", "limit_cycle_rel_tol", "physical", "outputs",
                "sweep"},
               "");

    ScenarioConfig cfg;
    if (doc.contains("preset")) {
        const auto name = doc["preset"].get<std::string>();
        const auto& reg = preset_registry();
        const auto it = reg.find(name);
        if (it == reg.end()) throw ConfigError("config: unknown preset '" + name + "'");
        cfg = it->second;
    } else if (!doc.contains("plant")) {
        throw ConfigError("config: missing field 'preset' or 'plant'");
    }

    if (doc.contains("plant")) {
        const json& p = doc["plant"];
        check_keys(p, {"k", "c", "c_f", "s", "friction_model", "gamma", "f_bound", "actuator_lag"},
                   "plant.");
        cfg.plant.k = get_num(p, "k", cfg.plant.k);
        cfg.plant.c = get_num(p, "c", cfg.plant.c);
        cfg.plant.friction.c_f = get_num(p, "c_f", cfg.plant.friction.c_f);
        cfg.plant.friction.s = get_num(p, "s", cfg.plant.friction.s);
        cfg.plant.gamma = get_num(p, "gamma", cfg.plant.gamma);
        cfg.plant.f_bound = get_num(p, "f_bound", cfg.plant.f_bound);
        if (p.contains("friction_model")) {
            const auto m = p["friction_model"].get<std::string>();
            if (m == "discontinuous") {
                cfg.plant.friction.model = FrictionModel::Discontinuous;
            } else if (m == "presliding") {
                cfg.plant.friction.model = FrictionModel::Presliding;
            } else {
                throw ConfigError("config: unknown value for field 'plant.friction_model'");
            }
        }
        if (p.contains("actuator_lag")) {
            if (p["actuator_lag"].is_null()) {
                cfg.plant.actuator_lag.reset();
            } else {
                cfg.plant.actuator_lag = p["actuator_lag"].get<double>();
            }
        }
    }

    if (doc.contains("initial")) {
        const json& ini = doc["initial"];
        check_keys(ini, {"position", "velocity"}, "initial.");
        cfg.initial_position = get_num(ini, "position", cfg.initial_position);
        cfg.initial_velocity = get_num(ini, "velocity", cfg.initial_velocity);
    }

    cfg.reference = get_num(doc, "reference", cfg.reference);
    cfg.t_end = get_num(doc, "t_end", cfg.t_end);
    cfg.dt_max = get_num(doc, "dt_max", cfg.dt_max);
    cfg.event_tol = get_num(doc, "event_tol", cfg.event_tol);
    cfg.convergence_radius = get_num(doc, "convergence_radius", cfg.convergence_radius);
    cfg.rest_velocity_tol = get_num(doc, "rest_velocity_tol", cfg.rest_velocity_tol);
    if (doc.contains("sample_stride")) cfg.sample_stride = doc["sample_stride"].get<unsigned>();
    cfg.pad_to_t_end = get_bool(doc, "pad_to_t_end", cfg.pad_to_t_end);
    cfg.weighted_norm = get_bool(doc, "weighted_norm", cfg.weighted_norm);
    cfg.spectrum_window = get_num(doc, "spectrum_window", cfg.spectrum_window);
    cfg.limit_cycle_rel_tol = get_num(doc, "limit_cycle_rel_tol", cfg.limit_cycle_rel_tol);

    if (doc.contains("physical")) {
        if (doc["physical"].is_null()) {
            cfg.physical.reset();
        } else {
            const json& ph = doc["physical"];
            check_keys(ph, {"mass", "force_constant", "voltage_limit"}, "physical.");
            PhysicalBlock blk = cfg.physical.value_or(PhysicalBlock{});
            blk.mass = get_num(ph, "mass", blk.mass);
            blk.force_constant = get_num(ph, "force_constant", blk.force_constant);
            blk.voltage_limit = get_num(ph, "voltage_limit", blk.voltage_limit);
            if (!(blk.mass > 0.0) || !(blk.force_constant > 0.0))
                throw ConfigError("config: field 'physical' requires mass > 0 and force_constant > 0");
            cfg.physical = blk;
        }
    }

    if (doc.contains("outputs")) {
        const json& o = doc["outputs"];
        check_keys(o, {"trajectory_csv", "events_csv", "report", "plot"}, "outputs.");
        cfg.outputs.trajectory_csv = get_bool(o, "trajectory_csv", cfg.outputs.trajectory_csv);
        cfg.outputs.events_csv = get_bool(o, "events_csv", cfg.outputs.events_csv);
        cfg.outputs.report = get_bool(o, "report", cfg.outputs.report);
        cfg.outputs.plot = get_bool(o, "plot", cfg.outputs.plot);
    }

    if (doc.contains("sweep")) {
        const json& s = doc["sweep"];
        check_keys(s, {"ratio_min", "ratio_max", "step"}, "sweep.");
        cfg.sweep.ratio_min = get_num(s, "ratio_min", cfg.sweep.ratio_min);
        cfg.sweep.ratio_max = get_num(s, "ratio_max", cfg.sweep.ratio_max);
        cfg.sweep.step = get_num(s, "step", cfg.sweep.step);
        if (!(cfg.sweep.step > 0.0) || !(cfg.sweep.ratio_min < cfg.sweep.ratio_max))
            throw ConfigError("config: field 'sweep' requires step > 0 and ratio_min < ratio_max");
    }

    try {
        (void)cfg.to_scenario();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: malformed document: ") + e.what());
    }
    return parse_config(doc);
}

nlohmann::json serialize_config(const ScenarioConfig& cfg) {
    nlohmann::json doc;
    if (!cfg.preset.empty()) doc["preset"] = cfg.preset;
    doc["plant"] = {
        {"k", cfg.plant.k},
        {"c", cfg.plant.c},
        {"c_f", cfg.plant.friction.c_f},
        {"s", cfg.plant.friction.s},
        {"friction_model",
         cfg.plant.friction.model == FrictionModel::Presliding ? "presliding" : "discontinuous"},
        {"gamma", cfg.plant.gamma},
        {"f_bound", cfg.plant.f_bound},
    };
    if (cfg.plant.actuator_lag) doc["plant"]["actuator_lag"] = *cfg.plant.actuator_lag;
    doc["initial"] = {{"position", cfg.initial_position}, {"velocity", cfg.initial_velocity}};
    doc["reference"] = cfg.reference;
    doc["t_end"] = cfg.t_end;
    doc["dt_max"] = cfg.dt_max;
    doc["event_tol"] = cfg.event_tol;
    doc["convergence_radius"] = cfg.convergence_radius;
    doc["rest_velocity_tol"] = cfg.rest_velocity_tol;
    doc["sample_stride"] = cfg.sample_stride;
    doc["pad_to_t_end"] = cfg.pad_to_t_end;
    doc["weighted_norm"] = cfg.weighted_norm;
    doc["spectrum_window"] = cfg.spectrum_window;
    doc["limit_cycle_rel_tol"] = cfg.limit_cycle_rel_tol;
    if (cfg.physical)
        doc["physical"] = {{"mass", cfg.physical->mass},
                           {"force_constant", cfg.physical->force_constant},
                           {"voltage_limit", cfg.physical->voltage_limit}};
    doc["outputs"] = {{"trajectory_csv", cfg.outputs.trajectory_csv},
                      {"events_csv", cfg.outputs.events_csv},
                      {"report", cfg.outputs.report},
                      {"plot", cfg.outputs.plot}};
    doc["sweep"] = {{"ratio_min", cfg.sweep.ratio_min},
                    {"ratio_max", cfg.sweep.ratio_max},
                    {"step", cfg.sweep.step}};
    return doc;
}

}  // namespace relayfric
