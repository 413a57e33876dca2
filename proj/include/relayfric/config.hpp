#pragma once

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "relayfric/integrator.hpp"

namespace relayfric {

/// Optional physical-unit block; when present, the stiffness/damping/relay
/// gains in the config are voltage-domain values and are scaled by
/// force_constant/mass when building the normalized scenario.
struct PhysicalBlock {
    double mass = 1.0;
    double force_constant = 1.0;
    double voltage_limit = 0.0;

    bool operator==(const PhysicalBlock&) const = default;
};

struct OutputToggles {
    bool trajectory_csv = true;
    bool events_csv = true;
    bool report = true;
    bool plot = false;

    bool operator==(const OutputToggles&) const = default;
};

struct SweepSpec {
    double ratio_min = 1.05;
    double ratio_max = 3.0;
    double step = 0.05;

    bool operator==(const SweepSpec&) const = default;
};

struct ScenarioConfig {
    std::string preset;
    PlantParams plant{};
    double initial_position = 0.0;
    double initial_velocity = 0.0;
    double reference = 0.0;
    double t_end = 10.0;
    double dt_max = 1e-3;
    double event_tol = 1e-10;
    double convergence_radius = 1e-6;
    double rest_velocity_tol = 1e-9;
    unsigned sample_stride = 1;
    bool pad_to_t_end = false;
    bool weighted_norm = false;
    double spectrum_window = 0.5;
    double limit_cycle_rel_tol = 0.01;
    std::optional<PhysicalBlock> physical;
    OutputToggles outputs{};
    SweepSpec sweep{};

    bool operator==(const ScenarioConfig&) const = default;

    /// Normalized simulation scenario: position states are reference-relative
    /// and voltage-domain gains are scaled into acceleration units.
    [[nodiscard]] Scenario to_scenario() const;
};

/// Built-in parameter sets, immutable at runtime.
const std::map<std::string, ScenarioConfig>& preset_registry();

/// Parse and validate a config document. Unknown fields are rejected by name;
/// a "preset" key loads the registry template, remaining keys overlay it.
ScenarioConfig parse_config(const nlohmann::json& doc);
ScenarioConfig parse_config_file(const std::string& path);

nlohmann::json serialize_config(const ScenarioConfig& cfg);

}  // namespace relayfric
