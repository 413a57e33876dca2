#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "relayfric/integrator.hpp"

namespace relayfric {

enum class PlotKind { Timeseries, PhasePlane, FrictionDisplacement };

/// Shortest 17-significant-digit representation (byte-reproducible).
std::string format_double(double v);

/// Columns: t,x1,x2,u,f,z,regime,motion.
void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path);

void write_events_csv(const Trajectory& traj, const std::filesystem::path& path);

void write_json(const nlohmann::json& doc, const std::filesystem::path& path);

/// Minimal SVG renderer for the three standard views; event markers included.
void emit_plot(const Trajectory& traj, PlotKind kind, const std::filesystem::path& path);

}  // namespace relayfric
