#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "relayfric/config.hpp"

namespace relayfric {

enum class Command { Simulate, SweepGain, OptimalGain, HarmonicBalance, LimitCycle };

Command parse_command(const std::string& name);

/// Execute one command, writing outputs under out_dir.
/// Exit status: 0 success, 1 configuration error, 2 numerical failure,
/// 3 inconclusive analysis. Failures leave an error.json with details.
int run(Command cmd, const ScenarioConfig& cfg, const std::filesystem::path& out_dir);

/// As run(), but also returns the report document (for tests).
int run_with_report(Command cmd, const ScenarioConfig& cfg, const std::filesystem::path& out_dir,
                    nlohmann::json& report_out);

}  // namespace relayfric
