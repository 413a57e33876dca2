#include "relayfric/runner.hpp"

#include <cmath>
#include <fstream>

#include "relayfric/errors.hpp"
#include "relayfric/gain_tuning.hpp"
#include "relayfric/harmonic_balance.hpp"
#include "relayfric/io.hpp"
#include "relayfric/lyapunov.hpp"
#include "relayfric/trajectory_analysis.hpp"

namespace relayfric {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void write_standard_outputs(const Trajectory& traj, const ScenarioConfig& cfg,
                            const fs::path& out_dir) {
    if (cfg.outputs.trajectory_csv) write_trajectory_csv(traj, out_dir / "trajectory.csv");
    if (cfg.outputs.events_csv) write_events_csv(traj, out_dir / "events.csv");
    if (cfg.outputs.plot) {
        emit_plot(traj, PlotKind::Timeseries, out_dir / "timeseries.svg");
        emit_plot(traj, PlotKind::PhasePlane, out_dir / "phase_plane.svg");
        emit_plot(traj, PlotKind::FrictionDisplacement, out_dir / "friction_displacement.svg");
    }
}

json trajectory_summary(const Trajectory& traj, const ScenarioConfig& cfg) {
    json j;
    j["termination"] = to_string(traj.termination);
    j["t_final"] = traj.samples.empty() ? 0.0 : traj.samples.back().t;
    j["n_samples"] = traj.samples.size();
    j["n_events"] = traj.events.size();
    if (!traj.samples.empty()) {
        j["final_x1"] = traj.samples.back().x1;
        j["final_x2"] = traj.samples.back().x2;
    }
    try {
        const SteadyStateError sse = steady_state_error(traj, cfg.spectrum_window);
        j["steady_state"] = {{"t_start", sse.t_start},
                             {"t_end", sse.t_end},
                             {"mean_abs_error", sse.mean_abs_error},
                             {"band_lo", sse.band_lo},
                             {"band_hi", sse.band_hi}};
    } catch (const std::exception&) {
        // trajectory too short for a tail window; omit the block
    }
    return j;
}

int cmd_simulate(const ScenarioConfig& cfg, const fs::path& out_dir, json& report) {
    const Trajectory traj = integrate(cfg.to_scenario());
    write_standard_outputs(traj, cfg, out_dir);
    report = trajectory_summary(traj, cfg);
    report["command"] = "simulate";
    report["preset"] = cfg.preset;
    report["reference"] = cfg.reference;
    return 0;
}

int cmd_limit_cycle(const ScenarioConfig& cfg, const fs::path& out_dir, json& report) {
    const Trajectory traj = integrate(cfg.to_scenario());
    write_standard_outputs(traj, cfg, out_dir);
    report = trajectory_summary(traj, cfg);
    report["command"] = "limit-cycle";
    report["preset"] = cfg.preset;

    const LimitCycleReport lc = detect_limit_cycle(traj, cfg.limit_cycle_rel_tol);
    report["limit_cycle"] = {{"detected", lc.detected},
                             {"amplitude", lc.amplitude},
                             {"period", lc.period},
                             {"contraction_ratio", lc.contraction_ratio},
                             {"n_reversals", lc.reversal_amplitude_sequence.size()}};

    const auto revs = detect_reversals(traj);
    if (revs.size() >= 3) {
        const double t1 = revs[revs.size() - 3].t;
        const double t2 = revs[revs.size() - 1].t;
        try {
            const double e_diss = hysteresis_loop_energy(traj, t1, t2);
            const double e_in = input_energy(traj, t1, t2);
            report["energy"] = {
                {"cycle_t1", t1},
                {"cycle_t2", t2},
                {"dissipated", e_diss},
                {"input", e_in},
                {"rel_mismatch", std::abs(e_in - e_diss) / std::max(std::abs(e_diss), 1e-300)}};
        } catch (const std::exception& e) {
            report["energy"] = {{"note", e.what()}};
        }
    }
    return 0;
}

std::vector<double> sweep_grid(const SweepSpec& sp) {
    std::vector<double> grid;
    for (double r = sp.ratio_min; r <= sp.ratio_max + 1e-12; r += sp.step) grid.push_back(r);
    return grid;
}

int cmd_sweep_gain(const ScenarioConfig& cfg, const fs::path& out_dir, json& report) {
    const auto grid = sweep_grid(cfg.sweep);
    const GainSweepResult res = empirical_gain_sweep(cfg.to_scenario(), grid);

    std::ofstream out(out_dir / "sweep.csv", std::ios::binary);
    out << "ratio,bound_T,sim_T,converged\n";
    for (std::size_t i = 0; i < res.grid.size(); ++i) {
        out << format_double(res.grid[i]) << ',' << format_double(res.bound_values[i]) << ','
            << format_double(res.sim_times[i]) << ','
            << (std::isfinite(res.sim_times[i]) ? "true" : "false") << '\n';
    }
    report["command"] = "sweep-gain";
    report["preset"] = cfg.preset;
    report["argmin_sim"] = res.argmin_sim;
    report["argmin_bound"] = res.argmin_bound;
    report["monotonic_bound"] = res.monotonic_bound;
    return 0;
}

int cmd_optimal_gain(const ScenarioConfig& cfg, const fs::path& out_dir, json& report) {
    if (!(cfg.sweep.ratio_min > 1.0))
        throw ConfigError("optimal-gain: sweep.ratio_min must be > 1");
    const double x1_0 = std::abs(cfg.initial_position - cfg.reference);
    const BoundMinimumReport rep = minimize_bound(cfg.plant.friction.c_f, x1_0,
                                                  cfg.sweep.ratio_min, cfg.sweep.ratio_max);
    const auto grid = sweep_grid(cfg.sweep);
    const GainSweepResult curve = bound_curve(cfg.plant.friction.c_f, x1_0, grid);
    std::ofstream out(out_dir / "bound_curve.csv", std::ios::binary);
    out << "ratio,bound_T\n";
    for (std::size_t i = 0; i < curve.grid.size(); ++i)
        out << format_double(curve.grid[i]) << ',' << format_double(curve.bound_values[i]) << '\n';

    report["command"] = "optimal-gain";
    report["preset"] = cfg.preset;
    report["interior_minimum"] = rep.interior_minimum;
    report["ratio"] = rep.ratio;
    report["objective"] = rep.objective;
    report["monotone_increasing"] = rep.monotone_increasing;
    report["boundary_limit"] = rep.boundary_limit;
    report["finding"] = rep.finding;
    return 0;
}

int cmd_harmonic_balance(const ScenarioConfig& cfg, const fs::path& out_dir, json& report) {
    const ChatterValidation val = predict_chatter_and_validate(cfg.to_scenario());
    report["command"] = "harmonic-balance";
    report["preset"] = cfg.preset;
    report["prediction"] = {{"exists", val.prediction.exists},
                            {"omega_bar", val.prediction.omega_bar},
                            {"a1", val.prediction.a1},
                            {"phase_margin_evidence", val.prediction.phase_margin_evidence},
                            {"balance_residual", val.prediction.balance_residual},
                            {"note", val.prediction.note}};
    report["simulation"] = {{"oscillates", val.sim_oscillates},
                            {"omega", val.sim_omega},
                            {"a1", val.sim_a1}};
    report["freq_rel_dev"] = val.freq_rel_dev;
    report["amp_rel_dev"] = val.amp_rel_dev;
    report["conclusive"] = val.conclusive;
    report["note"] = val.note;
    (void)out_dir;
    return val.conclusive ? 0 : 3;
}

}  // namespace

Command parse_command(const std::string& name) {
    if (name == "simulate") return Command::Simulate;
    if (name == "sweep-gain") return Command::SweepGain;
    if (name == "optimal-gain") return Command::OptimalGain;
    if (name == "harmonic-balance") return Command::HarmonicBalance;
    if (name == "limit-cycle") return Command::LimitCycle;
    throw ConfigError("unknown command '" + name + "'");
}

int run_with_report(Command cmd, const ScenarioConfig& cfg, const fs::path& out_dir,
                    json& report) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec && !fs::is_directory(out_dir))
        throw ConfigError("cannot create output directory: " + out_dir.string());

    int status = 0;
    try {
        switch (cmd) {
            case Command::Simulate: status = cmd_simulate(cfg, out_dir, report); break;
            case Command::LimitCycle: status = cmd_limit_cycle(cfg, out_dir, report); break;
            case Command::SweepGain: status = cmd_sweep_gain(cfg, out_dir, report); break;
            case Command::OptimalGain: status = cmd_optimal_gain(cfg, out_dir, report); break;
            case Command::HarmonicBalance: status = cmd_harmonic_balance(cfg, out_dir, report); break;
        }
    } catch (const ConfigError& e) {
        write_json(json{{"error", "config"}, {"message", e.what()}}, out_dir / "error.json");
        return 1;
    } catch (const InconclusiveError& e) {
        write_json(json{{"error", "inconclusive"}, {"message", e.what()}}, out_dir / "error.json");
        return 3;
    } catch (const InsufficientDataError& e) {
        write_json(json{{"error", "insufficient-data"}, {"message", e.what()}},
                   out_dir / "error.json");
        return 3;
    } catch (const std::exception& e) {
        write_json(json{{"error", "numerical"}, {"message", e.what()}}, out_dir / "error.json");
        return 2;
    }
    if (cfg.outputs.report) write_json(report, out_dir / "report.json");
    return status;
}

int run(Command cmd, const ScenarioConfig& cfg, const fs::path& out_dir) {
    json report;
    return run_with_report(cmd, cfg, out_dir, report);
}

}  // namespace relayfric
