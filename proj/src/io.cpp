#include "relayfric/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace relayfric {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path.string());
    return out;
}

}  // namespace

void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "t,x1,x2,u,f,z,regime,motion\n";
    for (const auto& s : traj.samples) {
        out << format_double(s.t) << ',' << format_double(s.x1) << ',' << format_double(s.x2)
            << ',' << format_double(s.u) << ',' << format_double(s.f) << ','
            << format_double(s.z) << ',' << to_string(s.regime) << ',' << to_string(s.motion)
            << '\n';
    }
}

void write_events_csv(const Trajectory& traj, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "t,kind,x1_before,x2_before,x1_after,x2_after,z_after,f_r_after\n";
    for (const auto& ev : traj.events) {
        out << format_double(ev.t) << ',' << to_string(ev.kind) << ','
            << format_double(ev.state_before.x1) << ',' << format_double(ev.state_before.x2)
            << ',' << format_double(ev.state_after.x1) << ',' << format_double(ev.state_after.x2)
            << ',' << format_double(ev.state_after.presliding.z) << ','
            << format_double(ev.state_after.presliding.f_r) << '\n';
    }
}

void write_json(const nlohmann::json& doc, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << doc.dump(2) << '\n';
}

void emit_plot(const Trajectory& traj, PlotKind kind, const std::filesystem::path& path) {
    if (traj.samples.empty()) throw std::invalid_argument("emit_plot: empty trajectory");

    constexpr double kW = 900.0, kH = 600.0, kM = 50.0;
    struct Series {
        std::string color;
        std::vector<std::pair<double, double>> pts;
    };
    std::vector<Series> series;
    std::string title;

    switch (kind) {
        case PlotKind::Timeseries: {
            title = "position and velocity vs time";
            Series x1{"#1f77b4", {}}, x2{"#d62728", {}};
            for (const auto& s : traj.samples) {
                x1.pts.emplace_back(s.t, s.x1);
                x2.pts.emplace_back(s.t, s.x2);
            }
            series = {x1, x2};
            break;
        }
        case PlotKind::PhasePlane: {
            title = "phase plane";
            Series ph{"#1f77b4", {}};
            for (const auto& s : traj.samples) ph.pts.emplace_back(s.x1, s.x2);
            series = {ph};
            break;
        }
        case PlotKind::FrictionDisplacement: {
            title = "friction vs displacement";
            Series fd{"#2ca02c", {}};
            for (const auto& s : traj.samples) fd.pts.emplace_back(s.x1, s.f);
            series = {fd};
            break;
        }
    }

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& sr : series)
        for (const auto& [x, y] : sr.pts) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) ymax = ymin + 1.0;
    auto mapx = [&](double x) { return kM + (x - xmin) / (xmax - xmin) * (kW - 2 * kM); };
    auto mapy = [&](double y) { return kH - kM - (y - ymin) / (ymax - ymin) * (kH - 2 * kM); };

    auto out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
        << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << title << "</text>\n";
    // axes
    out << "<line x1=\"" << kM << "\" y1=\"" << kH - kM << "\" x2=\"" << kW - kM << "\" y2=\""
        << kH - kM << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kM << "\" y1=\"" << kM << "\" x2=\"" << kM << "\" y2=\"" << kH - kM
        << "\" stroke=\"black\"/>\n";

    char buf[64];
    for (const auto& sr : series) {
        out << "<polyline fill=\"none\" stroke=\"" << sr.color << "\" stroke-width=\"1\" points=\"";
        // cap the emitted points to keep files small on long runs
        const std::size_t stride = std::max<std::size_t>(1, sr.pts.size() / 20000);
        for (std::size_t i = 0; i < sr.pts.size(); i += stride) {
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", mapx(sr.pts[i].first),
                          mapy(sr.pts[i].second));
            out << buf;
        }
        std::snprintf(buf, sizeof buf, "%.2f,%.2f", mapx(sr.pts.back().first),
                      mapy(sr.pts.back().second));
        out << buf << "\"/>\n";
    }

    if (kind == PlotKind::Timeseries) {
        const std::size_t ev_stride = std::max<std::size_t>(1, traj.events.size() / 400 + 1);
        for (std::size_t i = 0; i < traj.events.size(); i += ev_stride) {
            const auto& ev = traj.events[i];
            std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2\"", mapx(ev.t),
                          mapy(ev.state_after.x1));
            out << buf << " fill=\"#ff7f0e\"/>\n";
        }
    }
    out << "</svg>\n";
}

}  // namespace relayfric
