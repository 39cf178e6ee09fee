#pragma once

#include <cmath>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "planarray/array_factor.hpp"
#include "planarray/element.hpp"
#include "planarray/wave.hpp"

namespace planarray {

/// Sampled radiation pattern |AF * element_factor| over a uniform
/// (theta, phi) mesh, peak-normalized to 1, with a floor-clamped dB copy.
/// Matrices are row-major with theta as the row index.
struct PatternGrid {
    std::vector<double> thetas;     // radians, ascending
    std::vector<double> phis;       // radians, ascending
    std::vector<double> amplitude;  // in [0, 1], max of 1
    std::vector<double> db;         // 20*log10(amplitude), clamped at db_floor
    double db_floor;

    std::size_t n_theta() const noexcept { return thetas.size(); }
    std::size_t n_phi() const noexcept { return phis.size(); }
    double amp_at(std::size_t i, std::size_t j) const { return amplitude[i * n_phi() + j]; }
    double db_at(std::size_t i, std::size_t j) const { return db[i * n_phi() + j]; }
};

/// theta covers [0, pi] and phi [0, 2*pi], endpoints included.
inline PatternGrid sample_pattern(const ArrayGeometry& geom, const SteeringPhase& steer,
                                  const ElementPattern& element, GridSpec grid_spec,
                                  TrigMode mode = TrigMode::Radians,
                                  double db_floor = -60.0) {
    if (grid_spec.n_theta < 2 || grid_spec.n_phi < 2)
        throw std::domain_error("sample_pattern: need at least 2 samples per axis");
    if (!std::isfinite(db_floor) || db_floor >= 0.0)
        throw std::domain_error("sample_pattern: dB floor must be negative");

    PatternGrid grid;
    grid.db_floor = db_floor;
    grid.thetas.resize(grid_spec.n_theta);
    grid.phis.resize(grid_spec.n_phi);
    const double h_theta = pi / (grid_spec.n_theta - 1);
    const double h_phi = two_pi / (grid_spec.n_phi - 1);
    for (int i = 0; i < grid_spec.n_theta; ++i) grid.thetas[i] = i * h_theta;
    for (int j = 0; j < grid_spec.n_phi; ++j) grid.phis[j] = j * h_phi;

    grid.amplitude.reserve(grid.thetas.size() * grid.phis.size());
    double peak = 0.0;
    for (double theta : grid.thetas) {
        const double ef = element.factor(theta);
        for (double phi : grid.phis) {
            const double a = planar_af(geom, steer, Direction(theta, phi), mode) * ef;
            peak = std::max(peak, a);
            grid.amplitude.push_back(a);
        }
    }
    if (!(peak > 0.0))
        throw std::domain_error("sample_pattern: pattern is identically zero on this grid");

    grid.db.reserve(grid.amplitude.size());
    for (double& a : grid.amplitude) {
        a /= peak;
        grid.db.push_back(std::max(field_to_db(a), db_floor));
    }
    return grid;
}

struct CutPoint {
    double angle;      // radians; theta for a phi-cut, phi for a theta-cut
    double amplitude;
    double db;
};

enum class CutAxis { PhiConst, ThetaConst };

struct CutSpec {
    CutAxis axis;
    double angle;  // radians

    static CutSpec phi_const(double phi) { return {CutAxis::PhiConst, phi}; }
    static CutSpec theta_const(double theta) { return {CutAxis::ThetaConst, theta}; }
};

/// Extracts the grid line nearest to the requested cut angle, without
/// interpolation, ordered by the running angle.
inline std::vector<CutPoint> principal_cut(const PatternGrid& grid, CutSpec cut) {
    const std::vector<double>& fixed_axis =
        (cut.axis == CutAxis::PhiConst) ? grid.phis : grid.thetas;
    if (!std::isfinite(cut.angle) || cut.angle < fixed_axis.front() - 1e-12 ||
        cut.angle > fixed_axis.back() + 1e-12)
        throw std::domain_error("principal_cut: cut angle outside the sampled range");

    const double step = fixed_axis[1] - fixed_axis[0];
    const long k = std::clamp<long>(
        std::lround((cut.angle - fixed_axis.front()) / step), 0,
        static_cast<long>(fixed_axis.size()) - 1);

    std::vector<CutPoint> out;
    if (cut.axis == CutAxis::PhiConst) {
        out.reserve(grid.n_theta());
        for (std::size_t i = 0; i < grid.n_theta(); ++i)
            out.push_back({grid.thetas[i], grid.amp_at(i, k), grid.db_at(i, k)});
    } else {
        out.reserve(grid.n_phi());
        for (std::size_t j = 0; j < grid.n_phi(); ++j)
            out.push_back({grid.phis[j], grid.amp_at(k, j), grid.db_at(k, j)});
    }
    return out;
}

namespace detail {

inline void append_formatted(std::string& out, const char* fmt, double a, double b, double c) {
    char buf[128];
    std::snprintf(buf, sizeof buf, fmt, a, b, c);
    out += buf;
}

inline void append_formatted(std::string& out, const char* fmt, double a, double b, double c,
                             double d) {
    char buf[160];
    std::snprintf(buf, sizeof buf, fmt, a, b, c, d);
    out += buf;
}

}  // namespace detail

/// Full-grid CSV: header `theta_deg,phi_deg,amplitude,db`, one row per cell
/// in theta-major order, angles in degrees with 6 decimals, values with 9
/// significant digits. Byte-deterministic for identical grids.
inline std::string export_csv(const PatternGrid& grid) {
    std::string out = "theta_deg,phi_deg,amplitude,db\n";
    out.reserve(out.size() + grid.amplitude.size() * 48);
    for (std::size_t i = 0; i < grid.n_theta(); ++i)
        for (std::size_t j = 0; j < grid.n_phi(); ++j)
            detail::append_formatted(out, "%.6f,%.6f,%.9g,%.9g\n", rad_to_deg(grid.thetas[i]),
                                     rad_to_deg(grid.phis[j]), grid.amp_at(i, j),
                                     grid.db_at(i, j));
    return out;
}

/// Cut CSV: header `angle_deg,amplitude,db`, same numeric formatting as the
/// grid export.
inline std::string export_csv(std::span<const CutPoint> cut) {
    std::string out = "angle_deg,amplitude,db\n";
    out.reserve(out.size() + cut.size() * 40);
    for (const CutPoint& p : cut)
        detail::append_formatted(out, "%.6f,%.9g,%.9g\n", rad_to_deg(p.angle), p.amplitude,
                                 p.db);
    return out;
}

/// Generic two-column CSV for exported data series.
inline std::string export_series_csv(std::span<const std::pair<double, double>> series,
                                     const std::string& x_name, const std::string& y_name) {
    std::string out = x_name + "," + y_name + "\n";
    char buf[96];
    for (const auto& [x, y] : series) {
        std::snprintf(buf, sizeof buf, "%.9g,%.9g\n", x, y);
        out += buf;
    }
    return out;
}

struct PolarSvgStyle {
    double radius_px = 320.0;
    double db_floor = -60.0;
};

/// Standalone SVG 1.1 polar plot of a cut: dB rings every 10 dB from 0 down
/// to the floor, radial spokes every 30 degrees and the cut traced as a
/// polyline whose radius is linear in dB above the floor. Deterministic
/// output, no plotting dependency.
inline std::string export_polar_svg(std::span<const CutPoint> cut, PolarSvgStyle style = {}) {
    if (cut.empty()) throw std::domain_error("export_polar_svg: empty cut");
    if (!(style.radius_px > 0.0) || !(style.db_floor < 0.0))
        throw std::domain_error("export_polar_svg: radius must be positive, floor negative");

    const double r_max = style.radius_px;
    const double margin = 0.125 * r_max;
    const double c = r_max + margin;  // center of the plot
    const double size = 2.0 * c;
    const double floor = style.db_floor;

    const auto radius_of_db = [&](double db) {
        const double clamped = std::max(db, floor);
        return r_max * (clamped - floor) / (0.0 - floor);
    };

    char buf[256];
    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
                  "width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                  size, size, size, size);
    svg += buf;
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (double level = 0.0; level >= floor - 1e-9; level -= 10.0) {
        const double r = radius_of_db(level);
        std::snprintf(buf, sizeof buf,
                      "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"none\" "
                      "stroke=\"#c8c8c8\" stroke-width=\"1\"/>\n",
                      c, c, r);
        svg += buf;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.2f\" y=\"%.2f\" font-size=\"%.1f\" "
                      "fill=\"#808080\">%g</text>\n",
                      c + 3.0, c - r - 3.0, 0.035 * r_max, level);
        svg += buf;
    }
    for (int deg = 0; deg < 360; deg += 30) {
        const double a = deg_to_rad(deg);
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                      "stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n",
                      c, c, c + r_max * std::sin(a), c - r_max * std::cos(a));
        svg += buf;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.2f\" y=\"%.2f\" font-size=\"%.1f\" "
                      "fill=\"#808080\" text-anchor=\"middle\">%d</text>\n",
                      c + (r_max + 0.06 * r_max) * std::sin(a),
                      c - (r_max + 0.06 * r_max) * std::cos(a) + 0.012 * r_max,
                      0.035 * r_max, deg);
        svg += buf;
    }

    svg += "<polyline fill=\"none\" stroke=\"#1b6ca8\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < cut.size(); ++i) {
        const double r = radius_of_db(cut[i].db);
        std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", i ? " " : "",
                      c + r * std::sin(cut[i].angle), c - r * std::cos(cut[i].angle));
        svg += buf;
    }
    svg += "\"/>\n</svg>\n";
    return svg;
}

/// Width of the main lobe of a cut at the half-power level (amplitude
/// 1/sqrt(2) of the cut's own peak), with linear interpolation between
/// samples. When the peak sits on a boundary of the cut the one-sided width
/// is doubled. Returns radians.
inline double half_power_width(std::span<const CutPoint> cut) {
    if (cut.size() < 2)
        throw std::domain_error("half_power_width: need at least 2 points");
    std::size_t p = 0;
    for (std::size_t i = 1; i < cut.size(); ++i)
        if (cut[i].amplitude > cut[p].amplitude) p = i;
    const double peak = cut[p].amplitude;
    if (!(peak > 0.0))
        throw std::domain_error("half_power_width: cut has no positive peak");
    const double target = peak / std::sqrt(2.0);

    const auto crossing = [&](std::size_t a, std::size_t b) {
        // interpolate between samples a (above target) and b (below target)
        const double t = (cut[a].amplitude - target) / (cut[a].amplitude - cut[b].amplitude);
        return cut[a].angle + t * (cut[b].angle - cut[a].angle);
    };

    bool has_right = false;
    bool has_left = false;
    double right = 0.0;
    double left = 0.0;
    for (std::size_t i = p; i + 1 < cut.size(); ++i)
        if (cut[i].amplitude >= target && cut[i + 1].amplitude < target) {
            right = crossing(i, i + 1);
            has_right = true;
            break;
        }
    for (std::size_t i = p; i > 0; --i)
        if (cut[i].amplitude >= target && cut[i - 1].amplitude < target) {
            left = crossing(i, i - 1);
            has_left = true;
            break;
        }

    if (has_left && has_right) return right - left;
    if (has_right) return 2.0 * (right - cut[p].angle);
    if (has_left) return 2.0 * (cut[p].angle - left);
    throw std::domain_error("half_power_width: no half-power crossing in the cut");
}

/// JSON export mirroring the CSV fields: thetas_deg, phis_deg, amplitude and
/// db (row-major) plus a meta object describing geometry, steering, trig
/// mode and grid resolution. Deterministic (keys are sorted, shortest
/// round-trip float formatting).
inline std::string export_json(const PatternGrid& grid, const ArrayGeometry& geom,
                               const SteeringPhase& steer, TrigMode mode) {
    nlohmann::json j;
    std::vector<double> thetas_deg;
    std::vector<double> phis_deg;
    thetas_deg.reserve(grid.n_theta());
    phis_deg.reserve(grid.n_phi());
    for (double t : grid.thetas) thetas_deg.push_back(rad_to_deg(t));
    for (double p : grid.phis) phis_deg.push_back(rad_to_deg(p));
    j["thetas_deg"] = thetas_deg;
    j["phis_deg"] = phis_deg;
    j["amplitude"] = grid.amplitude;
    j["db"] = grid.db;
    j["meta"] = {
        {"geometry",
         {{"m_x", geom.m_x}, {"n_y", geom.n_y}, {"a_x", geom.a_x}, {"a_y", geom.a_y}}},
        {"steering", {{"omega_x", steer.omega_x}, {"omega_y", steer.omega_y}}},
        {"mode", mode == TrigMode::Radians ? "radians" : "paper-degree-compat"},
        {"grid",
         {{"n_theta", static_cast<int>(grid.n_theta())},
          {"n_phi", static_cast<int>(grid.n_phi())}}},
        {"db_floor", grid.db_floor},
    };
    return j.dump(2) + "\n";
}

}  // namespace planarray
