#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "planarray/detail/sha256.hpp"
#include "planarray/directivity.hpp"
#include "planarray/pattern.hpp"

namespace planarray {

/// One row of the element-count sweep: linear factor, its planar square and
/// the field dB value.
struct SweepRow {
    int n_elements;
    double af_x;   // linear array factor
    double af_xy;  // planar value, af_x^2
    double af_db;  // 20*log10(af_x) == 10*log10(af_xy)
};

inline constexpr std::array<int, 13> default_sweep_counts{4,  5,  6,  8,  10, 15, 20,
                                                          25, 30, 35, 40, 45, 50};
inline constexpr double default_sweep_spacing = 0.47;      // wavelengths
inline constexpr double default_sweep_theta = pi / 4.0;    // radians

/// Element sweep at a fixed observation angle with broadside excitation,
/// using the uniform-array phase rho = 2*pi*spacing*cos(theta) on both axes.
inline std::vector<SweepRow> table1_sweep(std::span<const int> counts, double spacing,
                                          double theta, TrigMode mode) {
    if (!std::isfinite(spacing) || spacing <= 0.0)
        throw std::domain_error("table1_sweep: spacing must be finite and positive");
    if (!std::isfinite(theta))
        throw std::domain_error("table1_sweep: theta must be finite");
    const double rho = axial_phase(spacing, theta);
    std::vector<SweepRow> rows;
    rows.reserve(counts.size());
    for (int n : counts) {
        const double af_x = linear_af_from_phase(n, rho, mode);
        rows.push_back({n, af_x, af_x * af_x, field_to_db(af_x)});
    }
    return rows;
}

inline std::vector<SweepRow> table1_sweep(TrigMode mode) {
    return table1_sweep(default_sweep_counts, default_sweep_spacing, default_sweep_theta, mode);
}

/// The published reference sweep this library reproduces in
/// PaperDegreeCompat mode (13 rows, spacing 0.47 wavelengths, theta 45deg).
inline const std::vector<SweepRow>& table1_reference() {
    static const std::vector<SweepRow> rows{
        {4, 0.9992, 0.9984, -0.0072},  {5, 0.9980, 0.9980, -0.0176},
        {6, 0.9981, 0.9978, -0.0168},  {8, 0.9834, 0.9674, -0.1452},
        {10, 0.9944, 0.9888, -0.0489}, {15, 0.9876, 0.9754, -0.1079},
        {20, 0.9781, 0.9567, -0.1927}, {25, 0.9658, 0.9323, -0.3021},
        {30, 0.9510, 0.9044, -0.4379}, {35, 0.9336, 0.8716, -0.5966},
        {40, 0.9138, 0.8350, -0.7827}, {45, 0.8917, 0.7951, -0.9957},
        {50, 0.8673, 0.7522, -1.2363}};
    return rows;
}

/// Per-row comparison of the compat-mode sweep against the reference table.
/// Reported rather than asserted here: the acceptance gate decides what to
/// do with rows that miss the bands.
struct SweepRowDiff {
    int n_elements;
    double computed_af_x;
    double reference_af_x;
    double delta_af;
    double computed_db;
    double reference_db;
    double delta_db;
    bool af_within;
    bool db_within;
};

inline std::vector<SweepRowDiff> compat_reproduction_report(double af_tol = 1.5e-3,
                                                            double db_tol = 5e-3) {
    const std::vector<SweepRow> computed = table1_sweep(TrigMode::PaperDegreeCompat);
    const std::vector<SweepRow>& reference = table1_reference();
    std::vector<SweepRowDiff> out;
    out.reserve(reference.size());
    for (std::size_t i = 0; i < reference.size(); ++i) {
        const double d_af = computed[i].af_x - reference[i].af_x;
        const double d_db = computed[i].af_db - reference[i].af_db;
        out.push_back({reference[i].n_elements, computed[i].af_x, reference[i].af_x, d_af,
                       computed[i].af_db, reference[i].af_db, d_db, std::abs(d_af) <= af_tol,
                       std::abs(d_db) <= db_tol});
    }
    return out;
}

/// Sweep CSV with the fixed header `n_elements,af_x,af_planar,af_db`.
inline std::string export_sweep_csv(std::span<const SweepRow> rows) {
    std::string out = "n_elements,af_x,af_planar,af_db\n";
    char buf[112];
    for (const SweepRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%.9g,%.9g,%.9g\n", r.n_elements, r.af_x, r.af_xy,
                      r.af_db);
        out += buf;
    }
    return out;
}

/// The two exported data series: (N, af_x) and (directivity, af_xy).
struct Fig2Series {
    std::vector<std::pair<double, double>> af_vs_n;
    std::vector<std::pair<double, double>> af_vs_directivity;
};

/// Pairs each sweep row with a per-row directivity (one value per row, from
/// the numerical oracle).
inline Fig2Series fig2_series(std::span<const SweepRow> rows,
                              std::span<const double> directivities) {
    if (rows.empty())
        throw std::domain_error("fig2_series: empty sweep");
    if (rows.size() != directivities.size())
        throw std::domain_error("fig2_series: need one directivity per sweep row");
    Fig2Series s;
    s.af_vs_n.reserve(rows.size());
    s.af_vs_directivity.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        s.af_vs_n.emplace_back(static_cast<double>(rows[i].n_elements), rows[i].af_x);
        s.af_vs_directivity.emplace_back(directivities[i], rows[i].af_xy);
    }
    return s;
}

struct ManifestEntry {
    std::string path;  // relative to the batch output directory
    std::string sha256;
    std::uint64_t size_bytes;
};

struct Fig3Options {
    std::vector<std::pair<int, int>> sizes{{4, 4},   {10, 10}, {15, 15}, {20, 20},
                                           {25, 25}, {35, 35}, {45, 45}, {50, 50}};
    double spacing = 0.47;                             // wavelengths, both axes
    GridSpec pattern_grid{181, 361};                   // 1 degree steps
    GridSpec directivity_grid = default_directivity_grid;
    double cut_phi = pi / 4.0;
    double db_floor = -60.0;
};

namespace detail {

inline void write_file_or_throw(const std::filesystem::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw std::runtime_error("cannot open for writing: " + path.string());
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    os.flush();
    if (!os)
        throw std::runtime_error("write failed: " + path.string());
}

}  // namespace detail

/// Pattern batch: per size one full-grid CSV, one polar-cut SVG at the cut
/// azimuth and one JSON metadata record that includes the numerical
/// directivity; plus manifest.json listing every artifact with its SHA-256
/// digest and byte size, sorted by size then artifact name.
///
/// All three artifacts of a size are rendered in memory and written to
/// temporary names that are renamed into place only after every write of
/// that size succeeded, so a failure never leaves a partial size behind.
/// Content is deterministic, and so are the digests across reruns.
inline std::vector<ManifestEntry> fig3_batch(const Fig3Options& opt,
                                             const std::filesystem::path& out_dir) {
    if (opt.sizes.empty())
        throw std::domain_error("fig3_batch: no sizes requested");
    if (!std::isfinite(opt.spacing) || opt.spacing <= 0.0)
        throw std::domain_error("fig3_batch: spacing must be finite and positive");

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir))
        throw std::runtime_error("fig3_batch: cannot create output directory: " +
                                 out_dir.string());

    std::vector<std::pair<int, int>> sizes = opt.sizes;
    std::sort(sizes.begin(), sizes.end());

    std::vector<ManifestEntry> manifest;
    manifest.reserve(sizes.size() * 3);
    char stem[32];
    for (const auto& [m, n] : sizes) {
        std::snprintf(stem, sizeof stem, "%02dx%02d", m, n);
        const ArrayGeometry geom(m, n, opt.spacing, opt.spacing);
        const SteeringPhase broadside;

        const PatternGrid grid = sample_pattern(geom, broadside, isotropic_element(),
                                                opt.pattern_grid, TrigMode::Radians,
                                                opt.db_floor);
        const std::vector<CutPoint> cut =
            principal_cut(grid, CutSpec::phi_const(opt.cut_phi));
        const DirectivityReport dir = numerical_directivity(geom, broadside,
                                                            isotropic_element(),
                                                            opt.directivity_grid);

        nlohmann::json meta;
        meta["geometry"] = {{"m_x", m}, {"n_y", n}, {"a_x", opt.spacing}, {"a_y", opt.spacing}};
        meta["steering"] = {{"omega_x", 0.0}, {"omega_y", 0.0}};
        meta["grid"] = {{"n_theta", opt.pattern_grid.n_theta},
                        {"n_phi", opt.pattern_grid.n_phi}};
        meta["directivity"] = {{"value", dir.value},
                               {"dbi", dir.value_dbi},
                               {"grid",
                                {{"n_theta", dir.grid_resolution->n_theta},
                                 {"n_phi", dir.grid_resolution->n_phi}}},
                               {"hemisphere_only", dir.hemisphere_only}};
        meta["cut_phi_deg"] = rad_to_deg(opt.cut_phi);
        meta["half_power_width_deg"] = rad_to_deg(half_power_width(cut));

        const std::array<std::pair<std::string, std::string>, 3> artifacts{
            {{std::string("pattern_") + stem + ".csv", export_csv(grid)},
             {std::string("cut_phi45_") + stem + ".svg",
              export_polar_svg(cut, {320.0, opt.db_floor})},
             {std::string("meta_") + stem + ".json", meta.dump(2) + "\n"}}};

        for (const auto& [name, content] : artifacts)
            detail::write_file_or_throw(out_dir / (name + ".tmp"), content);
        for (const auto& [name, content] : artifacts)
            std::filesystem::rename(out_dir / (name + ".tmp"), out_dir / name);
        for (const auto& [name, content] : artifacts)
            manifest.push_back({name, detail::sha256_hex(content),
                                static_cast<std::uint64_t>(content.size())});
    }

    nlohmann::json jmanifest = nlohmann::json::array();
    for (const ManifestEntry& e : manifest)
        jmanifest.push_back({{"path", e.path}, {"sha256", e.sha256},
                             {"size_bytes", e.size_bytes}});
    detail::write_file_or_throw(out_dir / "manifest.json", jmanifest.dump(2) + "\n");

    return manifest;
}

}  // namespace planarray
