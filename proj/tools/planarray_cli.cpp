// Command-line front end for the planarray library. Angles are accepted in
// degrees and converted once at this boundary; spacings are in wavelengths
// unless --freq or --lambda switches the command into meters mode.
//
// Exit codes: 0 success, 1 domain or I/O error, 2 usage error.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "planarray/experiments.hpp"

namespace {

using namespace planarray;

std::string format_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream os(out_path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open for writing: " + out_path);
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw std::runtime_error("write failed: " + out_path);
}

// Spacing unit handling: without --freq/--lambda spacings are wavelengths;
// with either of them spacings are meters and get divided by the wavelength.
struct SpacingUnits {
    double freq = 0.0;    // Hz, 0 = unset
    double lambda = 0.0;  // m, 0 = unset

    void add_options(CLI::App* cmd) {
        auto* f = cmd->add_option("--freq", freq,
                                  "operating frequency in Hz; spacings become meters");
        auto* l = cmd->add_option("--lambda", lambda,
                                  "wavelength in meters; spacings become meters");
        f->excludes(l);
        l->excludes(f);
    }

    double to_wavelengths(double spacing) const {
        if (freq == 0.0 && lambda == 0.0) return spacing;
        const double wl = (lambda != 0.0) ? lambda : wavelength_of(freq);
        if (!std::isfinite(wl) || wl <= 0.0)
            throw std::domain_error("invalid wavelength");
        return spacing / wl;
    }
};

struct GeometryFlags {
    int mx = 1;
    int ny = 1;
    double ax = 0.0;
    double ay = 0.0;
    double steer_theta_deg = 0.0;
    double steer_phi_deg = 0.0;
    bool has_steer = false;
    std::string convention = "physical";
    SpacingUnits units;

    void add_options(CLI::App* cmd, bool required_spacing = true) {
        cmd->add_option("--mx", mx, "elements along x")->required(required_spacing);
        cmd->add_option("--ny", ny, "elements along y")->required(required_spacing);
        auto* ax_opt = cmd->add_option("--ax", ax, "spacing along x (wavelengths)");
        auto* ay_opt = cmd->add_option("--ay", ay, "spacing along y (wavelengths)");
        if (required_spacing) {
            ax_opt->required();
            ay_opt->required();
        }
        cmd->add_option("--steer-theta", steer_theta_deg, "steering theta in degrees")
            ->each([this](const std::string&) { has_steer = true; });
        cmd->add_option("--steer-phi", steer_phi_deg, "steering phi in degrees")
            ->each([this](const std::string&) { has_steer = true; });
        cmd->add_option("--convention", convention, "steering convention")
            ->check(CLI::IsMember({"physical", "paper-literal"}));
        units.add_options(cmd);
    }

    PhaseConvention phase_convention() const {
        return convention == "paper-literal" ? PhaseConvention::PaperLiteral
                                             : PhaseConvention::Physical;
    }

    ArrayGeometry geometry() const {
        return ArrayGeometry(mx, ny, units.to_wavelengths(ax), units.to_wavelengths(ay));
    }

    SteeringPhase steering(const ArrayGeometry& geom) const {
        if (!has_steer) return SteeringPhase{};
        return steering_phases(geom,
                               Direction(deg_to_rad(steer_theta_deg), deg_to_rad(steer_phi_deg)),
                               phase_convention());
    }
};

std::string lobe_kind_name(LobeKind k) {
    switch (k) {
        case LobeKind::Null: return "null";
        case LobeKind::Peak: return "peak";
        default: return "grating";
    }
}

std::string lobes_csv(const std::vector<LobeReport>& lobes) {
    std::string out = "kind,index,theta_deg,arccos_argument\n";
    for (const LobeReport& l : lobes)
        out += lobe_kind_name(l.kind) + "," + std::to_string(l.index) + "," +
               format_g(rad_to_deg(l.theta)) + "," + format_g(l.arccos_argument) + "\n";
    return out;
}

nlohmann::json lobes_json(const std::vector<LobeReport>& lobes) {
    nlohmann::json arr = nlohmann::json::array();
    for (const LobeReport& l : lobes)
        arr.push_back({{"kind", lobe_kind_name(l.kind)},
                       {"index", l.index},
                       {"theta_deg", rad_to_deg(l.theta)},
                       {"arccos_argument", l.arccos_argument}});
    return arr;
}

ElementPattern element_from_name(const std::string& name) {
    return name == "monopole" ? monopole_element() : isotropic_element();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"planarray: uniform linear/planar array factors, lobes, patterns and "
                 "directivity"};
    app.require_subcommand(1);

    // ---- af ----------------------------------------------------------------
    GeometryFlags af_geom;
    double af_theta = 0.0, af_phi = 0.0;
    bool af_compat = false, af_json = false;
    auto* af_cmd = app.add_subcommand("af", "array factor at one direction");
    af_geom.add_options(af_cmd);
    af_cmd->add_option("--theta", af_theta, "observation theta in degrees")->required();
    af_cmd->add_option("--phi", af_phi, "observation phi in degrees")->required();
    af_cmd->add_flag("--compat", af_compat, "degree-compat trig mode (reference sweep)");
    af_cmd->add_flag("--json", af_json, "JSON output");
    af_cmd->callback([&] {
        const ArrayGeometry geom = af_geom.geometry();
        const SteeringPhase steer = af_geom.steering(geom);
        const TrigMode mode = af_compat ? TrigMode::PaperDegreeCompat : TrigMode::Radians;
        const double amp = planar_af(geom, steer, Direction(deg_to_rad(af_theta),
                                                            deg_to_rad(af_phi)),
                                     mode, af_geom.phase_convention());
        const double db = field_to_db(amp);
        if (af_json) {
            std::cout << nlohmann::json{{"amplitude", amp}, {"db", db}}.dump() << "\n";
        } else {
            std::cout << "amplitude = " << format_g(amp) << "\n"
                      << "db = " << format_g(db) << "\n";
        }
    });

    // ---- steer -------------------------------------------------------------
    GeometryFlags steer_geom;
    bool steer_json = false;
    auto* steer_cmd = app.add_subcommand("steer", "progressive phases for a target direction");
    steer_geom.add_options(steer_cmd);
    steer_cmd->add_flag("--json", steer_json, "JSON output");
    steer_cmd->callback([&] {
        const ArrayGeometry geom = steer_geom.geometry();
        const SteeringPhase s = steering_phases(
            geom,
            Direction(deg_to_rad(steer_geom.steer_theta_deg),
                      deg_to_rad(steer_geom.steer_phi_deg)),
            steer_geom.phase_convention());
        if (steer_json) {
            std::cout << nlohmann::json{{"omega_x_rad", s.omega_x},
                                        {"omega_y_rad", s.omega_y},
                                        {"omega_x_deg", rad_to_deg(s.omega_x)},
                                        {"omega_y_deg", rad_to_deg(s.omega_y)}}
                             .dump()
                      << "\n";
        } else {
            std::cout << "omega_x_rad = " << format_g(s.omega_x) << "\n"
                      << "omega_y_rad = " << format_g(s.omega_y) << "\n"
                      << "omega_x_deg = " << format_g(rad_to_deg(s.omega_x)) << "\n"
                      << "omega_y_deg = " << format_g(rad_to_deg(s.omega_y)) << "\n";
        }
    });

    // ---- nulls / peaks -----------------------------------------------------
    int lobe_n = 0;
    double lobe_a = 0.0, lobe_alpha_deg = 0.0;
    int peaks_m_max = 5;
    bool lobe_json = false;
    SpacingUnits lobe_units;
    auto* nulls_cmd = app.add_subcommand("nulls", "null angles of a uniform linear array");
    nulls_cmd->add_option("--n", lobe_n, "element count")->required();
    nulls_cmd->add_option("--a", lobe_a, "element spacing (wavelengths)")->required();
    nulls_cmd->add_option("--alpha-deg", lobe_alpha_deg, "progressive phase per element, degrees");
    nulls_cmd->add_flag("--json", lobe_json, "JSON output");
    lobe_units.add_options(nulls_cmd);
    nulls_cmd->callback([&] {
        const auto lobes = null_angles(lobe_n, lobe_units.to_wavelengths(lobe_a),
                                       deg_to_rad(lobe_alpha_deg));
        if (lobe_json)
            std::cout << lobes_json(lobes).dump() << "\n";
        else
            std::cout << lobes_csv(lobes);
    });

    SpacingUnits peak_units;
    auto* peaks_cmd = app.add_subcommand("peaks", "peak and grating-lobe angles");
    peaks_cmd->add_option("--n", lobe_n, "element count")->required();
    peaks_cmd->add_option("--a", lobe_a, "element spacing (wavelengths)")->required();
    peaks_cmd->add_option("--alpha-deg", lobe_alpha_deg, "progressive phase per element, degrees");
    peaks_cmd->add_option("--m-max", peaks_m_max, "highest peak order to solve for");
    peaks_cmd->add_flag("--json", lobe_json, "JSON output");
    peak_units.add_options(peaks_cmd);
    peaks_cmd->callback([&] {
        const auto lobes = peak_angles(lobe_n, peak_units.to_wavelengths(lobe_a),
                                       deg_to_rad(lobe_alpha_deg), peaks_m_max);
        if (lobe_json)
            std::cout << lobes_json(lobes).dump() << "\n";
        else
            std::cout << lobes_csv(lobes);
    });

    // ---- sweep ---------------------------------------------------------------
    std::vector<int> sweep_counts(default_sweep_counts.begin(), default_sweep_counts.end());
    double sweep_spacing = default_sweep_spacing;
    double sweep_theta_deg = 45.0;
    bool sweep_compat = false;
    std::string sweep_out;
    SpacingUnits sweep_units;
    auto* sweep_cmd = app.add_subcommand("sweep", "element-count sweep of the array factor");
    sweep_cmd->add_option("--counts", sweep_counts, "element counts")->delimiter(',');
    sweep_cmd->add_option("--spacing", sweep_spacing, "element spacing (wavelengths)");
    sweep_cmd->add_option("--theta", sweep_theta_deg, "observation theta in degrees");
    sweep_cmd->add_flag("--compat", sweep_compat, "degree-compat trig mode (reference sweep)");
    sweep_cmd->add_option("--out", sweep_out, "output CSV path (stdout if omitted)");
    sweep_units.add_options(sweep_cmd);
    sweep_cmd->callback([&] {
        const auto rows = table1_sweep(
            sweep_counts, sweep_units.to_wavelengths(sweep_spacing),
            deg_to_rad(sweep_theta_deg),
            sweep_compat ? TrigMode::PaperDegreeCompat : TrigMode::Radians);
        emit(sweep_out, export_sweep_csv(rows));
    });

    // ---- pattern / cut -------------------------------------------------------
    GeometryFlags pat_geom;
    int pat_ntheta = 181, pat_nphi = 361;
    std::string pat_element = "isotropic";
    double pat_db_floor = -60.0;
    bool pat_compat = false, pat_json = false;
    std::string pat_out;
    auto* pat_cmd = app.add_subcommand("pattern", "sample a full radiation pattern grid");
    pat_geom.add_options(pat_cmd);
    pat_cmd->add_option("--ntheta", pat_ntheta, "theta samples over [0, 180] deg");
    pat_cmd->add_option("--nphi", pat_nphi, "phi samples over [0, 360] deg");
    pat_cmd->add_option("--element", pat_element, "element pattern")
        ->check(CLI::IsMember({"isotropic", "monopole"}));
    pat_cmd->add_option("--db-floor", pat_db_floor, "dB clamp floor (negative)");
    pat_cmd->add_flag("--compat", pat_compat, "degree-compat trig mode");
    pat_cmd->add_flag("--json", pat_json, "JSON output instead of CSV");
    pat_cmd->add_option("--out", pat_out, "output path (stdout if omitted)");
    pat_cmd->callback([&] {
        const ArrayGeometry geom = pat_geom.geometry();
        const SteeringPhase steer = pat_geom.steering(geom);
        const TrigMode mode = pat_compat ? TrigMode::PaperDegreeCompat : TrigMode::Radians;
        const PatternGrid grid = sample_pattern(geom, steer, element_from_name(pat_element),
                                                {pat_ntheta, pat_nphi}, mode, pat_db_floor);
        emit(pat_out, pat_json ? export_json(grid, geom, steer, mode) : export_csv(grid));
    });

    GeometryFlags cut_geom;
    int cut_ntheta = 181, cut_nphi = 361;
    std::string cut_element = "isotropic";
    double cut_db_floor = -60.0;
    double cut_phi_deg = 0.0, cut_theta_deg = 0.0;
    bool cut_compat = false, cut_json = false, cut_svg = false;
    double cut_radius_px = 320.0;
    std::string cut_out;
    auto* cut_cmd = app.add_subcommand("cut", "principal cut of a radiation pattern");
    cut_geom.add_options(cut_cmd);
    cut_cmd->add_option("--ntheta", cut_ntheta, "theta samples over [0, 180] deg");
    cut_cmd->add_option("--nphi", cut_nphi, "phi samples over [0, 360] deg");
    cut_cmd->add_option("--element", cut_element, "element pattern")
        ->check(CLI::IsMember({"isotropic", "monopole"}));
    cut_cmd->add_option("--db-floor", cut_db_floor, "dB clamp floor (negative)");
    auto* cut_phi_opt = cut_cmd->add_option("--cut-phi", cut_phi_deg,
                                            "phi of the constant-phi cut, degrees");
    auto* cut_theta_opt = cut_cmd->add_option("--cut-theta", cut_theta_deg,
                                              "theta of the constant-theta cut, degrees");
    cut_phi_opt->excludes(cut_theta_opt);
    cut_theta_opt->excludes(cut_phi_opt);
    cut_cmd->add_flag("--compat", cut_compat, "degree-compat trig mode");
    cut_cmd->add_flag("--svg", cut_svg, "render a polar SVG instead of CSV");
    cut_cmd->add_option("--radius-px", cut_radius_px, "outer ring radius of the SVG, pixels");
    cut_cmd->add_flag("--json", cut_json, "JSON output instead of CSV");
    cut_cmd->add_option("--out", cut_out, "output path (stdout if omitted)");
    cut_cmd->callback([&] {
        if (cut_phi_opt->count() == 0 && cut_theta_opt->count() == 0)
            throw CLI::ValidationError("cut", "one of --cut-phi / --cut-theta is required");
        const ArrayGeometry geom = cut_geom.geometry();
        const SteeringPhase steer = cut_geom.steering(geom);
        const TrigMode mode = cut_compat ? TrigMode::PaperDegreeCompat : TrigMode::Radians;
        const PatternGrid grid = sample_pattern(geom, steer, element_from_name(cut_element),
                                                {cut_ntheta, cut_nphi}, mode, cut_db_floor);
        const CutSpec spec = (cut_phi_opt->count() > 0)
                                 ? CutSpec::phi_const(deg_to_rad(cut_phi_deg))
                                 : CutSpec::theta_const(deg_to_rad(cut_theta_deg));
        const std::vector<CutPoint> cut = principal_cut(grid, spec);
        if (cut_svg) {
            emit(cut_out, export_polar_svg(cut, {cut_radius_px, cut_db_floor}));
        } else if (cut_json) {
            nlohmann::json arr = nlohmann::json::array();
            for (const CutPoint& p : cut)
                arr.push_back({{"angle_deg", rad_to_deg(p.angle)},
                               {"amplitude", p.amplitude},
                               {"db", p.db}});
            emit(cut_out, arr.dump() + "\n");
        } else {
            emit(cut_out, export_csv(cut));
        }
    });

    // ---- directivity -----------------------------------------------------------
    GeometryFlags dir_geom;
    std::string dir_method;
    std::string dir_element = "isotropic";
    bool dir_hemisphere = false, dir_json = false, dir_include_pi = false;
    int dir_ntheta = default_directivity_grid.n_theta;
    int dir_nphi = default_directivity_grid.n_phi;
    double dir_r0 = 0.0, dir_length = 0.0, dir_spacing_a = 0.0, dir_broadening = 0.0;
    double dir_theta0_deg = 0.0;
    auto* dir_cmd = app.add_subcommand("directivity", "closed-form or numerical directivity");
    dir_cmd->add_option("--method", dir_method, "closed-form or numerical")
        ->required()
        ->check(CLI::IsMember({"closed-form", "numerical"}));
    dir_geom.add_options(dir_cmd, /*required_spacing=*/false);
    dir_cmd->add_option("--element", dir_element, "element pattern (numerical)")
        ->check(CLI::IsMember({"isotropic", "monopole"}));
    dir_cmd->add_flag("--hemisphere", dir_hemisphere,
                      "integrate the upper hemisphere only (numerical)");
    dir_cmd->add_option("--ntheta", dir_ntheta, "theta samples (numerical)");
    dir_cmd->add_option("--nphi", dir_nphi, "phi samples (numerical)");
    dir_cmd->add_option("--r0", dir_r0, "voltage ratio (closed-form)");
    dir_cmd->add_option("--length", dir_length, "array length, wavelengths (closed-form)");
    dir_cmd->add_option("--spacing-a", dir_spacing_a,
                        "element spacing, wavelengths (closed-form)");
    dir_cmd->add_option("--broadening", dir_broadening,
                        "broadening factor override (closed-form)");
    auto* theta0_opt = dir_cmd->add_option("--theta0", dir_theta0_deg,
                                           "steering theta for the planar product, degrees");
    dir_cmd->add_flag("--include-pi", dir_include_pi,
                      "use the planar product with the extra pi factor");
    dir_cmd->add_flag("--json", dir_json, "JSON output");
    dir_cmd->callback([&] {
        nlohmann::json j;
        std::string text;
        if (dir_method == "numerical") {
            if (dir_cmd->count("--mx") == 0 || dir_cmd->count("--ny") == 0 ||
                dir_cmd->count("--ax") == 0 || dir_cmd->count("--ay") == 0)
                throw CLI::ValidationError(
                    "directivity", "--method numerical requires --mx --ny --ax --ay");
            const ArrayGeometry geom = dir_geom.geometry();
            const SteeringPhase steer = dir_geom.steering(geom);
            const DirectivityReport rep =
                numerical_directivity(geom, steer, element_from_name(dir_element),
                                      {dir_ntheta, dir_nphi}, dir_hemisphere);
            text = "directivity = " + format_g(rep.value) + "\ndbi = " +
                   format_g(rep.value_dbi) + "\nmethod = numerical\ngrid = " +
                   std::to_string(dir_ntheta) + "x" + std::to_string(dir_nphi) +
                   "\nhemisphere = " + (dir_hemisphere ? "true" : "false") + "\n";
            j = {{"directivity", rep.value},
                 {"dbi", rep.value_dbi},
                 {"method", "numerical"},
                 {"grid", {{"n_theta", dir_ntheta}, {"n_phi", dir_nphi}}},
                 {"hemisphere", dir_hemisphere}};
        } else {
            if (dir_cmd->count("--r0") == 0 || dir_cmd->count("--length") == 0 ||
                dir_cmd->count("--spacing-a") == 0)
                throw CLI::ValidationError(
                    "directivity", "--method closed-form requires --r0 --length --spacing-a");
            const double f = (dir_cmd->count("--broadening") > 0)
                                 ? dir_broadening
                                 : beam_broadening_factor(dir_r0);
            const ChebyshevDirectivityInput in(dir_r0, dir_length, dir_spacing_a, f);
            const DirectivityReport lin = linear_directivity_closed_form(in);
            if (theta0_opt->count() > 0) {
                const DirectivityReport planar = planar_directivity_closed_form(
                    lin.value, lin.value, deg_to_rad(dir_theta0_deg), dir_include_pi);
                text = "d_linear = " + format_g(lin.value) + "\nbroadening_f = " +
                       format_g(f) + "\ndirectivity = " + format_g(planar.value) +
                       "\ndbi = " + format_g(planar.value_dbi) +
                       "\nmethod = closed-form-planar\n";
                j = {{"d_linear", lin.value},
                     {"broadening_f", f},
                     {"directivity", planar.value},
                     {"dbi", planar.value_dbi},
                     {"method", "closed-form-planar"}};
            } else {
                text = "broadening_f = " + format_g(f) + "\ndirectivity = " +
                       format_g(lin.value) + "\ndbi = " + format_g(lin.value_dbi) +
                       "\nmethod = closed-form-linear\n";
                j = {{"broadening_f", f},
                     {"directivity", lin.value},
                     {"dbi", lin.value_dbi},
                     {"method", "closed-form-linear"}};
            }
        }
        if (dir_json)
            std::cout << j.dump() << "\n";
        else
            std::cout << text;
    });

    // ---- fig3 -------------------------------------------------------------------
    std::vector<int> fig3_sizes{4, 10, 15, 20, 25, 35, 45, 50};
    double fig3_spacing = default_sweep_spacing;
    int fig3_ntheta = 181, fig3_nphi = 361;
    bool fig3_stamp = false;
    std::string fig3_out;
    SpacingUnits fig3_units;
    auto* fig3_cmd = app.add_subcommand("fig3", "pattern batch with manifest");
    fig3_cmd->add_option("--sizes", fig3_sizes, "square sizes N for N x N arrays")
        ->delimiter(',');
    fig3_cmd->add_option("--spacing", fig3_spacing, "element spacing (wavelengths)");
    fig3_cmd->add_option("--ntheta", fig3_ntheta, "pattern grid theta samples");
    fig3_cmd->add_option("--nphi", fig3_nphi, "pattern grid phi samples");
    fig3_cmd->add_flag("--stamp", fig3_stamp, "add a generation timestamp to the manifest");
    fig3_cmd->add_option("--out", fig3_out, "output directory")->required();
    fig3_units.add_options(fig3_cmd);
    fig3_cmd->callback([&] {
        Fig3Options opt;
        opt.sizes.clear();
        for (int n : fig3_sizes) opt.sizes.emplace_back(n, n);
        opt.spacing = fig3_units.to_wavelengths(fig3_spacing);
        opt.pattern_grid = {fig3_ntheta, fig3_nphi};
        const std::vector<ManifestEntry> entries = fig3_batch(opt, fig3_out);
        nlohmann::json jentries = nlohmann::json::array();
        for (const ManifestEntry& e : entries)
            jentries.push_back(
                {{"path", e.path}, {"sha256", e.sha256}, {"size_bytes", e.size_bytes}});
        if (fig3_stamp) {
            char stamp[32];
            const std::time_t now = std::time(nullptr);
            std::tm tm_utc{};
            gmtime_r(&now, &tm_utc);
            std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
            nlohmann::json wrapped{{"generated_at", stamp}, {"entries", jentries}};
            detail::write_file_or_throw(std::filesystem::path(fig3_out) / "manifest.json",
                                        wrapped.dump(2) + "\n");
            std::cout << wrapped.dump(2) << "\n";
        } else {
            std::cout << jentries.dump(2) << "\n";
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
