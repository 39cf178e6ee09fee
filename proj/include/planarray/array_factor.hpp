#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "planarray/wave.hpp"

namespace planarray {

/// Uniform rectangular lattice of radiators. Element counts are per axis and
/// spacings are in wavelengths, so k*a collapses to 2*pi*a throughout. A
/// linear array is the degenerate case n_y == 1.
struct ArrayGeometry {
    int m_x;     // elements along x
    int n_y;     // elements along y
    double a_x;  // spacing along x, wavelengths
    double a_y;  // spacing along y, wavelengths

    ArrayGeometry(int mx, int ny, double ax, double ay)
        : m_x(mx), n_y(ny), a_x(ax), a_y(ay) {
        if (mx < 1 || ny < 1)
            throw std::domain_error("ArrayGeometry: element counts must be >= 1");
        if (!std::isfinite(ax) || ax <= 0.0 || !std::isfinite(ay) || ay <= 0.0)
            throw std::domain_error("ArrayGeometry: spacings must be finite and positive");
    }

    long element_count() const noexcept { return static_cast<long>(m_x) * n_y; }
};

/// Progressive phase shift per element along each axis, radians.
/// The zero pair is broadside excitation.
struct SteeringPhase {
    double omega_x = 0.0;
    double omega_y = 0.0;

    SteeringPhase() = default;
    SteeringPhase(double wx, double wy) : omega_x(wx), omega_y(wy) {
        if (!std::isfinite(wx) || !std::isfinite(wy))
            throw std::domain_error("SteeringPhase: phases must be finite");
    }
};

/// Array phase functions (rho_x, rho_y) at one observation direction.
struct PhasePair {
    double rho_x;
    double rho_y;
};

/// Which azimuth projection the y-axis phase uses. Physical follows the
/// standard planar-array geometry (sin(phi) on the y axis). PaperLiteral
/// keeps cos(phi) on both axes, which makes the two axes degenerate; it is
/// retained behind this flag for fidelity experiments only.
enum class PhaseConvention { Physical, PaperLiteral };

/// rho_x = 2*pi*a_x*sin(theta)*cos(phi) + omega_x and the y counterpart
/// (sin(phi) or cos(phi) per the convention).
inline PhasePair phase_functions(const ArrayGeometry& geom, const SteeringPhase& steer,
                                 const Direction& dir,
                                 PhaseConvention conv = PhaseConvention::Physical) {
    const double st = std::sin(dir.theta);
    const double az_y = (conv == PhaseConvention::Physical) ? std::sin(dir.phi)
                                                            : std::cos(dir.phi);
    return {two_pi * geom.a_x * st * std::cos(dir.phi) + steer.omega_x,
            two_pi * geom.a_y * st * az_y + steer.omega_y};
}

/// Progressive phases that put the main beam at the target direction:
/// omega = -2*pi*a*sin(theta0)*{cos,sin}(phi0).
inline SteeringPhase steering_phases(const ArrayGeometry& geom, const Direction& target,
                                     PhaseConvention conv = PhaseConvention::Physical) {
    const double st = std::sin(target.theta);
    const double az_y = (conv == PhaseConvention::Physical) ? std::sin(target.phi)
                                                            : std::cos(target.phi);
    return SteeringPhase{-two_pi * geom.a_x * st * std::cos(target.phi),
                         -two_pi * geom.a_y * st * az_y};
}

/// Array phase of a uniform linear array laid along the polar axis:
/// 2*pi*a*cos(theta) + alpha. This is the convention the lobe solvers and
/// the element sweep use.
inline double axial_phase(double spacing_wl, double theta, double alpha = 0.0) noexcept {
    return two_pi * spacing_wl * std::cos(theta) + alpha;
}

/// Normalized field pattern of a uniform n-element linear array at array
/// phase rho: |sin(n*rho/2) / (n*sin(rho/2))|, in [0, 1].
///
/// The removable singularity at rho = 2*pi*m is resolved through the ratio
/// of derivatives once |sin(rho/2)| < 1e-9, which keeps main and grating
/// lobes exact and never lets a NaN escape. In PaperDegreeCompat mode both
/// sine arguments are multiplied by pi/180 first.
inline double linear_af_from_phase(int n, double rho, TrigMode mode = TrigMode::Radians) {
    if (n < 1)
        throw std::domain_error("linear_af_from_phase: element count must be >= 1");
    if (!std::isfinite(rho))
        throw std::domain_error("linear_af_from_phase: phase must be finite");
    if (n == 1) return 1.0;
    if (mode == TrigMode::PaperDegreeCompat) rho *= pi / 180.0;
    const double half = 0.5 * rho;
    const double denom = std::sin(half);
    if (std::abs(denom) < 1e-9)
        return std::abs(std::cos(n * half) / std::cos(half));
    return std::min(std::abs(std::sin(n * half) / (n * denom)), 1.0);
}

/// Planar array factor by pattern multiplication: the product of the two
/// orthogonal linear factors, in [0, 1].
///
/// In Radians mode the phases come from phase_functions(). In
/// PaperDegreeCompat mode the reference sweep's uniform-array convention is
/// applied instead, rho = 2*pi*a*cos(theta) + omega on both axes (phi drops
/// out), with degree-interpreted sines; that is the only combination that
/// regenerates the bundled reference table.
inline double planar_af(const ArrayGeometry& geom, const SteeringPhase& steer,
                        const Direction& dir, TrigMode mode = TrigMode::Radians,
                        PhaseConvention conv = PhaseConvention::Physical) {
    const PhasePair p =
        (mode == TrigMode::PaperDegreeCompat)
            ? PhasePair{axial_phase(geom.a_x, dir.theta, steer.omega_x),
                        axial_phase(geom.a_y, dir.theta, steer.omega_y)}
            : phase_functions(geom, steer, dir, conv);
    return linear_af_from_phase(geom.m_x, p.rho_x, mode) *
           linear_af_from_phase(geom.n_y, p.rho_y, mode);
}

/// Independent check on the closed form: sums all M*N element phasors
/// directly, |sum exp(i(p*rho_x + q*rho_y))| / (M*N). Shares no code with
/// the Dirichlet-quotient path.
inline double brute_force_af_from_phase(int m, int n, double rho_x, double rho_y) {
    if (m < 1 || n < 1)
        throw std::domain_error("brute_force_af_from_phase: element counts must be >= 1");
    if (m > 10000 || n > 10000)
        throw std::domain_error("brute_force_af_from_phase: element count cap is 1e4 per axis");
    std::complex<double> acc{0.0, 0.0};
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < n; ++q)
            acc += std::polar(1.0, p * rho_x + q * rho_y);
    return std::min(std::abs(acc) / (static_cast<double>(m) * n), 1.0);
}

inline double brute_force_af(const ArrayGeometry& geom, const SteeringPhase& steer,
                             const Direction& dir) {
    const PhasePair p = phase_functions(geom, steer, dir);
    return brute_force_af_from_phase(geom.m_x, geom.n_y, p.rho_x, p.rho_y);
}

enum class LobeKind { Null, Peak, GratingLobe };

/// One solved pattern feature of a uniform linear array in the axial-phase
/// convention (see axial_phase()). Only features whose arccos argument lies
/// in [-1, 1], i.e. in the visible region, are ever emitted.
struct LobeReport {
    LobeKind kind;
    int index;               // n of the null condition or m of the peak condition
    double theta;            // radians
    double arccos_argument;  // dimensionless, |.| <= 1
};

namespace detail {

inline void sort_and_dedup_lobes(std::vector<LobeReport>& lobes) {
    std::stable_sort(lobes.begin(), lobes.end(),
                     [](const LobeReport& a, const LobeReport& b) { return a.theta < b.theta; });
    lobes.erase(std::unique(lobes.begin(), lobes.end(),
                            [](const LobeReport& a, const LobeReport& b) {
                                return std::abs(a.theta - b.theta) <= 1e-12;
                            }),
                lobes.end());
}

}  // namespace detail

/// Null directions of an n-element array with spacing a (wavelengths) and
/// progressive phase alpha: theta = arccos[(-alpha +/- 2*pi*idx/n)/(2*pi*a)]
/// for idx = 1, 2, ... excluding multiples of n (those are peaks, not
/// nulls). Enumeration stops once both sign branches leave the visible
/// region, with a hard cap of 10*n iterations. Sorted by theta, deduplicated
/// within 1e-12.
inline std::vector<LobeReport> null_angles(int n, double a, double alpha) {
    if (n < 2) throw std::domain_error("null_angles: a single element has no nulls");
    if (!std::isfinite(a) || a <= 0.0)
        throw std::domain_error("null_angles: spacing must be finite and positive");
    if (!std::isfinite(alpha))
        throw std::domain_error("null_angles: phase must be finite");

    std::vector<LobeReport> out;
    const double inv = 1.0 / (two_pi * a);
    bool plus_alive = true;
    bool minus_alive = true;
    for (int idx = 1; (plus_alive || minus_alive) && idx <= 10 * n; ++idx) {
        const double arg_plus = (-alpha + two_pi * idx / n) * inv;
        const double arg_minus = (-alpha - two_pi * idx / n) * inv;
        if (idx % n != 0) {
            if (std::abs(arg_plus) <= 1.0)
                out.push_back({LobeKind::Null, idx, std::acos(arg_plus), arg_plus});
            if (std::abs(arg_minus) <= 1.0)
                out.push_back({LobeKind::Null, idx, std::acos(arg_minus), arg_minus});
        }
        plus_alive = arg_plus <= 1.0;
        minus_alive = arg_minus >= -1.0;
    }
    detail::sort_and_dedup_lobes(out);
    return out;
}

/// Peak directions: theta = arccos[(-alpha +/- 2*pi*m)/(2*pi*a)] for
/// m = 0..m_max. m = 0 is the main lobe; m >= 1 entries are grating lobes
/// (equal-height replicas that only exist when the argument stays in
/// [-1, 1]). Peak locations do not depend on the element count; n is taken
/// for validation symmetry with null_angles().
inline std::vector<LobeReport> peak_angles(int n, double a, double alpha, int m_max) {
    if (n < 1) throw std::domain_error("peak_angles: element count must be >= 1");
    if (!std::isfinite(a) || a <= 0.0)
        throw std::domain_error("peak_angles: spacing must be finite and positive");
    if (!std::isfinite(alpha))
        throw std::domain_error("peak_angles: phase must be finite");
    if (m_max < 0) throw std::domain_error("peak_angles: m_max must be >= 0");

    std::vector<LobeReport> out;
    const double inv = 1.0 / (two_pi * a);
    for (int m = 0; m <= m_max; ++m) {
        const double arg_plus = (-alpha + two_pi * m) * inv;
        const double arg_minus = (-alpha - two_pi * m) * inv;
        const LobeKind kind = (m == 0) ? LobeKind::Peak : LobeKind::GratingLobe;
        if (std::abs(arg_plus) <= 1.0)
            out.push_back({kind, m, std::acos(arg_plus), arg_plus});
        if (m > 0 && std::abs(arg_minus) <= 1.0)
            out.push_back({kind, m, std::acos(arg_minus), arg_minus});
        if (m > 0 && arg_plus > 1.0 && arg_minus < -1.0) break;
    }
    detail::sort_and_dedup_lobes(out);
    return out;
}

}  // namespace planarray
