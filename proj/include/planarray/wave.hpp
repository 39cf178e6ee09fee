#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace planarray {

// Free-space propagation speed. Fixed at 3e8 m/s by convention so that a
// 2.5 GHz wave has a wavelength of exactly 0.12 m.
inline constexpr double speed_of_light = 3.0e8;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

constexpr double deg_to_rad(double deg) noexcept { return deg * (pi / 180.0); }
constexpr double rad_to_deg(double rad) noexcept { return rad * (180.0 / pi); }

/// How trigonometric arguments are interpreted when evaluating array factors.
///
/// Radians is the physically correct mode and the default everywhere.
/// PaperDegreeCompat re-interprets a phase that was computed numerically in
/// radians as if it were degrees (both Dirichlet-kernel sine arguments are
/// multiplied by pi/180 before evaluation). It exists solely to regenerate
/// the reference element sweep shipped with this library and is never an
/// implicit default.
enum class TrigMode { Radians, PaperDegreeCompat };

/// Angular sampling resolution of a (theta, phi) grid.
struct GridSpec {
    int n_theta;
    int n_phi;
};

inline double wavelength_of(double frequency_hz) {
    if (!std::isfinite(frequency_hz) || frequency_hz <= 0.0)
        throw std::domain_error("wavelength_of: frequency must be finite and positive");
    return speed_of_light / frequency_hz;
}

inline double wavenumber_of(double wavelength_m) {
    if (!std::isfinite(wavelength_m) || wavelength_m <= 0.0)
        throw std::domain_error("wavenumber_of: wavelength must be finite and positive");
    return two_pi / wavelength_m;
}

/// Plane wave in free space; the three fields are mutually consistent
/// (wavelength = c/f, wavenumber = 2*pi/wavelength).
struct Wave {
    double frequency;   // Hz
    double wavelength;  // m
    double wavenumber;  // rad/m

    static Wave from_frequency(double frequency_hz) {
        const double wl = wavelength_of(frequency_hz);
        return {frequency_hz, wl, wavenumber_of(wl)};
    }

    static Wave from_wavelength(double wavelength_m) {
        const double k = wavenumber_of(wavelength_m);
        return {speed_of_light / wavelength_m, wavelength_m, k};
    }
};

/// 10*log10 of a power ratio. Non-positive ratios return -infinity so that
/// exporters can clamp to a dB floor instead of propagating NaN.
inline double to_db(double power_ratio) {
    if (!(power_ratio > 0.0)) return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(power_ratio);
}

/// 20*log10 of a field amplitude, the field-quantity companion of to_db().
inline double field_to_db(double amplitude) {
    if (!(amplitude > 0.0)) return -std::numeric_limits<double>::infinity();
    return 20.0 * std::log10(amplitude);
}

/// True for the -infinity sentinel produced by to_db()/field_to_db() on
/// non-positive input.
inline bool is_db_sentinel(double db) noexcept {
    return std::isinf(db) && db < 0.0;
}

/// Observation or steering direction in spherical coordinates: theta is the
/// polar angle off the array normal in [0, pi], phi the azimuth. phi is
/// wrapped into [0, 2*pi) on construction.
struct Direction {
    double theta;
    double phi;

    Direction(double theta_rad, double phi_rad) : theta(theta_rad), phi(0.0) {
        if (!std::isfinite(theta_rad) || !std::isfinite(phi_rad))
            throw std::domain_error("Direction: angles must be finite");
        if (theta_rad < 0.0 || theta_rad > pi)
            throw std::domain_error("Direction: theta must lie in [0, pi]");
        phi = std::fmod(std::fmod(phi_rad, two_pi) + two_pi, two_pi);
    }
};

}  // namespace planarray
