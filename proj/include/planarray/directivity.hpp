#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "planarray/array_factor.hpp"
#include "planarray/element.hpp"
#include "planarray/wave.hpp"

namespace planarray {

// 0.5 degree steps on both axes.
inline constexpr GridSpec default_directivity_grid{361, 721};

enum class DirectivityMethod { ClosedFormLinear, ClosedFormPlanar, NumericalQuadrature };

struct DirectivityReport {
    double value;      // dimensionless, > 0
    double value_dbi;  // 10*log10(value)
    DirectivityMethod method;
    std::optional<GridSpec> grid_resolution;  // set for the numerical method
    bool hemisphere_only = false;
};

/// Inputs of the closed-form side-lobe-ratio directivity estimate for a
/// Chebyshev-excited linear array. Lengths are in wavelengths. r0 = 1 would
/// mean no side-lobe suppression at all and degenerates the estimate, so it
/// is excluded.
struct ChebyshevDirectivityInput {
    double r0;           // main-to-side-lobe voltage ratio, > 1
    double length_l;     // array length, wavelengths
    double spacing_a;    // element spacing, wavelengths
    double broadening_f; // beam broadening factor, >= 1

    ChebyshevDirectivityInput(double voltage_ratio, double length_wl, double spacing_wl,
                              double broadening)
        : r0(voltage_ratio), length_l(length_wl), spacing_a(spacing_wl),
          broadening_f(broadening) {
        if (!std::isfinite(r0) || r0 <= 1.0)
            throw std::domain_error("ChebyshevDirectivityInput: voltage ratio must be > 1");
        if (!std::isfinite(length_l) || length_l <= 0.0)
            throw std::domain_error("ChebyshevDirectivityInput: length must be positive");
        if (!std::isfinite(spacing_a) || spacing_a <= 0.0)
            throw std::domain_error("ChebyshevDirectivityInput: spacing must be positive");
        if (!std::isfinite(broadening_f) || broadening_f < 1.0)
            throw std::domain_error("ChebyshevDirectivityInput: broadening factor must be >= 1");
    }
};

/// Beam broadening factor of a Chebyshev array with voltage ratio r0:
///   f = 1 + 0.636 * [(2/r0) * cosh(sqrt(acosh(r0)^2 - pi^2))]^2.
/// For r0 < cosh(pi) the root argument is clamped at zero, which keeps f
/// continuous and >= 1 on the whole domain.
inline double beam_broadening_factor(double r0) {
    if (!std::isfinite(r0) || r0 <= 1.0)
        throw std::domain_error("beam_broadening_factor: voltage ratio must be > 1");
    const double ac = std::acosh(r0);
    const double arg = std::max(ac * ac - pi * pi, 0.0);
    const double t = (2.0 / r0) * std::cosh(std::sqrt(arg));
    return 1.0 + 0.636 * t * t;
}

/// Closed-form directivity of a Chebyshev linear array:
///   D = 2*r0^2 / (1 + (r0^2 - 1) * f / (L + a)),
/// lengths in wavelengths (the lambda/(L+a) term becomes 1/(L+a)). The
/// denominator is >= 1 for any valid input.
inline DirectivityReport linear_directivity_closed_form(const ChebyshevDirectivityInput& in) {
    const double r2 = in.r0 * in.r0;
    const double denom = 1.0 + (r2 - 1.0) * in.broadening_f / (in.length_l + in.spacing_a);
    const double d = 2.0 * r2 / denom;
    return {d, to_db(d), DirectivityMethod::ClosedFormLinear, std::nullopt, false};
}

/// Planar directivity as the product of the two orthogonal linear
/// directivities projected by cos(theta0). The bare product d_x*d_y*cos(theta0)
/// is the default; include_pi switches to the textbook variant with an extra
/// factor of pi.
inline DirectivityReport planar_directivity_closed_form(double d_x, double d_y, double theta0,
                                                        bool include_pi = false) {
    if (!std::isfinite(d_x) || d_x <= 0.0 || !std::isfinite(d_y) || d_y <= 0.0)
        throw std::domain_error("planar_directivity_closed_form: directivities must be positive");
    if (!std::isfinite(theta0) || theta0 < 0.0 || theta0 >= pi / 2.0)
        throw std::domain_error(
            "planar_directivity_closed_form: theta0 must lie in [0, pi/2)");
    const double d = (include_pi ? pi : 1.0) * d_x * d_y * std::cos(theta0);
    return {d, to_db(d), DirectivityMethod::ClosedFormPlanar, std::nullopt, false};
}

namespace detail {

/// Deterministic pairwise reduction in fixed index order.
inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 16) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t h = v.size() / 2;
    return pairwise_sum(v.first(h)) + pairwise_sum(v.subspan(h));
}

}  // namespace detail

/// Definitional directivity D = 4*pi*U_max / integral(U * sin(theta)) with
/// U = |AF * element_factor|^2, evaluated on a uniform (theta, phi) grid by
/// the composite trapezoid rule. hemisphere_only restricts the domain to
/// theta in [0, pi/2] (ground-plane model), halving the integral of a
/// plane-symmetric pattern.
///
/// U_max is the grid maximum sharpened by one local 10x subdivision around
/// the argmax. The reduction is a fixed-order pairwise sum, so identical
/// inputs produce bit-identical reports.
inline DirectivityReport numerical_directivity(const ArrayGeometry& geom,
                                               const SteeringPhase& steer,
                                               const ElementPattern& element,
                                               GridSpec grid = default_directivity_grid,
                                               bool hemisphere_only = false) {
    if (grid.n_theta < 91 || grid.n_phi < 181)
        throw std::domain_error("numerical_directivity: grid must be at least 91 x 181");

    const double theta_max = hemisphere_only ? pi / 2.0 : pi;
    const double h_theta = theta_max / (grid.n_theta - 1);
    const double h_phi = two_pi / (grid.n_phi - 1);

    const auto radiance = [&](double theta, double phi) {
        const double f = planar_af(geom, steer, Direction(theta, phi)) * element.factor(theta);
        return f * f;
    };

    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(grid.n_theta) * grid.n_phi);
    double u_max = 0.0;
    int max_i = 0;
    int max_j = 0;
    for (int i = 0; i < grid.n_theta; ++i) {
        const double theta = i * h_theta;
        const double w_theta = (i == 0 || i == grid.n_theta - 1) ? 0.5 * h_theta : h_theta;
        const double sin_theta = std::sin(theta);
        for (int j = 0; j < grid.n_phi; ++j) {
            const double w_phi = (j == 0 || j == grid.n_phi - 1) ? 0.5 * h_phi : h_phi;
            const double u = radiance(theta, j * h_phi);
            if (u > u_max) {
                u_max = u;
                max_i = i;
                max_j = j;
            }
            terms.push_back(w_theta * w_phi * u * sin_theta);
        }
    }

    const double integral = detail::pairwise_sum(terms);
    if (!(integral > 0.0))
        throw std::domain_error("numerical_directivity: integrated power is zero");

    for (int di = -10; di <= 10; ++di) {
        const double theta = std::clamp(max_i * h_theta + di * h_theta / 10.0, 0.0, theta_max);
        for (int dj = -10; dj <= 10; ++dj) {
            const double phi = std::clamp(max_j * h_phi + dj * h_phi / 10.0, 0.0, two_pi);
            u_max = std::max(u_max, radiance(theta, phi));
        }
    }

    const double d = 4.0 * pi * u_max / integral;
    return {d, to_db(d), DirectivityMethod::NumericalQuadrature, grid, hemisphere_only};
}

}  // namespace planarray
