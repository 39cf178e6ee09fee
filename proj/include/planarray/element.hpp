#pragma once

#include <cmath>

#include "planarray/wave.hpp"

namespace planarray {

enum class ElementKind { Isotropic, QuarterWaveMonopole };

/// Per-element field pattern multiplied onto the array factor.
///
/// Isotropic is identically 1. QuarterWaveMonopole models a vertical
/// quarter-wave element over an infinite ground plane:
/// cos(pi/2*cos(theta))/sin(theta) for theta in (0, pi/2], zero below the
/// plane, with the theta -> 0 limit of 0 taken explicitly. The factor is
/// finite everywhere and peaks at 1 on the horizon.
struct ElementPattern {
    ElementKind kind = ElementKind::Isotropic;

    double factor(double theta) const {
        if (kind == ElementKind::Isotropic) return 1.0;
        // Below ~1e-7 rad the true value is < 1e-7 but cos(theta) rounds to
        // 1 and the quotient turns into noise; return the limit instead.
        if (theta < 1e-7 || theta > pi / 2.0) return 0.0;
        return std::cos((pi / 2.0) * std::cos(theta)) / std::sin(theta);
    }
};

inline ElementPattern isotropic_element() { return {ElementKind::Isotropic}; }
inline ElementPattern monopole_element() { return {ElementKind::QuarterWaveMonopole}; }

}  // namespace planarray
