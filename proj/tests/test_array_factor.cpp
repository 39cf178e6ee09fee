#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "planarray/array_factor.hpp"
#include "test_util.hpp"

using namespace planarray;
using Catch::Approx;

TEST_CASE("geometry and steering validation") {
    CHECK_THROWS_AS(ArrayGeometry(0, 1, 0.5, 0.5), std::domain_error);
    CHECK_THROWS_AS(ArrayGeometry(4, 4, 0.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(ArrayGeometry(4, 4, 0.5, -0.1), std::domain_error);
    CHECK_THROWS_AS(SteeringPhase(std::numeric_limits<double>::quiet_NaN(), 0.0),
                    std::domain_error);
    CHECK(ArrayGeometry(4, 1, 0.5, 0.5).element_count() == 4);
}

TEST_CASE("phase functions") {
    const ArrayGeometry geom(4, 4, 0.47, 0.47);
    const SteeringPhase broadside;

    const PhasePair p = phase_functions(geom, broadside, Direction(pi / 4, pi / 4));
    const double expected = two_pi * 0.47 * std::sin(pi / 4) * std::cos(pi / 4);
    CHECK(p.rho_x == Approx(1.4765485472).epsilon(1e-10));
    CHECK(p.rho_x == Approx(expected).margin(1e-15));
    CHECK(p.rho_y == Approx(p.rho_x).margin(1e-15));  // sin = cos at phi = 45 deg

    const PhasePair zenith = phase_functions(geom, broadside, Direction(0.0, 1.0));
    CHECK(zenith.rho_x == Approx(0.0).margin(1e-15));
    CHECK(zenith.rho_y == Approx(0.0).margin(1e-15));

    // a steered main beam makes the phase vanish at the target
    const ArrayGeometry lin(4, 1, 0.5, 0.5);
    const SteeringPhase steer(-pi * 0.5, 0.0);
    const PhasePair steered = phase_functions(lin, steer, Direction(pi / 6, 0.0));
    CHECK(steered.rho_x == Approx(0.0).margin(1e-12));
}

TEST_CASE("phase convention differs only through the y azimuth factor") {
    const ArrayGeometry geom(4, 4, 0.5, 0.5);
    const SteeringPhase broadside;
    const Direction d(pi / 3, pi / 2);
    const PhasePair phys = phase_functions(geom, broadside, d, PhaseConvention::Physical);
    const PhasePair lit = phase_functions(geom, broadside, d, PhaseConvention::PaperLiteral);
    CHECK(phys.rho_x == Approx(lit.rho_x).margin(1e-15));
    CHECK(phys.rho_y == Approx(two_pi * 0.5 * std::sin(pi / 3)).margin(1e-12));
    CHECK(lit.rho_y == Approx(0.0).margin(1e-12));
}

TEST_CASE("steering phases") {
    const ArrayGeometry geom(4, 4, 0.5, 0.5);

    const SteeringPhase broadside = steering_phases(geom, Direction(0.0, 0.0));
    CHECK(broadside.omega_x == Approx(0.0).margin(1e-15));
    CHECK(broadside.omega_y == Approx(0.0).margin(1e-15));
    const SteeringPhase broadside_lit =
        steering_phases(geom, Direction(0.0, 0.0), PhaseConvention::PaperLiteral);
    CHECK(broadside_lit.omega_x == Approx(0.0).margin(1e-15));
    CHECK(broadside_lit.omega_y == Approx(0.0).margin(1e-15));

    const SteeringPhase s30 = steering_phases(geom, Direction(pi / 6, 0.0));
    CHECK(s30.omega_x == Approx(-1.5707963268).epsilon(1e-10));
    CHECK(s30.omega_y == Approx(0.0).margin(1e-12));

    const SteeringPhase endfire = steering_phases(geom, Direction(pi / 2, pi / 2));
    CHECK(endfire.omega_x == Approx(0.0).margin(1e-12));
    CHECK(endfire.omega_y == Approx(-pi).epsilon(1e-12));
    const SteeringPhase endfire_lit =
        steering_phases(geom, Direction(pi / 2, pi / 2), PhaseConvention::PaperLiteral);
    CHECK(endfire_lit.omega_x == Approx(0.0).margin(1e-12));
    CHECK(endfire_lit.omega_y == Approx(0.0).margin(1e-12));
}

TEST_CASE("linear array factor from phase") {
    // single element is isotropic
    CHECK(linear_af_from_phase(1, 0.0) == 1.0);
    CHECK(linear_af_from_phase(1, 2.7) == 1.0);
    CHECK(linear_af_from_phase(1, two_pi) == 1.0);

    // hand null: sin(pi) over 4*sin(pi/4)
    CHECK(linear_af_from_phase(4, pi / 2) == Approx(0.0).margin(1e-15));

    // radians value, frozen from the phasor-sum oracle
    const double rho45 = two_pi * 0.47 * std::sin(pi / 4) * std::cos(pi / 4);
    CHECK(linear_af_from_phase(4, rho45) == Approx(0.0696054348).epsilon(1e-8));
    CHECK(linear_af_from_phase(4, rho45) ==
          Approx(testutil::phasor_af(4, rho45)).margin(1e-13));

    // degree-compat value reproduces the reference row within its band
    const double rho_sweep = axial_phase(0.47, pi / 4);
    const double compat = linear_af_from_phase(4, rho_sweep, TrigMode::PaperDegreeCompat);
    CHECK(compat == Approx(0.9991700314).epsilon(1e-9));
    CHECK(std::abs(compat - 0.9992) <= 1.5e-3);
    // same number as the degree-interpreted phasor sum
    CHECK(compat == Approx(testutil::phasor_af(4, rho_sweep * pi / 180.0)).margin(1e-13));

    CHECK_THROWS_AS(linear_af_from_phase(0, 1.0), std::domain_error);
    CHECK_THROWS_AS(linear_af_from_phase(4, std::numeric_limits<double>::quiet_NaN()),
                    std::domain_error);
}

TEST_CASE("removable singularity never leaks a NaN") {
    for (int n : {2, 3, 4, 7, 32, 1000}) {
        for (int m : {0, 1, 3}) {
            for (double off : {-1e-8, -1e-12, 0.0, 1e-12, 1e-8}) {
                const double v = linear_af_from_phase(n, two_pi * m + off);
                CHECK(std::isfinite(v));
                CHECK(std::abs(v - 1.0) <= 1e-6);
            }
            CHECK(linear_af_from_phase(n, two_pi * m) == 1.0);
        }
    }
}

TEST_CASE("planar array factor") {
    const SteeringPhase broadside;
    CHECK(planar_af(ArrayGeometry(1, 1, 0.5, 0.5), broadside, Direction(0.9, 2.2)) == 1.0);

    const ArrayGeometry geom(4, 4, 0.47, 0.47);
    const Direction d45(pi / 4, pi / 4);
    const double af = planar_af(geom, broadside, d45);
    CHECK(af == Approx(0.0048449166).epsilon(1e-8));
    CHECK(af == Approx(brute_force_af(geom, broadside, d45)).margin(1e-12));

    // degree-compat planar value matches the reference table's planar column
    const double compat = planar_af(geom, broadside, d45, TrigMode::PaperDegreeCompat);
    CHECK(compat == Approx(0.9983407516).epsilon(1e-9));
    CHECK(std::abs(compat - 0.9984) <= 1.5e-3);
}

TEST_CASE("pattern multiplication is exact") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> n_dist(1, 16);
    std::uniform_real_distribution<double> a_dist(0.1, 1.5);
    std::uniform_real_distribution<double> ang(0.0, pi);
    for (int i = 0; i < 200; ++i) {
        const ArrayGeometry geom(n_dist(rng), n_dist(rng), a_dist(rng), a_dist(rng));
        const SteeringPhase steer;
        const Direction dir(ang(rng), 2.0 * ang(rng));
        const PhasePair p = phase_functions(geom, steer, dir);
        const double product = linear_af_from_phase(geom.m_x, p.rho_x) *
                               linear_af_from_phase(geom.n_y, p.rho_y);
        CHECK(planar_af(geom, steer, dir) == Approx(product).margin(1e-15));
    }
}

TEST_CASE("brute force oracle basics") {
    const SteeringPhase broadside;
    // aligned phasors at the steered main beam
    const ArrayGeometry geom(6, 5, 0.6, 0.4);
    const Direction target(0.4, 1.1);
    const SteeringPhase steer = steering_phases(geom, target);
    CHECK(brute_force_af(geom, steer, target) == Approx(1.0).margin(1e-12));

    // four phasors at 90 degree steps cancel: rho_x = 2*pi*0.5*sin(30deg) = pi/2
    const ArrayGeometry lin(4, 1, 0.5, 0.5);
    CHECK(brute_force_af(lin, broadside, Direction(pi / 6, 0.0)) == Approx(0.0).margin(1e-12));
    CHECK(brute_force_af_from_phase(4, 1, pi / 2, 0.0) == Approx(0.0).margin(1e-12));

    CHECK_THROWS_AS(brute_force_af_from_phase(0, 1, 0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(brute_force_af_from_phase(20000, 1, 0.0, 0.0), std::domain_error);
}

TEST_CASE("closed form agrees with the phasor sum over random configurations") {
    std::mt19937 rng(123);
    std::uniform_int_distribution<int> n_dist(1, 32);
    std::uniform_real_distribution<double> a_dist(0.05, 2.0);
    std::uniform_real_distribution<double> w_dist(-pi, pi);
    std::uniform_real_distribution<double> th_dist(0.0, pi);
    std::uniform_real_distribution<double> ph_dist(0.0, two_pi);
    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
        const ArrayGeometry geom(n_dist(rng), n_dist(rng), a_dist(rng), a_dist(rng));
        const SteeringPhase steer(w_dist(rng), w_dist(rng));
        const Direction dir(th_dist(rng), ph_dist(rng));
        const double closed = planar_af(geom, steer, dir);
        const double brute = brute_force_af(geom, steer, dir);
        worst = std::max(worst, std::abs(closed - brute));
        CHECK(closed >= 0.0);
        CHECK(closed <= 1.0);
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("steered beam evaluates to unity") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> n_dist(1, 24);
    std::uniform_real_distribution<double> a_dist(0.1, 1.2);
    std::uniform_real_distribution<double> th_dist(0.0, pi / 2);
    std::uniform_real_distribution<double> ph_dist(0.0, two_pi);
    for (int i = 0; i < 100; ++i) {
        const ArrayGeometry geom(n_dist(rng), n_dist(rng), a_dist(rng), a_dist(rng));
        const Direction target(th_dist(rng), ph_dist(rng));
        const SteeringPhase steer = steering_phases(geom, target);
        CHECK(planar_af(geom, steer, target) == Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("broadside pattern is symmetric about theta = 90 deg") {
    std::mt19937 rng(37);
    std::uniform_int_distribution<int> n_dist(2, 32);
    std::uniform_real_distribution<double> a_dist(0.1, 1.5);
    std::uniform_real_distribution<double> th_dist(0.0, pi);
    for (int i = 0; i < 200; ++i) {
        const int n = n_dist(rng);
        const double a = a_dist(rng);
        const double theta = th_dist(rng);
        const double lhs = linear_af_from_phase(n, axial_phase(a, theta));
        const double rhs = linear_af_from_phase(n, axial_phase(a, pi - theta));
        CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
}

TEST_CASE("null solver examples") {
    // N=4, half-wave spacing: nulls at 0, 60, 120, 180 degrees
    const auto nulls = null_angles(4, 0.5, 0.0);
    REQUIRE(nulls.size() == 4);
    CHECK(rad_to_deg(nulls[0].theta) == Approx(0.0).margin(1e-9));
    CHECK(rad_to_deg(nulls[1].theta) == Approx(60.0).epsilon(1e-12));
    CHECK(rad_to_deg(nulls[2].theta) == Approx(120.0).epsilon(1e-12));
    CHECK(rad_to_deg(nulls[3].theta) == Approx(180.0).epsilon(1e-12));
    for (const LobeReport& l : nulls) {
        CHECK(l.kind == LobeKind::Null);
        CHECK(std::abs(l.arccos_argument) <= 1.0);
        CHECK(l.index % 4 != 0);
        CHECK(linear_af_from_phase(4, axial_phase(0.5, l.theta)) < 1e-9);
    }

    // two elements at quarter-wave spacing have no null anywhere: the
    // argument is +-2, and a dense scan bottoms out at 1/sqrt(2)
    CHECK(null_angles(2, 0.25, 0.0).empty());
    CHECK(testutil::scan_min_af(2, 0.25, 0.0, 36001) > 0.7);

    // at half-wave spacing the endfire nulls appear
    const auto endfire = null_angles(2, 0.5, 0.0);
    REQUIRE(endfire.size() == 2);
    CHECK(rad_to_deg(endfire.front().theta) == Approx(0.0).margin(1e-9));
    CHECK(rad_to_deg(endfire.back().theta) == Approx(180.0).epsilon(1e-12));

    // N=4 at a=0.1: every candidate argument exceeds 1, so no nulls, and the
    // scan confirms the pattern never reaches zero
    CHECK(null_angles(4, 0.1, 0.0).empty());
    CHECK(testutil::scan_min_af(4, 0.1, 0.0, 36001) > 0.5);

    CHECK_THROWS_AS(null_angles(1, 0.5, 0.0), std::domain_error);
    CHECK_THROWS_AS(null_angles(4, 0.0, 0.0), std::domain_error);
}

TEST_CASE("peak solver examples") {
    // broadside main lobe
    const auto main_only = peak_angles(4, 0.47, 0.0, 1);
    REQUIRE(main_only.size() == 1);
    CHECK(main_only[0].kind == LobeKind::Peak);
    CHECK(main_only[0].index == 0);
    CHECK(rad_to_deg(main_only[0].theta) == Approx(90.0).epsilon(1e-12));

    // full-wave spacing grows grating lobes at both poles
    const auto grating = peak_angles(4, 1.0, 0.0, 1);
    REQUIRE(grating.size() == 3);
    CHECK(grating[0].kind == LobeKind::GratingLobe);
    CHECK(rad_to_deg(grating[0].theta) == Approx(0.0).margin(1e-9));
    CHECK(grating[1].kind == LobeKind::Peak);
    CHECK(rad_to_deg(grating[1].theta) == Approx(90.0).epsilon(1e-12));
    CHECK(grating[2].kind == LobeKind::GratingLobe);
    CHECK(rad_to_deg(grating[2].theta) == Approx(180.0).epsilon(1e-12));
    for (const LobeReport& l : grating)
        CHECK(linear_af_from_phase(4, axial_phase(1.0, l.theta)) > 1.0 - 1e-9);

    CHECK_THROWS_AS(peak_angles(0, 0.5, 0.0, 1), std::domain_error);
    CHECK_THROWS_AS(peak_angles(4, 0.5, 0.0, -1), std::domain_error);
}

TEST_CASE("solved lobes verify against the array factor") {
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> n_dist(2, 32);
    std::uniform_real_distribution<double> a_dist(0.1, 1.5);
    std::uniform_real_distribution<double> al_dist(-pi, pi);
    for (int i = 0; i < 100; ++i) {
        const int n = n_dist(rng);
        const double a = a_dist(rng);
        const double alpha = al_dist(rng);

        const auto nulls = null_angles(n, a, alpha);
        for (const LobeReport& l : nulls)
            CHECK(linear_af_from_phase(n, axial_phase(a, l.theta, alpha)) < 1e-9);
        for (std::size_t k = 1; k < nulls.size(); ++k)
            CHECK(nulls[k].theta > nulls[k - 1].theta);

        const auto peaks = peak_angles(n, a, alpha, 6);
        for (const LobeReport& l : peaks)
            CHECK(linear_af_from_phase(n, axial_phase(a, l.theta, alpha)) > 1.0 - 1e-9);
    }
}
