#include <doctest.h>

#include <cmath>

#include "levisim/constants.hpp"
#include "levisim/derived.hpp"
#include "levisim/rates.hpp"
#include "oracles.hpp"

using namespace levisim;

namespace {

// Trapezoid rule on [a, b].
template <class F>
double integrate(F f, double a, double b, int n) {
    const double h = (b - a) / n;
    double acc = 0.5 * (f(a) + f(b));
    for (int i = 1; i < n; ++i) acc += f(a + i * h);
    return acc * h;
}

// Sphere form factor averaged against the Gaussian smearing of the collapse
// noise, normalized to the point-particle value.
double shape_by_quadrature(double x) {
    const auto form = [](double y) {
        if (y < 1e-3) return 1.0 - y * y / 10.0;
        return 3.0 * (std::sin(y) - y * std::cos(y)) / (y * y * y);
    };
    // k in units of sqrt(alpha)
    const auto weighted = [&](double k) {
        const double f = form(k * x);
        return std::pow(k, 4) * std::exp(-k * k) * f * f;
    };
    const auto reference = [](double k) { return std::pow(k, 4) * std::exp(-k * k); };
    return integrate(weighted, 0.0, 12.0, 200000) / integrate(reference, 0.0, 12.0, 200000);
}

}  // namespace

TEST_CASE("csl shape function against the form-factor integral") {
    for (double x : {0.01, 0.2, 0.7, 0.999, 1.0, 1.001, 1.5, 3.0, 10.0}) {
        CAPTURE(x);
        CHECK(csl_shape_function(x) == doctest::Approx(shape_by_quadrature(x)).epsilon(1e-6));
    }
}

TEST_CASE("csl shape function limits and continuity") {
    CHECK(csl_shape_function(0.0) == doctest::Approx(1.0));
    CHECK(csl_shape_function(1e-3) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(csl_shape_function(1.0) == doctest::Approx(0.6218).epsilon(1e-3));
    CHECK(csl_shape_function(100.0) == doctest::Approx(6e-8).epsilon(0.03));
    const double below = csl_shape_function(std::nextafter(1.0, 0.0));
    const double above = csl_shape_function(1.0);
    CHECK(std::abs(below - above) < 1e-12);
    double prev = 2.0;
    for (double x = 0.0; x < 20.0; x += 0.05) {
        const double f = csl_shape_function(x);
        CHECK(f < prev);
        prev = f;
    }
    CHECK_THROWS_AS(csl_shape_function(-1.0), std::invalid_argument);
}

TEST_CASE("csl rate of the fixture at 10^4 lambda_0") {
    auto cfg = testing::reference_config();
    CHECK(csl_rate(cfg.sphere, cfg.protocol) == 0.0);
    cfg.protocol.csl_factor = 1e4;
    const double m = sphere_mass(cfg.sphere.radius, cfg.sphere.density);
    const double n = m / kConstants.nucleon_mass;
    const double expected = 0.5 * n * n * 1e4 * 2.2e-17 * 1e14 * csl_shape_function(0.2);
    CHECK(csl_rate(cfg.sphere, cfg.protocol) == doctest::Approx(expected));
    CHECK(csl_rate(cfg.sphere, cfg.protocol) == doctest::Approx(2.097e16).epsilon(2e-3));
}

TEST_CASE("photon scattering and couplings of the fixture") {
    const auto dq = derive(testing::reference_config());
    const auto per_photon = photon_scattering_rate(dq, 1.0);
    CHECK(per_photon.localization == doctest::Approx(1.388e20).epsilon(1e-3));
    CHECK(per_photon.cavity_decay / (2 * kPi) == doctest::Approx(2.376e5).epsilon(1e-3));
    CHECK(photon_scattering_rate(dq, 300.0).localization == doctest::Approx(300 * per_photon.localization));
    CHECK_THROWS_AS(photon_scattering_rate(dq, -1.0), std::invalid_argument);

    const auto a = coupling_rates(dq, 100.0, 1e-8);
    const auto b = coupling_rates(dq, 400.0, 2e-8);
    CHECK(a.c_linear == doctest::Approx(1580.9).epsilon(1e-3));
    CHECK(b.c_linear == doctest::Approx(a.c_linear));
    CHECK(b.g == doctest::Approx(2 * a.g));
    CHECK(a.g_q == doctest::Approx(dq.wavenumber * dq.zero_point * a.g));
    CHECK(b.c_quadratic == doctest::Approx(4 * a.c_quadratic));
    // C_q = (k_c sigma)^2 C_l
    const double kc_sigma = dq.wavenumber * 1e-8;
    CHECK(a.c_quadratic == doctest::Approx(kc_sigma * kc_sigma * a.c_linear));
    CHECK_THROWS(coupling_rates(dq, 0.0, 1e-8));
    CHECK_THROWS(coupling_rates(dq, 1.0, 0.5 * dq.zero_point));
}

TEST_CASE("cooling floor") {
    const auto dq = derive(testing::reference_config());
    const auto limit = cooling_occupation(dq, 1500.0);
    const double ratio = dq.kappa / (4 * dq.trap_frequency);
    CHECK(limit.occupation == doctest::Approx(ratio * ratio + 1.0 / 1500.0));
    CHECK_FALSE(limit.resolved_sideband);
    CHECK_THROWS(cooling_occupation(dq, 0.0));
}

TEST_CASE("environmental rates of the fixture and their scaling") {
    const auto cfg = testing::reference_config();
    const auto dq = derive(cfg);
    const auto r = localization_rates(cfg, dq, 256.9);
    CHECK(r.air == doctest::Approx(5.449e15).epsilon(1e-3));
    CHECK(r.bb_emission == doctest::Approx(3.293e15).epsilon(1e-3));
    CHECK(r.bb_absorption == doctest::Approx(3.58e5).epsilon(1e-2));
    CHECK(r.bb_scattering < 1e-3);
    CHECK(r.standard == doctest::Approx(r.air + r.bb_emission + r.bb_absorption + r.bb_scattering));
    CHECK(r.csl == 0.0);

    auto env = cfg.environment;
    env.pressure *= 3;
    CHECK(air_rate(env, 2 * cfg.sphere.radius) == doctest::Approx(12 * r.air));
    env.thermal_velocity = 2 * thermal_velocity(cfg.environment);
    CHECK(air_rate(env, cfg.sphere.radius) == doctest::Approx(6 * r.air));

    auto sphere = cfg.sphere;
    sphere.radius *= 2;
    sphere.internal_temperature *= 2;
    auto hot = cfg.environment;
    hot.temperature *= 2;
    const auto base = blackbody_rates(cfg.sphere, cfg.environment);
    const auto scaled = blackbody_rates(sphere, hot);
    CHECK(scaled.scattering == doctest::Approx(base.scattering * std::pow(2.0, 6 + 9)));
    CHECK(scaled.emission == doctest::Approx(base.emission * std::pow(2.0, 3 + 6)));
    CHECK(scaled.absorption == doctest::Approx(base.absorption * std::pow(2.0, 3 + 6)));
}
