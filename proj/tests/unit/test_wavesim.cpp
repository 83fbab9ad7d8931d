#include <doctest.h>

#include <cmath>
#include <random>

#include "levisim/constants.hpp"
#include "levisim/wavesim.hpp"
#include "oracles.hpp"

using namespace levisim;

namespace {

PositionDistribution cos2_pattern(const Grid& g, double period, double envelope) {
    PositionDistribution d{g, std::vector<double>(g.n)};
    for (std::size_t j = 0; j < g.n; ++j) {
        const double x = g.x(j);
        const double c = std::cos(kPi * x / period);
        d.q[j] = c * c * std::exp(-x * x / (2 * envelope * envelope));
    }
    return d;
}

}  // namespace

TEST_CASE("grids") {
    const auto g = make_grid(16, 0.5);
    CHECK(g.x(8) == 0.0);
    CHECK(g.x(0) == -4.0);
    CHECK(g.x(16 - 3) == -g.x(3));
    CHECK(g.span() == 8.0);
    CHECK_THROWS_AS(make_grid(12, 1.0), GridError);
    CHECK_THROWS_AS(make_grid(1, 1.0), GridError);
    CHECK_THROWS_AS(make_grid(16, 0.0), GridError);
    CHECK_THROWS_AS(make_grid(kMaxGridPoints * 2, 1.0), GridError);
    CHECK_THROWS_AS(plan_grid(1.0, 1.0, 1e-9, 1.0, 1.0), GridError);

    const auto a = analyze(testing::reference_config());
    const auto slit = slit_from_outcome(outcome_for_separation(40e-9, a.plan.chi, a.plan.sigma), a.plan.chi,
                                        a.plan.sigma, a.plan.t2, a.derived.mass);
    const auto planned = plan_grid(a.plan.sigma, 40e-9, slit.packet_width, a.plan.t2, a.derived.mass);
    CHECK(planned.dx <= slit.packet_width / 8);
    CHECK(planned.dx <= slit.fringe_spacing / 8);
    CHECK(planned.span() >= 14 * a.plan.sigma);
}

TEST_CASE("gaussian wavefunction and free spreading") {
    const double m = 1e-20, sigma = 1e-8;
    const auto g = make_grid(2048, 40 * sigma / 2048);
    const auto psi = gaussian_wavefunction(sigma, g, m);
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(position_distribution(psi).variance() == doctest::Approx(sigma * sigma).epsilon(1e-10));
    CHECK_THROWS_AS(gaussian_wavefunction(sigma, make_grid(64, sigma / 16), m), GridError);

    const double t = 2.0 * m * sigma * sigma / kConstants.hbar;  // spread = sigma
    const auto later = free_propagate(psi, t);
    CHECK(later.norm() == doctest::Approx(1.0).epsilon(1e-10));
    const double spread = kConstants.hbar * t / (2 * m * sigma);
    CHECK(position_distribution(later).variance() == doctest::Approx(sigma * sigma + spread * spread).epsilon(1e-8));
    CHECK_THROWS_AS(free_propagate(psi, 50 * t), GridError);
    CHECK_THROWS(free_propagate(psi, -1.0));
}

TEST_CASE("measurement produces two packets") {
    const double sigma = 1.0, chi = 30.0, d = 1.2;
    const double outcome = outcome_for_separation(d, chi, sigma);
    const auto g = make_grid(8192, 12.0 / 8192);
    const auto psi = gaussian_wavefunction(sigma, g, 1.0);
    const auto r = apply_measurement(psi, outcome, chi, 0.0, sigma);
    CHECK(r.state.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.density == doctest::Approx(r.weight / std::sqrt(kPi / 2)));
    const auto q = position_distribution(r.state);
    const auto peaks = testing::local_maxima(q.q, 0.5);
    REQUIRE(peaks.size() == 2);
    CHECK(g.x(peaks[0]) == doctest::Approx(-d / 2).epsilon(0.01));
    CHECK(g.x(peaks[1]) == doctest::Approx(d / 2).epsilon(0.01));
    CHECK_THROWS_AS(apply_measurement(psi, 1e4, chi, 0.0, sigma), MeasurementError);
    CHECK_THROWS(apply_measurement(psi, 1.0, 0.0, 0.0, sigma));
}

TEST_CASE("blur is a normalized, linear, translation-invariant convolution") {
    const auto g = make_grid(1024, 0.1);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 1);
    PositionDistribution a{g, std::vector<double>(g.n)}, b = a;
    for (std::size_t j = 200; j < 824; ++j) {
        a.q[j] = u(rng);
        b.q[j] = u(rng);
    }
    const double sb = 1.3;
    const auto ba = blur(a, sb), bb = blur(b, sb);
    PositionDistribution mix = a;
    for (std::size_t j = 0; j < g.n; ++j) mix.q[j] = 2.0 * a.q[j] - 0.5 * b.q[j];
    const auto bmix = blur(mix, sb);
    for (std::size_t j = 0; j < g.n; ++j) CHECK(bmix.q[j] == doctest::Approx(2.0 * ba.q[j] - 0.5 * bb.q[j]).epsilon(1e-12));

    PositionDistribution shifted{g, std::vector<double>(g.n)};
    for (std::size_t j = 0; j + 17 < g.n; ++j) shifted.q[j + 17] = a.q[j];
    const auto bshift = blur(shifted, sb);
    for (std::size_t j = 17; j < g.n; ++j) CHECK(bshift.q[j] == doctest::Approx(ba.q[j - 17]).epsilon(1e-12));

    CHECK(ba.total() == doctest::Approx(a.total()).epsilon(1e-12));
    CHECK(blur(a, 0.0).q == a.q);
    CHECK_THROWS_AS(blur(a, 20.0), GridError);
    CHECK_THROWS(blur(a, -1.0));
}

TEST_CASE("blur and detector widths") {
    const auto g = make_grid(4096, 0.01);
    PositionDistribution spike{g, std::vector<double>(g.n)};
    spike.q[g.n / 2] = 1.0 / g.dx;
    // exp(-y^2 / s^2) has variance s^2 / 2
    CHECK(blur(spike, 0.8).variance() == doctest::Approx(0.32).epsilon(1e-6));
    CHECK(detector_response(spike, 1.0).variance() == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("fringe extraction on synthetic patterns") {
    const auto g = make_grid(8192, 0.01);
    const double period = 1.6;
    const auto pattern = cos2_pattern(g, period, 1e6);
    const auto r = extract_fringes(pattern);
    CHECK(r.detected);
    CHECK(r.spacing == doctest::Approx(period).epsilon(1e-3));
    CHECK(r.visibility == doctest::Approx(1.0).epsilon(1e-6));

    const auto enveloped = extract_fringes(cos2_pattern(g, period, 8.0));
    CHECK(enveloped.spacing == doctest::Approx(period).epsilon(5e-3));
    CHECK(enveloped.visibility > 0.99);

    // The kernel exp(-y^2 / s^2) damps the fringe component by exp(-pi^2 s^2 / x_f^2).
    const auto blurred = extract_fringes(blur(cos2_pattern(g, period, 1e6), period));
    CHECK(blurred.visibility < 0.1);
    const auto mild = extract_fringes(blur(cos2_pattern(g, period, 1e6), 0.3 * period));
    CHECK(mild.visibility == doctest::Approx(std::exp(-kPi * kPi * 0.09)).epsilon(1e-3));

    const auto flat = extract_fringes({g, std::vector<double>(g.n, 1.0)});
    CHECK_FALSE(flat.detected);
    CHECK(flat.visibility == 0.0);
    const auto empty = extract_fringes({g, std::vector<double>(g.n, 0.0)});
    CHECK_FALSE(empty.detected);
}

TEST_CASE("simulation of the fixture") {
    const auto r = simulate_protocol(testing::reference_config());
    CHECK(r.ideal.total() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(r.standard.total() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(r.ideal_report.visibility > 0.9);
    CHECK(r.standard_report.detected);
    CHECK(r.standard_report.visibility > 0.2);
    CHECK(r.standard_report.visibility < r.ideal_report.visibility);
    CHECK(r.blur_csl == r.blur_standard);
    CHECK(r.csl.q == r.standard.q);
    CHECK(r.ideal_report.spacing == doctest::Approx(r.slit.fringe_spacing).epsilon(0.05));

    auto outside = testing::reference_config();
    outside.protocol.separation_over_diameter = 0.3;
    CHECK_THROWS_AS(simulate_protocol(outside), PlanningError);
    CHECK_NOTHROW(simulate_protocol(outside, {.force = true}));
}
