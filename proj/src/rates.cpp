#include "levisim/rates.hpp"

#include <cmath>
#include <stdexcept>

#include "levisim/constants.hpp"

namespace levisim {
namespace {

constexpr double kZeta9 = 1.0020083928260822;
constexpr double kFactorial8 = 40320.0;

std::complex<double> polarizability_ratio(std::complex<double> eps) { return (eps - 1.0) / (eps + 2.0); }

}  // namespace

double scattering_cavity_decay(const DerivedQuantities& dq) {
    const double k2 = dq.wavenumber * dq.wavenumber;
    return dq.eps_c * dq.eps_c * dq.volume * dq.volume * k2 * k2 * kConstants.c /
           (16.0 * kPi * dq.mode_volume);
}

PhotonScattering photon_scattering_rate(const DerivedQuantities& dq, double photons) {
    if (!(photons >= 0)) throw std::invalid_argument("photon number must be >= 0");
    const double k2 = dq.wavenumber * dq.wavenumber;
    const double per_photon = dq.eps_c * dq.eps_c * kConstants.c * dq.volume * dq.volume * k2 * k2 * k2 /
                              (6.0 * kPi * dq.mode_volume);
    return {per_photon * photons, scattering_cavity_decay(dq)};
}

CouplingRates coupling_rates(const DerivedQuantities& dq, double photons, double sigma) {
    if (!(photons > 0)) throw std::invalid_argument("photon number must be > 0");
    if (!(sigma >= dq.zero_point)) throw std::invalid_argument("sigma must be >= x0");

    const double x0 = dq.zero_point;
    const double kc = dq.wavenumber;
    const auto scattering = photon_scattering_rate(dq, photons);

    CouplingRates r;
    r.g = x0 * std::sqrt(photons) * dq.eps_c * kc * kc * kConstants.c * dq.volume / (4.0 * dq.mode_volume);
    r.g_q = kc * x0 * r.g;
    const double expansion = sigma / x0;
    r.g_q_enhanced = r.g_q * expansion * expansion;
    r.kappa_scattering = scattering.cavity_decay;

    const double gamma = scattering.localization * x0 * x0;
    const double gamma_bar = scattering.localization * sigma * sigma;
    r.c_linear = r.g * r.g / (dq.kappa * gamma);
    r.c_quadratic = r.g_q_enhanced * r.g_q_enhanced / (dq.kappa * gamma_bar);
    return r;
}

CoolingLimit cooling_occupation(const DerivedQuantities& dq, double c_linear) {
    if (!(c_linear > 0)) throw std::invalid_argument("cooperativity must be > 0");
    const double ratio = dq.kappa / (4.0 * dq.trap_frequency);
    return {ratio * ratio + 1.0 / c_linear, dq.kappa < 4.0 * dq.trap_frequency};
}

double air_rate(const EnvironmentParams& env, double radius) {
    const double hbar = kConstants.hbar;
    return 8.0 * std::sqrt(2.0 * kPi) * env.molecule_mass * thermal_velocity(env) * env.pressure * radius *
           radius / (3.0 * std::sqrt(3.0) * hbar * hbar);
}

BlackbodyRates blackbody_rates(const SphereParams& sphere, const EnvironmentParams& env) {
    const auto& k = kConstants;
    const auto alpha = polarizability_ratio(sphere.eps_bb);
    const double r = sphere.radius;
    const double r3 = r * r * r;
    const auto thermal_k = [&](double t) { return k.k_B * t / (k.hbar * k.c); };

    BlackbodyRates out;
    out.scattering = kFactorial8 * 8.0 * kZeta9 * k.c * r3 * r3 / (9.0 * kPi) *
                     std::pow(thermal_k(env.temperature), 9) * alpha.real() * alpha.real();
    const double absorptive = 16.0 * std::pow(kPi, 5) * k.c * r3 / 189.0 * alpha.imag();
    out.emission = absorptive * std::pow(thermal_k(sphere.internal_temperature), 6);
    out.absorption = absorptive * std::pow(thermal_k(env.temperature), 6);
    return out;
}

double csl_shape_function(double x) {
    if (!(x >= 0)) throw std::invalid_argument("csl shape function needs x >= 0");
    const double u = x * x;
    if (u < 1.0) {
        // f = 6 sum_{k>=2} (-1)^k (k-1) u^(k-2) / (k+1)!
        double sum = 0.0;
        double power = 1.0;      // u^(k-2)
        double factorial = 6.0;  // (k+1)!
        for (int k = 2; k < 40; ++k) {
            const double term = (k - 1) * power / factorial;
            sum += (k % 2 == 0) ? term : -term;
            if (term < 1e-18) break;
            power *= u;
            factorial *= (k + 2);
        }
        return 6.0 * sum;
    }
    return 6.0 / (u * u) * (1.0 - 2.0 / u + (1.0 + 2.0 / u) * std::exp(-u));
}

double csl_rate(const SphereParams& sphere, const ProtocolParams& protocol) {
    const double m = sphere_mass(sphere.radius, sphere.density);
    const double ratio = m / kConstants.nucleon_mass;
    const double lambda = protocol.csl_factor * protocol.csl_lambda0;
    const double shape = csl_shape_function(std::sqrt(protocol.csl_alpha) * sphere.radius);
    return 0.5 * ratio * ratio * lambda * protocol.csl_alpha * shape;
}

LocalizationRates localization_rates(const ExperimentConfig& cfg, const DerivedQuantities& dq,
                                     double photons) {
    LocalizationRates out;
    out.photon_scattering = photon_scattering_rate(dq, photons).localization;
    out.air = air_rate(cfg.environment, cfg.sphere.radius);
    const auto bb = blackbody_rates(cfg.sphere, cfg.environment);
    out.bb_scattering = bb.scattering;
    out.bb_emission = bb.emission;
    out.bb_absorption = bb.absorption;
    out.standard = out.bb_scattering + out.bb_emission + out.bb_absorption + out.air;
    out.csl = csl_rate(cfg.sphere, cfg.protocol);
    return out;
}

}  // namespace levisim
