#include "levisim/derived.hpp"

#include <cmath>

#include "levisim/constants.hpp"
#include "levisim/rates.hpp"

namespace levisim {

double dielectric_factor(std::complex<double> eps) {
    return 3.0 * ((eps - 1.0) / (eps + 2.0)).real();
}

double sphere_mass(double radius, double density) {
    return density * (4.0 / 3.0) * kPi * radius * radius * radius;
}

DerivedQuantities derive(const ExperimentConfig& cfg) {
    validate(cfg);
    const auto& k = kConstants;

    DerivedQuantities dq;
    const double r = cfg.sphere.radius;
    dq.volume = (4.0 / 3.0) * kPi * r * r * r;
    dq.mass = cfg.sphere.density * dq.volume;
    dq.trap_frequency = cfg.trap.frequency;
    dq.zero_point = std::sqrt(k.hbar / (2.0 * dq.mass * dq.trap_frequency));
    dq.mode_volume = 0.25 * kPi * cfg.cavity.waist * cfg.cavity.waist * cfg.cavity.length;
    dq.wavenumber = 2.0 * kPi / cfg.cavity.wavelength;
    dq.eps_c = dielectric_factor(cfg.sphere.eps_r);
    dq.kappa_mirror = kPi * k.c / (2.0 * cfg.cavity.length * cfg.cavity.finesse);
    dq.kappa_scattering = scattering_cavity_decay(dq);
    dq.kappa = dq.kappa_mirror + dq.kappa_scattering;
    dq.air_thermal_velocity = thermal_velocity(cfg.environment);
    dq.thermal_velocity_from_config = cfg.environment.thermal_velocity.has_value();
    return dq;
}

}  // namespace levisim
