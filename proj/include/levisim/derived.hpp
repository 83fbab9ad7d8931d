#pragma once

#include "levisim/config.hpp"

namespace levisim {

// Static quantities computed once from a validated config.
struct DerivedQuantities {
    double mass = 0.0;              // kg
    double volume = 0.0;            // m^3
    double trap_frequency = 0.0;    // rad/s
    double zero_point = 0.0;        // x0 = sqrt(hbar / (2 m omega_t)), m
    double mode_volume = 0.0;       // V_c = (pi/4) w^2 L, m^3
    double wavenumber = 0.0;        // k_c = 2 pi / lambda_c, 1/m
    double eps_c = 0.0;             // 3 Re[(eps_r - 1)/(eps_r + 2)]
    double kappa_mirror = 0.0;      // pi c / (2 L F), rad/s
    double kappa_scattering = 0.0;  // photon scattering out of the mode, rad/s
    double kappa = 0.0;             // total cavity amplitude decay, rad/s
    double air_thermal_velocity = 0.0;  // m/s
    bool thermal_velocity_from_config = false;

    bool operator==(const DerivedQuantities&) const = default;
};

DerivedQuantities derive(const ExperimentConfig& config);

double dielectric_factor(std::complex<double> eps);
double sphere_mass(double radius, double density);

}  // namespace levisim
