#pragma once

#include "levisim/config.hpp"
#include "levisim/derived.hpp"

namespace levisim {

// Optomechanical couplings and cooperativities at a given intracavity photon
// number and wavepacket size sigma.
struct CouplingRates {
    double g = 0.0;                 // linear coupling, rad/s
    double g_q = 0.0;               // quadratic coupling k_c x0 g, rad/s
    double g_q_enhanced = 0.0;      // g_q (sigma/x0)^2, rad/s
    double kappa_scattering = 0.0;  // rad/s
    double c_linear = 0.0;          // g^2 / (kappa Gamma), Gamma = Lambda_sc x0^2
    double c_quadratic = 0.0;       // g_q_enhanced^2 / (kappa Gamma_bar), Gamma_bar = Lambda_sc sigma^2
};

// Localization rates Lambda, the coefficient of -Lambda [x, [x, rho]], in 1/(m^2 s).
struct LocalizationRates {
    double photon_scattering = 0.0;  // at the stated photon number
    double air = 0.0;
    double bb_scattering = 0.0;
    double bb_emission = 0.0;
    double bb_absorption = 0.0;
    double standard = 0.0;  // air + all blackbody terms; light is off during free fall
    double csl = 0.0;
};

struct PhotonScattering {
    double localization = 0.0;  // Lambda_sc
    double cavity_decay = 0.0;  // kappa_sc
};

struct BlackbodyRates {
    double scattering = 0.0;
    double emission = 0.0;
    double absorption = 0.0;
};

struct CoolingLimit {
    double occupation = 0.0;
    bool resolved_sideband = false;  // kappa < 4 omega_t
};

/// kappa_sc = eps_c^2 V^2 k_c^4 c / (16 pi V_c); independent of photon number.
double scattering_cavity_decay(const DerivedQuantities& dq);

PhotonScattering photon_scattering_rate(const DerivedQuantities& dq, double photons);

/// Requires photons > 0 and sigma >= x0.
CouplingRates coupling_rates(const DerivedQuantities& dq, double photons, double sigma);

/// Sideband-cooling floor [kappa / (4 omega_t)]^2 + 1 / C_l.
CoolingLimit cooling_occupation(const DerivedQuantities& dq, double c_linear);

/// Gas collisions, 8 sqrt(2 pi) m_a v P R^2 / (3 sqrt(3) hbar^2).
double air_rate(const EnvironmentParams& env, double radius);

/// Thermal photon scattering, emission (at the internal temperature) and
/// absorption (at the environment temperature) for a sub-wavelength sphere.
BlackbodyRates blackbody_rates(const SphereParams& sphere, const EnvironmentParams& env);

/// Shape factor of the collapse rate for a homogeneous sphere,
/// f(x) = 6/x^4 [1 - 2/x^2 + (1 + 2/x^2) exp(-x^2)] with x = sqrt(alpha) R.
/// Evaluated by its Taylor series below x = 1 where the closed form cancels.
double csl_shape_function(double x);

/// m^2 lambda alpha f(sqrt(alpha) R) / (2 m_0^2) with lambda = csl_factor * lambda_0.
double csl_rate(const SphereParams& sphere, const ProtocolParams& protocol);

LocalizationRates localization_rates(const ExperimentConfig& config, const DerivedQuantities& dq,
                                     double photons);

}  // namespace levisim
