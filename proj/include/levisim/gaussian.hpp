#pragma once

#include "levisim/derived.hpp"

namespace levisim {

// Zero-mean Gaussian centre-of-mass state along the cavity axis, described by
// its second moments.
struct GaussianState {
    double vx = 0.0;   // <x^2>, m^2
    double vp = 0.0;   // <p^2>, kg^2 m^2 / s^2
    double cxp = 0.0;  // <xp + px>/2, kg m^2 / s
    double mass = 0.0;

    // vx vp - cxp^2; at least hbar^2/4 for a physical state.
    double determinant() const { return vx * vp - cxp * cxp; }
    bool operator==(const GaussianState&) const = default;
};

/// Thermal state of the trap: vx = (2n+1) x0^2, vp = (2n+1) hbar^2 / (4 x0^2).
GaussianState initial_state(const DerivedQuantities& dq, double occupation);

/// Exact moments after free evolution for time t with localization rate
/// `localization` (the Lambda of -Lambda [x, [x, rho]]).
GaussianState evolve(const GaussianState& state, double t, double localization);

/// Mean parity hbar / (2 sqrt(det)); 1 for a pure state.
double parity_expectation(const GaussianState& state);

/// xi_l with <-x/2|rho|x/2> ~ exp(-x^2/xi_l^2); xi_l^2 = 8 <x^2> <P>^2.
double coherence_length(const GaussianState& state);

/// Robertson-Schroedinger bound det >= hbar^2/4 up to a relative slack.
bool satisfies_uncertainty(const GaussianState& state, double relative_slack = 1e-9);

}  // namespace levisim
