#include "levisim/gaussian.hpp"

#include <cmath>
#include <stdexcept>

#include "levisim/constants.hpp"

namespace levisim {

GaussianState initial_state(const DerivedQuantities& dq, double occupation) {
    if (!(occupation >= 0)) throw std::invalid_argument("occupation must be >= 0");
    const double scale = 2.0 * occupation + 1.0;
    const double x0 = dq.zero_point;
    const double hbar = kConstants.hbar;
    return {scale * x0 * x0, scale * hbar * hbar / (4.0 * x0 * x0), 0.0, dq.mass};
}

GaussianState evolve(const GaussianState& s, double t, double localization) {
    if (!(t >= 0)) throw std::invalid_argument("evolution time must be >= 0");
    if (!(localization >= 0)) throw std::invalid_argument("localization rate must be >= 0");
    const double m = s.mass;
    const double diffusion = kConstants.hbar * kConstants.hbar * localization;  // d<p^2>/dt = 2 D

    GaussianState out = s;
    out.vx = s.vx + 2.0 * s.cxp * t / m + s.vp * t * t / (m * m) + 2.0 * diffusion * t * t * t / (3.0 * m * m);
    out.vp = s.vp + 2.0 * diffusion * t;
    out.cxp = s.cxp + s.vp * t / m + diffusion * t * t / m;
    return out;
}

double parity_expectation(const GaussianState& s) {
    return kConstants.hbar / (2.0 * std::sqrt(s.determinant()));
}

double coherence_length(const GaussianState& s) {
    return std::sqrt(8.0 * s.vx) * parity_expectation(s);
}

bool satisfies_uncertainty(const GaussianState& s, double relative_slack) {
    const double bound = 0.25 * kConstants.hbar * kConstants.hbar;
    return s.vx > 0 && s.vp > 0 && s.determinant() >= bound * (1.0 - relative_slack);
}

}  // namespace levisim
