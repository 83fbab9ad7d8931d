#pragma once

// CODATA 2018 values, SI units.

namespace levisim {

struct PhysicalConstants {
    double hbar;          // J s
    double c;             // m/s
    double k_B;           // J/K
    double amu;           // kg
    double nucleon_mass;  // kg (proton)
};

inline constexpr PhysicalConstants kConstants{
    1.054571817e-34,
    299792458.0,
    1.380649e-23,
    1.66053906660e-27,
    1.67262192369e-27,
};

namespace units {
inline constexpr double torr = 101325.0 / 760.0;  // Pa
inline constexpr double mbar = 100.0;             // Pa
inline constexpr double nm = 1e-9;
inline constexpr double um = 1e-6;
}  // namespace units

inline constexpr double kPi = 3.141592653589793238462643383279502884;

}  // namespace levisim
