#pragma once

#include <complex>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace levisim {

// Dielectric sphere. Permittivities are relative (dimensionless).
struct SphereParams {
    double radius = 0.0;   // m
    double density = 0.0;  // kg/m^3
    std::complex<double> eps_r{};   // at the cavity wavelength
    std::complex<double> eps_bb{};  // averaged over the thermal spectrum
    double internal_temperature = 206.0;  // K

    bool operator==(const SphereParams&) const = default;
};

// Measurement cavity.
struct CavityParams {
    double finesse = 0.0;
    double length = 0.0;      // m
    double waist = 0.0;       // m
    double wavelength = 0.0;  // m

    bool operator==(const CavityParams&) const = default;
};

struct EnvironmentParams {
    double pressure = 0.0;       // Pa
    double temperature = 0.0;    // K
    double molecule_mass = 0.0;  // kg
    // When absent, sqrt(3 k_B T / m_a) is used.
    std::optional<double> thermal_velocity;  // m/s

    bool operator==(const EnvironmentParams&) const = default;
};

struct TrapParams {
    double frequency = 0.0;   // angular, rad/s
    double occupation = 0.0;  // mean phonon number reached by the cooling stage

    bool operator==(const TrapParams&) const = default;
};

struct ProtocolParams {
    double detector_resolution = 0.0;  // m
    // Either an absolute slit separation or a multiple of the sphere diameter.
    std::optional<double> separation;  // m
    double separation_over_diameter = 1.0;
    double csl_factor = 0.0;           // lambda / lambda_0
    double csl_alpha = 1e14;           // 1/m^2
    double csl_lambda0 = 2.2e-17;      // 1/s

    bool operator==(const ProtocolParams&) const = default;
};

struct ExperimentConfig {
    SphereParams sphere;
    CavityParams cavity;
    TrapParams trap;
    EnvironmentParams environment;
    ProtocolParams protocol;

    bool operator==(const ExperimentConfig&) const = default;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed document or a value that cannot be read as the expected kind.
class ConfigParseError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// A physical invariant is violated; field() is the dotted path, e.g. "sphere.radius".
class ConfigValidationError : public ConfigError {
public:
    ConfigValidationError(std::string field, const std::string& what)
        : ConfigError(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Parses a YAML (or JSON) document with sections sphere, cavity, trap,
/// environment and protocol. Quantities are either bare SI numbers or
/// `{value: x, unit: "nm"}` maps. The result is validated before return.
ExperimentConfig load_config(std::string_view document);
ExperimentConfig load_config_file(const std::filesystem::path& path);

/// Throws ConfigValidationError naming the first violated field.
void validate(const ExperimentConfig& config);

double thermal_velocity(const EnvironmentParams& env);

/// Target slit separation d in metres.
double target_separation(const ExperimentConfig& config);

/// Canonical JSON echo in SI units; parses back through load_config.
std::string to_json_string(const ExperimentConfig& config, int indent = 2);

}  // namespace levisim
