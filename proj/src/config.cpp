#include "levisim/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>
#include <yaml-cpp/yaml.h>

#include "levisim/constants.hpp"

namespace levisim {
namespace {

enum class Dimension {
    Length,
    Pressure,
    AngularFrequency,
    Temperature,
    Mass,
    Density,
    Velocity,
    InverseArea,
    Rate,
    Dimensionless,
};

// Multiplicative factor to SI for each accepted unit tag.
const std::map<std::string, double>& unit_table(Dimension dim) {
    static const std::map<std::string, double> length{
        {"m", 1.0}, {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9}};
    static const std::map<std::string, double> pressure{
        {"Pa", 1.0}, {"Torr", units::torr}, {"mbar", units::mbar}};
    static const std::map<std::string, double> frequency{
        {"rad/s", 1.0}, {"Hz", 2.0 * kPi}, {"kHz", 2.0e3 * kPi}, {"MHz", 2.0e6 * kPi}};
    static const std::map<std::string, double> temperature{{"K", 1.0}};
    static const std::map<std::string, double> mass{{"kg", 1.0}, {"amu", kConstants.amu}};
    static const std::map<std::string, double> density{{"kg/m^3", 1.0}, {"g/cm^3", 1e3}};
    static const std::map<std::string, double> velocity{{"m/s", 1.0}};
    static const std::map<std::string, double> inverse_area{{"1/m^2", 1.0}};
    static const std::map<std::string, double> rate{{"1/s", 1.0}};
    static const std::map<std::string, double> dimensionless{{"1", 1.0}};
    switch (dim) {
        case Dimension::Length: return length;
        case Dimension::Pressure: return pressure;
        case Dimension::AngularFrequency: return frequency;
        case Dimension::Temperature: return temperature;
        case Dimension::Mass: return mass;
        case Dimension::Density: return density;
        case Dimension::Velocity: return velocity;
        case Dimension::InverseArea: return inverse_area;
        case Dimension::Rate: return rate;
        case Dimension::Dimensionless: return dimensionless;
    }
    return dimensionless;
}

double read_number(const YAML::Node& node, const std::string& path) {
    if (!node.IsScalar()) throw ConfigParseError(path + ": expected a number");
    try {
        return node.as<double>();
    } catch (const YAML::Exception&) {
        throw ConfigParseError(path + ": '" + node.Scalar() + "' is not a number");
    }
}

double read_quantity(const YAML::Node& node, const std::string& path, Dimension dim) {
    if (node.IsScalar()) return read_number(node, path);
    if (!node.IsMap()) throw ConfigParseError(path + ": expected a number or {value, unit}");
    const auto value = node["value"];
    const auto unit = node["unit"];
    if (!value || !unit) throw ConfigParseError(path + ": quantity needs both 'value' and 'unit'");
    const auto& table = unit_table(dim);
    const auto tag = unit.as<std::string>();
    const auto it = table.find(tag);
    if (it == table.end()) throw ConfigParseError(path + ": unsupported unit '" + tag + "'");
    return read_number(value, path + ".value") * it->second;
}

std::complex<double> read_complex(const YAML::Node& node, const std::string& path) {
    if (node.IsScalar()) return {read_number(node, path), 0.0};
    if (!node.IsMap() || !node["re"]) throw ConfigParseError(path + ": expected {re, im}");
    const double im = node["im"] ? read_number(node["im"], path + ".im") : 0.0;
    return {read_number(node["re"], path + ".re"), im};
}

// Walks one section, rejecting unknown keys so typos surface as errors.
class Section {
public:
    Section(const YAML::Node& root, std::string name, std::set<std::string> allowed)
        : name_(std::move(name)) {
        node_ = root[name_];
        if (!node_) throw ConfigValidationError(name_, "missing required section");
        if (!node_.IsMap()) throw ConfigParseError(name_ + ": expected a mapping");
        for (const auto& kv : node_) {
            const auto key = kv.first.as<std::string>();
            if (!allowed.contains(key)) throw ConfigParseError(name_ + "." + key + ": unknown key");
        }
    }

    double required(const std::string& key, Dimension dim) const {
        const auto child = node_[key];
        if (!child) throw ConfigValidationError(path(key), "missing required field");
        return read_quantity(child, path(key), dim);
    }

    double optional(const std::string& key, Dimension dim, double fallback) const {
        const auto child = node_[key];
        return child ? read_quantity(child, path(key), dim) : fallback;
    }

    std::optional<double> maybe(const std::string& key, Dimension dim) const {
        const auto child = node_[key];
        if (!child) return std::nullopt;
        return read_quantity(child, path(key), dim);
    }

    std::complex<double> complex(const std::string& key) const {
        const auto child = node_[key];
        if (!child) throw ConfigValidationError(path(key), "missing required field");
        return read_complex(child, path(key));
    }

private:
    std::string path(const std::string& key) const { return name_ + "." + key; }

    std::string name_;
    YAML::Node node_;
};

void require(bool ok, const char* field, const char* what) {
    if (!ok) throw ConfigValidationError(field, what);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

ExperimentConfig load_config(std::string_view document) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(document));
    } catch (const YAML::Exception& e) {
        throw ConfigParseError(std::string("malformed document: ") + e.what());
    }
    if (!root.IsMap()) throw ConfigParseError("malformed document: top level must be a mapping");
    for (const auto& kv : root) {
        const auto key = kv.first.as<std::string>();
        static const std::set<std::string> sections{"sphere", "cavity", "trap", "environment", "protocol"};
        if (!sections.contains(key)) throw ConfigParseError(key + ": unknown section");
    }

    ExperimentConfig cfg;
    try {
        const Section sphere(root, "sphere", {"radius", "density", "eps_r", "eps_bb", "internal_temperature"});
        cfg.sphere.radius = sphere.required("radius", Dimension::Length);
        cfg.sphere.density = sphere.required("density", Dimension::Density);
        cfg.sphere.eps_r = sphere.complex("eps_r");
        cfg.sphere.eps_bb = sphere.complex("eps_bb");
        cfg.sphere.internal_temperature =
            sphere.optional("internal_temperature", Dimension::Temperature, 206.0);

        const Section cavity(root, "cavity", {"finesse", "length", "waist", "wavelength"});
        cfg.cavity.finesse = cavity.required("finesse", Dimension::Dimensionless);
        cfg.cavity.length = cavity.required("length", Dimension::Length);
        cfg.cavity.waist = cavity.required("waist", Dimension::Length);
        cfg.cavity.wavelength = cavity.required("wavelength", Dimension::Length);

        const Section trap(root, "trap", {"frequency", "occupation"});
        cfg.trap.frequency = trap.required("frequency", Dimension::AngularFrequency);
        cfg.trap.occupation = trap.required("occupation", Dimension::Dimensionless);

        const Section env(root, "environment",
                          {"pressure", "temperature", "molecule_mass", "thermal_velocity"});
        cfg.environment.pressure = env.required("pressure", Dimension::Pressure);
        cfg.environment.temperature = env.required("temperature", Dimension::Temperature);
        // N2 when unspecified.
        cfg.environment.molecule_mass =
            env.optional("molecule_mass", Dimension::Mass, 28.0134 * kConstants.amu);
        cfg.environment.thermal_velocity = env.maybe("thermal_velocity", Dimension::Velocity);

        const Section proto(root, "protocol",
                            {"detector_resolution", "separation", "separation_over_diameter",
                             "csl_factor", "csl_alpha", "csl_lambda0"});
        cfg.protocol.detector_resolution = proto.required("detector_resolution", Dimension::Length);
        cfg.protocol.separation = proto.maybe("separation", Dimension::Length);
        cfg.protocol.separation_over_diameter =
            proto.optional("separation_over_diameter", Dimension::Dimensionless, 1.0);
        cfg.protocol.csl_factor = proto.optional("csl_factor", Dimension::Dimensionless, 0.0);
        cfg.protocol.csl_alpha = proto.optional("csl_alpha", Dimension::InverseArea, 1e14);
        cfg.protocol.csl_lambda0 = proto.optional("csl_lambda0", Dimension::Rate, 2.2e-17);
    } catch (const YAML::Exception& e) {
        throw ConfigParseError(std::string("malformed document: ") + e.what());
    }

    validate(cfg);
    return cfg;
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigParseError("cannot read config file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return load_config(text.str());
}

void validate(const ExperimentConfig& cfg) {
    const auto& s = cfg.sphere;
    require(finite(s.radius) && s.radius > 0, "sphere.radius", "must be > 0");
    require(finite(s.density) && s.density > 0, "sphere.density", "must be > 0");
    require(finite(s.eps_r.real()) && s.eps_r.real() > 1, "sphere.eps_r", "real part must be > 1");
    require(finite(s.eps_r.imag()) && s.eps_r.imag() >= 0, "sphere.eps_r", "imaginary part must be >= 0");
    require(finite(s.eps_bb.real()) && finite(s.eps_bb.imag()), "sphere.eps_bb", "must be finite");
    require(s.eps_bb.imag() >= 0, "sphere.eps_bb", "imaginary part must be >= 0");
    require(finite(s.internal_temperature) && s.internal_temperature > 0,
            "sphere.internal_temperature", "must be > 0");

    const auto& c = cfg.cavity;
    require(finite(c.finesse) && c.finesse >= 1, "cavity.finesse", "must be >= 1");
    require(finite(c.length) && c.length > 0, "cavity.length", "must be > 0");
    require(finite(c.waist) && c.waist > 0, "cavity.waist", "must be > 0");
    require(finite(c.wavelength) && c.wavelength > 0, "cavity.wavelength", "must be > 0");
    require(c.length >= c.wavelength / 2, "cavity.length", "must be at least half a wavelength");

    require(finite(cfg.trap.frequency) && cfg.trap.frequency > 0, "trap.frequency", "must be > 0");
    require(finite(cfg.trap.occupation) && cfg.trap.occupation >= 0, "trap.occupation", "must be >= 0");

    const auto& e = cfg.environment;
    require(finite(e.pressure) && e.pressure >= 0, "environment.pressure", "must be >= 0");
    require(finite(e.temperature) && e.temperature > 0, "environment.temperature", "must be > 0");
    require(finite(e.molecule_mass) && e.molecule_mass > 0, "environment.molecule_mass", "must be > 0");
    if (e.thermal_velocity)
        require(finite(*e.thermal_velocity) && *e.thermal_velocity > 0,
                "environment.thermal_velocity", "must be > 0");

    const auto& p = cfg.protocol;
    require(finite(p.detector_resolution) && p.detector_resolution > 0,
            "protocol.detector_resolution", "must be > 0");
    if (p.separation) require(finite(*p.separation) && *p.separation > 0, "protocol.separation", "must be > 0");
    require(finite(p.separation_over_diameter) && p.separation_over_diameter > 0,
            "protocol.separation_over_diameter", "must be > 0");
    require(finite(p.csl_factor) && p.csl_factor >= 0, "protocol.csl_factor", "must be >= 0");
    require(finite(p.csl_alpha) && p.csl_alpha > 0, "protocol.csl_alpha", "must be > 0");
    require(finite(p.csl_lambda0) && p.csl_lambda0 >= 0, "protocol.csl_lambda0", "must be >= 0");
}

double thermal_velocity(const EnvironmentParams& env) {
    if (env.thermal_velocity) return *env.thermal_velocity;
    return std::sqrt(3.0 * kConstants.k_B * env.temperature / env.molecule_mass);
}

double target_separation(const ExperimentConfig& cfg) {
    if (cfg.protocol.separation) return *cfg.protocol.separation;
    return cfg.protocol.separation_over_diameter * 2.0 * cfg.sphere.radius;
}

std::string to_json_string(const ExperimentConfig& cfg, int indent) {
    using nlohmann::ordered_json;
    const auto cplx = [](std::complex<double> z) { return ordered_json{{"re", z.real()}, {"im", z.imag()}}; };

    ordered_json env{{"pressure", cfg.environment.pressure},
                     {"temperature", cfg.environment.temperature},
                     {"molecule_mass", cfg.environment.molecule_mass}};
    if (cfg.environment.thermal_velocity) env["thermal_velocity"] = *cfg.environment.thermal_velocity;

    ordered_json proto{{"detector_resolution", cfg.protocol.detector_resolution}};
    if (cfg.protocol.separation) proto["separation"] = *cfg.protocol.separation;
    proto["separation_over_diameter"] = cfg.protocol.separation_over_diameter;
    proto["csl_factor"] = cfg.protocol.csl_factor;
    proto["csl_alpha"] = cfg.protocol.csl_alpha;
    proto["csl_lambda0"] = cfg.protocol.csl_lambda0;

    const ordered_json doc{
        {"sphere",
         {{"radius", cfg.sphere.radius},
          {"density", cfg.sphere.density},
          {"eps_r", cplx(cfg.sphere.eps_r)},
          {"eps_bb", cplx(cfg.sphere.eps_bb)},
          {"internal_temperature", cfg.sphere.internal_temperature}}},
        {"cavity",
         {{"finesse", cfg.cavity.finesse},
          {"length", cfg.cavity.length},
          {"waist", cfg.cavity.waist},
          {"wavelength", cfg.cavity.wavelength}}},
        {"trap", {{"frequency", cfg.trap.frequency}, {"occupation", cfg.trap.occupation}}},
        {"environment", env},
        {"protocol", proto},
    };
    return doc.dump(indent);
}

}  // namespace levisim
