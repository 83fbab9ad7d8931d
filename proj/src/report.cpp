#include "levisim/report.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <iomanip>
#include <sstream>

#include "levisim/constants.hpp"

namespace levisim {
namespace {

std::string fnv1a64(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

// JSON has no infinity; unbounded values are written as null.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

std::string config_hash(const ExperimentConfig& config) { return fnv1a64(to_json_string(config, -1)); }

RunManifest make_manifest(const ExperimentConfig& config, const std::string& command_line) {
    RunManifest m;
    m.version = LEVISIM_VERSION;
    m.config_hash = config_hash(config);
    m.command_line = command_line;
    m.interpretation = {
        {"omega_in_t1", "trap frequency omega_t"},
        {"sigma", "free-expansion width of the trap ground state at t1"},
        {"kappa", "pi c / (2 L F) + photon-scattering decay"},
        {"mode_volume", "(pi/4) w^2 L"},
        {"thermal_velocity", config.environment.thermal_velocity ? "from config" : "sqrt(3 k_B T / m_a)"},
        {"blackbody_prefactors",
         "dipole limit: 8! 8 zeta(9) c R^6 / (9 pi) (k_B T / hbar c)^9, 16 pi^5 c R^3 / 189 (k_B T / hbar c)^6"},
        {"csl_shape_function", "homogeneous-sphere closed form 6/x^4 [1 - 2/x^2 + (1 + 2/x^2) e^-x^2]"},
        {"csl_in_simulation", "standard and CSL localization rates added"},
        {"detector_kernel", "gaussian, standard deviation = resolution / 2"},
        {"pulse_phase", "expansion chirp compensated; residual reported in plan.phase_residual"},
    };
    m.timestamp = utc_timestamp();
    return m;
}

std::string format_number(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (std::isnan(value)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

Json to_json(const RunManifest& m) {
    Json interp = Json::object();
    for (const auto& [k, v] : m.interpretation) interp[k] = v;
    return {{"version", m.version},
            {"config_hash", m.config_hash},
            {"command_line", m.command_line},
            {"interpretation", interp},
            {"timestamp", m.timestamp}};
}

Json to_json(const DerivedQuantities& dq) {
    const double two_pi = 2.0 * kPi;
    return {{"mass", dq.mass},
            {"volume", dq.volume},
            {"trap_frequency", dq.trap_frequency},
            {"zero_point", dq.zero_point},
            {"mode_volume", dq.mode_volume},
            {"wavenumber", dq.wavenumber},
            {"eps_c", dq.eps_c},
            {"kappa_mirror", dq.kappa_mirror},
            {"kappa_scattering", dq.kappa_scattering},
            {"kappa", dq.kappa},
            {"kappa_over_2pi_hz", dq.kappa / two_pi},
            {"kappa_mirror_over_2pi_hz", dq.kappa_mirror / two_pi},
            {"air_thermal_velocity", dq.air_thermal_velocity}};
}

Json to_json(const CouplingRates& r) {
    return {{"g", r.g},
            {"g_q", r.g_q},
            {"g_q_enhanced", r.g_q_enhanced},
            {"kappa_scattering", r.kappa_scattering},
            {"c_linear", r.c_linear},
            {"c_quadratic", r.c_quadratic}};
}

Json to_json(const LocalizationRates& r) {
    return {{"photon_scattering", r.photon_scattering},
            {"air", r.air},
            {"bb_scattering", r.bb_scattering},
            {"bb_emission", r.bb_emission},
            {"bb_absorption", r.bb_absorption},
            {"standard", r.standard},
            {"csl", r.csl}};
}

Json to_json(const GaussianState& s) {
    return {{"vx", s.vx}, {"vp", s.vp}, {"cxp", s.cxp}, {"parity", parity_expectation(s)},
            {"coherence_length", coherence_length(s)}};
}

Json to_json(const PulsePlan& p) {
    return {{"photons", p.photons},
            {"t1", p.t1},
            {"tau", p.tau},
            {"sigma", p.sigma},
            {"chi", p.chi},
            {"phase", p.phase},
            {"phase_target", p.phase_target},
            {"phase_residual", p.phase_residual},
            {"gamma_bar", p.gamma_bar},
            {"tau_gamma", p.tau_gamma},
            {"kinetic", p.kinetic},
            {"t2", p.t2},
            {"c_linear", p.c_linear},
            {"c_quadratic", p.c_quadratic},
            {"expanded", to_json(p.expanded)},
            {"at_measurement", to_json(p.at_measurement)}};
}

Json to_json(const RegimeBounds& b) {
    return {{"d_min", number(b.d_min)},
            {"d_max_a", number(b.d_max_a)},
            {"d_max_b", number(b.d_max_b)},
            {"d_max_c", number(b.d_max_c)},
            {"d_max_d", number(b.d_max_d)},
            {"d_max_csl", number(b.d_max_csl)},
            {"operational", b.operational}};
}

Json to_json(const SlitGeometry& s) {
    return {{"separation", s.separation},
            {"packet_width", s.packet_width},
            {"outcome", s.outcome},
            {"fringe_spacing", s.fringe_spacing}};
}

Json to_json(const FringeReport& r) {
    return {{"detected", r.detected},
            {"spacing", r.spacing},
            {"visibility", r.visibility},
            {"envelope_width", r.envelope_width},
            {"center", r.center}};
}

void write_manifest_comment(std::ostream& out, const RunManifest& m) {
    out << "# version: " << m.version << '\n';
    out << "# config_hash: " << m.config_hash << '\n';
    out << "# command_line: " << m.command_line << '\n';
    for (const auto& [k, v] : m.interpretation) out << "# " << k << ": " << v << '\n';
    out << "# timestamp: " << m.timestamp << '\n';
}

void write_scan_csv(std::ostream& out, std::span<const ScanRow> rows, const RunManifest& manifest) {
    write_manifest_comment(out, manifest);
    out << "D,d,d_min,d_max_a,d_max_b,d_max_c,d_max_d,d_max_csl,operational,n_ph,t1,t2,chi,error\n";
    for (const auto& row : rows) {
        out << format_number(row.diameter) << ',' << format_number(row.separation);
        if (row.analysis) {
            const auto& b = row.analysis->bounds;
            const auto& p = row.analysis->plan;
            for (double v : {b.d_min, b.d_max_a, b.d_max_b, b.d_max_c, b.d_max_d, b.d_max_csl})
                out << ',' << format_number(v);
            out << ',' << (b.operational ? 1 : 0);
            for (double v : {p.photons, p.t1, p.t2, p.chi}) out << ',' << format_number(v);
            out << ",\n";
        } else {
            out << ",,,,,,,0,,,,,\"" << row.error << "\"\n";
        }
    }
}

Json scan_to_json(std::span<const ScanRow> rows, const RunManifest& manifest) {
    Json table = Json::array();
    for (const auto& row : rows) {
        Json entry{{"D", row.diameter}, {"d", row.separation}};
        if (row.analysis) {
            entry["bounds"] = to_json(row.analysis->bounds);
            entry["n_ph"] = row.analysis->plan.photons;
            entry["t1"] = row.analysis->plan.t1;
            entry["t2"] = row.analysis->plan.t2;
            entry["chi"] = row.analysis->plan.chi;
            entry["tau_gamma"] = row.analysis->plan.tau_gamma;
        } else {
            entry["error"] = row.error;
        }
        entry["operational"] = row.operational();
        table.push_back(entry);
    }
    return {{"manifest", to_json(manifest)}, {"rows", table}};
}

void write_pattern_csv(std::ostream& out, const SimulationResult& r, const RunManifest& manifest) {
    write_manifest_comment(out, manifest);
    out << "x,q_ideal,q_standard,q_csl\n";
    for (std::size_t j = 0; j < r.grid.n; ++j) {
        out << format_number(r.grid.x(j)) << ',' << format_number(r.ideal.q[j]) << ','
            << format_number(r.standard.q[j]) << ',' << format_number(r.csl.q[j]) << '\n';
    }
}

}  // namespace levisim
