#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "levisim/config.hpp"
#include "levisim/constants.hpp"
#include "levisim/derived.hpp"
#include "levisim/gaussian.hpp"
#include "levisim/protocol.hpp"
#include "levisim/rates.hpp"
#include "levisim/report.hpp"
#include "levisim/wavesim.hpp"

namespace levisim::cli {
namespace {

std::string join_args(int argc, const char* const* argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

Json config_json(const ExperimentConfig& cfg) { return Json::parse(to_json_string(cfg, -1)); }

int resolve_jobs(std::optional<int> flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("LEVISIM_JOBS")) {
        try {
            return std::stoi(env);
        } catch (const std::exception&) {
            throw CLI::ValidationError("LEVISIM_JOBS", std::string("not an integer: ") + env);
        }
    }
    return 0;
}

// Writes to the named file, or to `fallback` when the name is empty.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (path.empty()) return;
        file_.open(path);
        if (!file_) throw std::ios_base::failure("cannot open output file " + path);
        stream_ = &file_;
    }
    std::ostream& get() { return *stream_; }
    void close() {
        if (file_.is_open()) {
            file_.close();
            if (!file_) throw std::ios_base::failure("failed writing output file");
        }
    }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

void cmd_derive(const ExperimentConfig& cfg, const RunManifest& manifest, std::ostream& out) {
    const auto analysis = analyze(cfg, {.enforce = false});
    const auto& dq = analysis.derived;
    const auto& plan = analysis.plan;
    const auto cooling = cooling_occupation(dq, plan.c_linear);
    Json j;
    j["manifest"] = to_json(manifest);
    j["config"] = config_json(cfg);
    j["derived"] = to_json(dq);
    j["plan"] = to_json(plan);
    j["sigma_over_x0"] = plan.sigma / dq.zero_point;
    j["c_linear"] = plan.c_linear;
    j["cooling_limit"] = {{"occupation", cooling.occupation}, {"resolved_sideband", cooling.resolved_sideband}};
    j["localization"] = to_json(analysis.rates);
    j["bounds"] = to_json(analysis.bounds);
    j["separation"] = target_separation(cfg);
    out << j.dump(2) << '\n';
}

void cmd_rates(const ExperimentConfig& cfg, const RunManifest& manifest, std::optional<double> photons,
               std::optional<double> sigma, std::ostream& out) {
    const auto dq = derive(cfg);
    if (!photons || !sigma) {
        const auto plan = plan_pulse(cfg, dq, {.enforce = false});
        if (!photons) photons = plan.photons;
        if (!sigma) sigma = plan.sigma;
    }
    if (!(*photons > 0)) throw ConfigValidationError("--nph", "must be > 0");
    if (!(*sigma >= dq.zero_point)) throw ConfigValidationError("--sigma", "must be >= x0");
    Json j;
    j["manifest"] = to_json(manifest);
    j["config"] = config_json(cfg);
    j["photons"] = *photons;
    j["sigma"] = *sigma;
    j["coupling"] = to_json(coupling_rates(dq, *photons, *sigma));
    j["localization"] = to_json(localization_rates(cfg, dq, *photons));
    j["provenance"] = {
        {"g", "eps_c V c k_c^2 x0 sqrt(n_ph) / (4 V_c)"},
        {"g_q", "k_c x0 g"},
        {"g_q_enhanced", "g_q (sigma / x0)^2"},
        {"kappa_scattering", "eps_c^2 V^2 k_c^4 c / (16 pi V_c)"},
        {"c_linear", "g^2 / (kappa Lambda_sc x0^2)"},
        {"c_quadratic", "g_q_enhanced^2 / (kappa Lambda_sc sigma^2)"},
        {"photon_scattering", "eps_c^2 n_ph c k_c^6 V^2 / (6 pi V_c)"},
        {"air", "8 sqrt(2 pi) m_a v P R^2 / (3 sqrt(3) hbar^2)"},
        {"bb_scattering", "8! 8 zeta(9) c R^6 / (9 pi) (k_B T_e / hbar c)^9 Re[(eps_bb - 1)/(eps_bb + 2)]^2"},
        {"bb_emission", "16 pi^5 c R^3 / 189 (k_B T_i / hbar c)^6 Im[(eps_bb - 1)/(eps_bb + 2)]"},
        {"bb_absorption", "16 pi^5 c R^3 / 189 (k_B T_e / hbar c)^6 Im[(eps_bb - 1)/(eps_bb + 2)]"},
        {"standard", "air + bb_scattering + bb_emission + bb_absorption"},
        {"csl", "m^2 lambda alpha f(sqrt(alpha) R) / (2 m_0^2)"},
    };
    out << j.dump(2) << '\n';
}

void cmd_expand(const ExperimentConfig& cfg, const RunManifest& manifest, double t, int steps, std::ostream& out) {
    if (!(t >= 0)) throw ConfigValidationError("--t", "must be >= 0");
    if (steps < 1) throw ConfigValidationError("--steps", "must be >= 1");
    const auto dq = derive(cfg);
    const auto rates = localization_rates(cfg, dq, 0.0);
    const auto start = initial_state(dq, cfg.trap.occupation);
    write_manifest_comment(out, manifest);
    out << "# config: " << to_json_string(cfg, -1) << '\n';
    out << "# localization: " << format_number(rates.standard) << '\n';
    out << "t,vx,vp,cxp,xi_l\n";
    for (int i = 0; i <= steps; ++i) {
        const double ti = t * static_cast<double>(i) / steps;
        const auto s = evolve(start, ti, rates.standard);
        out << format_number(ti) << ',' << format_number(s.vx) << ',' << format_number(s.vp) << ','
            << format_number(s.cxp) << ',' << format_number(coherence_length(s)) << '\n';
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Levitated-nanosphere double-slit planner and simulator", "levisim"};
    app.set_version_flag("--version", std::string(LEVISIM_VERSION));
    app.require_subcommand(1);

    std::string config_path;
    const auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "YAML or JSON experiment configuration")->required();
    };

    auto* derive_cmd = app.add_subcommand("derive", "Derived quantities, pulse plan and bounds as JSON");
    add_config(derive_cmd);

    std::optional<double> nph;
    std::optional<double> sigma;
    auto* rates_cmd = app.add_subcommand("rates", "Coupling and localization rates as JSON");
    add_config(rates_cmd);
    rates_cmd->add_option("--nph", nph, "Intracavity photon number (default: planned)");
    rates_cmd->add_option("--sigma", sigma, "Wavepacket size in m (default: planned)");

    double expand_t = 0.0;
    int expand_steps = 100;
    auto* expand_cmd = app.add_subcommand("expand", "Moment trajectory during free expansion as CSV");
    add_config(expand_cmd);
    expand_cmd->add_option("--t", expand_t, "Total time in s")->required();
    expand_cmd->add_option("--steps", expand_steps, "Number of intervals");

    double dmin_nm = 10.0;
    double dmax_nm = 200.0;
    std::size_t points = 30;
    std::optional<double> csl_factor;
    std::optional<double> d_over_D;
    std::string format = "csv";
    std::string out_path;
    std::optional<int> jobs;
    auto* scan_cmd = app.add_subcommand("scan", "Operational window over log-spaced diameters");
    add_config(scan_cmd);
    scan_cmd->add_option("--dmin-nm", dmin_nm, "Smallest diameter in nm");
    scan_cmd->add_option("--dmax-nm", dmax_nm, "Largest diameter in nm");
    scan_cmd->add_option("--points", points, "Number of diameters");
    scan_cmd->add_option("--csl-factor", csl_factor, "CSL rate in units of lambda_0");
    scan_cmd->add_option("--d-over-D", d_over_D, "Slit separation over diameter");
    scan_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    scan_cmd->add_option("--out", out_path, "Output file (default: stdout)");
    scan_cmd->add_option("--jobs", jobs, "Worker threads (default: LEVISIM_JOBS, else all cores)");

    bool force = false;
    std::string pattern_path;
    auto* simulate_cmd = app.add_subcommand("simulate", "Double-slit pattern with and without decoherence");
    add_config(simulate_cmd);
    simulate_cmd->add_option("--d-over-D", d_over_D, "Slit separation over diameter");
    simulate_cmd->add_option("--csl-factor", csl_factor, "CSL rate in units of lambda_0");
    simulate_cmd->add_option("--out", pattern_path, "Pattern CSV (x, q_ideal, q_standard, q_csl)")->required();
    simulate_cmd->add_flag("--force", force, "Simulate even outside the operational window");

    if (argc <= 1) {
        err << app.help();
        return kUsageError;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsageError;
    }

    const std::string command_line = join_args(argc, argv);
    try {
        auto cfg = load_config_file(config_path);
        if (csl_factor) cfg.protocol.csl_factor = *csl_factor;
        if (d_over_D) {
            cfg.protocol.separation.reset();
            cfg.protocol.separation_over_diameter = *d_over_D;
        }
        validate(cfg);
        const auto manifest = make_manifest(cfg, command_line);

        if (*derive_cmd) {
            cmd_derive(cfg, manifest, out);
        } else if (*rates_cmd) {
            cmd_rates(cfg, manifest, nph, sigma, out);
        } else if (*expand_cmd) {
            cmd_expand(cfg, manifest, expand_t, expand_steps, out);
        } else if (*scan_cmd) {
            if (!(dmin_nm > 0) || !(dmax_nm >= dmin_nm)) throw ConfigValidationError("--dmin-nm", "need 0 < dmin <= dmax");
            if (points < 1) throw ConfigValidationError("--points", "must be >= 1");
            const auto diameters = log_spaced(dmin_nm * units::nm, dmax_nm * units::nm, points);
            const auto rows = scan_regime(cfg, diameters, resolve_jobs(jobs));
            Sink sink(out_path, out);
            if (format == "json") {
                auto j = scan_to_json(rows, manifest);
                j["config"] = config_json(cfg);
                sink.get() << j.dump(2) << '\n';
            } else {
                write_scan_csv(sink.get(), rows, manifest);
            }
            sink.close();
        } else if (*simulate_cmd) {
            const auto result = simulate_protocol(cfg, {.force = force});
            Sink sink(pattern_path, out);
            write_pattern_csv(sink.get(), result, manifest);
            sink.close();
            Json j;
            j["manifest"] = to_json(manifest);
            j["config"] = config_json(cfg);
            j["slit"] = to_json(result.slit);
            j["grid"] = {{"n", result.grid.n}, {"dx", result.grid.dx}};
            j["blur_standard"] = result.blur_standard;
            j["blur_csl"] = result.blur_csl;
            j["measurement_density"] = result.measurement_density;
            j["bounds"] = to_json(result.analysis.bounds);
            j["ideal"] = to_json(result.ideal_report);
            j["standard"] = to_json(result.standard_report);
            j["csl"] = to_json(result.csl_report);
            out << j.dump(2) << '\n';
        }
        return kOk;
    } catch (const PlanningError& e) {
        err << "levisim: planning failed: " << e.what() << '\n';
        return kNumericalError;
    } catch (const GridError& e) {
        err << "levisim: grid: " << e.what() << '\n';
        return kNumericalError;
    } catch (const MeasurementError& e) {
        err << "levisim: measurement: " << e.what() << '\n';
        return kNumericalError;
    } catch (const CLI::ValidationError& e) {
        err << "levisim: " << e.what() << '\n';
        return kUsageError;
    } catch (const ConfigError& e) {
        err << "levisim: config: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::ios_base::failure& e) {
        err << "levisim: " << e.what() << '\n';
        return kUsageError;
    }
}

}  // namespace levisim::cli
