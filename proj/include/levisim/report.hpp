#pragma once

#include <map>
#include <ostream>
#include <span>
#include <string>

#include <json.hpp>

#include "levisim/config.hpp"
#include "levisim/derived.hpp"
#include "levisim/gaussian.hpp"
#include "levisim/protocol.hpp"
#include "levisim/rates.hpp"
#include "levisim/wavesim.hpp"

namespace levisim {

using Json = nlohmann::ordered_json;

// Accompanies every artifact. Two runs with equal manifests (ignoring the
// timestamp) produce identical numerical output.
struct RunManifest {
    std::string version;
    std::string config_hash;  // FNV-1a 64 of the canonical config JSON
    std::string command_line;
    std::map<std::string, std::string> interpretation;
    std::string timestamp;  // UTC, ISO 8601
};

RunManifest make_manifest(const ExperimentConfig& config, const std::string& command_line);
std::string config_hash(const ExperimentConfig& config);

Json to_json(const RunManifest& manifest);
Json to_json(const DerivedQuantities& dq);
Json to_json(const CouplingRates& rates);
Json to_json(const LocalizationRates& rates);
Json to_json(const GaussianState& state);
Json to_json(const PulsePlan& plan);
Json to_json(const RegimeBounds& bounds);
Json to_json(const SlitGeometry& slit);
Json to_json(const FringeReport& report);

/// Shortest text that parses back to the same double; "inf" for infinity.
std::string format_number(double value);

/// Manifest as '# key: value' comment lines for CSV headers.
void write_manifest_comment(std::ostream& out, const RunManifest& manifest);

void write_scan_csv(std::ostream& out, std::span<const ScanRow> rows, const RunManifest& manifest);
Json scan_to_json(std::span<const ScanRow> rows, const RunManifest& manifest);

void write_pattern_csv(std::ostream& out, const SimulationResult& result, const RunManifest& manifest);

}  // namespace levisim
