/**
 * @file csv_io.hpp
 * @brief Time-series CSV export/import and the JSON run manifest.
 *
 * CSV header:
 *   t,v,omega,lambda,e_L,mu,torque_cmd,torque_applied,d_hat,delta_e_actual
 * Values use the shortest decimal form that parses back to the same double.
 */
#pragma once

#include "lockup/simulation.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace lockup {

inline constexpr std::string_view kCsvHeader =
    "t,v,omega,lambda,e_L,mu,torque_cmd,torque_applied,d_hat,delta_e_actual";

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Shortest round-trip decimal representation.
std::string format_double(double x);
/// Strict parse of a whole token; throws std::invalid_argument.
double parse_double(std::string_view token);

/// Throws std::runtime_error with the path on I/O failure, std::invalid_argument
/// on an empty result.
void write_csv(const ScenarioResult& result, const std::filesystem::path& path);
Series read_csv(const std::filesystem::path& path);

struct RunManifest {
    std::string label;
    std::string config;  // resolved scenario document
    std::string tool_version = std::string(kToolVersion);
    double wall_clock_s = 0.0;
    Metrics metrics;
    double lockup_threshold = 0.99;
    std::string termination;
    std::optional<std::string> failure;
    std::size_t rows = 0;
    std::vector<std::string> outputs;
};

RunManifest make_manifest(const std::string& label, const std::string& config,
                          const ScenarioResult& result, double wall_clock_s,
                          std::vector<std::string> outputs);

/// Human-readable JSON sidecar.
void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);
RunManifest read_manifest(const std::filesystem::path& path);

}  // namespace lockup
