/**
 * @file scenario_config.hpp
 * @brief INI-style scenario documents: parsing, validation, serialization and
 *        construction of the typed simulation inputs.
 *
 * Sections: vehicle, road, disturbance, actuator, attack, ndob, sim.
 * Unknown sections or keys are rejected. Every default below is a named
 * value of ScenarioFile, never a constant inside the physics code.
 */
#pragma once

#include "lockup/simulation.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lockup {

struct VehicleSection {
    double M = 250.0;
    double R = 0.3;
    double J = 1.5;
    double alpha_deg = 0.0;
    double g = 9.81;
    bool operator==(const VehicleSection&) const = default;
};

struct RoadSection {
    std::string kind = "burckhardt";  // burckhardt | zero | table
    std::string preset = "dry_asphalt";  // dry_asphalt | wet_asphalt | custom
    BurckhardtParams c = presets::dry_asphalt;
    std::vector<std::pair<double, double>> table;
    bool operator==(const RoadSection&) const = default;
};

struct DisturbanceSection {
    std::string kind = "zero";  // zero | constant | sinusoid
    double amplitude = 1.0;     // fraction of each channel's declared bound
    double frequency = 1.0;     // Hz
    double bound_v = 0.0;       // N
    double bound_w = 0.0;       // N m
    bool operator==(const DisturbanceSection&) const = default;
};

struct ActuatorSection {
    double tau_f_ms = 16.0;
    double delta_f_ms = 15.0;
    bool ideal = false;
    std::optional<double> upsilon_max;
    bool operator==(const ActuatorSection&) const = default;
};

struct AttackSection {
    std::string variant = "prop3";  // prop1 | prop2 | prop3 | constant
    double T_c = 0.95;
    double p = 0.15;
    double k = 0.0;
    double k_a = 0.0;
    double nu_hat = 15.0;
    std::string mu_hat = "zero";  // zero | dry_asphalt | wet_asphalt | road
    double upsilon_const = 10.0;
    double v_min_assumed = 9.0;
    double bar_delta_v_assumed = 0.0;
    double bar_delta_w_assumed = 0.0;
    double boundary_layer = 0.0;
    bool operator==(const AttackSection&) const = default;
};

struct NdobSection {
    bool enabled = true;
    double L_d = 2.65;
    std::string init = "zero_state";  // zero_state | zero_estimate
    std::string form = "tracking";    // tracking | as_printed
    bool operator==(const NdobSection&) const = default;
};

struct ScenarioFile {
    VehicleSection vehicle;
    RoadSection road;
    DisturbanceSection disturbance;
    ActuatorSection actuator;
    AttackSection attack;
    NdobSection ndob;
    SimConfig sim;

    bool operator==(const ScenarioFile&) const = default;
};

/// Parses and validates a scenario document. Keys left out take their
/// defaults; attack.nu_hat defaults to the vehicle's M R^2 / J,
/// attack.v_min_assumed to 0.3 v0 and the assumed disturbance bounds to the
/// declared ones. Throws ConfigError naming the key.
ScenarioFile parse_scenario(const std::string& text);
ScenarioFile load_scenario(const std::string& path);

/// Fully resolved document; parse_scenario(serialize_scenario(f)) == f.
std::string serialize_scenario(const ScenarioFile& file);

/// Throws ConfigError when a section is inconsistent.
void validate_scenario(const ScenarioFile& file);

FrictionModel make_road(const RoadSection& road);
FrictionModel make_mu_hat(const std::string& spec, const FrictionModel& road);
DisturbanceSpec make_disturbances(const DisturbanceSection& d);
Scenario build_scenario(const ScenarioFile& file);

/// Attacker-side gain bounds for a configured scenario.
struct GainBounds {
    double kstar_prime = 0.0;
    double kstar = 0.0;
    double mu_max = 0.0;
    double mu_hat_max = 0.0;
    double v_min = 0.0;
};

GainBounds gain_bounds(const ScenarioFile& file);

/// The five-attack comparison on one road preset: constant torque, Phi_p and
/// Phi_1 policies without the observer, then both with it. Adversary has
/// mu_hat = 0 and zero gains.
std::vector<std::pair<std::string, ScenarioFile>> five_attacks_suite(const std::string& road_preset);

}  // namespace lockup
