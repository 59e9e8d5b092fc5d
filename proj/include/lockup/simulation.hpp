/**
 * @file simulation.hpp
 * @brief Fixed-step closed-loop simulation of plant, brake actuator and
 *        disturbance observer under an attack policy.
 *
 * Each step: lockup error and control from the current state, observer
 * estimate, commanded torque, actuator update, then one RK4 step of the
 * plant and observer states with control and applied torque held.
 */
#pragma once

#include "lockup/actuator.hpp"
#include "lockup/attack.hpp"
#include "lockup/friction.hpp"
#include "lockup/ndob.hpp"
#include "lockup/traction.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lockup {

enum class Coordinates { VLambda, VOmega };

struct SimConfig {
    double dt = 1e-4;
    double t_max = 3.0;
    double v0 = 30.0;
    double lambda0 = 0.0;
    double lockup_threshold = 0.99;
    double v_floor = 0.5;
    Coordinates coordinates = Coordinates::VLambda;
    bool stop_on_lockup = true;
    int sustain_steps = 50;

    void validate() const;
    long long steps() const;

    bool operator==(const SimConfig&) const = default;
};

struct Scenario {
    VehicleParams vehicle;
    FrictionModel road = FrictionModel::burckhardt(presets::dry_asphalt);
    DisturbanceSpec disturbances;
    ActuatorConfig actuator;
    AttackPolicy policy;
    NdobConfig ndob;
    SimConfig sim;
};

/// One row per integration step: the state at the start of the step and the
/// commands held across it.
struct Series {
    std::vector<double> t, v, omega, lambda, e_l, mu, torque_cmd, torque_applied, d_hat, delta_e;
    std::vector<double> u;                // control term, not exported
    std::vector<std::uint8_t> clamped;    // boundary projection applied after this step

    std::size_t size() const { return t.size(); }
    bool empty() const { return t.empty(); }
    void reserve(std::size_t n);
};

struct Metrics {
    std::optional<double> time_to_lockup;
    bool success = false;
    double final_v = 0.0;
    double max_lambda = 0.0;
    double peak_torque_cmd = 0.0;
    std::optional<double> settling_margin;
};

enum class Termination { TimeLimit, SpeedFloor, SustainedLockup, Failure };

std::string to_string(Termination t);

struct ScenarioResult {
    Series series;
    Metrics metrics;
    Termination termination = Termination::TimeLimit;
    std::optional<std::string> failure;
    std::size_t clamp_events = 0;
    std::optional<std::string> actuator_warning;
    double lockup_threshold = 0.99;
    std::optional<double> settling_time;
};

/// Throws std::invalid_argument on an empty series. time_to_lockup is the
/// first threshold crossing, linearly interpolated between rows.
Metrics compute_metrics(const Series& series, double lockup_threshold = 0.99,
                        std::optional<double> settling_time = std::nullopt);

/// Throws ConfigError for invalid sub-configurations; integration problems
/// end the run early and are reported in ScenarioResult::failure.
ScenarioResult run_scenario(const Scenario& scenario);

}  // namespace lockup
