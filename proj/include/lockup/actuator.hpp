/**
 * @file actuator.hpp
 * @brief Frictional brake response: first-order lag behind a pure deadtime.
 *
 *   tau_f d(Upsilon_a)/dt = -Upsilon_a + Upsilon_cmd(t - delta_f)
 *
 * The command is zero-order held per step, so the exponential update below
 * is exact on the sampling grid.
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace lockup {

/// e^{-dt/tau} weight of the previous output; 0 for an instantaneous lag.
template <typename Scalar>
Scalar lag_retention(Scalar dt, Scalar tau) {
    using std::exp;
    return tau > Scalar(0) ? exp(-dt / tau) : Scalar(0);
}

struct ActuatorConfig {
    double tau_f = 0.016;    // s
    double delta_f = 0.015;  // s
    /// Optional saturation of the command to [0, upsilon_max].
    std::optional<double> upsilon_max;

    static ActuatorConfig ideal() { return {0.0, 0.0, std::nullopt}; }
};

class ActuatorModel {
public:
    /// dt is the fixed update period. Throws DomainError on negative or
    /// non-finite times, or dt > delta_f when delta_f > 0.
    ActuatorModel(const ActuatorConfig& config, double dt, double initial = 0.0);

    /// Pushes the command, pops the delayed one and advances the lag by one period.
    double step(double command);

    double output() const noexcept { return output_; }
    std::size_t delay_steps() const noexcept { return delay_.size(); }
    double dt() const noexcept { return dt_; }
    const ActuatorConfig& config() const noexcept { return config_; }

    /// Set when the deadtime is not a multiple of dt to within dt/10.
    const std::optional<std::string>& warning() const noexcept { return warning_; }

private:
    ActuatorConfig config_;
    double dt_;
    double retention_;
    double output_;
    std::vector<double> delay_;  // ring buffer
    std::size_t head_ = 0;
    std::optional<std::string> warning_;
};

/// Free-function form: step `model` with `command`; dt must match the model's period.
double actuator_step(ActuatorModel& model, double command, double dt);

}  // namespace lockup
