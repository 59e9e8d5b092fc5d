#include "lockup/actuator.hpp"

#include "lockup/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lockup {

ActuatorModel::ActuatorModel(const ActuatorConfig& config, double dt, double initial)
    : config_(config), dt_(dt), output_(initial) {
    if (!(dt > 0.0 && std::isfinite(dt))) throw DomainError("actuator dt must be > 0");
    if (!(config.tau_f >= 0.0 && std::isfinite(config.tau_f)))
        throw DomainError("actuator tau_f must be >= 0");
    if (!(config.delta_f >= 0.0 && std::isfinite(config.delta_f)))
        throw DomainError("actuator delta_f must be >= 0");
    if (config.delta_f > 0.0 && dt > config.delta_f)
        throw DomainError("actuator dt must not exceed the deadtime");
    if (config.upsilon_max && !(*config.upsilon_max >= 0.0))
        throw DomainError("actuator upsilon_max must be >= 0");
    if (!std::isfinite(initial)) throw DomainError("actuator initial output not finite");

    const double slots = config.delta_f / dt;
    const auto n = static_cast<std::size_t>(std::llround(slots));
    if (std::abs(config.delta_f - static_cast<double>(n) * dt) > dt / 10.0) {
        std::ostringstream os;
        os << "deadtime " << config.delta_f << " s rounded to " << n << " steps of " << dt << " s";
        warning_ = os.str();
    }
    delay_.assign(n, 0.0);
    retention_ = lag_retention(dt, config.tau_f);
}

double ActuatorModel::step(double command) {
    if (!std::isfinite(command)) throw DomainError("actuator command not finite");
    if (config_.upsilon_max) command = std::clamp(command, 0.0, *config_.upsilon_max);

    double delayed = command;
    if (!delay_.empty()) {
        delayed = delay_[head_];
        delay_[head_] = command;
        head_ = (head_ + 1) % delay_.size();
    }
    if (retention_ == 0.0) {
        output_ = delayed;
    } else {
        output_ = retention_ * output_ + (1.0 - retention_) * delayed;
    }
    return output_;
}

double actuator_step(ActuatorModel& model, double command, double dt) {
    if (!(dt > 0.0)) throw DomainError("actuator dt must be > 0");
    if (dt != model.dt()) throw DomainError("actuator stepped with a period it was not built for");
    return model.step(command);
}

}  // namespace lockup
