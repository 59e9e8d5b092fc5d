#include "lockup/simulation.hpp"

#include "lockup/errors.hpp"
#include "lockup/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lockup {

void SimConfig::validate() const {
    auto require = [](bool ok, const char* key, const char* msg) {
        if (!ok) throw ConfigError(key, msg);
    };
    require(dt > 0.0 && std::isfinite(dt), "sim.dt", "must be > 0");
    require(t_max > dt && std::isfinite(t_max), "sim.t_max", "must exceed sim.dt");
    require(v_floor >= 0.0, "sim.v_floor", "must be >= 0");
    require(v0 > v_floor && std::isfinite(v0), "sim.v0", "must exceed sim.v_floor");
    require(lambda0 >= 0.0, "sim.lambda0", "must be >= 0");
    require(lambda0 < lockup_threshold, "sim.lambda0", "must be below sim.lockup_threshold");
    require(lockup_threshold <= 1.0, "sim.lockup_threshold", "must be <= 1");
    require(sustain_steps >= 1, "sim.sustain_steps", "must be >= 1");
}

long long SimConfig::steps() const { return std::llround(t_max / dt); }

void Series::reserve(std::size_t n) {
    for (auto* c : {&t, &v, &omega, &lambda, &e_l, &mu, &torque_cmd, &torque_applied, &d_hat,
                    &delta_e, &u})
        c->reserve(n);
    clamped.reserve(n);
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::TimeLimit: return "time_limit";
        case Termination::SpeedFloor: return "speed_floor";
        case Termination::SustainedLockup: return "sustained_lockup";
        case Termination::Failure: return "failure";
    }
    return "unknown";
}

Metrics compute_metrics(const Series& s, double lockup_threshold,
                        std::optional<double> settling_time) {
    if (s.empty()) throw std::invalid_argument("compute_metrics: empty series");
    Metrics m;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.lambda[i] >= lockup_threshold) {
            if (i == 0) {
                m.time_to_lockup = s.t[0];
            } else {
                const double w = (lockup_threshold - s.lambda[i - 1]) / (s.lambda[i] - s.lambda[i - 1]);
                m.time_to_lockup = s.t[i - 1] + w * (s.t[i] - s.t[i - 1]);
            }
            break;
        }
    }
    m.success = m.time_to_lockup.has_value();
    m.final_v = s.v.back();
    m.max_lambda = *std::max_element(s.lambda.begin(), s.lambda.end());
    for (double c : s.torque_cmd) m.peak_torque_cmd = std::max(m.peak_torque_cmd, std::abs(c));
    if (settling_time && m.time_to_lockup) m.settling_margin = *settling_time - *m.time_to_lockup;
    return m;
}

namespace {

using StateVector = Eigen::Vector3d;  // (v, lambda or omega, observer z)

struct Plant {
    const Scenario& sc;
    double g_alpha;

    double slip(const StateVector& x) const {
        if (sc.sim.coordinates == Coordinates::VLambda) return std::clamp(x(1), 0.0, 1.0);
        const double omega = std::clamp(x(1), 0.0, x(0) / sc.vehicle.r);
        return std::clamp(slip_from_speeds(x(0), omega, sc.vehicle.r), 0.0, 1.0);
    }

    double omega(const StateVector& x) const {
        if (sc.sim.coordinates == Coordinates::VOmega)
            return std::clamp(x(1), 0.0, x(0) / sc.vehicle.r);
        return x(0) * (1.0 - slip(x)) / sc.vehicle.r;
    }

    // Plant with one-sided dynamics on the slip boundaries, plus the observer.
    StateVector derivative(double t, const StateVector& x, double u, double applied) const {
        const double v = x(0);
        if (!(v > 0.0)) throw SpeedFloorError("stage speed reached zero");
        StateVector dx = StateVector::Zero();
        double lambda = 0.0;
        if (sc.sim.coordinates == Coordinates::VLambda) {
            lambda = std::clamp(x(1), 0.0, 1.0);
            const Eigen::Vector2d f =
                rhs_v_lambda(t, {v, lambda}, applied, sc.vehicle, sc.road, sc.disturbances);
            double dl = f(1);
            if ((lambda >= 1.0 && dl > 0.0) || (lambda <= 0.0 && dl < 0.0)) dl = 0.0;
            dx << f(0), dl, 0.0;
        } else {
            const double r = sc.vehicle.r;
            const double w = std::clamp(x(1), 0.0, v / r);
            lambda = slip_from_speeds(v, w, r);
            const double torque_nm = applied / sc.vehicle.torque_scale();
            const Eigen::Vector2d f = rhs_v_omega(t, v, w, torque_nm, sc.vehicle, sc.road, sc.disturbances);
            double dw = f(1);
            if (w <= 0.0 && dw < 0.0) dw = 0.0;
            if (r * w >= v && r * dw > f(0)) dw = f(0) / r;
            dx << f(0), dw, 0.0;
        }
        if (sc.policy.use_ndob) {
            const auto& adv = sc.policy.adversary;
            NdobInputs in{lambda - 1.0, u, v, g_alpha, adv.mu_hat(lambda), adv.nu_hat, 0.0};
            dx(2) = ndob_rate(x(2), sc.ndob.gain, in, sc.ndob.form);
        }
        return dx;
    }

    // Projects back onto the braking domain; returns true if anything moved.
    bool project(StateVector& x) const {
        const double lo = 0.0;
        const double hi = sc.sim.coordinates == Coordinates::VLambda ? 1.0 : x(0) / sc.vehicle.r;
        const double before = x(1);
        x(1) = std::clamp(x(1), lo, hi);
        return x(1) != before;
    }
};

}  // namespace

ScenarioResult run_scenario(const Scenario& sc) {
    sc.sim.validate();
    sc.policy.validate();
    if (sc.policy.use_ndob) sc.ndob.validate();

    const SimConfig& cfg = sc.sim;
    const Plant plant{sc, sc.vehicle.g_alpha()};
    ActuatorModel actuator(sc.actuator, cfg.dt);

    ScenarioResult result;
    result.actuator_warning = actuator.warning();
    result.lockup_threshold = cfg.lockup_threshold;
    result.settling_time = sc.policy.settling_time();

    StateVector x;
    x(0) = cfg.v0;
    if (cfg.coordinates == Coordinates::VLambda) {
        x(1) = cfg.lambda0;
    } else {
        x(1) = cfg.v0 * (1.0 - cfg.lambda0) / sc.vehicle.r;
    }
    x(2) = sc.policy.use_ndob ? NdobState::make(sc.ndob.gain, cfg.lambda0 - 1.0, sc.ndob.init).z : 0.0;

    const long long n_steps = cfg.steps();
    Series& s = result.series;
    s.reserve(static_cast<std::size_t>(n_steps));
    int locked_run = 0;

    for (long long n = 0; n < n_steps; ++n) {
        const double t = static_cast<double>(n) * cfg.dt;
        try {
            const TractionState state{x(0), plant.slip(x)};
            const double e_l = state.lockup_error();
            const double u = sc.policy.control(e_l);
            std::optional<double> d_hat;
            if (sc.policy.use_ndob) d_hat = x(2) + sc.ndob.gain * e_l;

            double cmd = 0.0;
            if (const auto* c = std::get_if<policy::ConstantTorque>(&sc.policy.variant)) {
                cmd = c->upsilon;
            } else {
                cmd = attack_torque(u, state, sc.policy.adversary, plant.g_alpha, d_hat);
            }
            const double applied = actuator.step(cmd);

            const auto lumped = lumped_disturbance(t, state, sc.vehicle, sc.road,
                                                   sc.policy.adversary.mu_hat,
                                                   sc.policy.adversary.nu_hat, sc.disturbances);
            s.t.push_back(t);
            s.v.push_back(state.v);
            s.omega.push_back(plant.omega(x));
            s.lambda.push_back(state.lambda);
            s.e_l.push_back(e_l);
            s.mu.push_back(sc.road(state.lambda));
            s.torque_cmd.push_back(cmd);
            s.torque_applied.push_back(applied);
            s.d_hat.push_back(d_hat.value_or(0.0));
            s.delta_e.push_back(lumped.persistent);
            s.u.push_back(u);

            x = rk4_step(x, t, cfg.dt, [&](double ts, const StateVector& xs) {
                return plant.derivative(ts, xs, u, applied);
            });
            const bool clamped = plant.project(x);
            s.clamped.push_back(clamped ? 1 : 0);
            if (clamped) ++result.clamp_events;
        } catch (const SpeedFloorError&) {
            if (s.clamped.size() < s.t.size()) s.clamped.push_back(0);
            result.termination = Termination::SpeedFloor;
            break;
        } catch (const IntegrationError& e) {
            if (s.clamped.size() < s.t.size()) s.clamped.push_back(0);
            result.termination = Termination::Failure;
            result.failure = e.what();
            break;
        } catch (const DomainError& e) {
            if (s.clamped.size() < s.t.size()) s.clamped.push_back(0);
            result.termination = Termination::Failure;
            result.failure = e.what();
            break;
        }

        locked_run = s.lambda.back() >= cfg.lockup_threshold ? locked_run + 1 : 0;
        if (cfg.stop_on_lockup && locked_run >= cfg.sustain_steps) {
            result.termination = Termination::SustainedLockup;
            break;
        }
        if (x(0) <= cfg.v_floor) {
            result.termination = Termination::SpeedFloor;
            break;
        }
    }

    if (!s.empty()) result.metrics = compute_metrics(s, cfg.lockup_threshold, result.settling_time);
    return result;
}

}  // namespace lockup
