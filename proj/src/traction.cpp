#include "lockup/traction.hpp"

#include "lockup/errors.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

namespace lockup {

VehicleParams VehicleParams::make(double M, double r, double J, double alpha, double g) {
    if (!(M > 0.0 && std::isfinite(M))) throw DomainError("vehicle mass M must be > 0");
    if (!(r > 0.0 && std::isfinite(r))) throw DomainError("wheel radius r must be > 0");
    if (!(J > 0.0 && std::isfinite(J))) throw DomainError("wheel inertia J must be > 0");
    if (!(g > 0.0 && std::isfinite(g))) throw DomainError("gravity g must be > 0");
    if (!(std::abs(alpha) < std::numbers::pi / 2)) throw DomainError("|alpha| must be < pi/2");
    return VehicleParams{M, r, J, alpha, g};
}

DisturbanceChannel::DisturbanceChannel(Signal signal, double bound)
    : signal_(std::move(signal)), bound_(bound) {
    if (!(bound >= 0.0 && std::isfinite(bound)))
        throw DomainError("disturbance bound must be finite and >= 0");
}

DisturbanceChannel DisturbanceChannel::zero() { return {}; }

DisturbanceChannel DisturbanceChannel::constant(double value, double bound) {
    return DisturbanceChannel([value](double, double) { return value; }, bound);
}

DisturbanceChannel DisturbanceChannel::sinusoid(double amplitude, double frequency_hz,
                                                double bound, double phase) {
    const double w = 2.0 * std::numbers::pi * frequency_hz;
    return DisturbanceChannel(
        [amplitude, w, phase](double t, double) { return amplitude * std::sin(w * t + phase); },
        bound);
}

double DisturbanceChannel::operator()(double t, double x) const {
    if (!signal_) return 0.0;
    const double value = signal_(t, x);
    if (!(std::abs(value) <= bound_)) {
        std::ostringstream os;
        os << "disturbance " << value << " at t=" << t << " exceeds declared bound " << bound_;
        throw DomainError(os.str());
    }
    return value;
}

TractionState TractionState::make(double v, double lambda) {
    if (!(v > 0.0 && std::isfinite(v))) throw DomainError("traction state needs v > 0");
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("traction state needs lambda in [0, 1]");
    return {v, lambda};
}

double slip_from_speeds(double v, double omega, double r) {
    if (!(v > 0.0)) throw DomainError("slip undefined for v <= 0");
    if (!(omega >= 0.0)) throw DomainError("slip needs omega >= 0");
    const double rw = r * omega;
    return (v - rw) / std::max(v, rw);
}

Eigen::Vector2d speeds_from_slip(const TractionState& state, double r) {
    return {state.v, state.omega(r)};
}

Eigen::Vector2d rhs_v_omega(double t, double v, double omega, double torque_nm,
                            const VehicleParams& params, const FrictionModel& friction,
                            const DisturbanceSpec& dist) {
    if (!(v > 0.0) || !(omega >= 0.0) || params.r * omega > v)
        throw DomainError("(v, omega) outside the braking domain");
    const double mu = friction(slip_from_speeds(v, omega, params.r));
    const double ga = params.g_alpha();
    const double dv = dist.delta_v(t, v);
    const double dw = dist.delta_w(t, omega);
    return {-ga * mu - dv / params.M,
            params.M * ga * params.r / params.J * mu - torque_nm / params.J - dw / params.J};
}

Eigen::Vector2d rhs_v_lambda(double t, const TractionState& state, double upsilon_a,
                             const VehicleParams& params, const FrictionModel& friction,
                             const DisturbanceSpec& dist, double v_floor) {
    const double v = state.v;
    const double lambda = state.lambda;
    if (!(v > 0.0) || v < v_floor) throw SpeedFloorError("speed below floor in slip dynamics");
    if (!std::isfinite(upsilon_a)) throw DomainError("applied torque not finite");
    const double mu = friction(lambda);
    const double ga = params.g_alpha();
    const double up_dv = dist.delta_v(t, v) / (params.M * ga);
    const double up_dw = params.torque_scale() * dist.delta_w(t, state.omega(params.r));
    const double dv = -ga * mu - up_dv * ga;
    const double dl =
        ga / v * ((lambda - 1.0 - params.nu()) * mu + upsilon_a + up_dw + (lambda - 1.0) * up_dv);
    return {dv, dl};
}

LumpedDisturbance lumped_disturbance(double t, const TractionState& state,
                                     const VehicleParams& params,
                                     const FrictionModel& friction_true,
                                     const FrictionModel& friction_hat, double nu_hat,
                                     const DisturbanceSpec& dist, double v_floor) {
    const double v = state.v;
    if (!(v > v_floor) || !(v > 0.0)) throw DomainError("lumped disturbance needs v > v_floor");
    const double ga = params.g_alpha();
    const double mu = friction_true(state.lambda);
    const double mu_hat = friction_hat(state.lambda);
    const double e_l = state.lockup_error();
    const double up_dv = dist.delta_v(t, v) / (params.M * ga);
    const double up_dw = params.torque_scale() * dist.delta_w(t, state.omega(params.r));
    const double k = ga / v;
    LumpedDisturbance out;
    out.vanishing = k * e_l * (mu + up_dv);
    out.persistent = out.vanishing + k * (nu_hat * mu_hat - params.nu() * mu) + k * up_dw;
    return out;
}

}  // namespace lockup
