/**
 * @file traction.hpp
 * @brief Quarter-car longitudinal braking dynamics in (v, omega) and
 *        (v, lambda) coordinates, plus the lumped slip-error disturbance.
 */
#pragma once

#include "lockup/friction.hpp"

#include <Eigen/Core>

#include <cmath>
#include <functional>
#include <optional>

namespace lockup {

struct VehicleParams {
    double M = 250.0;    // kg
    double r = 0.3;      // m
    double J = 1.5;      // kg m^2
    double alpha = 0.0;  // rad
    double g = 9.81;     // m/s^2

    /// Validates and returns the parameters; throws DomainError.
    static VehicleParams make(double M, double r, double J, double alpha = 0.0, double g = 9.81);

    double g_alpha() const { return g * std::cos(alpha); }
    /// Vehicle-to-wheel inertia ratio M r^2 / J.
    double nu() const { return M * r * r / J; }
    /// Dimensionless torque per N m.
    double torque_scale() const { return r / (J * g_alpha()); }
};

/// One disturbance channel: a time-and-state signal with a declared uniform bound.
/// Every evaluation is checked against the bound.
class DisturbanceChannel {
public:
    using Signal = std::function<double(double t, double x)>;

    DisturbanceChannel() = default;
    DisturbanceChannel(Signal signal, double bound);

    static DisturbanceChannel zero();
    static DisturbanceChannel constant(double value, double bound);
    static DisturbanceChannel sinusoid(double amplitude, double frequency_hz, double bound,
                                       double phase = 0.0);

    /// Throws DomainError when the sampled value exceeds the declared bound.
    double operator()(double t, double x) const;
    double bound() const noexcept { return bound_; }
    bool is_zero() const noexcept { return !signal_; }

private:
    Signal signal_;
    double bound_ = 0.0;
};

struct DisturbanceSpec {
    DisturbanceChannel delta_v;  // force on the vehicle, N; argument is v
    DisturbanceChannel delta_w;  // torque on the wheel, N m; argument is omega
};

struct TractionState {
    double v = 0.0;
    double lambda = 0.0;

    /// Checks v > 0 and lambda in [0, 1].
    static TractionState make(double v, double lambda);

    double omega(double r) const { return v * (1.0 - lambda) / r; }
    double lockup_error() const { return lambda - 1.0; }
};

/// (v - r omega) / max(v, r omega). Throws DomainError for v <= 0 or omega < 0.
double slip_from_speeds(double v, double omega, double r);

/// Inverse of slip_from_speeds in the braking regime: returns (v, omega).
Eigen::Vector2d speeds_from_slip(const TractionState& state, double r);

/// (dv/dt, domega/dt) for applied brake torque torque_nm (N m).
Eigen::Vector2d rhs_v_omega(double t, double v, double omega, double torque_nm,
                            const VehicleParams& params, const FrictionModel& friction,
                            const DisturbanceSpec& dist);

/// (dv/dt, dlambda/dt) for the dimensionless applied torque upsilon_a.
/// Throws SpeedFloorError when v < v_floor.
Eigen::Vector2d rhs_v_lambda(double t, const TractionState& state, double upsilon_a,
                             const VehicleParams& params, const FrictionModel& friction,
                             const DisturbanceSpec& dist, double v_floor = 0.0);

struct LumpedDisturbance {
    double persistent = 0.0;  // Delta'_e, non-vanishing
    double vanishing = 0.0;   // Delta_e = (g_alpha / v) e_L (mu + Upsilon_dv)
};

/// The slip-error disturbance seen by an attacker with model (nu_hat, mu_hat).
/// Throws DomainError when v <= v_floor.
LumpedDisturbance lumped_disturbance(double t, const TractionState& state,
                                     const VehicleParams& params,
                                     const FrictionModel& friction_true,
                                     const FrictionModel& friction_hat, double nu_hat,
                                     const DisturbanceSpec& dist, double v_floor = 0.0);

}  // namespace lockup
