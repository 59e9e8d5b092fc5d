/**
 * @file attack.hpp
 * @brief Predefined-time brake attack controllers acting on the lockup error
 *        e_L = lambda - 1, their gain bounds, and the torque composition.
 */
#pragma once

#include "lockup/friction.hpp"
#include "lockup/traction.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <variant>

namespace lockup {

/// sign with sign(0) = 0.
template <typename Scalar>
Scalar sgn(Scalar x) {
    return Scalar((Scalar(0) < x) - (x < Scalar(0)));
}

/// exp(|x|^p) / p * |x|^(1-p) * sign(x), for 0 < p < 1.
template <typename Scalar>
Scalar phi_p_unchecked(Scalar x, Scalar p) {
    using std::abs;
    using std::exp;
    using std::pow;
    if (x == Scalar(0)) return Scalar(0);
    const Scalar ax = abs(x);
    return exp(pow(ax, p)) / p * pow(ax, Scalar(1) - p) * sgn(x);
}

/// exp(|x|) * sign(x)
template <typename Scalar>
Scalar phi_1(Scalar x) {
    using std::abs;
    using std::exp;
    if (x == Scalar(0)) return Scalar(0);
    return exp(abs(x)) * sgn(x);
}

/// Checked Phi_p; throws DomainError unless 0 < p < 1.
double phi_p(double x, double p);

/// Prop-1 style: -(1/T_c + k p) Phi_p(e_L)
double control_prop1(double e_l, double t_c, double p, double k);

/// Prop-2 style: -k_a sign(e_L) - Phi_p(e_L) / T_c. Requires 0 < T_c < 1.
/// With boundary_layer > 0 the sign term becomes e_L / boundary_layer inside
/// |e_L| < boundary_layer.
double control_prop2(double e_l, double t_c, double p, double k_a, double boundary_layer = 0.0);

/// Prop-3 style: -(1/T_c + k_a) Phi_1(e_L), any T_c > 0.
double control_prop3(double e_l, double t_c, double k_a);

/// (M g_a mu_max + dv_bar) / (M v_min)
double gain_bound_kstar_prime(const VehicleParams& params, double mu_max, double bar_delta_v,
                              double v_min);

/// kstar_prime + (g_a / v_min) (nu_hat mu_hat_max + nu mu_max + r dw_bar / (J g_a))
double gain_bound_kstar(const VehicleParams& params, double mu_max, double mu_hat_max, double nu,
                        double nu_hat, double bar_delta_v, double bar_delta_w, double v_min);

/// What the attacker believes about the plant.
struct AdversaryModel {
    double nu_hat = 15.0;
    FrictionModel mu_hat = FrictionModel::zero();
    double v_min_assumed = 9.0;        // m/s
    double bar_delta_v_assumed = 0.0;  // N
    double bar_delta_w_assumed = 0.0;  // N m

    void validate() const;
};

namespace policy {
struct Prop1 {
    double t_c = 0.95;
    double p = 0.15;
    double k = 0.0;
};
struct Prop2 {
    double t_c = 0.95;
    double p = 0.15;
    double k_a = 0.0;
    double boundary_layer = 0.0;
};
struct Prop3 {
    double t_c = 0.95;
    double k_a = 0.0;
};
struct ConstantTorque {
    double upsilon = 10.0;
};
}  // namespace policy

struct AttackPolicy {
    using Variant = std::variant<policy::Prop1, policy::Prop2, policy::Prop3, policy::ConstantTorque>;

    Variant variant = policy::Prop3{};
    AdversaryModel adversary;
    bool use_ndob = true;

    /// Throws ConfigError naming the offending attack.* key.
    void validate() const;

    /// Feedback term u(e_L) in 1/s; zero for the constant-torque baseline.
    double control(double e_l) const;
    bool is_constant() const { return std::holds_alternative<policy::ConstantTorque>(variant); }
    std::optional<double> settling_time() const;
    std::string name() const;
};

/// Commanded dimensionless torque (v / g_a)(u - d_hat) + nu_hat mu_hat(lambda).
/// Without an observer estimate the d_hat term is absent.
double attack_torque(double u, const TractionState& state, const AdversaryModel& adversary,
                     double g_alpha, std::optional<double> d_hat = std::nullopt,
                     double v_floor = 0.0);

}  // namespace lockup
