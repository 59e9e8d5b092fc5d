#include "lockup/attack.hpp"

#include "lockup/errors.hpp"

#include <sstream>

namespace lockup {

namespace {

void check_exponent(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("Phi_p exponent must satisfy 0 < p < 1");
}

void require(bool ok, const char* key, const char* message) {
    if (!ok) throw ConfigError(key, message);
}

}  // namespace

double phi_p(double x, double p) {
    check_exponent(p);
    return phi_p_unchecked(x, p);
}

double control_prop1(double e_l, double t_c, double p, double k) {
    return -(1.0 / t_c + k * p) * phi_p(e_l, p);
}

double control_prop2(double e_l, double t_c, double p, double k_a, double boundary_layer) {
    if (!(t_c > 0.0 && t_c < 1.0))
        throw ConfigError("attack.T_c", "the sign-augmented policy requires 0 < T_c < 1");
    double s = sgn(e_l);
    if (boundary_layer > 0.0 && std::abs(e_l) < boundary_layer) s = e_l / boundary_layer;
    return -k_a * s - phi_p(e_l, p) / t_c;
}

double control_prop3(double e_l, double t_c, double k_a) {
    return -(1.0 / t_c + k_a) * phi_1(e_l);
}

double gain_bound_kstar_prime(const VehicleParams& params, double mu_max, double bar_delta_v,
                              double v_min) {
    if (!(v_min > 0.0)) throw DomainError("gain bound needs v_min > 0");
    return (params.M * params.g_alpha() * mu_max + bar_delta_v) / (params.M * v_min);
}

double gain_bound_kstar(const VehicleParams& params, double mu_max, double mu_hat_max, double nu,
                        double nu_hat, double bar_delta_v, double bar_delta_w, double v_min) {
    const double ga = params.g_alpha();
    return gain_bound_kstar_prime(params, mu_max, bar_delta_v, v_min) +
           ga / v_min * (nu_hat * mu_hat_max + nu * mu_max + params.r * bar_delta_w / (params.J * ga));
}

void AdversaryModel::validate() const {
    require(nu_hat >= 0.0 && std::isfinite(nu_hat), "attack.nu_hat", "must be >= 0");
    require(v_min_assumed > 0.0 && std::isfinite(v_min_assumed), "attack.v_min_assumed",
            "must be > 0");
    require(bar_delta_v_assumed >= 0.0, "attack.bar_delta_v_assumed", "must be >= 0");
    require(bar_delta_w_assumed >= 0.0, "attack.bar_delta_w_assumed", "must be >= 0");
}

void AttackPolicy::validate() const {
    adversary.validate();
    std::visit(
        [this](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, policy::ConstantTorque>) {
                require(std::isfinite(v.upsilon), "attack.upsilon_const", "must be finite");
                require(!use_ndob, "ndob.enabled",
                        "the constant-torque baseline has no observer-compensated form");
            } else {
                require(v.t_c > 0.0 && std::isfinite(v.t_c), "attack.T_c", "must be > 0");
                if constexpr (std::is_same_v<T, policy::Prop1>) {
                    require(v.p > 0.0 && v.p < 1.0, "attack.p", "must satisfy 0 < p < 1");
                    require(v.k >= 0.0 && std::isfinite(v.k), "attack.k", "must be >= 0");
                } else if constexpr (std::is_same_v<T, policy::Prop2>) {
                    require(v.t_c < 1.0, "attack.T_c",
                            "the sign-augmented (prop2) policy requires 0 < T_c < 1");
                    require(v.p > 0.0 && v.p < 1.0, "attack.p", "must satisfy 0 < p < 1");
                    require(v.k_a >= 0.0 && std::isfinite(v.k_a), "attack.k_a", "must be >= 0");
                    require(v.boundary_layer >= 0.0, "attack.boundary_layer", "must be >= 0");
                } else {
                    require(v.k_a >= 0.0 && std::isfinite(v.k_a), "attack.k_a", "must be >= 0");
                }
            }
        },
        variant);
}

double AttackPolicy::control(double e_l) const {
    return std::visit(
        [e_l](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, policy::Prop1>) {
                return control_prop1(e_l, v.t_c, v.p, v.k);
            } else if constexpr (std::is_same_v<T, policy::Prop2>) {
                return control_prop2(e_l, v.t_c, v.p, v.k_a, v.boundary_layer);
            } else if constexpr (std::is_same_v<T, policy::Prop3>) {
                return control_prop3(e_l, v.t_c, v.k_a);
            } else {
                return 0.0;
            }
        },
        variant);
}

std::optional<double> AttackPolicy::settling_time() const {
    return std::visit(
        [](const auto& v) -> std::optional<double> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, policy::ConstantTorque>) {
                return std::nullopt;
            } else {
                return v.t_c;
            }
        },
        variant);
}

std::string AttackPolicy::name() const {
    std::ostringstream os;
    std::visit(
        [&os](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, policy::Prop1>) {
                os << "prop1";
            } else if constexpr (std::is_same_v<T, policy::Prop2>) {
                os << "prop2";
            } else if constexpr (std::is_same_v<T, policy::Prop3>) {
                os << "prop3";
            } else {
                os << "constant";
            }
        },
        variant);
    if (use_ndob) os << "+ndob";
    return os.str();
}

double attack_torque(double u, const TractionState& state, const AdversaryModel& adversary,
                     double g_alpha, std::optional<double> d_hat, double v_floor) {
    if (!std::isfinite(u) || !std::isfinite(state.v) || (d_hat && !std::isfinite(*d_hat)))
        throw DomainError("attack torque inputs not finite");
    if (!(state.v > v_floor) || !(state.v > 0.0))
        throw SpeedFloorError("attack torque needs v above the speed floor");
    const double feedback = d_hat ? u - *d_hat : u;
    return state.v / g_alpha * feedback + adversary.nu_hat * adversary.mu_hat(state.lambda);
}

}  // namespace lockup
