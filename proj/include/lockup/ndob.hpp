/**
 * @file ndob.hpp
 * @brief Nonlinear disturbance observer on the slip-error dynamics.
 *
 * The observer estimates what the attacker's own model fails to explain in
 *   de_L/dt = u - d_hat + (g_a / v) e_L mu_hat(lambda) + d,
 * using the auxiliary variable p_a = L_d e_L and output d_hat = z_a + p_a.
 * Only attacker-side quantities enter: the true plant parameters are not
 * part of the input type.
 */
#pragma once

#include <optional>

namespace lockup {

enum class NdobForm {
    /// d_hat' = L_d (d - d_hat) for the error dynamics above.
    Tracking,
    /// Variant with the (g_a / v) factor applied to (-d_hat + nu_hat mu_hat + p_a).
    /// Does not converge to a constant disturbance under the torque composition used here.
    AsPrinted,
};

enum class NdobInit {
    /// z_a(0) = 0, so d_hat(0) = L_d e_L(0).
    ZeroState,
    /// z_a(0) = -L_d e_L(0), so d_hat(0) = 0.
    ZeroEstimate,
};

struct NdobConfig {
    double gain = 2.65;  // L_d, 1/s
    NdobInit init = NdobInit::ZeroState;
    NdobForm form = NdobForm::Tracking;

    void validate() const;
};

/// Attacker-side signals the observer reads at one instant.
struct NdobInputs {
    double e_l = 0.0;
    double u = 0.0;
    double v = 0.0;
    double g_alpha = 9.81;
    double mu_hat = 0.0;  // mu_hat evaluated at the current slip
    double nu_hat = 0.0;
    double v_floor = 0.0;
};

struct NdobState {
    double z = 0.0;
    double gain = 2.65;
    double p = 0.0;
    double d_hat = 0.0;

    static NdobState make(double gain, double e_l0, NdobInit init = NdobInit::ZeroState);
    /// Recomputes p and d_hat from z for the given lockup error.
    void refresh(double e_l);
};

/// dz_a/dt for observer state z at the given inputs. Throws DomainError when
/// v <= v_floor or gain <= 0.
double ndob_rate(double z, double gain, const NdobInputs& in, NdobForm form = NdobForm::Tracking);

/// dz_a/dt with p_a and d_hat recomputed from the current e_L.
double ndob_derivative(const NdobState& obs, const NdobInputs& in,
                       NdobForm form = NdobForm::Tracking);

/// Advances z by one RK4 step with the inputs held, then refreshes p_a and
/// d_hat from e_l_next (defaults to the held e_L).
NdobState ndob_step(NdobState obs, const NdobInputs& in, double dt,
                    std::optional<double> e_l_next = std::nullopt,
                    NdobForm form = NdobForm::Tracking);

}  // namespace lockup
