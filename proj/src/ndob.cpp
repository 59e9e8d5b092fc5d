#include "lockup/ndob.hpp"

#include "lockup/errors.hpp"
#include "lockup/integrator.hpp"

#include <cmath>

namespace lockup {

void NdobConfig::validate() const {
    if (!(gain > 0.0 && std::isfinite(gain))) throw ConfigError("ndob.L_d", "must be > 0");
}

NdobState NdobState::make(double gain, double e_l0, NdobInit init) {
    if (!(gain > 0.0)) throw DomainError("observer gain must be > 0");
    NdobState s;
    s.gain = gain;
    s.z = init == NdobInit::ZeroEstimate ? -gain * e_l0 : 0.0;
    s.refresh(e_l0);
    return s;
}

void NdobState::refresh(double e_l) {
    p = gain * e_l;
    d_hat = z + p;
}

double ndob_rate(double z, double gain, const NdobInputs& in, NdobForm form) {
    if (!(gain > 0.0)) throw DomainError("observer gain must be > 0");
    if (!(in.v > in.v_floor) || !(in.v > 0.0))
        throw SpeedFloorError("observer needs v above the speed floor");
    const double p = gain * in.e_l;
    const double d_hat = z + p;
    const double k = in.g_alpha / in.v;
    if (form == NdobForm::AsPrinted) {
        return -gain * z - gain * (in.u + k * (-d_hat + in.nu_hat * in.mu_hat + p));
    }
    return -gain * z - gain * (p + in.u - d_hat + k * in.e_l * in.mu_hat);
}

double ndob_derivative(const NdobState& obs, const NdobInputs& in, NdobForm form) {
    return ndob_rate(obs.z, obs.gain, in, form);
}

NdobState ndob_step(NdobState obs, const NdobInputs& in, double dt, std::optional<double> e_l_next,
                    NdobForm form) {
    if (!(dt > 0.0)) throw DomainError("observer dt must be > 0");
    Eigen::Matrix<double, 1, 1> z;
    z << obs.z;
    z = rk4_step(
        z, 0.0, dt,
        [&](double, const Eigen::Matrix<double, 1, 1>& x) {
            Eigen::Matrix<double, 1, 1> dz;
            dz << ndob_rate(x(0), obs.gain, in, form);
            return dz;
        });
    obs.z = z(0);
    obs.refresh(e_l_next.value_or(in.e_l));
    return obs;
}

}  // namespace lockup
