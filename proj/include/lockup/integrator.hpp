#pragma once

#include "lockup/errors.hpp"

#include <Eigen/Core>

#include <sstream>

namespace lockup {

namespace detail {

template <typename Derived>
void require_finite_stage(const Eigen::MatrixBase<Derived>& k, int stage, double t,
                          const Eigen::MatrixBase<Derived>& x) {
    if (k.allFinite()) return;
    Eigen::IOFormat fmt(Eigen::FullPrecision, Eigen::DontAlignCols, ", ", ", ", "", "", "[", "]");
    std::ostringstream os;
    os << "non-finite derivative at RK4 stage " << stage << ", t=" << t
       << ", state=" << x.transpose().format(fmt) << ", derivative=" << k.transpose().format(fmt);
    throw IntegrationError(os.str());
}

}  // namespace detail

/// Classical four-stage Runge-Kutta step of dx/dt = f(t, x).
/// Inputs the caller closes over (control, applied torque) stay fixed across
/// the stages. Throws IntegrationError with a state dump on a non-finite stage.
template <typename Vector, typename Fn>
Vector rk4_step(const Vector& x, double t, double dt, Fn&& f) {
    using Scalar = typename Vector::Scalar;
    const Scalar h = Scalar(dt);
    const Vector k1 = f(t, x);
    detail::require_finite_stage<Vector>(k1, 1, t, x);
    const Vector x2 = x + (h / 2) * k1;
    const Vector k2 = f(t + dt / 2, x2);
    detail::require_finite_stage<Vector>(k2, 2, t + dt / 2, x2);
    const Vector x3 = x + (h / 2) * k2;
    const Vector k3 = f(t + dt / 2, x3);
    detail::require_finite_stage<Vector>(k3, 3, t + dt / 2, x3);
    const Vector x4 = x + h * k3;
    const Vector k4 = f(t + dt, x4);
    detail::require_finite_stage<Vector>(k4, 4, t + dt, x4);
    return x + (h / 6) * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4);
}

}  // namespace lockup
