#include <doctest.h>

#include "lockup/errors.hpp"
#include "lockup/traction.hpp"

#include <cmath>
#include <random>

using namespace lockup;

namespace {

const FrictionModel& dry() {
    static const FrictionModel m = FrictionModel::burckhardt(presets::dry_asphalt);
    return m;
}

}  // namespace

TEST_CASE("vehicle defaults give an inertia ratio of exactly 15") {
    const VehicleParams p;
    CHECK(p.nu() == 15.0);
    CHECK(VehicleParams::make(250.0, 0.3, 1.5).nu() == 15.0);
    CHECK(p.g_alpha() == 9.81);
    CHECK_THROWS_AS(VehicleParams::make(0.0, 0.3, 1.5), DomainError);
    CHECK_THROWS_AS(VehicleParams::make(250.0, -0.3, 1.5), DomainError);
    CHECK_THROWS_AS(VehicleParams::make(250.0, 0.3, 0.0), DomainError);
    CHECK_THROWS_AS(VehicleParams::make(250.0, 0.3, 1.5, 1.6), DomainError);
    CHECK_THROWS_AS(VehicleParams::make(250.0, 0.3, 1.5, 0.0, 0.0), DomainError);
}

TEST_CASE("slip from wheel and vehicle speeds") {
    CHECK(slip_from_speeds(30.0, 100.0, 0.3) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(slip_from_speeds(30.0, 0.0, 0.3) == 1.0);
    CHECK(slip_from_speeds(20.0, 50.0, 0.3) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK_THROWS_AS(slip_from_speeds(0.0, 10.0, 0.3), DomainError);
    CHECK_THROWS_AS(slip_from_speeds(-1.0, 10.0, 0.3), DomainError);
    CHECK_THROWS_AS(slip_from_speeds(10.0, -1.0, 0.3), DomainError);
}

TEST_CASE("speeds from slip") {
    CHECK(speeds_from_slip({30.0, 0.0}, 0.3)(1) == doctest::Approx(100.0).epsilon(1e-14));
    CHECK(speeds_from_slip({30.0, 1.0}, 0.3)(1) == 0.0);
    CHECK(speeds_from_slip({20.0, 0.25}, 0.3)(1) == doctest::Approx(50.0).epsilon(1e-14));
    CHECK(speeds_from_slip({20.0, 0.25}, 0.3)(0) == 20.0);
}

TEST_CASE("property: slip and speed transforms round-trip") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> v(0.5, 60.0), l(0.0, 1.0), r(0.1, 0.5);
    for (int i = 0; i < 10000; ++i) {
        const TractionState s{v(rng), l(rng)};
        const double radius = r(rng);
        const Eigen::Vector2d vw = speeds_from_slip(s, radius);
        CHECK(vw(1) >= 0.0);
        CHECK(radius * vw(1) <= vw(0) * (1 + 1e-15));
        const double back = slip_from_speeds(vw(0), vw(1), radius);
        CHECK(std::abs(back - s.lambda) <= 1e-12 * std::max(1.0, s.lambda));
    }
}

TEST_CASE("traction state validation") {
    CHECK_NOTHROW(TractionState::make(30.0, 0.5));
    CHECK_THROWS_AS(TractionState::make(0.0, 0.5), DomainError);
    CHECK_THROWS_AS(TractionState::make(30.0, 1.5), DomainError);
    CHECK_THROWS_AS(TractionState::make(30.0, -0.1), DomainError);
    CHECK(TractionState{30.0, 0.25}.lockup_error() == -0.75);
    CHECK(TractionState{30.0, 0.25}.omega(0.3) == doctest::Approx(75.0));
}

TEST_CASE("speed and wheel-rate dynamics") {
    const VehicleParams p;
    const DisturbanceSpec none;

    const Eigen::Vector2d free = rhs_v_omega(0.0, 30.0, 100.0, 0.0, p, dry(), none);
    CHECK(free(0) == doctest::Approx(0.0));
    CHECK(free(1) == doctest::Approx(0.0));

    const Eigen::Vector2d braked = rhs_v_omega(0.0, 30.0, 100.0, 150.0, p, dry(), none);
    CHECK(braked(1) == doctest::Approx(-100.0).epsilon(1e-12));

    const double mu1 = 0.75999999995119263645;
    const Eigen::Vector2d locked = rhs_v_omega(0.0, 30.0, 0.0, 0.0, p, dry(), none);
    CHECK(locked(0) == doctest::Approx(-9.81 * mu1).epsilon(1e-13));
    CHECK(locked(1) == doctest::Approx(250.0 * 9.81 * 0.3 / 1.5 * mu1).epsilon(1e-13));

    CHECK_THROWS_AS(rhs_v_omega(0.0, 30.0, 200.0, 0.0, p, dry(), none), DomainError);
    CHECK_THROWS_AS(rhs_v_omega(0.0, 0.0, 0.0, 0.0, p, dry(), none), DomainError);
}

TEST_CASE("speed and slip dynamics") {
    const VehicleParams p;
    const DisturbanceSpec none;
    const Eigen::Vector2d rest = rhs_v_lambda(0.0, {30.0, 0.0}, 0.0, p, dry(), none);
    CHECK(rest(0) == 0.0);
    CHECK(rest(1) == 0.0);

    const Eigen::Vector2d pushed = rhs_v_lambda(0.0, {30.0, 0.0}, 1.0, p, dry(), none);
    CHECK(pushed(1) == doctest::Approx(0.327).epsilon(1e-12));

    CHECK_THROWS_AS(rhs_v_lambda(0.0, {0.4, 0.5}, 0.0, p, dry(), none, 0.5), SpeedFloorError);
    CHECK_THROWS_AS(rhs_v_lambda(0.0, {30.0, 0.5}, std::nan(""), p, dry(), none), DomainError);
}

TEST_CASE("property: slip dynamics are the pushforward of the speed dynamics") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> v(1.0, 50.0), l(0.0, 1.0), ups(-5.0, 40.0),
        alpha(-0.3, 0.3);
    const DisturbanceSpec none;
    for (const auto& road : {dry(), FrictionModel::burckhardt(presets::wet_asphalt)}) {
        for (int i = 0; i < 5000; ++i) {
            const VehicleParams p = VehicleParams::make(250.0, 0.3, 1.5, alpha(rng));
            const TractionState s{v(rng), l(rng)};
            const double upsilon = ups(rng);
            const double torque = upsilon / p.torque_scale();
            const Eigen::Vector2d vw = speeds_from_slip(s, p.r);
            const Eigen::Vector2d f = rhs_v_omega(0.0, vw(0), vw(1), torque, p, road, none);
            // d(lambda)/dt = ((1 - lambda) dv/dt - r domega/dt) / v
            const double chain = ((1.0 - s.lambda) * f(0) - p.r * f(1)) / s.v;
            const Eigen::Vector2d g = rhs_v_lambda(0.0, s, upsilon, p, road, none);
            CHECK(g(0) == doctest::Approx(f(0)).epsilon(1e-12));
            CHECK(std::abs(g(1) - chain) <= 1e-10 * std::max(1.0, std::abs(chain)));
        }
    }
}

TEST_CASE("property: speed never increases without a vehicle disturbance") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> v(1.0, 50.0), l(0.0, 1.0);
    const VehicleParams p;
    for (int i = 0; i < 5000; ++i) {
        CHECK(rhs_v_lambda(0.0, {v(rng), l(rng)}, 3.0, p, dry(), {})(0) <= 0.0);
    }
}

TEST_CASE("disturbance channels respect their declared bounds") {
    const auto zero = DisturbanceChannel::zero();
    CHECK(zero.is_zero());
    CHECK(zero(1.0, 2.0) == 0.0);

    const auto c = DisturbanceChannel::constant(50.0, 100.0);
    CHECK(c(0.3, 10.0) == 50.0);
    CHECK_THROWS_AS(DisturbanceChannel::constant(150.0, 100.0)(0.0, 0.0), DomainError);

    const auto s = DisturbanceChannel::sinusoid(100.0, 1.0, 100.0);
    CHECK(s(0.25, 0.0) == doctest::Approx(100.0));
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> t(0.0, 100.0);
    for (int i = 0; i < 10000; ++i) CHECK(std::abs(s(t(rng), 0.0)) <= 100.0);

    const DisturbanceChannel rogue([](double, double) { return 2.0; }, 1.0);
    CHECK_THROWS_AS(rogue(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(DisturbanceChannel::constant(0.0, -1.0), DomainError);
}

TEST_CASE("disturbances enter the dynamics in physical units") {
    const VehicleParams p;
    DisturbanceSpec d;
    d.delta_v = DisturbanceChannel::constant(100.0, 100.0);
    d.delta_w = DisturbanceChannel::constant(10.0, 10.0);
    const Eigen::Vector2d f = rhs_v_omega(0.0, 30.0, 100.0, 0.0, p, dry(), d);
    CHECK(f(0) == doctest::Approx(-100.0 / 250.0));
    CHECK(f(1) == doctest::Approx(-10.0 / 1.5));
}

TEST_CASE("lumped disturbance") {
    const VehicleParams p;
    const DisturbanceSpec none;

    const auto on_manifold = lumped_disturbance(0.0, {30.0, 1.0}, p, dry(), dry(), p.nu(), none);
    CHECK(on_manifold.persistent == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(on_manifold.vanishing == 0.0);

    const auto blind = lumped_disturbance(0.0, {30.0, 0.17}, p, dry(), FrictionModel::zero(), 15.0, none);
    CHECK(blind.persistent == doctest::Approx(-6.055993983489725).epsilon(1e-12));

    CHECK_THROWS_AS(lumped_disturbance(0.0, {0.4, 0.5}, p, dry(), dry(), 15.0, none, 0.5),
                    DomainError);
}

TEST_CASE("property: perfect knowledge leaves only the vanishing disturbance, within its bound") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> v(1.0, 50.0), l(0.0, 1.0), t(0.0, 10.0);
    const VehicleParams p;
    DisturbanceSpec d;
    d.delta_v = DisturbanceChannel::sinusoid(80.0, 2.0, 100.0);
    const double mu_max = dry().mu_max();
    for (int i = 0; i < 5000; ++i) {
        const TractionState s{v(rng), l(rng)};
        const auto ld = lumped_disturbance(t(rng), s, p, dry(), dry(), p.nu(), d);
        CHECK(ld.persistent == doctest::Approx(ld.vanishing).epsilon(1e-12));
        const double bound = (p.M * p.g_alpha() * mu_max + 100.0) / (p.M * s.v) * std::abs(s.lockup_error());
        CHECK(std::abs(ld.vanishing) <= bound * (1 + 1e-12));
    }
}
