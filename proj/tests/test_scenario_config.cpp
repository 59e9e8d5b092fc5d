#include <doctest.h>

#include "lockup/errors.hpp"
#include "lockup/scenario_config.hpp"

#include <string>

using namespace lockup;

namespace {

std::string error_key(const std::string& text) {
    try {
        parse_scenario(text);
    } catch (const ConfigError& e) {
        return e.key();
    }
    return "<none>";
}

}  // namespace

TEST_CASE("empty document gives the default scenario") {
    const ScenarioFile f = parse_scenario("");
    CHECK(f.vehicle.M == 250.0);
    CHECK(f.vehicle.R == 0.3);
    CHECK(f.vehicle.J == 1.5);
    CHECK(f.vehicle.alpha_deg == 0.0);
    CHECK(f.actuator.tau_f_ms == 16.0);
    CHECK(f.actuator.delta_f_ms == 15.0);
    CHECK(f.attack.variant == "prop3");
    CHECK(f.attack.T_c == 0.95);
    CHECK(f.attack.p == 0.15);
    CHECK(f.attack.k == 0.0);
    CHECK(f.attack.nu_hat == 15.0);
    CHECK(f.attack.mu_hat == "zero");
    CHECK(f.attack.v_min_assumed == doctest::Approx(9.0));
    CHECK(f.ndob.enabled);
    CHECK(f.ndob.L_d == 2.65);
    CHECK(f.road.c == presets::dry_asphalt);
    CHECK(f.sim == SimConfig{});

    const Scenario sc = build_scenario(f);
    CHECK(sc.vehicle.nu() == 15.0);
    CHECK(sc.policy.name() == "prop3+ndob");
    CHECK(sc.actuator.tau_f == 0.016);
    CHECK(sc.actuator.delta_f == 0.015);
}

TEST_CASE("standard vehicle parameters give an inertia ratio of 15") {
    const ScenarioFile f = parse_scenario("[vehicle]\nM = 250\nR = 0.3\nJ = 1.5\n");
    CHECK(build_scenario(f).vehicle.nu() == 15.0);
    CHECK(f.attack.nu_hat == 15.0);
}

TEST_CASE("sign-augmented policy rejects T_c of one or more") {
    try {
        parse_scenario("[attack]\nvariant = prop2\nT_c = 1.5\n");
        FAIL("expected a configuration error");
    } catch (const ConfigError& e) {
        CHECK(e.key() == "attack.T_c");
        CHECK(std::string(e.what()).find("0 < T_c < 1") != std::string::npos);
    }
    CHECK_NOTHROW(parse_scenario("[attack]\nvariant = prop3\nT_c = 1.5\n"));
}

TEST_CASE("unknown sections, keys and bad values name the key") {
    CHECK(error_key("[vehicle]\nmass = 3\n") == "vehicle.mass");
    CHECK(error_key("[engine]\nx = 1\n") == "engine");
    CHECK(error_key("[vehicle]\nM = heavy\n") == "vehicle.M");
    CHECK(error_key("[vehicle]\nM = -1\n") == "vehicle.M");
    CHECK(error_key("[attack]\nvariant = prop9\n") == "attack.variant");
    CHECK(error_key("[attack]\np = 1.0\n") == "attack.p");
    CHECK(error_key("[ndob]\nL_d = 0\n") == "ndob.L_d");
    CHECK(error_key("[ndob]\nenabled = maybe\n") == "ndob.enabled");
    CHECK(error_key("[road]\npreset = ice\n") == "road.preset");
    CHECK(error_key("[sim]\nlambda0 = 0.995\n") == "sim.lambda0");
    CHECK(error_key("[sim]\nsustain_steps = 2.5\n") == "sim.sustain_steps");
    CHECK(error_key("[disturbance]\namplitude = 2\n") == "disturbance.amplitude");
    CHECK(error_key("[vehicle]\nR = 0.3\nr = 0.3\n") == "vehicle.r");
    CHECK(error_key("[attack]\nvariant = constant\n[ndob]\nenabled = true\n") == "ndob.enabled");
    CHECK(error_key("[attack]\nuse_ndob = true\n[ndob]\nenabled = false\n") == "attack.use_ndob");
    CHECK(error_key("[road]\nkind = table\n") == "road.table");
    CHECK(error_key("[road]\nkind = table\ntable = 0.1:0.5, 0.1:0.6\n") == "road.table");
    CHECK(error_key("[actuator]\ndelta_f_ms = 0.01\n") == "sim.dt");
}

TEST_CASE("presets, explicit coefficients and aliases") {
    const ScenarioFile wet = parse_scenario("[road]\npreset = wet_asphalt\n");
    CHECK(wet.road.c == presets::wet_asphalt);
    CHECK(wet.road.preset == "wet_asphalt");

    const ScenarioFile custom = parse_scenario("[road]\npreset = wet_asphalt\nc1 = 1.0\n");
    CHECK(custom.road.c.c1 == 1.0);
    CHECK(custom.road.c.c2 == presets::wet_asphalt.c2);
    CHECK(custom.road.preset == "custom");

    const ScenarioFile alias = parse_scenario("[vehicle]\nr = 0.25\n");
    CHECK(alias.vehicle.R == 0.25);

    const ScenarioFile table = parse_scenario("[road]\nkind = table\ntable = 0:0, 0.2:1.1, 1:0.7\n");
    const Scenario sc = build_scenario(table);
    CHECK(sc.road(0.2) == 1.1);
    CHECK(sc.road(0.6) == doctest::Approx(0.9));

    const ScenarioFile comments = parse_scenario("# leading comment\n[sim]\n# inside\nt_max = 1.5\n");
    CHECK(comments.sim.t_max == 1.5);
}

TEST_CASE("resolved attacker defaults follow the scenario") {
    const ScenarioFile f = parse_scenario(
        "[vehicle]\nJ = 3\n[sim]\nv0 = 40\n[disturbance]\nkind = sinusoid\nbound_v = 100\nbound_w = 10\n");
    CHECK(f.attack.nu_hat == doctest::Approx(7.5));
    CHECK(f.attack.v_min_assumed == doctest::Approx(12.0));
    CHECK(f.attack.bar_delta_v_assumed == 100.0);
    CHECK(f.attack.bar_delta_w_assumed == 10.0);

    const ScenarioFile c = parse_scenario("[attack]\nvariant = constant\n");
    CHECK_FALSE(c.ndob.enabled);
    CHECK(c.attack.upsilon_const == 10.0);
}

TEST_CASE("disturbance amplitude scales each channel's bound") {
    const ScenarioFile f = parse_scenario(
        "[disturbance]\nkind = constant\namplitude = 0.5\nbound_v = 100\nbound_w = 10\n");
    const DisturbanceSpec d = make_disturbances(f.disturbance);
    CHECK(d.delta_v(0.0, 0.0) == 50.0);
    CHECK(d.delta_w(0.0, 0.0) == 5.0);
    CHECK(d.delta_v.bound() == 100.0);
}

TEST_CASE("parse, serialize, parse is a fixed point") {
    const char* docs[] = {
        "",
        "[road]\npreset = wet_asphalt\n",
        "[road]\nkind = table\ntable = 0:0, 0.15:1.2, 1:0.8\n[attack]\nvariant = prop1\nk = 1.25\n",
        "[attack]\nvariant = prop2\nT_c = 0.5\nk_a = 18.3\nboundary_layer = 0.001\nmu_hat = road\n"
        "[disturbance]\nkind = sinusoid\nbound_v = 100\nbound_w = 10\nfrequency = 2\n",
        "[attack]\nvariant = constant\nupsilon_const = 12.5\n[actuator]\nideal = true\nupsilon_max = 40\n",
        "[sim]\ncoordinates = v_omega\nstop_on_lockup = false\nsustain_steps = 7\ndt = 2e-4\n"
        "[ndob]\ninit = zero_estimate\nform = as_printed\n[vehicle]\nalpha_deg = 3.5\n",
    };
    for (const char* doc : docs) {
        const ScenarioFile a = parse_scenario(doc);
        const std::string text = serialize_scenario(a);
        const ScenarioFile b = parse_scenario(text);
        CHECK(a == b);
        CHECK(serialize_scenario(b) == text);
    }
}

TEST_CASE("gain bounds for a configured scenario") {
    const ScenarioFile f = parse_scenario("[attack]\nv_min_assumed = 10\n");
    const GainBounds g = gain_bounds(f);
    CHECK(g.mu_max == doctest::Approx(1.1699216221951357912).epsilon(1e-13));
    CHECK(g.mu_hat_max == 0.0);
    CHECK(g.kstar_prime == doctest::Approx(1.1476931113734282).epsilon(1e-12));
    CHECK(g.kstar == doctest::Approx(18.363089781974851).epsilon(1e-12));
    CHECK(g.kstar_prime <= g.kstar);
}

TEST_CASE("five-attack suite composition") {
    for (const char* road : {"dry_asphalt", "wet_asphalt"}) {
        const auto suite = five_attacks_suite(road);
        REQUIRE(suite.size() == 5);
        CHECK(suite[0].first == "constant_torque");
        CHECK(suite[3].first == "phi_p_ndob");
        int observers = 0;
        for (const auto& [name, f] : suite) {
            CHECK(f.attack.mu_hat == "zero");
            CHECK(f.attack.k == 0.0);
            CHECK(f.attack.k_a == 0.0);
            CHECK(f.road.preset == road);
            observers += f.ndob.enabled ? 1 : 0;
        }
        CHECK(observers == 2);
    }
    CHECK_THROWS_AS(five_attacks_suite("gravel"), ConfigError);
}

TEST_CASE("friction approximation choices") {
    const auto road = FrictionModel::burckhardt(presets::wet_asphalt);
    CHECK(make_mu_hat("zero", road).is_zero());
    CHECK(make_mu_hat("road", road).mu_max() == road.mu_max());
    CHECK(make_mu_hat("dry_asphalt", road).mu_max() > road.mu_max());
    CHECK_THROWS_AS(make_mu_hat("ice", road), ConfigError);
}

TEST_CASE("missing scenario file is a configuration error") {
    CHECK_THROWS_AS(load_scenario("/nonexistent/path/scenario.ini"), ConfigError);
}
