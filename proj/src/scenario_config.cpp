#include "lockup/scenario_config.hpp"

#include "lockup/csv_io.hpp"
#include "lockup/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace lockup {

namespace pt = boost::property_tree;

namespace {

using Entries = std::map<std::string, std::string>;

std::string unquote(std::string s) {
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
        return s.substr(1, s.size() - 2);
    return s;
}

// Fetches and consumes a key, if present.
class Section {
public:
    Section(std::string name, Entries entries) : name_(std::move(name)), entries_(std::move(entries)) {}

    std::string key(const std::string& k) const { return name_ + "." + k; }

    bool has(const std::string& k) const { return entries_.count(k) > 0; }

    std::optional<std::string> take(const std::string& k) {
        auto it = entries_.find(k);
        if (it == entries_.end()) return std::nullopt;
        std::string v = it->second;
        entries_.erase(it);
        return v;
    }

    void number(const std::string& k, double& out) {
        if (auto s = take(k)) {
            try {
                out = parse_double(*s);
            } catch (const std::invalid_argument&) {
                throw ConfigError(key(k), "expected a number, got '" + *s + "'");
            }
            if (!std::isfinite(out)) throw ConfigError(key(k), "must be finite");
        }
    }

    void boolean(const std::string& k, bool& out) {
        if (auto s = take(k)) {
            if (*s == "true" || *s == "1" || *s == "yes") {
                out = true;
            } else if (*s == "false" || *s == "0" || *s == "no") {
                out = false;
            } else {
                throw ConfigError(key(k), "expected true or false, got '" + *s + "'");
            }
        }
    }

    void choice(const std::string& k, std::string& out, std::initializer_list<const char*> allowed) {
        if (auto s = take(k)) {
            for (const char* a : allowed) {
                if (*s == a) {
                    out = *s;
                    return;
                }
            }
            std::string msg = "expected one of";
            for (const char* a : allowed) msg += std::string(" ") + a;
            throw ConfigError(key(k), msg + ", got '" + *s + "'");
        }
    }

    void finish() const {
        if (!entries_.empty()) throw ConfigError(key(entries_.begin()->first), "unknown key");
    }

private:
    std::string name_;
    Entries entries_;
};

std::vector<std::pair<double, double>> parse_table(const std::string& key, const std::string& text) {
    std::vector<std::pair<double, double>> knots;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw ConfigError(key, "table entries must be lambda:mu pairs");
        try {
            knots.emplace_back(parse_double(item.substr(0, colon)), parse_double(item.substr(colon + 1)));
        } catch (const std::invalid_argument&) {
            throw ConfigError(key, "bad table entry '" + item + "'");
        }
    }
    if (knots.empty()) throw ConfigError(key, "table is empty");
    return knots;
}

std::string format_table(const std::vector<std::pair<double, double>>& knots) {
    std::string out;
    for (const auto& [l, m] : knots) {
        if (!out.empty()) out += ", ";
        out += format_double(l) + ":" + format_double(m);
    }
    return out;
}

BurckhardtParams preset_params(const std::string& key, const std::string& name) {
    if (name == "dry_asphalt") return presets::dry_asphalt;
    if (name == "wet_asphalt") return presets::wet_asphalt;
    throw ConfigError(key, "unknown preset '" + name + "'");
}

void require(bool ok, const char* key, const std::string& msg) {
    if (!ok) throw ConfigError(key, msg);
}

const std::set<std::string> kSections{"vehicle", "road", "disturbance", "actuator",
                                      "attack",  "ndob", "sim"};

std::string preprocess(const std::string& text) {
    // The INI reader only knows ';' comments.
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t");
        if (first != std::string::npos && line[first] == '#') continue;
        out << line << '\n';
    }
    return out.str();
}

}  // namespace

ScenarioFile parse_scenario(const std::string& text) {
    pt::ptree tree;
    try {
        std::istringstream in(preprocess(text));
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("", std::string("malformed scenario document: ") + e.message() +
                                  " (line " + std::to_string(e.line()) + ")");
    }

    std::map<std::string, Entries> sections;
    for (const auto& [name, node] : tree) {
        if (node.empty()) throw ConfigError(name, "unknown key (keys must live in a section)");
        if (!kSections.count(name)) throw ConfigError(name, "unknown section");
        for (const auto& [k, v] : node) sections[name][k] = unquote(v.data());
    }
    auto section = [&](const std::string& name) { return Section(name, sections[name]); };

    ScenarioFile f;

    Section veh = section("vehicle");
    veh.number("M", f.vehicle.M);
    if (veh.has("R") && veh.has("r")) throw ConfigError("vehicle.r", "give either R or r, not both");
    veh.number("R", f.vehicle.R);
    veh.number("r", f.vehicle.R);
    veh.number("J", f.vehicle.J);
    veh.number("alpha_deg", f.vehicle.alpha_deg);
    veh.number("g", f.vehicle.g);
    veh.finish();

    Section road = section("road");
    road.choice("kind", f.road.kind, {"burckhardt", "zero", "table"});
    const bool explicit_c = road.has("c1") || road.has("c2") || road.has("c3");
    if (auto preset = road.take("preset")) {
        f.road.c = preset_params("road.preset", *preset);
        f.road.preset = *preset;
    }
    if (explicit_c || f.road.kind != "burckhardt") f.road.preset = "custom";
    road.number("c1", f.road.c.c1);
    road.number("c2", f.road.c.c2);
    road.number("c3", f.road.c.c3);
    if (auto table = road.take("table")) f.road.table = parse_table("road.table", *table);
    road.finish();

    Section dist = section("disturbance");
    dist.choice("kind", f.disturbance.kind, {"zero", "constant", "sinusoid"});
    dist.number("amplitude", f.disturbance.amplitude);
    dist.number("frequency", f.disturbance.frequency);
    dist.number("bound_v", f.disturbance.bound_v);
    dist.number("bound_w", f.disturbance.bound_w);
    dist.finish();

    Section act = section("actuator");
    act.number("tau_f_ms", f.actuator.tau_f_ms);
    act.number("delta_f_ms", f.actuator.delta_f_ms);
    act.boolean("ideal", f.actuator.ideal);
    if (act.has("upsilon_max")) {
        double u = 0.0;
        act.number("upsilon_max", u);
        f.actuator.upsilon_max = u;
    }
    act.finish();

    Section sim = section("sim");
    sim.number("dt", f.sim.dt);
    sim.number("t_max", f.sim.t_max);
    sim.number("v0", f.sim.v0);
    sim.number("lambda0", f.sim.lambda0);
    sim.number("lockup_threshold", f.sim.lockup_threshold);
    sim.number("v_floor", f.sim.v_floor);
    {
        std::string coords = "v_lambda";
        sim.choice("coordinates", coords, {"v_lambda", "v_omega"});
        f.sim.coordinates = coords == "v_omega" ? Coordinates::VOmega : Coordinates::VLambda;
    }
    sim.boolean("stop_on_lockup", f.sim.stop_on_lockup);
    if (sim.has("sustain_steps")) {
        double n = 0;
        sim.number("sustain_steps", n);
        if (n != std::floor(n) || n < 1 || n > 1e9)
            throw ConfigError("sim.sustain_steps", "must be a positive integer");
        f.sim.sustain_steps = static_cast<int>(n);
    }
    sim.finish();

    Section att = section("attack");
    att.choice("variant", f.attack.variant, {"prop1", "prop2", "prop3", "constant"});
    att.number("T_c", f.attack.T_c);
    att.number("p", f.attack.p);
    att.number("k", f.attack.k);
    att.number("k_a", f.attack.k_a);
    f.attack.nu_hat = f.vehicle.M * f.vehicle.R * f.vehicle.R / f.vehicle.J;
    att.number("nu_hat", f.attack.nu_hat);
    att.choice("mu_hat", f.attack.mu_hat, {"zero", "dry_asphalt", "wet_asphalt", "road"});
    att.number("upsilon_const", f.attack.upsilon_const);
    f.attack.v_min_assumed = 0.3 * f.sim.v0;
    att.number("v_min_assumed", f.attack.v_min_assumed);
    f.attack.bar_delta_v_assumed = f.disturbance.bound_v;
    f.attack.bar_delta_w_assumed = f.disturbance.bound_w;
    att.number("bar_delta_v_assumed", f.attack.bar_delta_v_assumed);
    att.number("bar_delta_w_assumed", f.attack.bar_delta_w_assumed);
    att.number("boundary_layer", f.attack.boundary_layer);
    std::optional<bool> use_ndob;
    if (att.has("use_ndob")) {
        bool b = false;
        att.boolean("use_ndob", b);
        use_ndob = b;
    }
    att.finish();

    Section obs = section("ndob");
    f.ndob.enabled = f.attack.variant != "constant";
    if (obs.has("enabled")) {
        bool b = false;
        obs.boolean("enabled", b);
        if (use_ndob && *use_ndob != b)
            throw ConfigError("attack.use_ndob", "conflicts with ndob.enabled");
        f.ndob.enabled = b;
    } else if (use_ndob) {
        f.ndob.enabled = *use_ndob;
    }
    obs.number("L_d", f.ndob.L_d);
    obs.choice("init", f.ndob.init, {"zero_state", "zero_estimate"});
    obs.choice("form", f.ndob.form, {"tracking", "as_printed"});
    obs.finish();

    validate_scenario(f);
    return f;
}

ScenarioFile load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open scenario file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

void validate_scenario(const ScenarioFile& f) {
    const auto& v = f.vehicle;
    require(v.M > 0.0, "vehicle.M", "must be > 0");
    require(v.R > 0.0, "vehicle.R", "must be > 0");
    require(v.J > 0.0, "vehicle.J", "must be > 0");
    require(v.g > 0.0, "vehicle.g", "must be > 0");
    require(std::abs(v.alpha_deg) < 90.0, "vehicle.alpha_deg", "must satisfy |alpha| < 90");

    if (f.road.kind == "burckhardt") {
        require(f.road.c.c1 > 0.0, "road.c1", "must be > 0");
        require(f.road.c.c2 > 0.0, "road.c2", "must be > 0");
        require(f.road.c.c3 >= 0.0, "road.c3", "must be >= 0");
    } else if (f.road.kind == "table") {
        require(!f.road.table.empty(), "road.table", "required when road.kind = table");
        try {
            (void)make_road(f.road);
        } catch (const DomainError& e) {
            throw ConfigError("road.table", e.what());
        }
    }

    const auto& d = f.disturbance;
    require(d.bound_v >= 0.0, "disturbance.bound_v", "must be >= 0");
    require(d.bound_w >= 0.0, "disturbance.bound_w", "must be >= 0");
    require(d.amplitude >= 0.0 && d.amplitude <= 1.0, "disturbance.amplitude",
            "is a fraction of the declared bound and must lie in [0, 1]");
    require(d.frequency >= 0.0, "disturbance.frequency", "must be >= 0");

    const auto& a = f.actuator;
    require(a.tau_f_ms >= 0.0, "actuator.tau_f_ms", "must be >= 0");
    require(a.delta_f_ms >= 0.0, "actuator.delta_f_ms", "must be >= 0");
    require(!a.upsilon_max || *a.upsilon_max >= 0.0, "actuator.upsilon_max", "must be >= 0");
    if (!a.ideal && a.delta_f_ms > 0.0)
        require(f.sim.dt <= a.delta_f_ms / 1000.0, "sim.dt", "must not exceed the actuator deadtime");

    f.sim.validate();

    const auto& k = f.attack;
    require(k.T_c > 0.0, "attack.T_c", "must be > 0");
    if (k.variant == "prop2")
        require(k.T_c < 1.0, "attack.T_c",
                "the sign-augmented (prop2) policy requires 0 < T_c < 1");
    require(k.p > 0.0 && k.p < 1.0, "attack.p", "must satisfy 0 < p < 1");
    require(k.k >= 0.0, "attack.k", "must be >= 0");
    require(k.k_a >= 0.0, "attack.k_a", "must be >= 0");
    require(k.nu_hat >= 0.0, "attack.nu_hat", "must be >= 0");
    require(k.v_min_assumed > 0.0, "attack.v_min_assumed", "must be > 0");
    require(k.bar_delta_v_assumed >= 0.0, "attack.bar_delta_v_assumed", "must be >= 0");
    require(k.bar_delta_w_assumed >= 0.0, "attack.bar_delta_w_assumed", "must be >= 0");
    require(k.boundary_layer >= 0.0, "attack.boundary_layer", "must be >= 0");
    if (k.variant == "constant")
        require(!f.ndob.enabled, "ndob.enabled",
                "the constant-torque baseline has no observer-compensated form");

    require(f.ndob.L_d > 0.0, "ndob.L_d", "must be > 0");
}

namespace {

void put(pt::ptree& tree, const std::string& key, const std::string& value) { tree.put(key, value); }
void put(pt::ptree& tree, const std::string& key, double value) { tree.put(key, format_double(value)); }
void put(pt::ptree& tree, const std::string& key, bool value) { tree.put(key, value ? "true" : "false"); }

}  // namespace

std::string serialize_scenario(const ScenarioFile& f) {
    pt::ptree t;
    put(t, "vehicle.M", f.vehicle.M);
    put(t, "vehicle.R", f.vehicle.R);
    put(t, "vehicle.J", f.vehicle.J);
    put(t, "vehicle.alpha_deg", f.vehicle.alpha_deg);
    put(t, "vehicle.g", f.vehicle.g);

    put(t, "road.kind", f.road.kind);
    if (f.road.preset != "custom") {
        put(t, "road.preset", f.road.preset);
    } else {
        put(t, "road.c1", f.road.c.c1);
        put(t, "road.c2", f.road.c.c2);
        put(t, "road.c3", f.road.c.c3);
    }
    if (!f.road.table.empty()) put(t, "road.table", format_table(f.road.table));

    put(t, "disturbance.kind", f.disturbance.kind);
    put(t, "disturbance.amplitude", f.disturbance.amplitude);
    put(t, "disturbance.frequency", f.disturbance.frequency);
    put(t, "disturbance.bound_v", f.disturbance.bound_v);
    put(t, "disturbance.bound_w", f.disturbance.bound_w);

    put(t, "actuator.tau_f_ms", f.actuator.tau_f_ms);
    put(t, "actuator.delta_f_ms", f.actuator.delta_f_ms);
    put(t, "actuator.ideal", f.actuator.ideal);
    if (f.actuator.upsilon_max) put(t, "actuator.upsilon_max", *f.actuator.upsilon_max);

    put(t, "attack.variant", f.attack.variant);
    put(t, "attack.T_c", f.attack.T_c);
    put(t, "attack.p", f.attack.p);
    put(t, "attack.k", f.attack.k);
    put(t, "attack.k_a", f.attack.k_a);
    put(t, "attack.nu_hat", f.attack.nu_hat);
    put(t, "attack.mu_hat", f.attack.mu_hat);
    put(t, "attack.upsilon_const", f.attack.upsilon_const);
    put(t, "attack.v_min_assumed", f.attack.v_min_assumed);
    put(t, "attack.bar_delta_v_assumed", f.attack.bar_delta_v_assumed);
    put(t, "attack.bar_delta_w_assumed", f.attack.bar_delta_w_assumed);
    put(t, "attack.boundary_layer", f.attack.boundary_layer);

    put(t, "ndob.enabled", f.ndob.enabled);
    put(t, "ndob.L_d", f.ndob.L_d);
    put(t, "ndob.init", f.ndob.init);
    put(t, "ndob.form", f.ndob.form);

    put(t, "sim.dt", f.sim.dt);
    put(t, "sim.t_max", f.sim.t_max);
    put(t, "sim.v0", f.sim.v0);
    put(t, "sim.lambda0", f.sim.lambda0);
    put(t, "sim.lockup_threshold", f.sim.lockup_threshold);
    put(t, "sim.v_floor", f.sim.v_floor);
    put(t, "sim.coordinates",
        std::string(f.sim.coordinates == Coordinates::VOmega ? "v_omega" : "v_lambda"));
    put(t, "sim.stop_on_lockup", f.sim.stop_on_lockup);
    put(t, "sim.sustain_steps", static_cast<double>(f.sim.sustain_steps));

    std::ostringstream out;
    pt::write_ini(out, t);
    return out.str();
}

FrictionModel make_road(const RoadSection& road) {
    if (road.kind == "zero") return FrictionModel::zero();
    if (road.kind == "table") return FrictionModel::tabulated(road.table);
    return FrictionModel::burckhardt(road.c);
}

FrictionModel make_mu_hat(const std::string& spec, const FrictionModel& road) {
    if (spec == "zero") return FrictionModel::zero();
    if (spec == "dry_asphalt") return FrictionModel::burckhardt(presets::dry_asphalt);
    if (spec == "wet_asphalt") return FrictionModel::burckhardt(presets::wet_asphalt);
    if (spec == "road") return road;
    throw ConfigError("attack.mu_hat", "unknown friction approximation '" + spec + "'");
}

DisturbanceSpec make_disturbances(const DisturbanceSection& d) {
    DisturbanceSpec spec;
    if (d.kind == "constant") {
        spec.delta_v = DisturbanceChannel::constant(d.amplitude * d.bound_v, d.bound_v);
        spec.delta_w = DisturbanceChannel::constant(d.amplitude * d.bound_w, d.bound_w);
    } else if (d.kind == "sinusoid") {
        spec.delta_v = DisturbanceChannel::sinusoid(d.amplitude * d.bound_v, d.frequency, d.bound_v);
        spec.delta_w = DisturbanceChannel::sinusoid(d.amplitude * d.bound_w, d.frequency, d.bound_w);
    }
    return spec;
}

Scenario build_scenario(const ScenarioFile& f) {
    validate_scenario(f);
    Scenario sc;
    sc.vehicle = VehicleParams{f.vehicle.M, f.vehicle.R, f.vehicle.J,
                               f.vehicle.alpha_deg * std::numbers::pi / 180.0, f.vehicle.g};
    sc.road = make_road(f.road);
    sc.disturbances = make_disturbances(f.disturbance);
    sc.actuator = f.actuator.ideal
                      ? ActuatorConfig::ideal()
                      : ActuatorConfig{f.actuator.tau_f_ms / 1000.0, f.actuator.delta_f_ms / 1000.0,
                                       std::nullopt};
    sc.actuator.upsilon_max = f.actuator.upsilon_max;

    const auto& a = f.attack;
    if (a.variant == "prop1") {
        sc.policy.variant = policy::Prop1{a.T_c, a.p, a.k};
    } else if (a.variant == "prop2") {
        sc.policy.variant = policy::Prop2{a.T_c, a.p, a.k_a, a.boundary_layer};
    } else if (a.variant == "prop3") {
        sc.policy.variant = policy::Prop3{a.T_c, a.k_a};
    } else {
        sc.policy.variant = policy::ConstantTorque{a.upsilon_const};
    }
    sc.policy.adversary = AdversaryModel{a.nu_hat, make_mu_hat(a.mu_hat, sc.road), a.v_min_assumed,
                                         a.bar_delta_v_assumed, a.bar_delta_w_assumed};
    sc.policy.use_ndob = f.ndob.enabled;
    sc.ndob.gain = f.ndob.L_d;
    sc.ndob.init = f.ndob.init == "zero_estimate" ? NdobInit::ZeroEstimate : NdobInit::ZeroState;
    sc.ndob.form = f.ndob.form == "as_printed" ? NdobForm::AsPrinted : NdobForm::Tracking;
    sc.sim = f.sim;
    return sc;
}

GainBounds gain_bounds(const ScenarioFile& f) {
    const Scenario sc = build_scenario(f);
    const auto& adv = sc.policy.adversary;
    GainBounds g;
    g.mu_max = sc.road.mu_max();
    g.mu_hat_max = adv.mu_hat.mu_max();
    g.v_min = adv.v_min_assumed;
    g.kstar_prime = gain_bound_kstar_prime(sc.vehicle, g.mu_max, adv.bar_delta_v_assumed, g.v_min);
    g.kstar = gain_bound_kstar(sc.vehicle, g.mu_max, g.mu_hat_max, sc.vehicle.nu(), adv.nu_hat,
                               adv.bar_delta_v_assumed, adv.bar_delta_w_assumed, g.v_min);
    return g;
}

std::vector<std::pair<std::string, ScenarioFile>> five_attacks_suite(const std::string& road_preset) {
    ScenarioFile base;
    base.road.kind = "burckhardt";
    base.road.c = preset_params("road.preset", road_preset);
    base.road.preset = road_preset;
    base.attack.mu_hat = "zero";
    base.attack.k = 0.0;
    base.attack.k_a = 0.0;

    std::vector<std::pair<std::string, ScenarioFile>> suite;
    auto add = [&](const std::string& name, const std::string& variant, bool ndob) {
        ScenarioFile f = base;
        f.attack.variant = variant;
        f.ndob.enabled = ndob;
        validate_scenario(f);
        suite.emplace_back(name, f);
    };
    add("constant_torque", "constant", false);
    add("phi_p", "prop1", false);
    add("phi_1", "prop3", false);
    add("phi_p_ndob", "prop1", true);
    add("phi_1_ndob", "prop3", true);
    return suite;
}

}  // namespace lockup
