#include "lockup/csv_io.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lockup {

std::string format_double(double x) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buf.data(), ptr);
}

double parse_double(std::string_view token) {
    while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) token.remove_prefix(1);
    while (!token.empty() && (token.back() == ' ' || token.back() == '\t' || token.back() == '\r'))
        token.remove_suffix(1);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
        throw std::invalid_argument("not a number: '" + std::string(token) + "'");
    return value;
}

void write_csv(const ScenarioResult& result, const std::filesystem::path& path) {
    const Series& s = result.series;
    if (s.empty()) throw std::invalid_argument("write_csv: empty series");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << kCsvHeader << '\n';
    const std::array<const std::vector<double>*, 10> cols{
        &s.t, &s.v, &s.omega, &s.lambda, &s.e_l, &s.mu, &s.torque_cmd, &s.torque_applied,
        &s.d_hat, &s.delta_e};
    std::string line;
    for (std::size_t i = 0; i < s.size(); ++i) {
        line.clear();
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (c) line += ',';
            line += format_double((*cols[c])[i]);
        }
        line += '\n';
        out << line;
    }
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

Series read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) throw std::runtime_error(path.string() + ": unexpected header");

    Series s;
    const std::array<std::vector<double>*, 10> cols{
        &s.t, &s.v, &s.omega, &s.lambda, &s.e_l, &s.mu, &s.torque_cmd, &s.torque_applied,
        &s.d_hat, &s.delta_e};
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        std::string_view rest(line);
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const auto comma = rest.find(',');
            const bool last = c + 1 == cols.size();
            if (last != (comma == std::string_view::npos))
                throw std::runtime_error(path.string() + ": wrong column count on row " +
                                         std::to_string(row));
            try {
                cols[c]->push_back(parse_double(rest.substr(0, comma)));
            } catch (const std::invalid_argument& e) {
                throw std::runtime_error(path.string() + ": row " + std::to_string(row) + ": " +
                                         e.what());
            }
            if (!last) rest.remove_prefix(comma + 1);
        }
    }
    return s;
}

namespace {

nlohmann::json optional_json(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<double> optional_double(const nlohmann::json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

}  // namespace

RunManifest make_manifest(const std::string& label, const std::string& config,
                          const ScenarioResult& result, double wall_clock_s,
                          std::vector<std::string> outputs) {
    RunManifest m;
    m.label = label;
    m.config = config;
    m.wall_clock_s = wall_clock_s;
    m.metrics = result.metrics;
    m.lockup_threshold = result.lockup_threshold;
    m.termination = to_string(result.termination);
    m.failure = result.failure;
    m.rows = result.series.size();
    m.outputs = std::move(outputs);
    return m;
}

void write_manifest(const RunManifest& m, const std::filesystem::path& path) {
    nlohmann::json j;
    j["label"] = m.label;
    j["tool_version"] = m.tool_version;
    j["wall_clock_s"] = m.wall_clock_s;
    j["config"] = m.config;
    j["rows"] = m.rows;
    j["termination"] = m.termination;
    j["failure"] = m.failure ? nlohmann::json(*m.failure) : nlohmann::json(nullptr);
    j["lockup_threshold"] = m.lockup_threshold;
    j["metrics"] = {
        {"success", m.metrics.success},
        {"time_to_lockup", optional_json(m.metrics.time_to_lockup)},
        {"final_v", m.metrics.final_v},
        {"max_lambda", m.metrics.max_lambda},
        {"peak_torque_cmd", m.metrics.peak_torque_cmd},
        {"settling_margin", optional_json(m.metrics.settling_margin)},
    };
    j["columns"] = {{"t", "s"},        {"v", "m/s"},          {"omega", "rad/s"},
                    {"lambda", "-"},   {"e_L", "-"},          {"mu", "-"},
                    {"torque_cmd", "-"}, {"torque_applied", "-"}, {"d_hat", "1/s"},
                    {"delta_e_actual", "1/s"}};
    j["outputs"] = m.outputs;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

RunManifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    const auto j = nlohmann::json::parse(in);
    RunManifest m;
    m.label = j.at("label").get<std::string>();
    m.tool_version = j.at("tool_version").get<std::string>();
    m.wall_clock_s = j.at("wall_clock_s").get<double>();
    m.config = j.at("config").get<std::string>();
    m.rows = j.at("rows").get<std::size_t>();
    m.termination = j.at("termination").get<std::string>();
    if (!j.at("failure").is_null()) m.failure = j.at("failure").get<std::string>();
    m.lockup_threshold = j.at("lockup_threshold").get<double>();
    const auto& mj = j.at("metrics");
    m.metrics.success = mj.at("success").get<bool>();
    m.metrics.time_to_lockup = optional_double(mj.at("time_to_lockup"));
    m.metrics.final_v = mj.at("final_v").get<double>();
    m.metrics.max_lambda = mj.at("max_lambda").get<double>();
    m.metrics.peak_torque_cmd = mj.at("peak_torque_cmd").get<double>();
    m.metrics.settling_margin = optional_double(mj.at("settling_margin"));
    m.outputs = j.at("outputs").get<std::vector<std::string>>();
    return m;
}

}  // namespace lockup
