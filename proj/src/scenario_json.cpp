#include "ratesim/scenario_json.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ratesim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("config: " + what);
}

json parse_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail("malformed JSON");
    return j;
}

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
    if (!obj.is_object()) fail(where + " must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) fail("unknown key '" + it.key() + "' in " + where);
    }
}

Fixed fixed_field(const json& obj, const std::string& key) {
    const json& v = obj.at(key);
    if (!v.is_string()) fail("'" + key + "' must be a decimal string");
    try {
        return Fixed::from_decimal_string(v.get<std::string>());
    } catch (const std::exception& e) {
        fail("'" + key + "': " + e.what());
    }
}

Fixed fixed_or(const json& obj, const std::string& key, Fixed fallback) {
    return obj.contains(key) ? fixed_field(obj, key) : fallback;
}

ControllerConfig controller_from(const json& obj) {
    require_keys(obj, "controller_cfg",
                 {"w_r", "alpha", "phi", "k_i_fixed", "k_d", "period",
                  "e_i_floor", "e_ctrl_max"});
    ControllerConfig cfg = ControllerConfig::defaults();
    cfg.w_r = fixed_or(obj, "w_r", cfg.w_r);
    cfg.alpha = fixed_or(obj, "alpha", cfg.alpha);
    cfg.phi = fixed_or(obj, "phi", cfg.phi);
    if (obj.contains("k_i_fixed")) cfg.k_i_fixed = fixed_field(obj, "k_i_fixed");
    cfg.k_d = fixed_or(obj, "k_d", cfg.k_d);
    cfg.period = fixed_or(obj, "period", cfg.period);
    cfg.e_i_floor = fixed_or(obj, "e_i_floor", cfg.e_i_floor);
    cfg.e_ctrl_max = fixed_or(obj, "e_ctrl_max", cfg.e_ctrl_max);
    return cfg;
}

WeightSchedule schedule_from(const json& obj) {
    if (!obj.is_object() || !obj.contains("type") || !obj.at("type").is_string()) {
        fail("weight_schedule needs a string 'type'");
    }
    const std::string type = obj.at("type").get<std::string>();
    if (type == "constant") {
        require_keys(obj, "weight_schedule", {"type", "w"});
        return ConstantWeight{fixed_field(obj, "w")};
    }
    if (type == "ramp_hold") {
        require_keys(obj, "weight_schedule",
                     {"type", "w_start", "w_end", "step_increment"});
        return RampHold{fixed_field(obj, "w_start"), fixed_field(obj, "w_end"),
                        fixed_field(obj, "step_increment")};
    }
    if (type == "points") {
        require_keys(obj, "weight_schedule", {"type", "points"});
        const json& pts = obj.at("points");
        if (!pts.is_array() || pts.empty()) fail("'points' must be a non-empty array");
        std::vector<WeightPoint> out;
        out.reserve(pts.size());
        for (const json& p : pts) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) {
                fail("each point must be a [\"t\", \"w\"] pair of decimal strings");
            }
            out.push_back(WeightPoint{Fixed::from_decimal_string(p[0].get<std::string>()),
                                      Fixed::from_decimal_string(p[1].get<std::string>())});
        }
        return out;
    }
    fail("weight_schedule type must be constant, ramp_hold, or points");
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

Scenario scenario_from_json_text(const std::string& text) {
    json j = parse_text(text);
    require_keys(j, "scenario",
                 {"controller_cfg", "initial_ratio", "initial_debt", "dt",
                  "duration", "weight_schedule"});
    if (!j.contains("initial_ratio")) fail("missing 'initial_ratio'");
    if (!j.contains("duration")) fail("missing 'duration'");
    if (!j.contains("weight_schedule")) fail("missing 'weight_schedule'");

    Scenario s;
    s.controller_cfg = j.contains("controller_cfg")
                           ? controller_from(j.at("controller_cfg"))
                           : ControllerConfig::defaults();
    s.initial_ratio = fixed_field(j, "initial_ratio");
    s.initial_debt = fixed_or(j, "initial_debt", Fixed::from_int(1000000));
    s.dt = fixed_or(j, "dt", default_dt());
    s.duration = fixed_field(j, "duration");
    s.weight_schedule = schedule_from(j.at("weight_schedule"));
    validate(s);
    return s;
}

Scenario scenario_from_json_file(const std::string& path) {
    return scenario_from_json_text(slurp(path));
}

SweepConfig SweepConfig::defaults() {
    SweepConfig cfg;
    cfg.target_years = Fixed::one();
    cfg.tol_years = Fixed::from_decimal_string("0.005");
    cfg.held_weight = Fixed::from_decimal_string("0.7");
    cfg.dt = default_dt();
    cfg.workers = 1;
    cfg.controller_cfg = ControllerConfig::defaults();
    return cfg;
}

SweepConfig sweep_from_json_text(const std::string& text) {
    json j = parse_text(text);
    require_keys(j, "sweep",
                 {"ratios", "target_years", "tol_years", "held_weight", "dt",
                  "workers", "controller_cfg"});
    if (!j.contains("ratios")) fail("missing 'ratios'");

    SweepConfig cfg = SweepConfig::defaults();
    if (!j.at("ratios").is_string()) fail("'ratios' must be a \"start:stop:step\" string");
    cfg.ratios = parse_range(j.at("ratios").get<std::string>());
    cfg.target_years = fixed_or(j, "target_years", cfg.target_years);
    cfg.tol_years = fixed_or(j, "tol_years", cfg.tol_years);
    cfg.held_weight = fixed_or(j, "held_weight", cfg.held_weight);
    cfg.dt = fixed_or(j, "dt", cfg.dt);
    if (j.contains("workers")) {
        if (!j.at("workers").is_number_integer()) fail("'workers' must be an integer");
        cfg.workers = j.at("workers").get<int>();
        if (cfg.workers < 1) fail("'workers' must be at least 1");
    }
    if (j.contains("controller_cfg")) {
        cfg.controller_cfg = controller_from(j.at("controller_cfg"));
    }
    return cfg;
}

SweepConfig sweep_from_json_file(const std::string& path) {
    return sweep_from_json_text(slurp(path));
}

std::vector<Fixed> parse_range(const std::string& text) {
    auto first = text.find(':');
    auto second = text.find(':', first == std::string::npos ? first : first + 1);
    if (first == std::string::npos || second == std::string::npos) {
        fail("range must be start:stop:step");
    }
    Fixed start = Fixed::from_decimal_string(text.substr(0, first));
    Fixed stop = Fixed::from_decimal_string(text.substr(first + 1, second - first - 1));
    Fixed step = Fixed::from_decimal_string(text.substr(second + 1));
    if (step <= Fixed::zero() || stop < start) {
        fail("range must satisfy start <= stop with positive step");
    }
    std::vector<Fixed> values;
    for (std::int64_t k = 0;; ++k) {
        Fixed v = start + step * k;
        if (v > stop) break;
        values.push_back(v);
    }
    return values;
}

}  // namespace ratesim
