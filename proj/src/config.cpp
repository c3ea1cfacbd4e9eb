#include "exes/config.hpp"

#include <cstdio>
#include <set>

#include "exes/errors.hpp"
#include "exes/rng.hpp"

namespace exes {

using nlohmann::json;

std::string_view to_string(FairnessMethod m) { return m == FairnessMethod::L1 ? "l1" : "minmax"; }

int ExperimentConfig::effective_rounds() const {
    if (rounds > 0) {
        return rounds;
    }
    return payoffs.high_value >= 4.0 * payoffs.low_value ? 50 : 60;
}

void ExperimentConfig::validate() const {
    payoffs.validate();
    if (rounds < 0) {
        throw ConfigError("rounds", "must be >= 1 (or 0 for the payoff-dependent default)");
    }
    if (dyads < 1) {
        throw ConfigError("dyads", "must be >= 1");
    }
    if (parallelism < 1) {
        throw ConfigError("parallelism", "must be >= 1");
    }
    if (!(reactive.f > 0.0)) {
        throw ConfigError("reactive.f", "reactive.f > 0");
    }
    adaptive.validate();
    arena.validate();
}

namespace {

json point_json(Point p) { return json::array({p.x, p.y}); }
json pose_json(const Pose& p) { return {{"x", p.x}, {"y", p.y}, {"heading", p.heading}}; }

json arena_json(const ArenaConfig& a) {
    return {
        {"half_width", a.half_width},
        {"half_height", a.half_height},
        {"spot_pos_a", point_json(a.spot_pos_a)},
        {"spot_pos_b", point_json(a.spot_pos_b)},
        {"start_pose_1", pose_json(a.start_pose_1)},
        {"start_pose_2", pose_json(a.start_pose_2)},
        {"high_spot_radius", a.high_spot_radius},
        {"low_spot_radius", a.low_spot_radius},
        {"tie_radius", a.tie_radius},
        {"agent_radius", a.agent_radius},
        {"wheel_base", a.wheel_base},
        {"motor_gain", a.motor_gain},
        {"dt", a.dt},
        {"round_timeout", a.round_timeout},
        {"spot_sense_range", a.spot_sense_range},
        {"agent_sense_range", a.agent_sense_range},
        {"motor_noise_sigma", a.motor_noise_sigma},
        {"heading_jitter", a.heading_jitter},
    };
}

// Walks one JSON object, consuming known keys and rejecting the rest.
class Reader {
public:
    Reader(const json& obj, std::string prefix) : obj_(obj), prefix_(std::move(prefix)) {
        if (!obj_.is_object()) {
            throw ConfigError(prefix_.empty() ? "<root>" : prefix_, "expected a JSON object");
        }
    }

    [[nodiscard]] std::string key(const std::string& name) const {
        return prefix_.empty() ? name : prefix_ + "." + name;
    }

    const json* find(const std::string& name) {
        seen_.insert(name);
        auto it = obj_.find(name);
        return it == obj_.end() ? nullptr : &*it;
    }

    void number(const std::string& name, double& out) {
        if (const json* v = find(name)) {
            if (!v->is_number()) {
                throw ConfigError(key(name), "expected a number");
            }
            out = v->get<double>();
        }
    }

    void integer(const std::string& name, int& out) {
        if (const json* v = find(name)) {
            if (!v->is_number_integer()) {
                throw ConfigError(key(name), "expected an integer");
            }
            out = v->get<int>();
        }
    }

    void seed(const std::string& name, std::uint64_t& out) {
        if (const json* v = find(name)) {
            if (!v->is_number_integer() || (v->is_number_integer() && !v->is_number_unsigned() && v->get<long long>() < 0)) {
                throw ConfigError(key(name), "expected a non-negative integer");
            }
            out = v->get<std::uint64_t>();
        }
    }

    std::string text(const std::string& name, const std::string& fallback) {
        if (const json* v = find(name)) {
            if (!v->is_string()) {
                throw ConfigError(key(name), "expected a string");
            }
            return v->get<std::string>();
        }
        return fallback;
    }

    void point(const std::string& name, Point& out) {
        if (const json* v = find(name)) {
            if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() || !(*v)[1].is_number()) {
                throw ConfigError(key(name), "expected [x, y]");
            }
            out = {(*v)[0].get<double>(), (*v)[1].get<double>()};
        }
    }

    void pose(const std::string& name, Pose& out) {
        if (const json* v = find(name)) {
            Reader r(*v, key(name));
            r.number("x", out.x);
            r.number("y", out.y);
            r.number("heading", out.heading);
            r.finish();
        }
    }

    void finish() const {
        for (auto it = obj_.begin(); it != obj_.end(); ++it) {
            if (!seen_.count(it.key())) {
                throw ConfigError(key(it.key()), "unknown config key");
            }
        }
    }

private:
    const json& obj_;
    std::string prefix_;
    std::set<std::string> seen_;
};

}  // namespace

json to_json(const ExperimentConfig& c) {
    return {
        {"mode", to_string(c.mode)},
        {"payoffs", {{"high_value", c.payoffs.high_value}, {"low_value", c.payoffs.low_value}, {"tie_value", c.payoffs.tie_value}}},
        {"rounds", c.rounds},
        {"dyads", c.dyads},
        {"agents", {{"variant", to_string(c.variant)}}},
        {"arena", arena_json(c.arena)},
        {"reactive", {{"f", c.reactive.f}}},
        {"adaptive", {{"gamma", c.adaptive.gamma}, {"eta", c.adaptive.eta}, {"delta", c.adaptive.delta}}},
        {"master_seed", c.master_seed},
        {"parallelism", c.parallelism},
        {"metrics", {{"fairness", to_string(c.fairness)}}},
        {"game", {{"loser_payoff", to_string(c.loser_payoff)}}},
    };
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig c;
    Reader root(j, "");
    c.mode = parse_mode(root.text("mode", std::string(to_string(c.mode))));
    if (const json* p = root.find("payoffs")) {
        Reader r(*p, "payoffs");
        r.number("high_value", c.payoffs.high_value);
        r.number("low_value", c.payoffs.low_value);
        r.number("tie_value", c.payoffs.tie_value);
        r.finish();
    }
    root.integer("rounds", c.rounds);
    root.integer("dyads", c.dyads);
    if (const json* p = root.find("agents")) {
        Reader r(*p, "agents");
        c.variant = parse_variant(r.text("variant", std::string(to_string(c.variant))));
        r.finish();
    }
    if (const json* p = root.find("arena")) {
        Reader r(*p, "arena");
        ArenaConfig& a = c.arena;
        r.number("half_width", a.half_width);
        r.number("half_height", a.half_height);
        r.point("spot_pos_a", a.spot_pos_a);
        r.point("spot_pos_b", a.spot_pos_b);
        r.pose("start_pose_1", a.start_pose_1);
        r.pose("start_pose_2", a.start_pose_2);
        r.number("high_spot_radius", a.high_spot_radius);
        r.number("low_spot_radius", a.low_spot_radius);
        r.number("tie_radius", a.tie_radius);
        r.number("agent_radius", a.agent_radius);
        r.number("wheel_base", a.wheel_base);
        r.number("motor_gain", a.motor_gain);
        r.number("dt", a.dt);
        r.number("round_timeout", a.round_timeout);
        r.number("spot_sense_range", a.spot_sense_range);
        r.number("agent_sense_range", a.agent_sense_range);
        r.number("motor_noise_sigma", a.motor_noise_sigma);
        r.number("heading_jitter", a.heading_jitter);
        r.finish();
    }
    if (const json* p = root.find("reactive")) {
        Reader r(*p, "reactive");
        r.number("f", c.reactive.f);
        r.finish();
    }
    if (const json* p = root.find("adaptive")) {
        Reader r(*p, "adaptive");
        r.number("gamma", c.adaptive.gamma);
        r.number("eta", c.adaptive.eta);
        r.number("delta", c.adaptive.delta);
        r.finish();
    }
    root.seed("master_seed", c.master_seed);
    root.integer("parallelism", c.parallelism);
    if (const json* p = root.find("metrics")) {
        Reader r(*p, "metrics");
        const std::string f = r.text("fairness", "l1");
        if (f == "l1") {
            c.fairness = FairnessMethod::L1;
        } else if (f == "minmax") {
            c.fairness = FairnessMethod::MinMax;
        } else {
            throw ConfigError("metrics.fairness", "unknown method '" + f + "' (l1 | minmax)");
        }
        r.finish();
    }
    if (const json* p = root.find("game")) {
        Reader r(*p, "game");
        c.loser_payoff = parse_loser_payoff(r.text("loser_payoff", "matrix"));
        r.finish();
    }
    root.finish();
    c.validate();
    return c;
}

void apply_override(json& doc, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError(assignment, "override must look like key=value");
    }
    const std::string path = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);
    json value = json::parse(raw, nullptr, /*allow_exceptions=*/false);
    if (value.is_discarded()) {
        value = raw;
    }

    json* node = &doc;
    std::size_t start = 0;
    while (true) {
        const auto dot = path.find('.', start);
        const std::string part = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (part.empty()) {
            throw ConfigError(path, "malformed override key");
        }
        if (!node->is_object()) {
            if (!node->is_null()) {
                throw ConfigError(path, "cannot descend into a non-object value");
            }
            *node = json::object();
        }
        if (dot == std::string::npos) {
            (*node)[part] = value;
            return;
        }
        node = &(*node)[part];
        start = dot + 1;
    }
}

std::string config_fingerprint(const ExperimentConfig& config) {
    json doc = to_json(config);
    doc.erase("parallelism");  // scheduling never changes results
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(doc.dump())));
    return buf;
}

}  // namespace exes
