#include "exes/game.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "exes/config.hpp"
#include "exes/errors.hpp"

namespace exes {

void PayoffScheme::validate() const {
    if (!(tie_value == 0.0)) {
        throw ConfigError("payoffs.tie_value", "must be 0");
    }
    if (!(low_value > tie_value)) {
        throw ConfigError("payoffs.low_value", "must be > payoffs.tie_value");
    }
    if (!(high_value >= low_value)) {
        throw ConfigError("payoffs.high_value", "must be >= payoffs.low_value");
    }
}

std::string PayoffScheme::label() const {
    if (high_value == 4.0 && low_value == 1.0) {
        return "high";
    }
    if (high_value == 2.0 && low_value == 1.0) {
        return "low";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g-%g", high_value, low_value);
    return buf;
}

std::string_view to_string(Mode m) { return m == Mode::Ballistic ? "ballistic" : "dynamic"; }

Mode parse_mode(std::string_view text) {
    if (text == "ballistic") return Mode::Ballistic;
    if (text == "dynamic") return Mode::Dynamic;
    throw ConfigError("mode", "unknown mode '" + std::string(text) + "' (ballistic | dynamic)");
}

std::string_view to_string(LoserPayoff l) { return l == LoserPayoff::Matrix ? "matrix" : "contact"; }

LoserPayoff parse_loser_payoff(std::string_view text) {
    if (text == "matrix") return LoserPayoff::Matrix;
    if (text == "contact") return LoserPayoff::Contact;
    throw ConfigError("game.loser_payoff", "unknown rule '" + std::string(text) + "' (matrix | contact)");
}

std::string_view to_string(Category c) {
    switch (c) {
        case Category::P1High: return "p1_high";
        case Category::P2High: return "p2_high";
        case Category::Tie: return "tie";
    }
    return "?";
}

std::string_view to_string(RoundEnd e) { return e == RoundEnd::Reached ? "reached" : "timeout"; }

std::array<GameState, 2> states_for(Category c) {
    switch (c) {
        case Category::P1High: return {GameState::High, GameState::Low};
        case Category::P2High: return {GameState::Low, GameState::High};
        case Category::Tie: break;
    }
    return {GameState::Tie, GameState::Tie};
}

RoundOutcome resolve_ballistic_round(ActionChoice a1, ActionChoice a2, const PayoffScheme& payoffs, Rng& rng) {
    auto commit = [&rng](ActionChoice a) {
        if (a != ActionChoice::None) {
            return a;
        }
        return rng.coin() ? ActionChoice::GoHigh : ActionChoice::GoLow;
    };
    const ActionChoice t1 = commit(a1);
    const ActionChoice t2 = commit(a2);

    RoundOutcome out;
    out.actions = {a1, a2};
    out.end = RoundEnd::Reached;
    out.duration = 0.0;
    if (t1 == t2) {
        out.category = Category::Tie;
        out.rewards = {payoffs.tie_value, payoffs.tie_value};
    } else if (t1 == ActionChoice::GoHigh) {
        out.category = Category::P1High;
        out.rewards = {payoffs.high_value, payoffs.low_value};
    } else {
        out.category = Category::P2High;
        out.rewards = {payoffs.low_value, payoffs.high_value};
    }
    out.states = states_for(out.category);
    return out;
}

bool allocate_spots(Rng& rng) { return rng.coin(); }

WorldState initial_world(const ArenaConfig& arena, Rng& rng) {
    WorldState world;
    world.high_at_a = allocate_spots(rng);
    world.pose_1 = arena.start_pose_1;
    world.pose_2 = arena.start_pose_2;
    world.pose_1.heading = normalize_angle(world.pose_1.heading + rng.uniform(-arena.heading_jitter, arena.heading_jitter));
    world.pose_2.heading = normalize_angle(world.pose_2.heading + rng.uniform(-arena.heading_jitter, arena.heading_jitter));
    world.elapsed = 0.0;
    return world;
}

RoundOutcome score_dynamic_end(const EndStatus& status, const WorldState& world,
                               const DynamicRoundSettings& settings) {
    const ArenaConfig& arena = settings.arena;
    const PayoffScheme& pay = settings.payoffs;
    RoundOutcome out;
    out.duration = world.elapsed;

    if (status.kind != EndStatus::Kind::Reached) {
        out.end = RoundEnd::Timeout;
        out.category = Category::Tie;
        out.rewards = {pay.tie_value, pay.tie_value};
        out.states = states_for(out.category);
        return out;
    }
    out.end = RoundEnd::Reached;

    const bool reached_high = status.spot == SpotKind::High;
    const Point reached = reached_high ? world.high_spot(arena) : world.low_spot(arena);
    const Point other_spot = reached_high ? world.low_spot(arena) : world.high_spot(arena);
    const int winner = status.agent_id;
    const int other = winner == 1 ? 2 : 1;

    const bool both_in_circle = distance(position(world.pose_1), reached) < arena.tie_radius &&
                                distance(position(world.pose_2), reached) < arena.tie_radius;
    if (both_in_circle) {
        out.category = Category::Tie;
        out.rewards = {pay.tie_value, pay.tie_value};
        out.states = states_for(out.category);
        return out;
    }

    const double winner_value = reached_high ? pay.high_value : pay.low_value;
    double other_value = reached_high ? pay.low_value : pay.high_value;
    if (settings.loser_payoff == LoserPayoff::Contact) {
        const double contact = reached_high ? arena.low_spot_radius : arena.high_spot_radius;
        if (!(distance(position(world.pose_of(other)), other_spot) < contact)) {
            other_value = pay.tie_value;
        }
    }
    out.rewards[static_cast<std::size_t>(winner - 1)] = winner_value;
    out.rewards[static_cast<std::size_t>(other - 1)] = other_value;

    // The high label goes to whoever holds the high spot by elimination.
    const int high_holder = reached_high ? winner : other;
    out.category = high_holder == 1 ? Category::P1High : Category::P2High;
    out.states = states_for(out.category);
    return out;
}

RoundOutcome run_dynamic_round(const std::array<AgentRoundPlan, 2>& plans, WorldState world,
                               const DynamicRoundSettings& settings, Rng& rng, std::vector<WorldState>* trace) {
    const ArenaConfig& arena = settings.arena;
    long step = 0;
    EndStatus status = round_end_check(world, arena);
    while (status.ongoing()) {
        const SensorReading r1 = read_sensors(world.pose_1, world, arena, 1);
        const SensorReading r2 = read_sensors(world.pose_2, world, arena, 2);
        const MotorCommand m1 = control_step(plans[0], r1, settings.reactive, arena.motor_noise_sigma, rng);
        const MotorCommand m2 = control_step(plans[1], r2, settings.reactive, arena.motor_noise_sigma, rng);
        world.pose_1 = integrate_kinematics(world.pose_1, m1, arena);
        world.pose_2 = integrate_kinematics(world.pose_2, m2, arena);
        ++step;
        world.elapsed = std::min(static_cast<double>(step) * arena.dt, arena.round_timeout);
        if (trace != nullptr) {
            trace->push_back(world);
        }
        status = round_end_check(world, arena);
    }
    RoundOutcome out = score_dynamic_end(status, world, settings);
    out.actions = {plans[0].action, plans[1].action};
    return out;
}

DyadResult play_dyad(const ExperimentConfig& config, std::uint64_t seed) {
    config.validate();
    Rng rng(seed);
    DyadResult result;
    result.seed = seed;
    result.config_fingerprint = config_fingerprint(config);
    const int rounds = config.effective_rounds();
    result.outcomes.reserve(static_cast<std::size_t>(rounds));

    const DynamicRoundSettings settings{config.arena, config.reactive, config.payoffs, config.loser_payoff};
    std::array<PolicyTable, 2> policy{};
    std::array<GameState, 2> prev{GameState::Tie, GameState::Tie};

    for (int t = 0; t < rounds; ++t) {
        std::array<AgentRoundPlan, 2> plans;
        for (std::size_t i = 0; i < 2; ++i) {
            if (config.mode == Mode::Ballistic) {
                // Ballistic play uses the adaptive layer alone and keeps None
                // as a first-class action resolved by the round itself.
                const ActionChoice a = config.variant == AgentVariant::ReactiveOnly
                                           ? ActionChoice::None
                                           : select_action(policy[i], prev[i], config.adaptive, rng);
                plans[i] = {a, mask_for(a)};
            } else {
                plans[i] = begin_round(config.variant, policy[i], prev[i], config.adaptive, rng);
            }
        }

        RoundOutcome out;
        if (config.mode == Mode::Ballistic) {
            out = resolve_ballistic_round(plans[0].action, plans[1].action, config.payoffs, rng);
        } else {
            out = run_dynamic_round(plans, initial_world(config.arena, rng), settings, rng);
        }

        for (std::size_t i = 0; i < 2; ++i) {
            if (plans[i].action == ActionChoice::None) {
                ++result.none_counts[i];
            }
            policy[i] = end_round(config.variant, policy[i], plans[i].action, prev[i], out.rewards[i], out.states[i],
                                  config.adaptive);
            prev[i] = out.states[i];
        }
        result.outcomes.push_back(out);
    }
    result.final_policies = policy;
    return result;
}

}  // namespace exes
