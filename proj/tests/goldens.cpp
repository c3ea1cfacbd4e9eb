#include "goldens.hpp"

#include <cmath>
#include <vector>

#include "exes/adaptive.hpp"
#include "exes/agent.hpp"
#include "exes/game.hpp"
#include "exes/metrics.hpp"
#include "exes/reactive.hpp"
#include "exes/rng.hpp"
#include "exes/sim_core.hpp"
#include "exes/stats.hpp"
#include "oracles.hpp"

namespace goldens {

bool Golden::holds() const { return std::abs(actual - expected) <= tolerance; }

namespace {

using namespace exes;

DyadResult dyad_of(const std::vector<std::pair<double, double>>& rewards, const std::vector<Category>& cats) {
    DyadResult d;
    for (std::size_t i = 0; i < cats.size(); ++i) {
        RoundOutcome o;
        if (i < rewards.size()) o.rewards = {rewards[i].first, rewards[i].second};
        o.category = cats[i];
        d.outcomes.push_back(o);
    }
    return d;
}

void sensors(std::vector<Golden>& g) {
    const double range = 4.0;
    const SensorPair edge = sense_entity(range, 0.0, range);
    g.push_back({"sim_core", "sensor at range, left", edge.left, 0.0});
    g.push_back({"sim_core", "sensor at range, right", edge.right, 0.0});
    const SensorPair ahead = sense_entity(range / 2.0, 0.0, range);
    g.push_back({"sim_core", "sensor dead ahead at half range, left", ahead.left, 0.5 * std::sqrt(0.5)});
    g.push_back({"sim_core", "sensor dead ahead at half range, right", ahead.right, 0.5 * std::sqrt(0.5)});
    const SensorPair side = sense_entity(range / 2.0, kPi / 4.0, range);
    g.push_back({"sim_core", "sensor 45 deg left, left", side.left, 0.5});
    g.push_back({"sim_core", "sensor 45 deg left, right", side.right, 0.0});

    ArenaConfig arena;
    arena.motor_gain = 10.0;
    arena.dt = 0.05;
    arena.wheel_base = 1.0;
    const Pose p = integrate_kinematics({0.0, 0.0, 0.0}, {0.2, 0.4}, arena);
    g.push_back({"sim_core", "kinematics heading", p.heading, 0.1});
    g.push_back({"sim_core", "kinematics x", p.x, 3.0 * std::cos(0.1) * 0.05});
    g.push_back({"sim_core", "kinematics y", p.y, 3.0 * std::sin(0.1) * 0.05});
    const Pose straight = integrate_kinematics({0.0, 0.0, 0.0}, {0.3, 0.3}, arena);
    g.push_back({"sim_core", "equal wheels translate", straight.x, 10.0 * 0.3 * 0.05});
    g.push_back({"sim_core", "equal wheels keep heading", straight.heading, 0.0});
    const Pose spin = integrate_kinematics({1.0, 2.0, 0.0}, {-0.5, 0.5}, arena);
    g.push_back({"sim_core", "opposite wheels keep x", spin.x, 1.0});
    g.push_back({"sim_core", "opposite wheels keep y", spin.y, 2.0});
    g.push_back({"sim_core", "opposite wheels rotate", spin.heading, 10.0 * 1.0 / 1.0 * 0.05});
}

void reactive(std::vector<Golden>& g) {
    auto pair = [&](const std::string& name, MotorCommand m, double l, double r) {
        g.push_back({"reactive", name + ", left", m.left, l});
        g.push_back({"reactive", name + ", right", m.right, r});
    };
    pair("seek (0,0)", reward_seeking(0.0, 0.0, 0.3), 0.3, 0.3);
    pair("seek (0.5,0)", reward_seeking(0.5, 0.0, 0.3), -0.2, 0.8);
    pair("seek (0.4,0.4)", reward_seeking(0.4, 0.4, 0.3), 0.3, 0.3);
    pair("avoid (0,0)", collision_avoidance(0.0, 0.0, 0.3), 0.3, 0.3);
    pair("avoid (0.5,0)", collision_avoidance(0.5, 0.0, 0.3), 0.8, -0.2);
    pair("avoid (0.3,0.3)", collision_avoidance(0.3, 0.3, 0.3), 0.3, 0.3);

    const ReactiveParams params;
    pair("compose, no input", compose_behaviors({}, {true, true, false}, params), 0.3, 0.3);
    SensorReading r;
    r.high_left = 0.5;
    r.agent_right = 0.2;
    pair("compose high seek plus avoidance", compose_behaviors(r, {false, true, false}, params), -0.4, 1.0);
    SensorReading opposed;
    opposed.high_left = 0.9;
    opposed.low_right = 0.9;
    pair("compose opposed pulls cancel", compose_behaviors(opposed, {}, params), 0.3, 0.3);
}

void adaptive(std::vector<Golden>& g) {
    const LearningParams params;
    PolicyTable fresh;
    const auto uniform = action_probabilities(fresh, GameState::Tie, params);
    for (std::size_t a = 0; a < kActionCount; ++a) {
        g.push_back({"adaptive", "fresh policy is uniform", uniform[a], 1.0 / 3.0});
    }
    PolicyTable skew;
    skew.c(ActionChoice::GoHigh, GameState::Low) = 1.8;
    const auto p = action_probabilities(skew, GameState::Low, params);
    g.push_back({"adaptive", "P(GoHigh) after C=1.8", p[0], 2.8 / 4.8});
    g.push_back({"adaptive", "P(GoLow) after C=1.8", p[1], 1.0 / 4.8});
    g.push_back({"adaptive", "P(None) after C=1.8", p[2], 1.0 / 4.8});
    PolicyTable equal;
    for (std::size_t a = 0; a < kActionCount; ++a) equal.counts[a][0] = 7.25;
    g.push_back({"adaptive", "equal counts are uniform", action_probabilities(equal, GameState::High, params)[1],
                 1.0 / 3.0});

    g.push_back({"adaptive", "td error on fresh policy", td_error(4.0, GameState::Tie, GameState::High, fresh, params),
                 4.0});
    PolicyTable v;
    v.v(GameState::High) = 1.0;
    v.v(GameState::Tie) = 0.5;
    g.push_back({"adaptive", "td error -0.1", td_error(0.0, GameState::Tie, GameState::High, v, params), -0.1});
    PolicyTable same;
    same.v(GameState::Low) = 2.5;
    g.push_back({"adaptive", "td error -0.6v", td_error(0.0, GameState::Low, GameState::Low, same, params),
                 -0.6 * 2.5});

    g.push_back({"adaptive", "critic step", update_critic(fresh, GameState::High, 4.0, params).v(GameState::High), 0.6});
    g.push_back({"adaptive", "actor step", update_actor(fresh, ActionChoice::GoLow, GameState::High, 4.0, params)
                                               .c(ActionChoice::GoLow, GameState::High),
                 1.8});
    PolicyTable half;
    half.c(ActionChoice::None, GameState::Tie) = 0.5;
    g.push_back({"adaptive", "actor clamp at zero",
                 update_actor(half, ActionChoice::None, GameState::Tie, -4.0, params).c(ActionChoice::None, GameState::Tie),
                 0.0});

    PolicyTable fixed;
    for (int i = 0; i < 1000; ++i) {
        fixed = learn(fixed, ActionChoice::GoHigh, GameState::High, 1.0, GameState::High, params);
    }
    g.push_back({"adaptive", "critic fixed point r/(1-gamma)", fixed.v(GameState::High), 1.0 / 0.6, 1e-3});
}

void agent(std::vector<Golden>& g) {
    const LearningParams params;
    const PolicyTable fresh;
    const PolicyTable after = end_round(AgentVariant::FullCRL, fresh, ActionChoice::GoHigh, GameState::Tie, 4.0,
                                        GameState::High, params);
    g.push_back({"agent", "end_round V(Tie)", after.v(GameState::Tie), 0.6});
    g.push_back({"agent", "end_round C(GoHigh, Tie)", after.c(ActionChoice::GoHigh, GameState::Tie), 1.8});
    const PolicyTable idle =
        end_round(AgentVariant::FullCRL, fresh, ActionChoice::None, GameState::Tie, 0.0, GameState::Tie, params);
    g.push_back({"agent", "zero error leaves policy", idle == fresh ? 1.0 : 0.0, 1.0});
    const PolicyTable ro =
        end_round(AgentVariant::ReactiveOnly, fresh, ActionChoice::None, GameState::Tie, 4.0, GameState::High, params);
    g.push_back({"agent", "reactive-only never learns", ro == fresh ? 1.0 : 0.0, 1.0});
}

void game(std::vector<Golden>& g) {
    const PayoffScheme high{4.0, 1.0, 0.0};
    Rng rng(7);
    const RoundOutcome split = resolve_ballistic_round(ActionChoice::GoHigh, ActionChoice::GoLow, high, rng);
    g.push_back({"game", "split pays high", split.rewards[0], 4.0});
    g.push_back({"game", "split pays low", split.rewards[1], 1.0});
    g.push_back({"game", "split category", split.category == Category::P1High ? 1.0 : 0.0, 1.0});
    const RoundOutcome clash = resolve_ballistic_round(ActionChoice::GoHigh, ActionChoice::GoHigh, high, rng);
    g.push_back({"game", "clash pays nothing", clash.rewards[0] + clash.rewards[1], 0.0});
    g.push_back({"game", "clash is a tie", clash.category == Category::Tie ? 1.0 : 0.0, 1.0});
}

void metrics(std::vector<Golden>& g) {
    const PayoffScheme high{4.0, 1.0, 0.0};
    const DyadResult all_split = dyad_of({{4, 1}, {1, 4}, {4, 1}}, {Category::P1High, Category::P2High, Category::P1High});
    g.push_back({"metrics", "efficiency all splits", efficiency(all_split, high), 1.0});
    const DyadResult ties = dyad_of({{0, 0}, {0, 0}}, {Category::Tie, Category::Tie});
    g.push_back({"metrics", "efficiency all ties", efficiency(ties, high), 0.0});
    const DyadResult half = dyad_of({{4, 1}, {0, 0}}, {Category::P1High, Category::Tie});
    g.push_back({"metrics", "efficiency 5/10", efficiency(half, high), 0.5});

    g.push_back({"metrics", "fairness 10/10", fairness_from_counts(10, 10), 1.0});
    g.push_back({"metrics", "fairness 10/0", fairness_from_counts(10, 0), 0.0});
    g.push_back({"metrics", "fairness 15/5", fairness_from_counts(15, 5), 0.5});

    const std::vector<Category> one{Category::P2High};
    g.push_back({"metrics", "first round surprisal", surprisal_series(one)[0], std::log(3.0)});
    const std::vector<Category> convention(50, Category::P1High);
    const auto s = surprisal_series(convention);
    double mean = 0.0;
    for (double x : s) mean += x;
    mean /= 50.0;
    g.push_back({"metrics", "50-round convention mean surprisal", mean, oracle::constant_run_mean_surprisal(50)});
    // The product of t / (t + 2) telescopes to 2 / (51 * 52).
    g.push_back({"metrics", "50-round convention closed form", mean, std::log(1326.0) / 50.0});

    std::vector<Category> alternate;
    for (int t = 0; t < 400; ++t) alternate.push_back(t % 2 == 0 ? Category::P1High : Category::P2High);
    g.push_back({"metrics", "turn-taking tends to ln 2", surprisal_series(alternate).back(), std::log(2.0), 5e-3});
}

void stats(std::vector<Golden>& g) {
    const auto kw = kruskal_wallis({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
    g.push_back({"stats", "Kruskal-Wallis H = 7.2", kw.statistic, 7.2});
    g.push_back({"stats", "Kruskal-Wallis p = exp(-3.6)", kw.p_value, std::exp(-3.6)});
    const auto flat = kruskal_wallis({{2, 2}, {2, 2}, {2, 2}});
    g.push_back({"stats", "identical groups H", flat.statistic, 0.0});
    g.push_back({"stats", "identical groups p", flat.p_value, 1.0});

    const std::vector<double> a{1, 2};
    const std::vector<double> b{3, 4};
    const auto u = mann_whitney_u(a, b);
    g.push_back({"stats", "MWU U", u.statistic, 0.0});
    g.push_back({"stats", "MWU exact p = 1/3", u.p_value, 1.0 / 3.0});
    const std::vector<double> same{3, 1, 4, 1, 5};
    const auto tie = mann_whitney_u(same, same);
    g.push_back({"stats", "MWU identical samples U", tie.statistic, 25.0 / 2.0});
    g.push_back({"stats", "MWU identical samples p", tie.p_value, 1.0});

    const std::vector<double> ones{1, 1, 1};
    g.push_back({"stats", "describe [1,1,1] mean", describe(ones).mean, 1.0});
    g.push_back({"stats", "describe [1,1,1] se", describe(ones).standard_error, 0.0});
    const std::vector<double> zo{0, 1};
    g.push_back({"stats", "describe [0,1] mean", describe(zo).mean, 0.5});
    g.push_back({"stats", "describe [0,1] se", describe(zo).standard_error, 0.5});
}

}  // namespace

std::vector<Golden> all() {
    std::vector<Golden> g;
    sensors(g);
    reactive(g);
    adaptive(g);
    agent(g);
    game(g);
    metrics(g);
    stats(g);
    return g;
}

}  // namespace goldens
