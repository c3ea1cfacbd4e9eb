#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "exes/adaptive.hpp"
#include "exes/agent.hpp"
#include "exes/reactive.hpp"
#include "exes/rng.hpp"
#include "exes/sim_core.hpp"

namespace exes {

struct ExperimentConfig;

struct PayoffScheme {
    double high_value = 4.0;
    double low_value = 1.0;
    double tie_value = 0.0;

    void validate() const;
    /// "high", "low", or "<high>-<low>" for any other scheme.
    [[nodiscard]] std::string label() const;
};

enum class Mode : std::uint8_t { Ballistic, Dynamic };
std::string_view to_string(Mode m);
Mode parse_mode(std::string_view text);

/// How the agent that did not end the round is paid in dynamic play.
/// Matrix: it collects the other spot, as in the payoff matrix.
/// Contact: only if it is itself inside the other spot's contact radius.
enum class LoserPayoff : std::uint8_t { Matrix, Contact };
std::string_view to_string(LoserPayoff l);
LoserPayoff parse_loser_payoff(std::string_view text);

enum class Category : std::uint8_t { P1High, P2High, Tie };
std::string_view to_string(Category c);

enum class RoundEnd : std::uint8_t { Reached, Timeout };
std::string_view to_string(RoundEnd e);

struct RoundOutcome {
    std::array<double, 2> rewards{};
    Category category = Category::Tie;
    std::array<ActionChoice, 2> actions{ActionChoice::None, ActionChoice::None};
    RoundEnd end = RoundEnd::Reached;
    double duration = 0.0;
    std::array<GameState, 2> states{GameState::Tie, GameState::Tie};
};

struct DyadResult {
    std::vector<RoundOutcome> outcomes;
    std::array<int, 2> none_counts{};
    std::uint64_t seed = 0;
    std::string config_fingerprint;
    std::array<PolicyTable, 2> final_policies{};
};

/// Per-agent state labels implied by an outcome category.
std::array<GameState, 2> states_for(Category c);

/// Ballistic round: None becomes a fair coin between the spots (agent 1's coin
/// is drawn first), then the payoff matrix decides.
RoundOutcome resolve_ballistic_round(ActionChoice a1, ActionChoice a2, const PayoffScheme& payoffs, Rng& rng);

/// One fair Bernoulli draw: true when spot position A holds the high reward.
bool allocate_spots(Rng& rng);

/// Fresh round world: random spot allocation, then start-heading jitter for
/// agent 1 and agent 2 (three draws in that order).
WorldState initial_world(const ArenaConfig& arena, Rng& rng);

struct DynamicRoundSettings {
    ArenaConfig arena;
    ReactiveParams reactive;
    PayoffScheme payoffs;
    LoserPayoff loser_payoff = LoserPayoff::Matrix;
};

/// Embodied round: both agents sense, act and move each tick until a spot is
/// reached or the round times out. `trace`, when given, receives the world
/// after every tick.
RoundOutcome run_dynamic_round(const std::array<AgentRoundPlan, 2>& plans, WorldState world,
                               const DynamicRoundSettings& settings, Rng& rng,
                               std::vector<WorldState>* trace = nullptr);

/// Scores a finished dynamic world (the status must not be Ongoing).
RoundOutcome score_dynamic_end(const EndStatus& status, const WorldState& world,
                               const DynamicRoundSettings& settings);

/// Plays the configured number of rounds with one seeded generator.
DyadResult play_dyad(const ExperimentConfig& config, std::uint64_t seed);

}  // namespace exes
