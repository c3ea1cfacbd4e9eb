#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "exes/adaptive.hpp"
#include "exes/agent.hpp"
#include "exes/game.hpp"
#include "exes/reactive.hpp"
#include "exes/sim_core.hpp"

namespace exes {

enum class FairnessMethod : std::uint8_t { L1, MinMax };
std::string_view to_string(FairnessMethod m);

/// Full parameterisation of one experimental condition.
struct ExperimentConfig {
    Mode mode = Mode::Dynamic;
    PayoffScheme payoffs;
    int rounds = 0;  // 0: 50 for high-stakes schemes, 60 otherwise
    int dyads = 50;
    AgentVariant variant = AgentVariant::FullCRL;
    ArenaConfig arena;
    ReactiveParams reactive;
    LearningParams adaptive;
    std::uint64_t master_seed = 1;
    int parallelism = 1;
    FairnessMethod fairness = FairnessMethod::L1;
    LoserPayoff loser_payoff = LoserPayoff::Matrix;

    [[nodiscard]] int effective_rounds() const;
    void validate() const;
};

nlohmann::json to_json(const ExperimentConfig& config);

/// Reads a config object; absent keys keep their defaults, unknown keys are
/// rejected. Throws ConfigError.
ExperimentConfig config_from_json(const nlohmann::json& j);

/// Applies "dotted.key=value" overrides to a config document. The value is
/// parsed as JSON when possible and taken as a string otherwise.
void apply_override(nlohmann::json& doc, const std::string& assignment);

/// Stable hash of the canonical config document, 16 hex digits.
std::string config_fingerprint(const ExperimentConfig& config);

}  // namespace exes
