#include "exes/adaptive.hpp"

#include <algorithm>

#include "exes/errors.hpp"

namespace exes {

std::string_view to_string(GameState s) {
    switch (s) {
        case GameState::High: return "high";
        case GameState::Low: return "low";
        case GameState::Tie: return "tie";
    }
    return "?";
}

std::string_view to_string(ActionChoice a) {
    switch (a) {
        case ActionChoice::GoHigh: return "go_high";
        case ActionChoice::GoLow: return "go_low";
        case ActionChoice::None: return "none";
    }
    return "?";
}

void LearningParams::validate() const {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw ConfigError("adaptive.gamma", "adaptive.gamma ∈ [0,1]");
    }
    if (!(eta > 0.0)) {
        throw ConfigError("adaptive.eta", "adaptive.eta > 0");
    }
    if (!(delta > 0.0)) {
        throw ConfigError("adaptive.delta", "adaptive.delta > 0");
    }
    if (k != static_cast<int>(kActionCount)) {
        throw ConfigError("adaptive.k", "adaptive.k must equal the number of actions (3)");
    }
}

ActionDistribution action_probabilities(const PolicyTable& policy, GameState s, const LearningParams& params) {
    double total = 0.0;
    for (std::size_t a = 0; a < kActionCount; ++a) {
        total += policy.c(static_cast<ActionChoice>(a), s);
    }
    const double denom = total + static_cast<double>(params.k);
    ActionDistribution p{};
    for (std::size_t a = 0; a < kActionCount; ++a) {
        p[a] = (policy.c(static_cast<ActionChoice>(a), s) + 1.0) / denom;
    }
    return p;
}

ActionChoice sample_action(const ActionDistribution& probs, double u) {
    double cumulative = 0.0;
    for (std::size_t a = 0; a + 1 < kActionCount; ++a) {
        cumulative += probs[a];
        if (u < cumulative) {
            return static_cast<ActionChoice>(a);
        }
    }
    return static_cast<ActionChoice>(kActionCount - 1);
}

ActionChoice select_action(const PolicyTable& policy, GameState s_prev, const LearningParams& params, Rng& rng) {
    return sample_action(action_probabilities(policy, s_prev, params), rng.uniform());
}

double td_error(double reward, GameState s_prev, GameState s_now, const PolicyTable& policy,
                const LearningParams& params) {
    return reward + params.gamma * policy.v(s_now) - policy.v(s_prev);
}

PolicyTable update_critic(PolicyTable policy, GameState s_prev, double error, const LearningParams& params) {
    policy.v(s_prev) += params.eta * error;
    return policy;
}

PolicyTable update_actor(PolicyTable policy, ActionChoice action, GameState s_prev, double error,
                         const LearningParams& params) {
    double& c = policy.c(action, s_prev);
    c = std::max(0.0, c + params.delta * error);
    return policy;
}

PolicyTable learn(const PolicyTable& policy, ActionChoice action, GameState s_prev, double reward, GameState s_now,
                  const LearningParams& params) {
    const double e = td_error(reward, s_prev, s_now, policy, params);
    return update_actor(update_critic(policy, s_prev, e, params), action, s_prev, e, params);
}

}  // namespace exes
