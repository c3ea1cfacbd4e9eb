#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

#include "exes/rng.hpp"

namespace exes {

/// Outcome of the previous round from one agent's point of view.
enum class GameState : std::uint8_t { High = 0, Low = 1, Tie = 2 };

enum class ActionChoice : std::uint8_t { GoHigh = 0, GoLow = 1, None = 2 };

inline constexpr std::size_t kStateCount = 3;
inline constexpr std::size_t kActionCount = 3;

std::string_view to_string(GameState s);
std::string_view to_string(ActionChoice a);

struct LearningParams {
    double gamma = 0.40;  // discount
    double eta = 0.15;    // critic learning rate
    double delta = 0.45;  // actor learning rate
    int k = static_cast<int>(kActionCount);

    void validate() const;
};

/// Critic values V(s) and actor counts C(a, s). Both start at zero.
struct PolicyTable {
    std::array<double, kStateCount> value{};
    std::array<std::array<double, kStateCount>, kActionCount> counts{};  // counts[a][s]

    [[nodiscard]] double v(GameState s) const { return value[static_cast<std::size_t>(s)]; }
    double& v(GameState s) { return value[static_cast<std::size_t>(s)]; }
    [[nodiscard]] double c(ActionChoice a, GameState s) const {
        return counts[static_cast<std::size_t>(a)][static_cast<std::size_t>(s)];
    }
    double& c(ActionChoice a, GameState s) {
        return counts[static_cast<std::size_t>(a)][static_cast<std::size_t>(s)];
    }

    friend bool operator==(const PolicyTable&, const PolicyTable&) = default;
};

using ActionDistribution = std::array<double, kActionCount>;

/// Laplace's rule of succession over the actor counts of state `s`.
ActionDistribution action_probabilities(const PolicyTable& policy, GameState s, const LearningParams& params);

/// Draws one action for state `s_prev`; consumes exactly one uniform draw.
ActionChoice select_action(const PolicyTable& policy, GameState s_prev, const LearningParams& params, Rng& rng);

/// Same inverse-CDF mapping as select_action, for a caller-supplied u in [0, 1).
ActionChoice sample_action(const ActionDistribution& probs, double u);

double td_error(double reward, GameState s_prev, GameState s_now, const PolicyTable& policy,
                const LearningParams& params);

PolicyTable update_critic(PolicyTable policy, GameState s_prev, double error, const LearningParams& params);

/// Actor counts are floored at zero.
PolicyTable update_actor(PolicyTable policy, ActionChoice action, GameState s_prev, double error,
                         const LearningParams& params);

/// One full learning step: the TD error uses the pre-update critic, then the
/// critic and actor are both updated with it.
PolicyTable learn(const PolicyTable& policy, ActionChoice action, GameState s_prev, double reward, GameState s_now,
                  const LearningParams& params);

}  // namespace exes
