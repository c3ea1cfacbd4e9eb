#pragma once

#include <cstdint>
#include <string_view>

#include "exes/adaptive.hpp"
#include "exes/reactive.hpp"
#include "exes/rng.hpp"

namespace exes {

enum class AgentVariant : std::uint8_t { FullCRL, ReactiveOnly, AdaptiveOnly };

std::string_view to_string(AgentVariant v);
AgentVariant parse_variant(std::string_view text);  // throws ConfigError

struct AgentRoundPlan {
    ActionChoice action = ActionChoice::None;
    InhibitionMask mask;
};

/// Inhibitor wiring: going for one spot switches off attraction to the other.
InhibitionMask mask_for(ActionChoice action);

/// Chooses the round's action and the matching inhibition mask.
///
/// FullCRL samples from the actor. ReactiveOnly never consults the actor and
/// always plays None. AdaptiveOnly samples, resolves None by a fair coin
/// between the two spots and runs without collision avoidance.
AgentRoundPlan begin_round(AgentVariant variant, const PolicyTable& policy, GameState s_prev,
                           const LearningParams& params, Rng& rng);

/// Reactive controller under the plan's mask plus per-wheel Gaussian noise.
MotorCommand control_step(const AgentRoundPlan& plan, const SensorReading& reading, const ReactiveParams& params,
                          double noise_sigma, Rng& rng);

/// Applies one learning update unless the variant has no adaptive layer.
PolicyTable end_round(AgentVariant variant, const PolicyTable& policy, ActionChoice action, GameState s_prev,
                      double reward, GameState s_now, const LearningParams& params);

}  // namespace exes
