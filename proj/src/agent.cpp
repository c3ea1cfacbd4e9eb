#include "exes/agent.hpp"

#include <string>

#include "exes/errors.hpp"

namespace exes {

std::string_view to_string(AgentVariant v) {
    switch (v) {
        case AgentVariant::FullCRL: return "full_crl";
        case AgentVariant::ReactiveOnly: return "reactive_only";
        case AgentVariant::AdaptiveOnly: return "adaptive_only";
    }
    return "?";
}

AgentVariant parse_variant(std::string_view text) {
    for (auto v : {AgentVariant::FullCRL, AgentVariant::ReactiveOnly, AgentVariant::AdaptiveOnly}) {
        if (text == to_string(v)) {
            return v;
        }
    }
    throw ConfigError("agents.variant",
                      "unknown variant '" + std::string(text) + "' (full_crl | reactive_only | adaptive_only)");
}

InhibitionMask mask_for(ActionChoice action) {
    InhibitionMask mask;
    mask.inhibit_low_seek = action == ActionChoice::GoHigh;
    mask.inhibit_high_seek = action == ActionChoice::GoLow;
    return mask;
}

AgentRoundPlan begin_round(AgentVariant variant, const PolicyTable& policy, GameState s_prev,
                           const LearningParams& params, Rng& rng) {
    switch (variant) {
        case AgentVariant::ReactiveOnly:
            return {ActionChoice::None, InhibitionMask{}};
        case AgentVariant::FullCRL: {
            const ActionChoice a = select_action(policy, s_prev, params, rng);
            return {a, mask_for(a)};
        }
        case AgentVariant::AdaptiveOnly: {
            ActionChoice a = select_action(policy, s_prev, params, rng);
            if (a == ActionChoice::None) {
                a = rng.coin() ? ActionChoice::GoHigh : ActionChoice::GoLow;
            }
            AgentRoundPlan plan{a, mask_for(a)};
            plan.mask.inhibit_avoidance = true;
            return plan;
        }
    }
    throw InvariantError("unhandled agent variant");
}

MotorCommand control_step(const AgentRoundPlan& plan, const SensorReading& reading, const ReactiveParams& params,
                          double noise_sigma, Rng& rng) {
    MotorCommand cmd = compose_behaviors(reading, plan.mask, params);
    if (noise_sigma > 0.0) {
        cmd.left += rng.normal(noise_sigma);
        cmd.right += rng.normal(noise_sigma);
    }
    return cmd.clamped();
}

PolicyTable end_round(AgentVariant variant, const PolicyTable& policy, ActionChoice action, GameState s_prev,
                      double reward, GameState s_now, const LearningParams& params) {
    if (variant == AgentVariant::ReactiveOnly) {
        return policy;
    }
    return learn(policy, action, s_prev, reward, s_now, params);
}

}  // namespace exes
