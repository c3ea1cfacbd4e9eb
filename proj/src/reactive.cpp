#include "exes/reactive.hpp"

namespace exes {

MotorCommand reward_seeking(double s_left, double s_right, double f) {
    return {f + s_right - s_left, f + s_left - s_right};
}

MotorCommand collision_avoidance(double s_left, double s_right, double f) {
    return {f + s_left - s_right, f + s_right - s_left};
}

MotorCommand compose_behaviors(const SensorReading& reading, const InhibitionMask& mask,
                               const ReactiveParams& params) {
    double left = params.f;
    double right = params.f;
    auto add = [&](const MotorCommand& behaviour) {
        left += behaviour.left - params.f;
        right += behaviour.right - params.f;
    };
    if (!mask.inhibit_high_seek) {
        add(reward_seeking(reading.high_left, reading.high_right, params.f));
    }
    if (!mask.inhibit_low_seek) {
        add(reward_seeking(reading.low_left, reading.low_right, params.f));
    }
    if (!mask.inhibit_avoidance) {
        add(collision_avoidance(reading.agent_left, reading.agent_right, params.f));
    }
    return MotorCommand{left, right}.clamped();
}

}  // namespace exes
