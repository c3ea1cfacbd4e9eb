#pragma once

#include "exes/sim_core.hpp"

namespace exes {

struct ReactiveParams {
    double f = 0.3;  // forward speed constant
};

/// Which reactive behaviours the adaptive layer has switched off for a round.
/// `inhibit_avoidance` is only ever set by the adaptive-only ablation.
struct InhibitionMask {
    bool inhibit_high_seek = false;
    bool inhibit_low_seek = false;
    bool inhibit_avoidance = false;

    friend bool operator==(const InhibitionMask&, const InhibitionMask&) = default;
};

/// Crossed excitatory / direct inhibitory wiring: turns toward the stimulus.
MotorCommand reward_seeking(double s_left, double s_right, double f);

/// Direct excitatory / crossed inhibitory wiring: turns away from the stimulus.
MotorCommand collision_avoidance(double s_left, double s_right, double f);

/// Superposes the turning terms of every active behaviour on a single forward
/// constant and clamps the result to [-1, 1].
MotorCommand compose_behaviors(const SensorReading& reading, const InhibitionMask& mask,
                               const ReactiveParams& params);

}  // namespace exes
