#include <doctest.h>

#include <cmath>

#include "exes/reactive.hpp"
#include "exes/sim_core.hpp"

using namespace exes;

namespace {

const InhibitionMask kMasks[] = {
    {false, false, false}, {true, false, false}, {false, true, false},
    {true, true, false},   {true, true, true},   {false, false, true},
};

}  // namespace

TEST_CASE("silent sensors drive straight ahead under every mask") {
    const ReactiveParams params;
    for (const auto& mask : kMasks) {
        const MotorCommand m = compose_behaviors({}, mask, params);
        CHECK(m.left == params.f);
        CHECK(m.right == params.f);
    }
}

TEST_CASE("swapping one behaviour's inputs swaps the wheels") {
    const ReactiveParams params;
    const SensorReading r{0.2, 0.05, 0.0, 0.0, 0.1, 0.0};
    const SensorReading swapped{0.05, 0.2, 0.0, 0.0, 0.0, 0.1};
    const MotorCommand a = compose_behaviors(r, {}, params);
    const MotorCommand b = compose_behaviors(swapped, {}, params);
    CHECK(a.left == doctest::Approx(b.right));
    CHECK(a.right == doctest::Approx(b.left));
}

TEST_CASE("inhibiting a silent behaviour changes nothing") {
    const ReactiveParams params;
    const SensorReading r{0.3, 0.1, 0.0, 0.0, 0.2, 0.4};
    const MotorCommand open = compose_behaviors(r, {}, params);
    const MotorCommand shut = compose_behaviors(r, {false, true, false}, params);
    CHECK(open.left == shut.left);
    CHECK(open.right == shut.right);
}

TEST_CASE("composition clamps to the unit range") {
    const ReactiveParams params;
    const SensorReading r{1.0, 0.0, 1.0, 0.0, 0.0, 1.0};
    const MotorCommand m = compose_behaviors(r, {}, params);
    CHECK(m.left == -1.0);
    CHECK(m.right == 1.0);
}

TEST_CASE("seeking is attractive and avoidance repulsive in closed loop") {
    ArenaConfig arena;
    arena.half_width = 50.0;
    arena.half_height = 50.0;
    const ReactiveParams params;

    SUBCASE("a seeker closes on an off-axis target") {
        const Point target{3.0, 1.5};
        Pose p{0.0, 0.0, 0.0};
        const double start = distance(position(p), target);
        double closest = start;
        for (int step = 0; step < 50; ++step) {
            const double dx = target.x - p.x;
            const double dy = target.y - p.y;
            const SensorPair s =
                sense_entity(std::hypot(dx, dy), normalize_angle(std::atan2(dy, dx) - p.heading), 10.0);
            p = integrate_kinematics(p, reward_seeking(s.left, s.right, params.f).clamped(), arena);
            closest = std::min(closest, distance(position(p), target));
        }
        CHECK(closest < 0.5);
    }

    SUBCASE("two avoiders on a near collision course end up further apart") {
        Pose a{-1.5, 0.2, 0.0};
        Pose b{1.5, -0.2, kPi};
        const double start = distance(position(a), position(b));
        for (int step = 0; step < 50; ++step) {
            auto sense = [&](const Pose& self, const Pose& other) {
                const double dx = other.x - self.x;
                const double dy = other.y - self.y;
                return sense_entity(std::hypot(dx, dy), normalize_angle(std::atan2(dy, dx) - self.heading),
                                    arena.agent_sense_range);
            };
            const SensorPair sa = sense(a, b);
            const SensorPair sb = sense(b, a);
            a = integrate_kinematics(a, collision_avoidance(sa.left, sa.right, params.f).clamped(), arena);
            b = integrate_kinematics(b, collision_avoidance(sb.left, sb.right, params.f).clamped(), arena);
        }
        CHECK(distance(position(a), position(b)) > start);
        // They turned away rather than passing through each other.
        CHECK(a.y > 0.2);
        CHECK(b.y < -0.2);
    }
}
