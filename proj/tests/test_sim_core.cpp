#include <doctest.h>

#include <cmath>

#include "exes/errors.hpp"
#include "exes/sim_core.hpp"

using namespace exes;

TEST_CASE("normalize_angle wraps into (-pi, pi]") {
    CHECK(normalize_angle(kPi) == doctest::Approx(kPi));
    CHECK(normalize_angle(-kPi) == doctest::Approx(kPi));
    CHECK(normalize_angle(3.0 * kPi / 2.0) == doctest::Approx(-kPi / 2.0));
    CHECK(normalize_angle(0.25) == doctest::Approx(0.25));
}

TEST_CASE("sensor pair mirrors across the heading axis") {
    for (double bearing : {0.1, 0.4, 0.9, 1.5, 2.2}) {
        for (double d : {0.5, 1.7, 3.2}) {
            const SensorPair l = sense_entity(d, bearing, 4.0);
            const SensorPair r = sense_entity(d, -bearing, 4.0);
            CHECK(l.left == doctest::Approx(r.right).epsilon(1e-12));
            CHECK(l.right == doctest::Approx(r.left).epsilon(1e-12));
        }
    }
}

TEST_CASE("activation falls with distance and vanishes at range") {
    double previous = 2.0;
    for (double d = 0.0; d < 4.0; d += 0.25) {
        const double now = sense_entity(d, 0.3, 4.0).left;
        CHECK(now < previous);
        previous = now;
    }
    CHECK(sense_entity(4.0, 0.3, 4.0).left == 0.0);
    CHECK(sense_entity(9.0, 0.3, 4.0).right == 0.0);
}

TEST_CASE("entity behind the agent is invisible") {
    const SensorPair behind = sense_entity(1.0, kPi, 4.0);
    CHECK(behind.left == 0.0);
    CHECK(behind.right == 0.0);
}

TEST_CASE("read_sensors assigns each entity to its own pair") {
    ArenaConfig arena;
    WorldState w;
    w.high_at_a = true;
    w.pose_1 = {0.0, 0.0, kPi / 2.0};  // facing spot A, which holds the high reward
    w.pose_2 = {9.0, 9.0, 0.0};        // outside agent range
    const SensorReading r = read_sensors(w.pose_1, w, arena, 1);
    CHECK(r.high_left == doctest::Approx(r.high_right));
    CHECK(r.high_left > 0.0);
    CHECK(r.low_left == 0.0);  // spot B is straight behind
    CHECK(r.agent_left == 0.0);
    CHECK(r.agent_right == 0.0);
}

TEST_CASE("kinematics clips the centre to the arena") {
    ArenaConfig arena;
    const Pose p = integrate_kinematics({arena.half_width - 0.01, 0.0, 0.0}, {1.0, 1.0}, arena);
    CHECK(p.x == arena.half_width);
    const Pose q = integrate_kinematics({0.0, -arena.half_height, -kPi / 2.0}, {1.0, 1.0}, arena);
    CHECK(q.y == -arena.half_height);
}

TEST_CASE("round_end_check") {
    ArenaConfig arena;
    WorldState w;
    w.pose_1 = {-7.0, 0.0, 0.0};
    w.pose_2 = {7.0, 0.0, kPi};

    SUBCASE("far from both spots before the timeout") {
        w.elapsed = 1.0;
        CHECK(round_end_check(w, arena).ongoing());
    }
    SUBCASE("centre on the high spot") {
        const Point h = w.high_spot(arena);
        w.pose_1 = {h.x, h.y, 0.0};
        const EndStatus s = round_end_check(w, arena);
        CHECK(s.kind == EndStatus::Kind::Reached);
        CHECK(s.agent_id == 1);
        CHECK(s.spot == SpotKind::High);
    }
    SUBCASE("timeout is inclusive") {
        w.elapsed = arena.round_timeout;
        CHECK(round_end_check(w, arena).kind == EndStatus::Kind::Timeout);
    }
    SUBCASE("contact beats timeout and the closer agent wins") {
        const Point h = w.high_spot(arena);
        w.pose_1 = {h.x + 0.5, h.y, 0.0};
        w.pose_2 = {h.x - 0.2, h.y, 0.0};
        w.elapsed = arena.round_timeout;
        const EndStatus s = round_end_check(w, arena);
        CHECK(s.kind == EndStatus::Kind::Reached);
        CHECK(s.agent_id == 2);
    }
    SUBCASE("low spot uses its own radius") {
        const Point l = w.low_spot(arena);
        w.pose_2 = {l.x + arena.low_spot_radius + 0.05, l.y, 0.0};
        CHECK(round_end_check(w, arena).ongoing());
        w.pose_2.x = l.x + arena.low_spot_radius - 0.05;
        const EndStatus s = round_end_check(w, arena);
        CHECK(s.agent_id == 2);
        CHECK(s.spot == SpotKind::Low);
    }
}

TEST_CASE("arena validation names the offending key") {
    ArenaConfig arena;
    CHECK_NOTHROW(arena.validate());

    ArenaConfig bad = arena;
    bad.tie_radius = bad.high_spot_radius;
    try {
        bad.validate();
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.key() == "arena.tie_radius");
    }

    ArenaConfig lopsided = arena;
    lopsided.start_pose_2.x = 6.0;
    CHECK_THROWS_AS(lopsided.validate(), ConfigError);

    ArenaConfig same_spot = arena;
    same_spot.spot_pos_b = same_spot.spot_pos_a;
    CHECK_THROWS_AS(same_spot.validate(), ConfigError);
}

TEST_CASE("mirror_pose swaps the default spots and fixes the starts") {
    ArenaConfig arena;
    const Pose a{arena.spot_pos_a.x, arena.spot_pos_a.y, 0.3};
    const Pose m = mirror_pose(a);
    CHECK(m.x == doctest::Approx(arena.spot_pos_b.x));
    CHECK(m.y == doctest::Approx(arena.spot_pos_b.y));
    CHECK(m.heading == doctest::Approx(-0.3));
    const Pose s = mirror_pose(arena.start_pose_1);
    CHECK(s.x == arena.start_pose_1.x);
    CHECK(s.y == doctest::Approx(arena.start_pose_1.y));
}
