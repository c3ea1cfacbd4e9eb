#pragma once

#include <cstdint>

namespace exes {

inline constexpr double kPi = 3.14159265358979323846;

/// Wraps an angle into (-pi, pi].
double normalize_angle(double radians);

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct Pose {
    double x = 0.0;
    double y = 0.0;
    double heading = 0.0;  // radians, (-pi, pi]
};

/// Geometry, motion scale and sensing ranges of the two-spot arena.
///
/// The shipped defaults are the calibrated profile: a 20x20 square arena with
/// the spots on the vertical axis and the agents facing each other across
/// it, mirrored about x = 0 so that neither seat is favoured. Both spots are
/// equidistant from both starts. The tie circle, noise, jitter and sensing
/// ranges were tuned once against the dynamic benchmark and then frozen; see
/// the README for the values and the reasoning.
struct ArenaConfig {
    double half_width = 10.0;
    double half_height = 10.0;
    Point spot_pos_a{0.0, 6.0};
    Point spot_pos_b{0.0, -6.0};
    Pose start_pose_1{-7.0, 0.0, 0.0};
    Pose start_pose_2{7.0, 0.0, kPi};
    double high_spot_radius = 1.0;
    double low_spot_radius = 0.6;
    double tie_radius = 1.1;
    double agent_radius = 0.5;
    double wheel_base = 1.0;
    double motor_gain = 10.0;
    double dt = 0.05;
    double round_timeout = 10.0;
    double spot_sense_range = 15.0;
    double agent_sense_range = 4.0;
    double motor_noise_sigma = 0.2;
    double heading_jitter = 40.0 * kPi / 180.0;

    /// Throws ConfigError naming the first violated constraint.
    void validate() const;
};

struct WorldState {
    Pose pose_1;
    Pose pose_2;
    bool high_at_a = true;
    double elapsed = 0.0;

    [[nodiscard]] Point high_spot(const ArenaConfig& arena) const {
        return high_at_a ? arena.spot_pos_a : arena.spot_pos_b;
    }
    [[nodiscard]] Point low_spot(const ArenaConfig& arena) const {
        return high_at_a ? arena.spot_pos_b : arena.spot_pos_a;
    }
    [[nodiscard]] const Pose& pose_of(int agent_id) const { return agent_id == 1 ? pose_1 : pose_2; }
    [[nodiscard]] Pose& pose_of(int agent_id) { return agent_id == 1 ? pose_1 : pose_2; }
};

/// Left/right activations of the three sensor pairs, each in [0, 1].
struct SensorReading {
    double high_left = 0.0;
    double high_right = 0.0;
    double low_left = 0.0;
    double low_right = 0.0;
    double agent_left = 0.0;
    double agent_right = 0.0;
};

struct MotorCommand {
    double left = 0.0;
    double right = 0.0;

    [[nodiscard]] MotorCommand clamped() const;
};

struct SensorPair {
    double left = 0.0;
    double right = 0.0;
};

/// Cosine-lobe pair at +/-45 degrees with linear distance falloff.
/// `bearing` is relative to the heading, positive to the left.
SensorPair sense_entity(double distance, double bearing, double range);

/// Reads the six proximity sensors of agent `observer_id` (1 or 2).
SensorReading read_sensors(const Pose& observer, const WorldState& world, const ArenaConfig& arena,
                           int observer_id);

/// Differential-drive update: heading first, then translation along the new
/// heading. The resulting centre is clipped to the arena bounds.
Pose integrate_kinematics(const Pose& pose, const MotorCommand& cmd, const ArenaConfig& arena);

enum class SpotKind : std::uint8_t { High, Low };

struct EndStatus {
    enum class Kind : std::uint8_t { Ongoing, Reached, Timeout };
    Kind kind = Kind::Ongoing;
    int agent_id = 0;  // set when kind == Reached
    SpotKind spot = SpotKind::High;

    [[nodiscard]] bool ongoing() const { return kind == Kind::Ongoing; }
};

double distance(Point a, Point b);
inline Point position(const Pose& p) { return {p.x, p.y}; }

/// Contact takes precedence over timeout. When several (agent, spot) contacts
/// happen in the same step the one with the smallest centre distance wins.
EndStatus round_end_check(const WorldState& world, const ArenaConfig& arena);

/// Reflection of a pose across y = 0. In the default arena this swaps the two
/// spot positions and maps each start pose onto itself.
Pose mirror_pose(const Pose& p);

}  // namespace exes
