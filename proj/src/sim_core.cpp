#include "exes/sim_core.hpp"

#include <algorithm>
#include <cmath>

#include "exes/errors.hpp"

namespace exes {

double normalize_angle(double radians) {
    double a = std::remainder(radians, 2.0 * kPi);  // [-pi, pi]
    if (a <= -kPi) {
        a += 2.0 * kPi;
    }
    return a;
}

double distance(Point a, Point b) { return std::hypot(b.x - a.x, b.y - a.y); }

void ArenaConfig::validate() const {
    auto require = [](bool ok, const char* key, const char* what) {
        if (!ok) {
            throw ConfigError(key, what);
        }
    };
    require(half_width > 0.0, "arena.half_width", "must be > 0");
    require(half_height > 0.0, "arena.half_height", "must be > 0");
    require(low_spot_radius > 0.0, "arena.low_spot_radius", "must be > 0");
    require(high_spot_radius >= low_spot_radius, "arena.high_spot_radius", "must be >= arena.low_spot_radius");
    require(tie_radius > high_spot_radius, "arena.tie_radius", "must be > arena.high_spot_radius");
    require(agent_radius > 0.0, "arena.agent_radius", "must be > 0");
    require(wheel_base > 0.0, "arena.wheel_base", "must be > 0");
    require(motor_gain > 0.0, "arena.motor_gain", "must be > 0");
    require(dt > 0.0, "arena.dt", "must be > 0");
    require(round_timeout > 0.0, "arena.round_timeout", "must be > 0");
    require(spot_sense_range > 0.0, "arena.spot_sense_range", "must be > 0");
    require(agent_sense_range > 0.0, "arena.agent_sense_range", "must be > 0");
    require(motor_noise_sigma >= 0.0, "arena.motor_noise_sigma", "must be >= 0");
    require(heading_jitter >= 0.0, "arena.heading_jitter", "must be >= 0");
    require(distance(spot_pos_a, spot_pos_b) > 0.0, "arena.spot_pos_b", "spot positions must be distinct");

    // Start poses must mirror each other across a line through the spots'
    // midpoint: either the line joining the spots or its perpendicular.
    const Point mid{0.5 * (spot_pos_a.x + spot_pos_b.x), 0.5 * (spot_pos_a.y + spot_pos_b.y)};
    const double ux = (spot_pos_b.x - spot_pos_a.x) / distance(spot_pos_a, spot_pos_b);
    const double uy = (spot_pos_b.y - spot_pos_a.y) / distance(spot_pos_a, spot_pos_b);
    auto mirrors_across = [&](double dx, double dy) {
        const double px = start_pose_1.x - mid.x;
        const double py = start_pose_1.y - mid.y;
        const double along = px * dx + py * dy;
        const double rx = mid.x + 2.0 * along * dx - px;
        const double ry = mid.y + 2.0 * along * dy - py;
        const double axis_angle = std::atan2(dy, dx);
        const double rh = normalize_angle(2.0 * axis_angle - start_pose_1.heading);
        const double tol = 1e-9;
        return std::abs(rx - start_pose_2.x) < tol && std::abs(ry - start_pose_2.y) < tol &&
               std::abs(normalize_angle(rh - start_pose_2.heading)) < tol;
    };
    const bool mirrored = mirrors_across(ux, uy) || mirrors_across(-uy, ux);
    require(mirrored, "arena.start_pose_2", "start poses must mirror each other about an axis through the spots' midpoint");
}

MotorCommand MotorCommand::clamped() const {
    return {std::clamp(left, -1.0, 1.0), std::clamp(right, -1.0, 1.0)};
}

SensorPair sense_entity(double dist, double bearing, double range) {
    if (dist >= range) {
        return {};
    }
    const double proximity = std::max(0.0, 1.0 - dist / range);
    return {proximity * std::max(0.0, std::cos(bearing - kPi / 4.0)),
            proximity * std::max(0.0, std::cos(bearing + kPi / 4.0))};
}

namespace {

SensorPair sense_point(const Pose& observer, Point target, double range) {
    const double dx = target.x - observer.x;
    const double dy = target.y - observer.y;
    const double d = std::hypot(dx, dy);
    const double bearing = d > 0.0 ? normalize_angle(std::atan2(dy, dx) - observer.heading) : 0.0;
    return sense_entity(d, bearing, range);
}

}  // namespace

SensorReading read_sensors(const Pose& observer, const WorldState& world, const ArenaConfig& arena,
                           int observer_id) {
    const SensorPair high = sense_point(observer, world.high_spot(arena), arena.spot_sense_range);
    const SensorPair low = sense_point(observer, world.low_spot(arena), arena.spot_sense_range);
    const Pose& other = observer_id == 1 ? world.pose_2 : world.pose_1;
    const SensorPair agent = sense_point(observer, position(other), arena.agent_sense_range);
    return {high.left, high.right, low.left, low.right, agent.left, agent.right};
}

Pose integrate_kinematics(const Pose& pose, const MotorCommand& cmd, const ArenaConfig& arena) {
    const double v = arena.motor_gain * (cmd.left + cmd.right) / 2.0;
    const double omega = arena.motor_gain * (cmd.right - cmd.left) / arena.wheel_base;
    Pose next;
    next.heading = normalize_angle(pose.heading + omega * arena.dt);
    next.x = std::clamp(pose.x + v * std::cos(next.heading) * arena.dt, -arena.half_width, arena.half_width);
    next.y = std::clamp(pose.y + v * std::sin(next.heading) * arena.dt, -arena.half_height, arena.half_height);
    return next;
}

EndStatus round_end_check(const WorldState& world, const ArenaConfig& arena) {
    EndStatus best;
    double best_dist = 0.0;
    const Point spots[2] = {world.high_spot(arena), world.low_spot(arena)};
    const double radii[2] = {arena.high_spot_radius, arena.low_spot_radius};
    for (int agent = 1; agent <= 2; ++agent) {
        for (int s = 0; s < 2; ++s) {
            const double d = distance(position(world.pose_of(agent)), spots[s]);
            if (d < radii[s] && (best.ongoing() || d < best_dist)) {
                best = {EndStatus::Kind::Reached, agent, s == 0 ? SpotKind::High : SpotKind::Low};
                best_dist = d;
            }
        }
    }
    if (!best.ongoing()) {
        return best;
    }
    if (world.elapsed >= arena.round_timeout) {
        return {EndStatus::Kind::Timeout, 0, SpotKind::High};
    }
    return best;
}

Pose mirror_pose(const Pose& p) { return {p.x, -p.y, normalize_angle(-p.heading)}; }

}  // namespace exes
