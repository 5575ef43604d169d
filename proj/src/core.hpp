#pragma once

#include <utility>

#include "types.hpp"

namespace ditraj {

// Validates a user-frame instance. Throws planner_error with
//  - limit_order_violation when u_min >= u_max or v_min >= v_max,
//  - initial_speed_out_of_bounds when v0 lies outside [v_min, v_max],
//  - nonpositive_horizon when terminal_time <= t0,
// and requires u_min < 0 < u_max so both speeding up and slowing down are
// available to the planner.
scenario make_scenario(double t0, double p0, double v0, double terminal_time,
                       double terminal_position, const limits& lim);

// Shifts the instance to start at t=0, p=0 and, when the required average
// speed is below v0 (a decelerating instance), mirrors it through the origin
// so the canonical problem always accelerates: u in [0, u_max], v <= v_max.
// The returned frame_map undoes the transform.
std::pair<normalized_problem, frame_map> normalize(const scenario& sc);

// Maps a canonical-frame plan back to user coordinates. Arc kinds and the
// energy are preserved; times are shifted and, for mirrored instances,
// controls, speeds and positions are negated.
trajectory_plan denormalize(const trajectory_plan& plan, const frame_map& map);

}  // namespace ditraj
