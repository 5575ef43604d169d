#pragma once

#include <cstddef>
#include <vector>

#include "types.hpp"

namespace ditraj {

// Control/speed/position at time t. t must lie within the plan's horizon
// (tie tolerance at the ends); a junction time belongs to the following arc.
// Throws time_out_of_range otherwise.
state_sample eval(const trajectory_plan& plan, double t);

// Integral of u^2 over the horizon, recomputed arc-wise in closed form.
double energy(const trajectory_plan& plan);

// n uniformly spaced samples across the horizon (endpoints included) merged
// with every junction time, sorted and deduplicated within 1e-15. Requires
// n >= 2.
std::vector<state_sample> sample(const trajectory_plan& plan, std::size_t n);

// Bounds and target used when validating a plan in a particular frame.
struct validation_limits {
    double u_lo;
    double u_hi;
    double v_lo;
    double v_hi;
    double terminal_position;
};

// Dense-samples the plan (min_samples points plus junctions) against the
// given bounds and reports worst-case violations, terminal position error,
// junction discontinuities and the terminal control value.
diagnostics validate(const trajectory_plan& plan, const validation_limits& lim,
                     std::size_t min_samples = 10001);

// Canonical-frame convenience: bounds [0, u_max] x [v0, v_max], target L.
diagnostics validate(const trajectory_plan& plan, const normalized_problem& np,
                     std::size_t min_samples = 10001);

}  // namespace ditraj
