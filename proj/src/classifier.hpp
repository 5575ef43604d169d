#pragma once

#include "types.hpp"

namespace ditraj {

struct activation_thresholds {
    double t_state;    // horizons at or below this activate the speed limit
    double t_control;  // horizons at or below this activate the acceleration limit
};

// Largest horizon for which the speed constraint becomes active,
// 3L / (v0 + 2 v_max). Throws degenerate_denominator when v0 + 2 v_max == 0.
double state_threshold(const normalized_problem& np);

// Largest horizon for which the acceleration constraint becomes active: the
// positive root of u_max*t^2 + 3 v0 t - 3L = 0. Throws negative_radicand
// when the root is complex.
double control_threshold(const normalized_problem& np);

activation_thresholds thresholds(const normalized_problem& np);

struct feasibility_report {
    bool feasible;
    double min_distance;  // coasting at v0 for the whole horizon
    double max_distance;  // full effort until v_max, then coasting
};

// A canonical instance is solvable iff L lies in
// [v0*T, max_reachable_distance]; both ends within the tie tolerance count.
feasibility_report feasibility_check(const normalized_problem& np);

double max_reachable_distance(const normalized_problem& np);

// Assigns the instance to exactly one active-constraint profile. Measure-zero
// boundary cases (coasting start, full-horizon bang, degenerate bang-coast)
// are detected with a relative tie tolerance of 1e-12. Throws
// infeasible_problem when L is outside the reachable range.
profile_class classify(const normalized_problem& np);

}  // namespace ditraj
