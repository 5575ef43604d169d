#pragma once

#include "types.hpp"

namespace ditraj {

// Scalars shared by the junction formulas.
struct switch_quantities {
    double beta;            // v_max - v0, speed headroom
    double psi;             // 6 u_max (v_max T - L) - 3 beta^2
    double alpha_unc;       // slope of the unconstrained control
    double terminal_slack;  // v_max T - L
};

switch_quantities compute_switch_quantities(const normalized_problem& np);

// Slope of the unconstrained optimal control u(t) = alpha (t - T),
// alpha = 3 (v0 T - L) / T^3. Non-positive on canonical instances.
double alpha_unconstrained(const normalized_problem& np);

// Junction time of the bang->affine profile: the admissible root
// T - sqrt(3) * sqrt(T^2 - 2 (L - v0 T)/u_max), evaluated in a
// cancellation-free form. Throws negative_discriminant when the radicand is
// negative and junction_out_of_range when the root leaves [0, T).
double bang_affine_junction(const normalized_problem& np);

// Junction time of the affine->coast profile,
// 3 (v_max T - L) / (v_max - v0). Throws junction_out_of_range when the
// result leaves (0, T].
double affine_coast_junction(const normalized_problem& np);

// Evaluation counts for the two single-constraint junction formulas above.
// Lets tests confirm that an instance was classified without touching the
// single-constraint routes.
struct junction_counters {
    static thread_local unsigned long long bang_affine;
    static thread_local unsigned long long affine_coast;
    static void reset();
};

trajectory_plan plan_unconstrained(const normalized_problem& np);
trajectory_plan plan_affine_coast(const normalized_problem& np);
trajectory_plan plan_bang_affine(const normalized_problem& np);
// Covers both the generic three-arc profile and its degenerate bang-coast
// form (psi == 0, affine arc of zero length). Throws negative_psi when psi
// is negative beyond the tie tolerance.
trajectory_plan plan_bang_affine_coast(const normalized_problem& np);
trajectory_plan plan_bang(const normalized_problem& np);

// Classifies and dispatches to the matching constructor.
trajectory_plan plan(const normalized_problem& np);

}  // namespace ditraj
