#include "classifier.hpp"

#include <cmath>

#include "numeric.hpp"
#include "planner.hpp"

namespace ditraj {

namespace {

void check_domain(const normalized_problem& np) {
    if (!(np.T > 0.0)) {
        throw planner_error(error_code::nonpositive_horizon, "horizon must be positive");
    }
    if (!(np.u_max > 0.0)) {
        throw planner_error(error_code::limit_order_violation,
                            "canonical acceleration limit must be positive");
    }
    if (np.v0 > np.v_max && !tie(np.v0, np.v_max)) {
        throw planner_error(error_code::initial_speed_out_of_bounds,
                            "initial speed exceeds the speed limit");
    }
}

// Activation of the speed limit, written in product form so the comparison
// keeps the right sense when v0 + 2 v_max is negative (possible on mirrored
// instances): the unconstrained terminal speed reaches v_max iff
// T (v0 + 2 v_max) <= 3 L.
bool speed_limit_active(const normalized_problem& np) {
    return le_tie(np.T * (np.v0 + 2.0 * np.v_max), 3.0 * np.L);
}

// Activation of the acceleration limit: the unconstrained initial control
// 3 (L - v0 T) / T^2 reaches u_max iff u_max T^2 + 3 v0 T <= 3 L.
bool control_limit_active(const normalized_problem& np) {
    return le_tie(np.u_max * np.T * np.T + 3.0 * np.v0 * np.T, 3.0 * np.L);
}

bool psi_is_zero(const normalized_problem& np) {
    const switch_quantities q = compute_switch_quantities(np);
    return std::abs(q.psi) <= k_tie_rel * std::max(1.0, 3.0 * q.beta * q.beta);
}

}  // namespace

double state_threshold(const normalized_problem& np) {
    check_domain(np);
    const double denom = np.v0 + 2.0 * np.v_max;
    if (denom == 0.0) {
        throw planner_error(error_code::degenerate_denominator,
                            "state threshold undefined when v0 + 2 v_max vanishes");
    }
    return 3.0 * np.L / denom;
}

double control_threshold(const normalized_problem& np) {
    check_domain(np);
    const double radicand = 9.0 * np.v0 * np.v0 + 12.0 * np.u_max * np.L;
    if (radicand < 0.0) {
        throw planner_error(error_code::negative_radicand,
                            "control threshold undefined for this v0, L pair");
    }
    const double root = std::sqrt(radicand);
    if (np.v0 >= 0.0) {
        // Equivalent to (-3 v0 + root) / (2 u_max) without cancellation.
        const double denom = 3.0 * np.v0 + root;
        if (denom == 0.0) return 0.0;  // v0 == 0 and L == 0
        return 6.0 * np.L / denom;
    }
    return (-3.0 * np.v0 + root) / (2.0 * np.u_max);
}

activation_thresholds thresholds(const normalized_problem& np) {
    return {state_threshold(np), control_threshold(np)};
}

double max_reachable_distance(const normalized_problem& np) {
    check_domain(np);
    const double beta = std::max(0.0, np.v_max - np.v0);
    const double t_r = beta / np.u_max;  // time to hit v_max at full effort
    if (np.T <= t_r) {
        return np.v0 * np.T + 0.5 * np.u_max * np.T * np.T;
    }
    return np.v0 * t_r + 0.5 * np.u_max * t_r * t_r + np.v_max * (np.T - t_r);
}

feasibility_report feasibility_check(const normalized_problem& np) {
    const double lo = np.v0 * np.T;
    const double hi = max_reachable_distance(np);
    const bool feasible = le_tie(lo, np.L) && le_tie(np.L, hi);
    return {feasible, lo, hi};
}

profile_class classify(const normalized_problem& np) {
    const feasibility_report report = feasibility_check(np);
    if (!report.feasible) {
        throw planner_error(error_code::infeasible_problem,
                            "target distance outside the reachable range");
    }

    // Coasting start: the only feasible control is u == 0, i.e. the
    // unconstrained profile with a vanishing slope.
    if (tie(np.L, report.min_distance)) return profile_class::unconstrained;

    // Full-horizon bang: L equals the maximum reachable distance while the
    // speed limit is never reached.
    const double beta = np.v_max - np.v0;
    const double t_r = beta / np.u_max;
    if (tie(np.L, report.max_distance) && le_tie(np.T, t_r)) return profile_class::bang;

    const bool state_active = speed_limit_active(np);
    const bool control_active = control_limit_active(np);

    if (!state_active && !control_active) return profile_class::unconstrained;

    if (state_active && control_active) {
        return psi_is_zero(np) ? profile_class::bang_coast
                               : profile_class::bang_affine_coast;
    }

    if (control_active) {
        // Only the acceleration limit is active; accept the bang->affine
        // profile unless its free terminal speed would breach v_max.
        const double tau_c = bang_affine_junction(np);
        const double terminal_speed = np.v0 + 0.5 * np.u_max * (np.T + tau_c);
        if (lt_strict(terminal_speed, np.v_max)) return profile_class::bang_affine;
        return psi_is_zero(np) ? profile_class::bang_coast
                               : profile_class::bang_affine_coast;
    }

    // Only the speed limit is active; accept the affine->coast profile unless
    // its peak control would breach u_max.
    const double tau_s = affine_coast_junction(np);
    const double u0 = 2.0 * beta / tau_s;
    if (lt_strict(u0, np.u_max)) return profile_class::affine_coast;
    return psi_is_zero(np) ? profile_class::bang_coast : profile_class::bang_affine_coast;
}

}  // namespace ditraj
