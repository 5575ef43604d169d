#include "core.hpp"

#include <cmath>

#include "numeric.hpp"

namespace ditraj {

const char* error_code_name(error_code code) {
    switch (code) {
        case error_code::limit_order_violation: return "LimitOrderViolation";
        case error_code::initial_speed_out_of_bounds: return "InitialSpeedOutOfBounds";
        case error_code::nonpositive_horizon: return "NonpositiveHorizon";
        case error_code::degenerate_denominator: return "DegenerateDenominator";
        case error_code::negative_radicand: return "NegativeRadicand";
        case error_code::infeasible_problem: return "InfeasibleProblem";
        case error_code::junction_out_of_range: return "JunctionOutOfRange";
        case error_code::negative_discriminant: return "NegativeDiscriminant";
        case error_code::negative_psi: return "NegativePsi";
        case error_code::time_out_of_range: return "TimeOutOfRange";
        case error_code::no_feasible_candidate: return "NoFeasibleCandidate";
        case error_code::invalid_argument: return "InvalidArgument";
    }
    return "UnknownError";
}

const char* profile_class_name(profile_class profile) {
    switch (profile) {
        case profile_class::unconstrained: return "Unconstrained";
        case profile_class::bang_affine: return "BangAffine";
        case profile_class::affine_coast: return "AffineCoast";
        case profile_class::bang_affine_coast: return "BangAffineCoast";
        case profile_class::bang_coast: return "BangCoast";
        case profile_class::bang: return "Bang";
    }
    return "UnknownProfile";
}

const char* arc_kind_name(arc_kind kind) {
    switch (kind) {
        case arc_kind::bang: return "bang";
        case arc_kind::affine: return "affine";
        case arc_kind::coast: return "coast";
    }
    return "unknown";
}

scenario make_scenario(double t0, double p0, double v0, double terminal_time,
                       double terminal_position, const limits& lim) {
    if (!std::isfinite(t0) || !std::isfinite(p0) || !std::isfinite(v0) ||
        !std::isfinite(terminal_time) || !std::isfinite(terminal_position) ||
        !std::isfinite(lim.u_min) || !std::isfinite(lim.u_max) ||
        !std::isfinite(lim.v_min) || !std::isfinite(lim.v_max)) {
        throw planner_error(error_code::invalid_argument, "scenario fields must be finite");
    }
    if (!(lim.u_min < lim.u_max)) {
        throw planner_error(error_code::limit_order_violation,
                            "acceleration limits must satisfy u_min < u_max");
    }
    if (!(lim.u_min < 0.0 && 0.0 < lim.u_max)) {
        throw planner_error(error_code::limit_order_violation,
                            "acceleration limits must straddle zero (u_min < 0 < u_max)");
    }
    if (!(lim.v_min < lim.v_max)) {
        throw planner_error(error_code::limit_order_violation,
                            "speed limits must satisfy v_min < v_max");
    }
    if (!(lim.v_min <= v0 && v0 <= lim.v_max)) {
        throw planner_error(error_code::initial_speed_out_of_bounds,
                            "initial speed must lie within [v_min, v_max]");
    }
    if (!(terminal_time > t0)) {
        throw planner_error(error_code::nonpositive_horizon,
                            "terminal time must be strictly after t0");
    }
    return scenario{t0, p0, v0, terminal_time, terminal_position, lim};
}

std::pair<normalized_problem, frame_map> normalize(const scenario& sc) {
    const double T = sc.terminal_time - sc.t0;
    const double L = sc.terminal_position - sc.p0;
    // Decelerating instances (required average speed below v0) are mirrored
    // through the origin so the canonical problem always speeds up.
    const bool mirrored = sc.v0 * T > L && !tie(sc.v0 * T, L);
    normalized_problem np{};
    np.T = T;
    if (mirrored) {
        np.v0 = -sc.v0;
        np.L = -L;
        np.u_max = -sc.lim.u_min;
        np.v_max = -sc.lim.v_min;
    } else {
        np.v0 = sc.v0;
        np.L = L;
        np.u_max = sc.lim.u_max;
        np.v_max = sc.lim.v_max;
    }
    return {np, frame_map{sc.t0, sc.p0, mirrored}};
}

trajectory_plan denormalize(const trajectory_plan& plan, const frame_map& map) {
    const double sign = map.mirrored ? -1.0 : 1.0;
    trajectory_plan out;
    out.profile = plan.profile;
    out.energy = plan.energy;  // invariant under time shift and mirroring
    out.arcs.reserve(plan.arcs.size());
    for (const arc& a : plan.arcs) {
        arc b = a;
        b.t_start = a.t_start + map.time_shift;
        b.t_end = a.t_end + map.time_shift;
        // u'(t) = sign * (slope*(t - shift) + intercept)
        b.slope = sign * a.slope;
        b.intercept = sign * (a.intercept - a.slope * map.time_shift);
        b.v_entry = sign * a.v_entry;
        b.p_entry = map.position_shift + sign * a.p_entry;
        out.arcs.push_back(b);
    }
    if (plan.tau_c) out.tau_c = *plan.tau_c + map.time_shift;
    if (plan.tau_s) out.tau_s = *plan.tau_s + map.time_shift;
    return out;
}

}  // namespace ditraj
