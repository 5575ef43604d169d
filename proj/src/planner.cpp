#include "planner.hpp"

#include <cmath>
#include <utility>

#include "arc_math.hpp"
#include "classifier.hpp"
#include "numeric.hpp"

namespace ditraj {

thread_local unsigned long long junction_counters::bang_affine = 0;
thread_local unsigned long long junction_counters::affine_coast = 0;

void junction_counters::reset() {
    bang_affine = 0;
    affine_coast = 0;
}

switch_quantities compute_switch_quantities(const normalized_problem& np) {
    switch_quantities q{};
    q.beta = np.v_max - np.v0;
    q.terminal_slack = np.v_max * np.T - np.L;
    q.psi = 6.0 * np.u_max * q.terminal_slack - 3.0 * q.beta * q.beta;
    q.alpha_unc = 3.0 * (np.v0 * np.T - np.L) / (np.T * np.T * np.T);
    return q;
}

double alpha_unconstrained(const normalized_problem& np) {
    if (!(np.T > 0.0)) {
        throw planner_error(error_code::nonpositive_horizon, "horizon must be positive");
    }
    return 3.0 * (np.v0 * np.T - np.L) / (np.T * np.T * np.T);
}

double bang_affine_junction(const normalized_problem& np) {
    ++junction_counters::bang_affine;
    const double discriminant = np.T * np.T - 2.0 * (np.L - np.v0 * np.T) / np.u_max;
    if (discriminant < 0.0) {
        throw planner_error(error_code::negative_discriminant,
                            "bang->affine junction has no real solution");
    }
    // tau = T - sqrt(3 * discriminant), rewritten so the subtraction does not
    // cancel when tau is near zero:
    // tau = (T^2 - 3*discriminant) / (T + sqrt(3*discriminant)).
    const double root = std::sqrt(3.0 * discriminant);
    double tau = (6.0 * (np.L - np.v0 * np.T) / np.u_max - 2.0 * np.T * np.T) / (np.T + root);
    if (tau < 0.0) {
        if (!tie(tau, 0.0)) {
            throw planner_error(error_code::junction_out_of_range,
                                "bang->affine junction fell outside [0, T)");
        }
        tau = 0.0;
    }
    if (tau >= np.T) {
        throw planner_error(error_code::junction_out_of_range,
                            "bang->affine junction fell outside [0, T)");
    }
    return tau;
}

double affine_coast_junction(const normalized_problem& np) {
    ++junction_counters::affine_coast;
    const double beta = np.v_max - np.v0;
    if (beta <= 0.0) {
        throw planner_error(error_code::junction_out_of_range,
                            "affine->coast junction undefined without speed headroom");
    }
    double tau = 3.0 * (np.v_max * np.T - np.L) / beta;
    if (tau > np.T) {
        if (!tie(tau, np.T)) {
            throw planner_error(error_code::junction_out_of_range,
                                "affine->coast junction fell outside (0, T]");
        }
        tau = np.T;
    }
    if (!(tau > 0.0) || tie(tau, 0.0)) {
        throw planner_error(error_code::junction_out_of_range,
                            "affine->coast junction fell outside (0, T]");
    }
    return tau;
}

namespace {

double arc_length_floor(const normalized_problem& np) {
    return k_tie_rel * std::max(1.0, np.T);
}

// Computes the stored energy and the junction annotations from the arc list.
trajectory_plan assemble(profile_class profile, std::vector<arc> arcs) {
    trajectory_plan plan;
    plan.profile = profile;
    plan.energy = 0.0;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        plan.energy += arc_energy(arcs[i]);
        if (arcs[i].kind == arc_kind::bang && i + 1 < arcs.size() && !plan.tau_c) {
            plan.tau_c = arcs[i].t_end;
        }
        if (arcs[i].kind == arc_kind::coast && !plan.tau_s) {
            plan.tau_s = arcs[i].t_start;
        }
    }
    plan.arcs = std::move(arcs);
    return plan;
}

}  // namespace

trajectory_plan plan_unconstrained(const normalized_problem& np) {
    const double alpha = alpha_unconstrained(np);
    // u(t) = alpha (t - T); a coasting start (L == v0 T) gives alpha == 0 and
    // the arc degenerates to zero control with no special casing.
    arc a{arc_kind::affine, 0.0, np.T, alpha, -alpha * np.T, np.v0, 0.0};
    return assemble(profile_class::unconstrained, {a});
}

trajectory_plan plan_affine_coast(const normalized_problem& np) {
    const double tau_s = affine_coast_junction(np);
    const double beta = np.v_max - np.v0;
    const double u0 = 2.0 * beta / tau_s;
    arc ramp{arc_kind::affine, 0.0, tau_s, -u0 / tau_s, u0, np.v0, 0.0};
    std::vector<arc> arcs{ramp};
    if (np.T - tau_s > arc_length_floor(np)) {
        const state_sample end = arc_end_state(ramp);
        arcs.push_back(arc{arc_kind::coast, tau_s, np.T, 0.0, 0.0, np.v_max, end.p});
    }
    return assemble(profile_class::affine_coast, std::move(arcs));
}

trajectory_plan plan_bang_affine(const normalized_problem& np) {
    double tau_c = bang_affine_junction(np);
    if (tau_c <= arc_length_floor(np)) tau_c = 0.0;
    std::vector<arc> arcs;
    double v1 = np.v0;
    double p1 = 0.0;
    if (tau_c > 0.0) {
        arc saturation{arc_kind::bang, 0.0, tau_c, 0.0, np.u_max, np.v0, 0.0};
        const state_sample end = arc_end_state(saturation);
        v1 = end.v;
        p1 = end.p;
        arcs.push_back(saturation);
    }
    // Ramp from u_max at tau_c down to zero at T.
    const double h = np.T - tau_c;
    const double start = arcs.empty() ? 0.0 : tau_c;
    arcs.push_back(arc{arc_kind::affine, start, np.T, -np.u_max / h,
                       np.u_max * np.T / h, v1, p1});
    return assemble(profile_class::bang_affine, std::move(arcs));
}

trajectory_plan plan_bang_affine_coast(const normalized_problem& np) {
    const switch_quantities q = compute_switch_quantities(np);
    const bool degenerate = std::abs(q.psi) <= k_tie_rel * std::max(1.0, 3.0 * q.beta * q.beta);
    if (q.psi < 0.0 && !degenerate) {
        throw planner_error(error_code::negative_psi,
                            "three-arc profile has no real junction pair");
    }
    const double root = degenerate ? 0.0 : std::sqrt(q.psi);
    const double floor = arc_length_floor(np);
    // tau_s is the larger quadratic root and needs no rewrite; tau_c is
    // (beta - sqrt(psi))/u_max, evaluated in a cancellation-free form.
    double tau_s = (q.beta + root) / np.u_max;
    if (tau_s > np.T) {
        if (!tie(tau_s, np.T)) {
            throw planner_error(error_code::junction_out_of_range,
                                "affine->coast junction fell outside [0, T]");
        }
        tau_s = np.T;
    }
    double tau_c = degenerate ? tau_s
                              : (q.beta * q.beta - q.psi) / (np.u_max * (q.beta + root));
    if (tau_c < 0.0) {
        if (!tie(tau_c, 0.0)) {
            throw planner_error(error_code::junction_out_of_range,
                                "bang->affine junction fell outside [0, T]");
        }
        tau_c = 0.0;
    }
    if (tau_c <= floor) tau_c = 0.0;

    std::vector<arc> arcs;
    double v1 = np.v0;
    double p1 = 0.0;
    if (tau_c > 0.0) {
        arc saturation{arc_kind::bang, 0.0, tau_c, 0.0, np.u_max, np.v0, 0.0};
        const state_sample end = arc_end_state(saturation);
        v1 = end.v;
        p1 = end.p;
        arcs.push_back(saturation);
    }
    double p2 = p1;
    if (!degenerate) {
        // Ramp from u_max at tau_c down to zero at tau_s.
        const double h = tau_s - tau_c;
        arc ramp{arc_kind::affine, tau_c, tau_s, -np.u_max / h,
                 np.u_max * tau_s / h, v1, p1};
        p2 = arc_end_state(ramp).p;
        arcs.push_back(ramp);
    }
    if (np.T - tau_s > floor) {
        const double start = arcs.empty() ? 0.0 : tau_s;
        arcs.push_back(arc{arc_kind::coast, start, np.T, 0.0, 0.0, np.v_max, p2});
    }
    const profile_class profile =
        degenerate ? profile_class::bang_coast : profile_class::bang_affine_coast;
    return assemble(profile, std::move(arcs));
}

trajectory_plan plan_bang(const normalized_problem& np) {
    arc a{arc_kind::bang, 0.0, np.T, 0.0, np.u_max, np.v0, 0.0};
    return assemble(profile_class::bang, {a});
}

trajectory_plan plan(const normalized_problem& np) {
    switch (classify(np)) {
        case profile_class::unconstrained: return plan_unconstrained(np);
        case profile_class::bang_affine: return plan_bang_affine(np);
        case profile_class::affine_coast: return plan_affine_coast(np);
        case profile_class::bang_affine_coast:
        case profile_class::bang_coast: return plan_bang_affine_coast(np);
        case profile_class::bang: return plan_bang(np);
    }
    throw planner_error(error_code::invalid_argument, "unreachable profile");
}

}  // namespace ditraj
