#include "ditraj/ditraj.h"

#include <cmath>
#include <new>

#include "classifier.hpp"
#include "core.hpp"
#include "oracle.hpp"
#include "planner.hpp"
#include "trajectory.hpp"

struct ditraj_scenario {
    ditraj::scenario sc;
    ditraj::normalized_problem np;
    ditraj::frame_map map;
};

struct ditraj_plan {
    ditraj::trajectory_plan canonical;
    ditraj::trajectory_plan user;
    ditraj::scenario sc;
    ditraj::normalized_problem np;
    ditraj::frame_map map;
};

namespace {

ditraj_status to_status(ditraj::error_code code) {
    using ditraj::error_code;
    switch (code) {
        case error_code::limit_order_violation: return DITRAJ_ERR_LIMIT_ORDER;
        case error_code::initial_speed_out_of_bounds: return DITRAJ_ERR_INITIAL_SPEED;
        case error_code::nonpositive_horizon: return DITRAJ_ERR_NONPOSITIVE_HORIZON;
        case error_code::degenerate_denominator: return DITRAJ_ERR_DEGENERATE_DENOMINATOR;
        case error_code::negative_radicand: return DITRAJ_ERR_NEGATIVE_RADICAND;
        case error_code::infeasible_problem: return DITRAJ_ERR_INFEASIBLE;
        case error_code::junction_out_of_range: return DITRAJ_ERR_JUNCTION_RANGE;
        case error_code::negative_discriminant: return DITRAJ_ERR_NEGATIVE_DISCRIMINANT;
        case error_code::negative_psi: return DITRAJ_ERR_NEGATIVE_PSI;
        case error_code::time_out_of_range: return DITRAJ_ERR_TIME_RANGE;
        case error_code::no_feasible_candidate: return DITRAJ_ERR_NO_FEASIBLE_CANDIDATE;
        case error_code::invalid_argument: return DITRAJ_ERR_INVALID_ARGUMENT;
    }
    return DITRAJ_ERR_INTERNAL;
}

ditraj_profile to_c_profile(ditraj::profile_class profile) {
    using ditraj::profile_class;
    switch (profile) {
        case profile_class::unconstrained: return DITRAJ_PROFILE_UNCONSTRAINED;
        case profile_class::bang_affine: return DITRAJ_PROFILE_BANG_AFFINE;
        case profile_class::affine_coast: return DITRAJ_PROFILE_AFFINE_COAST;
        case profile_class::bang_affine_coast: return DITRAJ_PROFILE_BANG_AFFINE_COAST;
        case profile_class::bang_coast: return DITRAJ_PROFILE_BANG_COAST;
        case profile_class::bang: return DITRAJ_PROFILE_BANG;
    }
    return DITRAJ_PROFILE_UNCONSTRAINED;
}

ditraj_arc_kind to_c_kind(ditraj::arc_kind kind) {
    using ditraj::arc_kind;
    switch (kind) {
        case arc_kind::bang: return DITRAJ_ARC_BANG;
        case arc_kind::affine: return DITRAJ_ARC_AFFINE;
        case arc_kind::coast: return DITRAJ_ARC_COAST;
    }
    return DITRAJ_ARC_AFFINE;
}

template <typename Fn>
ditraj_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const ditraj::planner_error& err) {
        return to_status(err.code());
    } catch (const std::bad_alloc&) {
        return DITRAJ_ERR_INTERNAL;
    } catch (...) {
        return DITRAJ_ERR_INTERNAL;
    }
}

ditraj_diagnostics to_c_diagnostics(const ditraj::diagnostics& d) {
    return {d.max_control_violation, d.max_speed_violation,
            d.terminal_position_error, d.junction_discontinuity,
            d.terminal_control};
}

ditraj::diagnostics validate_against_scenario(const ditraj_plan& plan) {
    const ditraj::validation_limits lim{plan.sc.lim.u_min, plan.sc.lim.u_max,
                                        plan.sc.lim.v_min, plan.sc.lim.v_max,
                                        plan.sc.terminal_position};
    return ditraj::validate(plan.user, lim);
}

}  // namespace

extern "C" {

ditraj_status ditraj_scenario_create(const ditraj_scenario_spec* spec,
                                     ditraj_scenario** out) {
    if (!spec || !out) return DITRAJ_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const ditraj::scenario sc = ditraj::make_scenario(
            spec->t0, spec->p0, spec->v0, spec->terminal_time,
            spec->terminal_position,
            ditraj::limits{spec->u_min, spec->u_max, spec->v_min, spec->v_max});
        auto [np, map] = ditraj::normalize(sc);
        *out = new ditraj_scenario{sc, np, map};
        return DITRAJ_OK;
    });
}

void ditraj_scenario_destroy(ditraj_scenario* scenario) { delete scenario; }

ditraj_status ditraj_scenario_classify(const ditraj_scenario* scenario,
                                       ditraj_classification* out) {
    if (!scenario || !out) return DITRAJ_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        ditraj_classification c{};
        c.mirrored = scenario->map.mirrored ? 1 : 0;
        c.canonical_v0 = scenario->np.v0;
        c.canonical_L = scenario->np.L;
        c.canonical_T = scenario->np.T;
        c.canonical_u_max = scenario->np.u_max;
        c.canonical_v_max = scenario->np.v_max;
        try {
            c.state_threshold = ditraj::state_threshold(scenario->np);
        } catch (const ditraj::planner_error&) {
            c.state_threshold = std::nan("");
        }
        try {
            c.control_threshold = ditraj::control_threshold(scenario->np);
        } catch (const ditraj::planner_error&) {
            c.control_threshold = std::nan("");
        }
        const ditraj::feasibility_report report =
            ditraj::feasibility_check(scenario->np);
        c.feasible = report.feasible ? 1 : 0;
        c.min_distance = report.min_distance;
        c.max_distance = report.max_distance;
        if (!report.feasible) {
            *out = c;
            return DITRAJ_ERR_INFEASIBLE;
        }
        c.profile = to_c_profile(ditraj::classify(scenario->np));
        *out = c;
        return DITRAJ_OK;
    });
}

ditraj_status ditraj_scenario_plan(const ditraj_scenario* scenario,
                                   ditraj_plan** out) {
    if (!scenario || !out) return DITRAJ_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        ditraj::trajectory_plan canonical = ditraj::plan(scenario->np);
        ditraj::trajectory_plan user = ditraj::denormalize(canonical, scenario->map);
        *out = new ditraj_plan{std::move(canonical), std::move(user), scenario->sc,
                               scenario->np, scenario->map};
        return DITRAJ_OK;
    });
}

void ditraj_plan_destroy(ditraj_plan* plan) { delete plan; }

ditraj_profile ditraj_plan_profile(const ditraj_plan* plan) {
    return plan ? to_c_profile(plan->user.profile) : DITRAJ_PROFILE_UNCONSTRAINED;
}

int ditraj_plan_mirrored(const ditraj_plan* plan) {
    return plan && plan->map.mirrored ? 1 : 0;
}

double ditraj_plan_energy(const ditraj_plan* plan) {
    return plan ? plan->user.energy : 0.0;
}

size_t ditraj_plan_arc_count(const ditraj_plan* plan) {
    return plan ? plan->user.arcs.size() : 0;
}

ditraj_status ditraj_plan_arc(const ditraj_plan* plan, size_t index,
                              ditraj_arc* out) {
    if (!plan || !out) return DITRAJ_ERR_INVALID_ARGUMENT;
    if (index >= plan->user.arcs.size()) return DITRAJ_ERR_INVALID_ARGUMENT;
    const ditraj::arc& a = plan->user.arcs[index];
    *out = ditraj_arc{to_c_kind(a.kind), a.t_start, a.t_end,
                      a.slope,           a.intercept, a.v_entry, a.p_entry};
    return DITRAJ_OK;
}

ditraj_status ditraj_plan_junctions(const ditraj_plan* plan, int* has_tau_c,
                                    double* tau_c, int* has_tau_s,
                                    double* tau_s) {
    if (!plan) return DITRAJ_ERR_INVALID_ARGUMENT;
    if (has_tau_c) *has_tau_c = plan->user.tau_c.has_value() ? 1 : 0;
    if (tau_c) *tau_c = plan->user.tau_c.value_or(0.0);
    if (has_tau_s) *has_tau_s = plan->user.tau_s.has_value() ? 1 : 0;
    if (tau_s) *tau_s = plan->user.tau_s.value_or(0.0);
    return DITRAJ_OK;
}

ditraj_status ditraj_plan_eval(const ditraj_plan* plan, double t,
                               ditraj_state* out) {
    if (!plan || !out) return DITRAJ_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const ditraj::state_sample s = ditraj::eval(plan->user, t);
        *out = ditraj_state{s.t, s.u, s.v, s.p};
        return DITRAJ_OK;
    });
}

ditraj_status ditraj_plan_sample_count(const ditraj_plan* plan,
                                       size_t n_uniform, size_t* count) {
    if (!plan || !count) return DITRAJ_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *count = ditraj::sample(plan->user, n_uniform).size();
        return DITRAJ_OK;
    });
}

ditraj_status ditraj_plan_sample(const ditraj_plan* plan, size_t n_uniform,
                                 ditraj_state* out, size_t capacity,
                                 size_t* written) {
    if (!plan || !out) return DITRAJ_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const auto rows = ditraj::sample(plan->user, n_uniform);
        if (rows.size() > capacity) return DITRAJ_ERR_INVALID_ARGUMENT;
        for (size_t i = 0; i < rows.size(); ++i) {
            out[i] = ditraj_state{rows[i].t, rows[i].u, rows[i].v, rows[i].p};
        }
        if (written) *written = rows.size();
        return DITRAJ_OK;
    });
}

ditraj_status ditraj_plan_validate(const ditraj_plan* plan,
                                   ditraj_diagnostics* out) {
    if (!plan || !out) return DITRAJ_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *out = to_c_diagnostics(validate_against_scenario(*plan));
        return DITRAJ_OK;
    });
}

ditraj_status ditraj_plan_perturb(ditraj_plan* plan, double control_offset) {
    if (!plan) return DITRAJ_ERR_INVALID_ARGUMENT;
    for (ditraj::arc& a : plan->canonical.arcs) {
        a.intercept += plan->map.mirrored ? -control_offset : control_offset;
    }
    for (ditraj::arc& a : plan->user.arcs) a.intercept += control_offset;
    return DITRAJ_OK;
}

ditraj_status ditraj_plan_verify(const ditraj_plan* plan, size_t qp_grid,
                                 size_t search_grid, double tolerance,
                                 ditraj_verification* out) {
    if (!plan || !out) return DITRAJ_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        ditraj_verification v{};
        const ditraj::qp_solution qp =
            ditraj::solve_qp(plan->np, qp_grid, tolerance);
        switch (qp.status) {
            case ditraj::qp_status::optimal: v.qp_status = DITRAJ_QP_OPTIMAL; break;
            case ditraj::qp_status::infeasible: v.qp_status = DITRAJ_QP_INFEASIBLE; break;
            case ditraj::qp_status::max_iterations:
                v.qp_status = DITRAJ_QP_MAX_ITERATIONS;
                break;
        }
        v.plan_energy = ditraj::energy(plan->canonical);
        v.qp_energy = qp.energy;
        const ditraj::comparison_report rep = ditraj::compare(plan->canonical, qp);
        v.qp_energy_gap = qp.energy - v.plan_energy;
        v.qp_max_control_gap = rep.max_control_gap;
        v.qp_max_state_gap = rep.max_state_gap;
        try {
            const ditraj::search_result search =
                ditraj::grid_search_switch(plan->np, search_grid);
            v.search_found = 1;
            v.search_profile = to_c_profile(search.profile);
            v.search_has_tau_c = search.tau_c.has_value() ? 1 : 0;
            v.search_tau_c = search.tau_c.value_or(0.0);
            v.search_has_tau_s = search.tau_s.has_value() ? 1 : 0;
            v.search_tau_s = search.tau_s.value_or(0.0);
            v.search_energy = search.energy;
        } catch (const ditraj::planner_error& err) {
            if (err.code() != ditraj::error_code::no_feasible_candidate) throw;
            v.search_found = 0;
        }
        v.diagnostics = to_c_diagnostics(validate_against_scenario(*plan));
        *out = v;
        return DITRAJ_OK;
    });
}

const char* ditraj_status_name(ditraj_status status) {
    switch (status) {
        case DITRAJ_OK: return "Ok";
        case DITRAJ_ERR_LIMIT_ORDER: return "LimitOrderViolation";
        case DITRAJ_ERR_INITIAL_SPEED: return "InitialSpeedOutOfBounds";
        case DITRAJ_ERR_NONPOSITIVE_HORIZON: return "NonpositiveHorizon";
        case DITRAJ_ERR_DEGENERATE_DENOMINATOR: return "DegenerateDenominator";
        case DITRAJ_ERR_NEGATIVE_RADICAND: return "NegativeRadicand";
        case DITRAJ_ERR_INFEASIBLE: return "InfeasibleProblem";
        case DITRAJ_ERR_JUNCTION_RANGE: return "JunctionOutOfRange";
        case DITRAJ_ERR_NEGATIVE_DISCRIMINANT: return "NegativeDiscriminant";
        case DITRAJ_ERR_NEGATIVE_PSI: return "NegativePsi";
        case DITRAJ_ERR_TIME_RANGE: return "TimeOutOfRange";
        case DITRAJ_ERR_NO_FEASIBLE_CANDIDATE: return "NoFeasibleCandidate";
        case DITRAJ_ERR_INVALID_ARGUMENT: return "InvalidArgument";
        case DITRAJ_ERR_INTERNAL: return "InternalError";
    }
    return "UnknownStatus";
}

const char* ditraj_profile_name(ditraj_profile profile) {
    return ditraj::profile_class_name(static_cast<ditraj::profile_class>(profile));
}

const char* ditraj_arc_kind_name(ditraj_arc_kind kind) {
    return ditraj::arc_kind_name(static_cast<ditraj::arc_kind>(kind));
}

const char* ditraj_qp_status_name(ditraj_qp_status status) {
    return ditraj::qp_status_name(static_cast<ditraj::qp_status>(status));
}

}  // extern "C"
