/*
 * ditraj - exact energy-optimal trajectories for a double integrator with
 * speed and acceleration limits, a fixed arrival time and a free terminal
 * speed.
 *
 * The library classifies which constraints are active over the horizon,
 * evaluates the switching times in closed form and exposes the resulting
 * piecewise-polynomial plan through opaque handles. Two numerical
 * cross-checks (a discretized QP and a switching-time scan) back the
 * closed forms and power the verification entry point.
 *
 * All functions returning ditraj_status leave outputs untouched on failure
 * unless noted. Handles are destroyed with the matching *_destroy call.
 */
#ifndef DITRAJ_H
#define DITRAJ_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ditraj_status {
    DITRAJ_OK = 0,
    DITRAJ_ERR_LIMIT_ORDER = 1,           /* limits out of order or not straddling 0 */
    DITRAJ_ERR_INITIAL_SPEED = 2,         /* v0 outside [v_min, v_max] */
    DITRAJ_ERR_NONPOSITIVE_HORIZON = 3,   /* terminal_time <= t0 */
    DITRAJ_ERR_DEGENERATE_DENOMINATOR = 4,
    DITRAJ_ERR_NEGATIVE_RADICAND = 5,
    DITRAJ_ERR_INFEASIBLE = 6,            /* target outside the reachable range */
    DITRAJ_ERR_JUNCTION_RANGE = 7,
    DITRAJ_ERR_NEGATIVE_DISCRIMINANT = 8,
    DITRAJ_ERR_NEGATIVE_PSI = 9,
    DITRAJ_ERR_TIME_RANGE = 10,           /* query outside the plan horizon */
    DITRAJ_ERR_NO_FEASIBLE_CANDIDATE = 11,
    DITRAJ_ERR_INVALID_ARGUMENT = 12,
    DITRAJ_ERR_INTERNAL = 13
} ditraj_status;

typedef enum ditraj_profile {
    DITRAJ_PROFILE_UNCONSTRAINED = 0,
    DITRAJ_PROFILE_BANG_AFFINE = 1,
    DITRAJ_PROFILE_AFFINE_COAST = 2,
    DITRAJ_PROFILE_BANG_AFFINE_COAST = 3,
    DITRAJ_PROFILE_BANG_COAST = 4,
    DITRAJ_PROFILE_BANG = 5
} ditraj_profile;

typedef enum ditraj_arc_kind {
    DITRAJ_ARC_BANG = 0,
    DITRAJ_ARC_AFFINE = 1,
    DITRAJ_ARC_COAST = 2
} ditraj_arc_kind;

typedef enum ditraj_qp_status {
    DITRAJ_QP_OPTIMAL = 0,
    DITRAJ_QP_INFEASIBLE = 1,
    DITRAJ_QP_MAX_ITERATIONS = 2
} ditraj_qp_status;

typedef struct ditraj_scenario ditraj_scenario;
typedef struct ditraj_plan ditraj_plan;

/* Instance in user coordinates. t0/p0 may be nonzero; the limits must
 * satisfy u_min < 0 < u_max and v_min <= v0 <= v_max, with v_min < v_max. */
typedef struct ditraj_scenario_spec {
    double t0;
    double p0;
    double v0;
    double terminal_time;     /* absolute, > t0 */
    double terminal_position; /* required p(terminal_time) */
    double u_min, u_max;
    double v_min, v_max;
} ditraj_scenario_spec;

/* Classification report. The canonical_* fields describe the internal
 * accelerating frame (shifted to t=0, p=0 and mirrored when the instance
 * decelerates); thresholds and distances are expressed in that frame.
 * Thresholds are NaN in the rare corners where their closed form is
 * undefined. profile is meaningful only when feasible is nonzero. */
typedef struct ditraj_classification {
    ditraj_profile profile;
    int feasible;
    int mirrored;
    double state_threshold;
    double control_threshold;
    double min_distance;
    double max_distance;
    double canonical_v0;
    double canonical_L;
    double canonical_T;
    double canonical_u_max;
    double canonical_v_max;
} ditraj_classification;

/* One polynomial piece: u(t) = slope * t + intercept on [t_start, t_end],
 * in user coordinates. */
typedef struct ditraj_arc {
    ditraj_arc_kind kind;
    double t_start, t_end;
    double slope, intercept;
    double v_entry, p_entry;
} ditraj_arc;

typedef struct ditraj_state {
    double t, u, v, p;
} ditraj_state;

/* Worst-case measurements from dense-sampling a plan against its scenario.
 * Magnitudes are non-negative; terminal_control is signed. */
typedef struct ditraj_diagnostics {
    double max_control_violation;
    double max_speed_violation;
    double terminal_position_error;
    double junction_discontinuity;
    double terminal_control;
} ditraj_diagnostics;

/* Cross-check report. QP quantities live on the discretization grid; the
 * search_* fields describe the best switching-time candidate. Gaps compare
 * against the plan in the canonical frame. search_found is 0 when no gridded
 * candidate is feasible, which happens for boundary profiles whose optimum
 * needs an exact control jump between grid lines; the remaining search_*
 * fields are then meaningless. */
typedef struct ditraj_verification {
    ditraj_qp_status qp_status;
    double plan_energy;
    double qp_energy;
    double qp_energy_gap;      /* qp_energy - plan_energy */
    double qp_max_control_gap;
    double qp_max_state_gap;
    int search_found;
    ditraj_profile search_profile;
    int search_has_tau_c;
    double search_tau_c;       /* canonical frame */
    int search_has_tau_s;
    double search_tau_s;
    double search_energy;
    ditraj_diagnostics diagnostics;
} ditraj_verification;

ditraj_status ditraj_scenario_create(const ditraj_scenario_spec* spec,
                                     ditraj_scenario** out);
void ditraj_scenario_destroy(ditraj_scenario* scenario);

/* Fills out even for infeasible scenarios (returns DITRAJ_ERR_INFEASIBLE
 * and leaves profile unset in that case). */
ditraj_status ditraj_scenario_classify(const ditraj_scenario* scenario,
                                       ditraj_classification* out);

/* Computes the optimal plan, reported in user coordinates. */
ditraj_status ditraj_scenario_plan(const ditraj_scenario* scenario,
                                   ditraj_plan** out);
void ditraj_plan_destroy(ditraj_plan* plan);

ditraj_profile ditraj_plan_profile(const ditraj_plan* plan);
int ditraj_plan_mirrored(const ditraj_plan* plan);
double ditraj_plan_energy(const ditraj_plan* plan);
size_t ditraj_plan_arc_count(const ditraj_plan* plan);
ditraj_status ditraj_plan_arc(const ditraj_plan* plan, size_t index,
                              ditraj_arc* out);

/* Junction times in user coordinates. tau_c is the end of an initial
 * full-effort arc, tau_s the start of a constant-speed arc; either may be
 * absent. Output pointers may be NULL. */
ditraj_status ditraj_plan_junctions(const ditraj_plan* plan, int* has_tau_c,
                                    double* tau_c, int* has_tau_s,
                                    double* tau_s);

ditraj_status ditraj_plan_eval(const ditraj_plan* plan, double t,
                               ditraj_state* out);

/* Sampling merges n_uniform evenly spaced times (n_uniform >= 2, endpoints
 * included) with every junction time, deduplicated. Query the exact row
 * count first, then fill a buffer of at least that capacity. */
ditraj_status ditraj_plan_sample_count(const ditraj_plan* plan,
                                       size_t n_uniform, size_t* count);
ditraj_status ditraj_plan_sample(const ditraj_plan* plan, size_t n_uniform,
                                 ditraj_state* out, size_t capacity,
                                 size_t* written);

/* Dense-samples the plan against its own scenario bounds. */
ditraj_status ditraj_plan_validate(const ditraj_plan* plan,
                                   ditraj_diagnostics* out);

/* Fault-injection aid for exercising the verification path: offsets the
 * control of every arc by control_offset without touching the stored
 * states, so continuity and terminal checks see the damage. */
ditraj_status ditraj_plan_perturb(ditraj_plan* plan, double control_offset);

/* Runs both numerical cross-checks against the plan. qp_grid >= 10,
 * search_grid >= 100, tolerance > 0 (QP stopping tolerance). */
ditraj_status ditraj_plan_verify(const ditraj_plan* plan, size_t qp_grid,
                                 size_t search_grid, double tolerance,
                                 ditraj_verification* out);

const char* ditraj_status_name(ditraj_status status);
const char* ditraj_profile_name(ditraj_profile profile);
const char* ditraj_arc_kind_name(ditraj_arc_kind kind);
const char* ditraj_qp_status_name(ditraj_qp_status status);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DITRAJ_H */
