#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ditraj {

// Failure reasons surfaced by the library. Mirrored one-to-one by the C API
// status codes.
enum class error_code {
    limit_order_violation,
    initial_speed_out_of_bounds,
    nonpositive_horizon,
    degenerate_denominator,
    negative_radicand,
    infeasible_problem,
    junction_out_of_range,
    negative_discriminant,
    negative_psi,
    time_out_of_range,
    no_feasible_candidate,
    invalid_argument,
};

const char* error_code_name(error_code code);

class planner_error : public std::runtime_error {
  public:
    planner_error(error_code code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    error_code code() const { return code_; }

  private:
    error_code code_;
};

struct limits {
    double u_min;
    double u_max;
    double v_min;
    double v_max;
};

// A fully specified problem instance in user coordinates. Built through
// make_scenario, which validates the fields.
struct scenario {
    double t0;
    double p0;
    double v0;
    double terminal_time;      // absolute time, > t0
    double terminal_position;  // required p(terminal_time)
    limits lim;
};

// Canonical accelerating instance: starts at time 0, position 0, and must
// cover distance L in horizon T with 0 <= u <= u_max and v <= v_max.
struct normalized_problem {
    double v0;
    double L;
    double T;
    double u_max;
    double v_max;
};

// Affine transform taking canonical coordinates back to user coordinates.
struct frame_map {
    double time_shift;      // canonical t=0 corresponds to user t = time_shift
    double position_shift;  // canonical p=0 corresponds to user p = position_shift
    bool mirrored;          // true when u, v, p were negated
};

enum class profile_class {
    unconstrained,
    bang_affine,
    affine_coast,
    bang_affine_coast,
    bang_coast,
    bang,
};

const char* profile_class_name(profile_class profile);

enum class arc_kind {
    bang,    // u held at the acceleration limit
    affine,  // u affine in t, strictly inside the control bounds
    coast,   // u = 0 with the speed limit active
};

const char* arc_kind_name(arc_kind kind);

// One polynomial piece of a plan. The control is u(t) = slope*t + intercept
// for t in [t_start, t_end]; v_entry and p_entry are the exact states at
// t_start, from which speed and position follow in closed form.
struct arc {
    arc_kind kind;
    double t_start;
    double t_end;
    double slope;
    double intercept;
    double v_entry;
    double p_entry;
};

struct trajectory_plan {
    profile_class profile;
    std::vector<arc> arcs;            // contiguous, covering the full horizon
    std::optional<double> tau_c;      // bang -> next arc junction, if present
    std::optional<double> tau_s;      // coast entry time, if a coast arc exists
    double energy;                    // integral of u^2 over the horizon
};

struct state_sample {
    double t;
    double u;
    double v;
    double p;
};

// Raw measurements from dense-sampling a plan against a set of bounds.
// All fields are non-negative magnitudes except terminal_control, which is
// the signed control value at the end of the horizon.
struct diagnostics {
    double max_control_violation;
    double max_speed_violation;
    double terminal_position_error;
    double junction_discontinuity;
    double terminal_control;
};

}  // namespace ditraj
