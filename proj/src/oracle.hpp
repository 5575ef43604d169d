#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "types.hpp"

namespace ditraj {

enum class qp_status { optimal, infeasible, max_iterations };

const char* qp_status_name(qp_status status);

// Discretized solution on a uniform grid: piecewise-constant control held
// over each cell, states propagated by the exact zero-order-hold update.
struct qp_solution {
    qp_status status;
    std::vector<double> times;      // grid + 1 entries
    std::vector<double> controls;   // grid entries
    std::vector<double> speeds;     // grid + 1 entries
    std::vector<double> positions;  // grid + 1 entries
    double energy;                  // sum of u_k^2 * dt
    std::size_t iterations;         // total inner iterations spent
};

// Direct transcription of the canonical problem: minimize sum u_k^2 dt
// subject to 0 <= u_k <= u_max, grid speeds <= v_max and the exact terminal
// position. Nonnegative controls keep the node speeds monotone, which
// reduces the speed caps to a single budget on the control sum; the solver
// then pins the two KKT multipliers (terminal equality, speed budget) by
// nested bisection and reads the exact discrete optimum off the clipped
// stationarity condition. Fully deterministic. Requires grid >= 10.
qp_solution solve_qp(const normalized_problem& np, std::size_t grid, double tolerance);

struct search_result {
    profile_class profile;
    std::optional<double> tau_c;
    std::optional<double> tau_s;
    double energy;
};

// Exhaustive scan over candidate switching times (pairs for the three-arc
// family) at the given resolution. Each candidate fixes the arcs by the
// continuity rules, solves its one free coefficient from the terminal
// position, is discarded if it violates the bounds, and the feasible
// candidate of least energy wins. The winner's switching times are then
// polished by rescanning a shrinking window inside its own family, since the
// lattice optimum can sit a cell away when the continuous optimum rides a
// feasibility boundary. Throws no_feasible_candidate when every lattice
// candidate violates the bounds. Requires resolution >= 100.
search_result grid_search_switch(const normalized_problem& np, std::size_t resolution);

struct comparison_report {
    double energy_gap;       // oracle energy minus plan energy
    double max_control_gap;  // worst |u_plan(t_k) - u_k| over cells
    double max_state_gap;    // worst speed/position mismatch at grid times
};

// Evaluates a canonical-frame plan on the oracle grid and reports gaps.
comparison_report compare(const trajectory_plan& plan, const qp_solution& sol);

}  // namespace ditraj
