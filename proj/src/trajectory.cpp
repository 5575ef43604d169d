#include "trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "arc_math.hpp"
#include "numeric.hpp"

namespace ditraj {

namespace {

const arc& arc_at(const trajectory_plan& plan, double t) {
    if (plan.arcs.empty()) {
        throw planner_error(error_code::invalid_argument, "plan has no arcs");
    }
    const double t_begin = plan.arcs.front().t_start;
    const double t_end = plan.arcs.back().t_end;
    const double slack = k_tie_rel * std::max({1.0, std::abs(t_begin), std::abs(t_end)});
    if (t < t_begin - slack || t > t_end + slack) {
        throw planner_error(error_code::time_out_of_range,
                            "query time outside the plan horizon");
    }
    // Right-closed starts: a junction time belongs to the following arc.
    for (std::size_t i = plan.arcs.size(); i-- > 1;) {
        if (t >= plan.arcs[i].t_start) return plan.arcs[i];
    }
    return plan.arcs.front();
}

}  // namespace

state_sample eval(const trajectory_plan& plan, double t) {
    return arc_state(arc_at(plan, t), t);
}

double energy(const trajectory_plan& plan) {
    double total = 0.0;
    for (const arc& a : plan.arcs) total += arc_energy(a);
    return total;
}

std::vector<state_sample> sample(const trajectory_plan& plan, std::size_t n) {
    if (n < 2) {
        throw planner_error(error_code::invalid_argument,
                            "sampling needs at least the two endpoints");
    }
    if (plan.arcs.empty()) {
        throw planner_error(error_code::invalid_argument, "plan has no arcs");
    }
    const double t_begin = plan.arcs.front().t_start;
    const double t_end = plan.arcs.back().t_end;

    std::vector<double> times;
    times.reserve(n + plan.arcs.size());
    for (std::size_t i = 0; i < n; ++i) {
        const double w = static_cast<double>(i) / static_cast<double>(n - 1);
        times.push_back(t_begin + w * (t_end - t_begin));
    }
    for (std::size_t i = 1; i < plan.arcs.size(); ++i) {
        times.push_back(plan.arcs[i].t_start);
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end(),
                            [](double a, double b) { return std::abs(a - b) <= 1e-15; }),
                times.end());

    std::vector<state_sample> out;
    out.reserve(times.size());
    for (double t : times) out.push_back(eval(plan, t));
    return out;
}

diagnostics validate(const trajectory_plan& plan, const validation_limits& lim,
                     std::size_t min_samples) {
    diagnostics d{};
    const std::vector<state_sample> samples = sample(plan, std::max<std::size_t>(min_samples, 2));
    for (const state_sample& s : samples) {
        d.max_control_violation =
            std::max({d.max_control_violation, s.u - lim.u_hi, lim.u_lo - s.u});
        d.max_speed_violation =
            std::max({d.max_speed_violation, s.v - lim.v_hi, lim.v_lo - s.v});
    }
    d.max_control_violation = std::max(d.max_control_violation, 0.0);
    d.max_speed_violation = std::max(d.max_speed_violation, 0.0);

    const state_sample final_state = arc_end_state(plan.arcs.back());
    d.terminal_position_error = std::abs(final_state.p - lim.terminal_position);
    d.terminal_control = final_state.u;

    for (std::size_t i = 0; i + 1 < plan.arcs.size(); ++i) {
        const state_sample left = arc_end_state(plan.arcs[i]);
        const arc& next = plan.arcs[i + 1];
        const double gap = std::abs(left.v - next.v_entry) + std::abs(left.p - next.p_entry);
        d.junction_discontinuity = std::max(d.junction_discontinuity, gap);
    }
    return d;
}

diagnostics validate(const trajectory_plan& plan, const normalized_problem& np,
                     std::size_t min_samples) {
    return validate(plan, validation_limits{0.0, np.u_max, np.v0, np.v_max, np.L},
                    min_samples);
}

}  // namespace ditraj
