#include "oracle.hpp"

#include <algorithm>
#include <cmath>

#include "numeric.hpp"
#include "trajectory.hpp"

namespace ditraj {

const char* qp_status_name(qp_status status) {
    switch (status) {
        case qp_status::optimal: return "Optimal";
        case qp_status::infeasible: return "Infeasible";
        case qp_status::max_iterations: return "MaxIterations";
    }
    return "Unknown";
}

namespace {

struct qp_model {
    std::size_t n;
    double dt;
    double u_max;
    double cap;                  // sum of controls allowed by the speed limit
    double target;               // required value of sum w_j u_j
    std::vector<double> w;       // position weight of each control cell
};

// Largest achievable sum w_j u_j: front-load controls, saturating either the
// box or the running speed cap. Optimal because the weights decrease in j.
double max_reach(const qp_model& m, std::vector<double>* controls = nullptr) {
    double reach = 0.0;
    double used = 0.0;
    for (std::size_t j = 0; j < m.n; ++j) {
        const double step = std::clamp(m.cap - used, 0.0, m.u_max);
        used += step;
        reach += m.w[j] * step;
        if (controls) (*controls)[j] = step;
    }
    return reach;
}

qp_solution finish(const qp_model& m, const normalized_problem& np,
                   const std::vector<double>& u, qp_status status, std::size_t iters) {
    qp_solution sol;
    sol.status = status;
    sol.iterations = iters;
    sol.times.resize(m.n + 1);
    sol.speeds.resize(m.n + 1);
    sol.positions.resize(m.n + 1);
    sol.controls = u;
    sol.speeds[0] = np.v0;
    sol.positions[0] = 0.0;
    sol.energy = 0.0;
    for (std::size_t k = 0; k < m.n; ++k) {
        sol.times[k] = static_cast<double>(k) * m.dt;
        sol.speeds[k + 1] = sol.speeds[k] + u[k] * m.dt;
        sol.positions[k + 1] =
            sol.positions[k] + sol.speeds[k] * m.dt + 0.5 * u[k] * m.dt * m.dt;
        sol.energy += u[k] * u[k] * m.dt;
    }
    sol.times[m.n] = np.T;
    return sol;
}

}  // namespace

qp_solution solve_qp(const normalized_problem& np, std::size_t grid, double tolerance) {
    if (grid < 10) {
        throw planner_error(error_code::invalid_argument, "qp grid must be at least 10");
    }
    if (!(tolerance > 0.0)) {
        throw planner_error(error_code::invalid_argument, "qp tolerance must be positive");
    }
    if (!(np.T > 0.0) || !(np.u_max > 0.0)) {
        throw planner_error(error_code::invalid_argument, "qp needs T > 0 and u_max > 0");
    }

    qp_model m;
    m.n = grid;
    m.dt = np.T / static_cast<double>(grid);
    m.u_max = np.u_max;
    m.cap = std::max(0.0, np.v_max - np.v0) / m.dt;
    m.target = np.L - np.v0 * np.T;
    m.w.resize(m.n);
    for (std::size_t j = 0; j < m.n; ++j) {
        m.w[j] = m.dt * m.dt * (static_cast<double>(m.n - j) - 0.5);
    }

    std::vector<double> greedy(m.n, 0.0);
    const double reach = max_reach(m, &greedy);
    // One cell of position resolution: exact-boundary instances fall short of
    // the continuous reachable set by O(dt^2) and must not be rejected.
    const double margin =
        std::max(tolerance * std::max(1.0, std::abs(m.target)), np.u_max * m.dt * m.dt);
    std::vector<double> u(m.n, 0.0);
    if (m.target < -margin || m.target > reach + margin) {
        return finish(m, np, u, qp_status::infeasible, 0);
    }
    const double target = std::clamp(m.target, 0.0, reach);
    // At the reachable bound the front-loaded control is the only feasible
    // point, so no iteration is needed.
    if (reach - target <= 1e-12 * std::max(1.0, std::abs(reach))) {
        return finish(m, np, greedy, qp_status::optimal, 0);
    }

    // Nonnegative controls make the node speeds monotone, so the per-node
    // caps collapse to one scalar budget on sum u_j. The KKT conditions for
    // the remaining two coupling constraints (terminal position equality,
    // speed budget inequality) pin each control to
    //     u_j(lambda, mu) = clip((lambda w_j - mu) / (2 dt), 0, u_max),
    // where the weighted sum rises monotonically with lambda and, once
    // lambda is re-solved, the budget use falls monotonically with mu. Two
    // nested bisections therefore recover the exact discrete optimum.
    std::size_t evals = 0;

    const auto weighted_sum = [&](double lambda, double mu) {
        ++evals;
        double s = 0.0;
        for (std::size_t j = 0; j < m.n; ++j) {
            s += m.w[j] * std::clamp((lambda * m.w[j] - mu) / (2.0 * m.dt), 0.0, m.u_max);
        }
        return s;
    };

    // Root of weighted_sum(., mu) = target, sharpened by one slope step over
    // the cells left strictly inside the box.
    const auto solve_lambda = [&](double mu) {
        double lo = mu > 0.0 ? mu / m.w[0] : 0.0;
        double hi = (2.0 * m.dt * m.u_max + mu) / m.w[m.n - 1];
        for (int it = 0; it < 120 && hi - lo > 1e-16 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (weighted_sum(mid, mu) < target ? lo : hi) = mid;
        }
        double lambda = 0.5 * (lo + hi);
        double slope = 0.0;
        double value = 0.0;
        for (std::size_t j = 0; j < m.n; ++j) {
            const double raw = (lambda * m.w[j] - mu) / (2.0 * m.dt);
            if (raw > 0.0 && raw < m.u_max) slope += m.w[j] * m.w[j] / (2.0 * m.dt);
            value += m.w[j] * std::clamp(raw, 0.0, m.u_max);
        }
        if (slope > 0.0) {
            const double corrected = lambda + (target - value) / slope;
            if (std::isfinite(corrected) && corrected >= 0.0) lambda = corrected;
        }
        return lambda;
    };

    const auto budget_use = [&](double lambda, double mu) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.n; ++j) {
            s += std::clamp((lambda * m.w[j] - mu) / (2.0 * m.dt), 0.0, m.u_max);
        }
        return s;
    };

    double mu = 0.0;
    double lambda = solve_lambda(0.0);
    if (budget_use(lambda, 0.0) > m.cap) {
        // The speed budget binds. Interior targets always admit a point that
        // leaves budget slack, so doubling finds a bracket.
        double lo = 0.0;
        double hi = 2.0 * m.dt * m.u_max;
        int doublings = 0;
        while (budget_use(solve_lambda(hi), hi) > m.cap) {
            hi *= 2.0;
            if (++doublings > 300) return finish(m, np, u, qp_status::max_iterations, evals);
        }
        for (int it = 0; it < 120 && hi - lo > 1e-16 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (budget_use(solve_lambda(mid), mid) > m.cap ? lo : hi) = mid;
        }
        mu = hi;
        lambda = solve_lambda(mu);
    }
    for (std::size_t j = 0; j < m.n; ++j) {
        u[j] = std::clamp((lambda * m.w[j] - mu) / (2.0 * m.dt), 0.0, m.u_max);
    }
    return finish(m, np, u, qp_status::optimal, evals);
}

namespace {

struct candidate {
    profile_class profile;
    std::optional<double> tau_c;
    std::optional<double> tau_s;
    double energy;
};

class candidate_tracker {
  public:
    void offer(const candidate& c) {
        if (!best_ || c.energy < best_->energy - 1e-12 * std::max(1.0, std::abs(best_->energy))) {
            best_ = c;
        }
    }
    const std::optional<candidate>& best() const { return best_; }

  private:
    std::optional<candidate> best_;
};

}  // namespace

search_result grid_search_switch(const normalized_problem& np, std::size_t resolution) {
    if (resolution < 100) {
        throw planner_error(error_code::invalid_argument,
                            "switch search resolution must be at least 100");
    }
    const double T = np.T;
    const double ctol = 1e-9 * std::max(1.0, np.u_max);
    const double vtol = 1e-9 * std::max(1.0, std::abs(np.v_max));
    const double cell = T / static_cast<double>(resolution);

    // Grid rounding perturbs the junction where the ramp is supposed to die
    // out, so the solved end value is allowed to stray from zero by the
    // control change one cell of ramp produces.
    const double end_band = 2.0 * np.u_max * cell;

    // Bang then an affine tail; the tail's end value is solved from the
    // target and must sit within the rounding band around zero.
    const auto eval_bang_affine = [&](double tau_c) -> std::optional<candidate> {
        if (!(tau_c > 0.0 && tau_c < T)) return std::nullopt;
        const double h = T - tau_c;
        const double v1 = np.v0 + np.u_max * tau_c;
        const double p1 = np.v0 * tau_c + 0.5 * np.u_max * tau_c * tau_c;
        const double u2 =
            (np.L - p1 - v1 * h - h * h * np.u_max / 3.0) / (h * h / 6.0);
        if (std::abs(u2) > end_band / h || u2 > np.u_max + ctol) return std::nullopt;
        const double v_end = v1 + 0.5 * (np.u_max + u2) * h;
        // a ramp dipping below zero peaks inside the arc, not at its end
        const double v_peak =
            u2 < 0.0 ? v1 + 0.5 * h * np.u_max * np.u_max / (np.u_max - u2) : v_end;
        if (v_peak > np.v_max + vtol) return std::nullopt;
        const double energy =
            np.u_max * np.u_max * tau_c +
            (h / 3.0) * (np.u_max * np.u_max + np.u_max * u2 + u2 * u2);
        return candidate{profile_class::bang_affine, tau_c, std::nullopt, energy};
    };

    // Affine ramp to zero control, then a constant-speed tail.
    const auto eval_affine_coast = [&](double tau_s) -> std::optional<candidate> {
        if (!(tau_s > 0.0 && tau_s <= T)) return std::nullopt;
        const double denom = tau_s * tau_s / 3.0 + 0.5 * tau_s * (T - tau_s);
        const double u0 = (np.L - np.v0 * T) / denom;
        if (u0 < -ctol || u0 > np.u_max + ctol) return std::nullopt;
        const double plateau = np.v0 + 0.5 * u0 * tau_s;
        if (plateau > np.v_max + vtol) return std::nullopt;
        return candidate{profile_class::affine_coast, std::nullopt, tau_s,
                         u0 * u0 * tau_s / 3.0};
    };

    // Bang, affine ramp, constant-speed tail; the ramp's end value is again
    // solved from the target per junction pair and banded around zero.
    const auto eval_three_arc = [&](double tau_c,
                                    double tau_s) -> std::optional<candidate> {
        if (!(tau_c > 0.0 && tau_c < tau_s && tau_s < T)) return std::nullopt;
        const double v1 = np.v0 + np.u_max * tau_c;
        const double p1 = np.v0 * tau_c + 0.5 * np.u_max * tau_c * tau_c;
        const double h = tau_s - tau_c;
        const double tail = T - tau_s;
        const double u2 = (np.L - p1 - v1 * h - h * h * np.u_max / 3.0 -
                           (v1 + 0.5 * np.u_max * h) * tail) /
                          (h * h / 6.0 + 0.5 * h * tail);
        if (std::abs(u2) > end_band / h || u2 > np.u_max + ctol) return std::nullopt;
        const double v2 = v1 + 0.5 * (np.u_max + u2) * h;
        const double v_peak =
            u2 < 0.0 ? v1 + 0.5 * h * np.u_max * np.u_max / (np.u_max - u2) : v2;
        if (v_peak > np.v_max + vtol) return std::nullopt;
        const double energy =
            np.u_max * np.u_max * tau_c +
            (h / 3.0) * (np.u_max * np.u_max + np.u_max * u2 + u2 * u2);
        return candidate{profile_class::bang_affine_coast, tau_c, tau_s, energy};
    };

    candidate_tracker tracker;

    // Single affine arc ending at zero control.
    {
        const double a = 3.0 * (np.v0 * T - np.L) / (T * T * T);
        const double u_start = -a * T;
        const double v_end = np.v0 - 0.5 * a * T * T;
        if (u_start >= -ctol && u_start <= np.u_max + ctol && v_end <= np.v_max + vtol) {
            tracker.offer({profile_class::unconstrained, std::nullopt, std::nullopt,
                           a * a * T * T * T / 3.0});
        }
    }
    // Full-horizon constant arc with the level solved from the target.
    {
        const double level = (np.L - np.v0 * T) / (0.5 * T * T);
        const double v_end = np.v0 + level * T;
        if (level >= -ctol && level <= np.u_max + ctol && v_end <= np.v_max + vtol) {
            tracker.offer({profile_class::bang, std::nullopt, std::nullopt,
                           level * level * T});
        }
    }

    for (std::size_t i = 1; i < resolution; ++i) {
        if (const auto c = eval_bang_affine(static_cast<double>(i) * cell)) {
            tracker.offer(*c);
        }
    }
    for (std::size_t i = 1; i < resolution; ++i) {
        if (const auto c = eval_affine_coast(static_cast<double>(i) * cell)) {
            tracker.offer(*c);
        }
    }
    for (std::size_t i = 1; i + 1 < resolution; ++i) {
        for (std::size_t j = i + 1; j < resolution; ++j) {
            if (const auto c = eval_three_arc(static_cast<double>(i) * cell,
                                              static_cast<double>(j) * cell)) {
                tracker.offer(*c);
            }
        }
    }

    if (!tracker.best()) {
        throw planner_error(error_code::no_feasible_candidate,
                            "no switching-time candidate satisfies the bounds");
    }

    // The lattice fixes the winning family, but its junctions can land a cell
    // short of the family's own optimum when that optimum hugs a feasibility
    // boundary. Polish the winner by rescanning a shrinking window around it,
    // never leaving the family and never keeping an infeasible point.
    candidate best = *tracker.best();
    const auto keep_min = [&best](const std::optional<candidate>& c) {
        if (c && c->energy < best.energy) best = *c;
    };
    const double width_floor = 1e-13 * std::max(1.0, T);
    if (best.profile == profile_class::bang_affine) {
        double width = 2.0 * cell;
        while (width > width_floor) {
            const double center = *best.tau_c;
            for (int k = 0; k <= 32; ++k) {
                keep_min(eval_bang_affine(center - width +
                                          width * static_cast<double>(k) / 16.0));
            }
            width *= 0.25;
        }
    } else if (best.profile == profile_class::affine_coast) {
        double width = 2.0 * cell;
        while (width > width_floor) {
            const double center = *best.tau_s;
            for (int k = 0; k <= 32; ++k) {
                keep_min(eval_affine_coast(center - width +
                                           width * static_cast<double>(k) / 16.0));
            }
            width *= 0.25;
        }
    } else if (best.profile == profile_class::bang_affine_coast) {
        double width = 2.0 * cell;
        while (width > width_floor) {
            const double cc = *best.tau_c;
            const double cs = *best.tau_s;
            for (int a = 0; a <= 16; ++a) {
                const double tc = cc - width + width * static_cast<double>(a) / 8.0;
                for (int b = 0; b <= 16; ++b) {
                    keep_min(eval_three_arc(
                        tc, cs - width + width * static_cast<double>(b) / 8.0));
                }
            }
            width *= 0.25;
        }
    }

    return {best.profile, best.tau_c, best.tau_s, best.energy};
}

comparison_report compare(const trajectory_plan& plan, const qp_solution& sol) {
    comparison_report rep{};
    rep.energy_gap = sol.energy - plan.energy;
    for (std::size_t k = 0; k + 1 < sol.times.size(); ++k) {
        const state_sample s = eval(plan, sol.times[k]);
        rep.max_control_gap =
            std::max(rep.max_control_gap, std::abs(s.u - sol.controls[k]));
    }
    for (std::size_t k = 0; k < sol.times.size(); ++k) {
        const state_sample s = eval(plan, sol.times[k]);
        rep.max_state_gap = std::max({rep.max_state_gap,
                                      std::abs(s.v - sol.speeds[k]),
                                      std::abs(s.p - sol.positions[k])});
    }
    return rep;
}

}  // namespace ditraj
