#pragma once

#include "types.hpp"

namespace ditraj {

// Closed-form kinematics of a single arc, evaluated in arc-local time to
// avoid cancellation for plans far from t = 0.

inline double arc_control(const arc& a, double t) {
    return a.slope * t + a.intercept;
}

inline state_sample arc_state(const arc& a, double t) {
    const double xi = t - a.t_start;
    const double u0 = a.slope * a.t_start + a.intercept;
    const double u = u0 + a.slope * xi;
    const double v = a.v_entry + xi * (u0 + 0.5 * a.slope * xi);
    const double p =
        a.p_entry + xi * (a.v_entry + xi * (0.5 * u0 + a.slope * xi / 6.0));
    return {t, u, v, p};
}

inline state_sample arc_end_state(const arc& a) { return arc_state(a, a.t_end); }

// Integral of u^2 over the arc.
inline double arc_energy(const arc& a) {
    const double len = a.t_end - a.t_start;
    const double u0 = a.slope * a.t_start + a.intercept;
    return len * (u0 * u0 + u0 * a.slope * len + a.slope * a.slope * len * len / 3.0);
}

}  // namespace ditraj
