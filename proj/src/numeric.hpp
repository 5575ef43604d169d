#pragma once

#include <algorithm>
#include <cmath>

namespace ditraj {

inline constexpr double k_tie_rel = 1e-12;

// True when a and b are equal up to a relative tolerance anchored at 1.
inline bool tie(double a, double b, double rel = k_tie_rel) {
    return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

// Weak comparison a <= b with ties resolved in favour of true.
inline bool le_tie(double a, double b, double rel = k_tie_rel) {
    return a <= b || tie(a, b, rel);
}

// Strict comparison a < b that rejects ties.
inline bool lt_strict(double a, double b, double rel = k_tie_rel) {
    return a < b && !tie(a, b, rel);
}

}  // namespace ditraj
