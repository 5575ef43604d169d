#include <doctest.h>

#include <cmath>
#include <limits>
#include <optional>

#include "core.hpp"
#include "classifier.hpp"
#include "planner.hpp"
#include "trajectory.hpp"
#include "test_util.hpp"

using namespace ditraj;

namespace {

template <typename Fn>
std::optional<error_code> thrown_code(Fn&& fn) {
    try {
        fn();
    } catch (const planner_error& err) {
        return err.code();
    }
    return std::nullopt;
}

const limits k_sym{-2.0, 2.0, -1.5, 1.5};

}  // namespace

TEST_CASE("make_scenario rejects inconsistent limits") {
    CHECK(thrown_code([] {
              make_scenario(0, 0, 0, 1, 0.5, limits{2.0, -2.0, -1.0, 1.0});
          }) == error_code::limit_order_violation);
    CHECK(thrown_code([] {
              make_scenario(0, 0, 0, 1, 0.5, limits{0.5, 2.0, -1.0, 1.0});
          }) == error_code::limit_order_violation);
    CHECK(thrown_code([] {
              make_scenario(0, 0, 0, 1, 0.5, limits{-2.0, 2.0, 1.0, -1.0});
          }) == error_code::limit_order_violation);
    CHECK(thrown_code([] {
              make_scenario(0, 0, 3.0, 1, 0.5, k_sym);
          }) == error_code::initial_speed_out_of_bounds);
    CHECK(thrown_code([] {
              make_scenario(1.0, 0, 0, 1.0, 0.5, k_sym);
          }) == error_code::nonpositive_horizon);
    CHECK(thrown_code([] {
              make_scenario(0, 0, std::numeric_limits<double>::quiet_NaN(), 1, 0.5, k_sym);
          }) == error_code::invalid_argument);
    CHECK_FALSE(thrown_code([] { make_scenario(0, 0, 0, 1, 0.5, k_sym); }));
}

TEST_CASE("normalize shifts accelerating instances without mirroring") {
    const scenario sc = make_scenario(2.0, 5.0, 0.5, 6.0, 8.0, k_sym);
    const auto [np, map] = normalize(sc);
    CHECK_FALSE(map.mirrored);
    CHECK(map.time_shift == 2.0);
    CHECK(map.position_shift == 5.0);
    CHECK(np.v0 == 0.5);
    CHECK(np.T == 4.0);
    CHECK(np.L == 3.0);
    CHECK(np.u_max == 2.0);
    CHECK(np.v_max == 1.5);
}

TEST_CASE("normalize mirrors decelerating instances through the origin") {
    // Displacement 1.0 over 4s at v0 = 1.0 requires slowing down.
    const limits lim{-3.0, 2.0, -2.5, 1.5};
    const scenario sc = make_scenario(0.0, 0.0, 1.0, 4.0, 1.0, lim);
    const auto [np, map] = normalize(sc);
    CHECK(map.mirrored);
    CHECK(np.v0 == -1.0);
    CHECK(np.L == -1.0);
    CHECK(np.u_max == 3.0);   // magnitude of the user's braking limit
    CHECK(np.v_max == 2.5);   // magnitude of the user's reverse speed limit
    CHECK(np.T == 4.0);
}

TEST_CASE("a coasting displacement normalizes to the accelerating frame") {
    const scenario sc = make_scenario(0.0, 0.0, 1.0, 4.0, 4.0, k_sym);
    const auto [np, map] = normalize(sc);
    CHECK_FALSE(map.mirrored);
    CHECK(np.L == np.v0 * np.T);
}

TEST_CASE("denormalize undoes the canonical transform pointwise") {
    const limits lim{-3.0, 2.0, -2.5, 1.5};
    const scenario sc = make_scenario(1.5, -2.0, 1.2, 5.5, 0.4, lim);
    const auto [np, map] = normalize(sc);
    REQUIRE(map.mirrored);

    const trajectory_plan canonical = plan(np);
    const trajectory_plan user = denormalize(canonical, map);

    CHECK(user.energy == canonical.energy);
    CHECK(user.arcs.size() == canonical.arcs.size());
    CHECK(user.arcs.front().t_start == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(user.arcs.back().t_end == doctest::Approx(5.5).epsilon(1e-15));

    for (int i = 0; i <= 40; ++i) {
        const double tc = np.T * i / 40.0;
        const state_sample a = eval(canonical, tc);
        const state_sample b = eval(user, tc + map.time_shift);
        CHECK(b.u == doctest::Approx(-a.u).epsilon(1e-12));
        CHECK(b.v == doctest::Approx(-a.v).epsilon(1e-12));
        CHECK(b.p == doctest::Approx(map.position_shift - a.p).epsilon(1e-12));
    }

    if (canonical.tau_c) {
        REQUIRE(user.tau_c.has_value());
        CHECK(*user.tau_c == doctest::Approx(*canonical.tau_c + 1.5).epsilon(1e-15));
    }
}

TEST_CASE("random decelerating scenarios normalize to feasible canonical problems") {
    testutil::rng r(42);
    for (int k = 0; k < 200; ++k) {
        const scenario sc = testutil::random_decelerating_scenario(r);
        const auto [np, map] = normalize(sc);
        CAPTURE(k);
        CHECK(map.mirrored);
        CHECK(np.T > 0.0);
        CHECK(np.u_max > 0.0);
        CHECK(feasibility_check(np).feasible);
    }
}

TEST_CASE("enum names are stable") {
    CHECK(std::string(error_code_name(error_code::negative_psi)) == "NegativePsi");
    CHECK(std::string(profile_class_name(profile_class::bang_affine_coast)) ==
          "BangAffineCoast");
    CHECK(std::string(arc_kind_name(arc_kind::coast)) == "coast");
}
