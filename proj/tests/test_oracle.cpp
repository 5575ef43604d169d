#include <doctest.h>

#include <cmath>
#include <vector>

#include "classifier.hpp"
#include "oracle.hpp"
#include "planner.hpp"
#include "trajectory.hpp"
#include "test_util.hpp"

using namespace ditraj;

static const normalized_problem k_unconstrained{1.0, 2.2, 2.0, 3.0, 2.0};
static const normalized_problem k_affine_coast{0.0, 2.5, 3.0, 10.0, 1.0};
static const normalized_problem k_bang_affine{0.0, 3.5, 2.0, 2.0, 10.0};
static const normalized_problem k_bang_affine_coast{0.0, 2.7, 3.0, 2.0, 1.0};
static const normalized_problem k_bang_coast{0.0, 2.75, 3.0, 2.0, 1.0};
static const normalized_problem k_bang{0.0, 1.0, 1.0, 2.0, 2.0};

TEST_CASE("qp validates its arguments") {
    CHECK_THROWS_AS(solve_qp(k_bang, 5, 1e-6), planner_error);
    CHECK_THROWS_AS(solve_qp(k_bang, 100, 0.0), planner_error);
    CHECK_THROWS_AS(grid_search_switch(k_bang, 50), planner_error);
}

TEST_CASE("qp tracks the closed form on every profile family") {
    for (const normalized_problem& np :
         {k_unconstrained, k_affine_coast, k_bang_affine, k_bang_affine_coast,
          k_bang_coast, k_bang}) {
        const trajectory_plan p = plan(np);
        const qp_solution sol = solve_qp(np, 800, 1e-6);
        CAPTURE(np.L);
        REQUIRE(sol.status == qp_status::optimal);
        CHECK(std::abs(sol.energy - p.energy) <=
              std::max(3e-3, 5e-3 * p.energy));
    }
}

TEST_CASE("qp iterates respect the box and terminal constraints") {
    const normalized_problem& np = k_bang_affine_coast;
    const qp_solution sol = solve_qp(np, 500, 1e-7);
    REQUIRE(sol.status == qp_status::optimal);
    REQUIRE(sol.controls.size() == 500);
    REQUIRE(sol.times.size() == 501);
    REQUIRE(sol.speeds.size() == 501);
    REQUIRE(sol.positions.size() == 501);

    for (double u : sol.controls) {
        CHECK(u >= -1e-9);
        CHECK(u <= np.u_max + 1e-9);
    }
    for (double v : sol.speeds) CHECK(v <= np.v_max + 1e-5);
    CHECK(sol.positions.front() == 0.0);
    CHECK(sol.positions.back() == doctest::Approx(np.L).epsilon(1e-6));
}

TEST_CASE("qp energy is monotone non-increasing on nested grids") {
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t grid : {250, 500, 1000, 2000}) {
        const qp_solution sol = solve_qp(k_bang_affine_coast, grid, 1e-7);
        REQUIRE(sol.status == qp_status::optimal);
        CHECK(sol.energy <= prev + 5e-6);
        prev = sol.energy;
    }
}

TEST_CASE("qp converges at first order on the degenerate boundary") {
    const trajectory_plan p = plan(k_bang_coast);
    std::vector<double> log_n, log_gap;
    for (std::size_t grid : {250, 500, 1000, 2000, 4000}) {
        const qp_solution sol = solve_qp(k_bang_coast, grid, 1e-7);
        REQUIRE(sol.status == qp_status::optimal);
        const double gap = std::abs(sol.energy - p.energy);
        REQUIRE(gap > 0.0);
        log_n.push_back(std::log(static_cast<double>(grid)));
        log_gap.push_back(std::log(gap));
    }
    const double slope = testutil::fit_slope(log_n, log_gap);
    CHECK(slope > -1.3);
    CHECK(slope < -0.7);
}

TEST_CASE("qp clamps boundary targets to the reachable maximum") {
    // The target equals the discrete reachable maximum, so the only feasible
    // point is the saturating control and the solver returns it directly.
    const qp_solution sol = solve_qp(k_bang, 400, 1e-6);
    REQUIRE(sol.status == qp_status::optimal);
    CHECK(sol.iterations == 0);
    for (double u : sol.controls) CHECK(u == k_bang.u_max);
    CHECK(sol.energy == doctest::Approx(k_bang.u_max * k_bang.u_max * k_bang.T)
                            .epsilon(1e-12));
}

TEST_CASE("qp handles the coast-only degenerate instance") {
    const normalized_problem np{1.0, 2.0, 2.0, 1.0, 2.0};  // L == v0 T
    const qp_solution sol = solve_qp(np, 200, 1e-8);
    REQUIRE(sol.status == qp_status::optimal);
    CHECK(sol.energy <= 1e-8);
    const trajectory_plan p = plan(np);
    CHECK(p.energy == 0.0);
}

TEST_CASE("grid search recovers the switching structure of each family") {
    const std::size_t res = 2000;

    const search_result ac = grid_search_switch(k_affine_coast, res);
    CHECK(ac.profile == profile_class::affine_coast);
    REQUIRE(ac.tau_s.has_value());
    CHECK(std::abs(*ac.tau_s - 1.5) <= k_affine_coast.T / res + 1e-12);

    const search_result ba = grid_search_switch(k_bang_affine, res);
    CHECK(ba.profile == profile_class::bang_affine);
    REQUIRE(ba.tau_c.has_value());
    const double tau_c_exact = bang_affine_junction(k_bang_affine);
    CHECK(std::abs(*ba.tau_c - tau_c_exact) <= k_bang_affine.T / res + 1e-12);

    const search_result bac = grid_search_switch(k_bang_affine_coast, res);
    CHECK(bac.profile == profile_class::bang_affine_coast);
    REQUIRE(bac.tau_c.has_value());
    REQUIRE(bac.tau_s.has_value());
    const trajectory_plan p = plan(k_bang_affine_coast);
    CHECK(std::abs(*bac.tau_c - *p.tau_c) <= k_bang_affine_coast.T / res + 1e-12);
    CHECK(std::abs(*bac.tau_s - *p.tau_s) <= k_bang_affine_coast.T / res + 1e-12);

    const search_result bng = grid_search_switch(k_bang, res);
    CHECK(bng.profile == profile_class::bang);
    CHECK(bng.energy == doctest::Approx(4.0).epsilon(1e-12));

    const search_result unc = grid_search_switch(k_unconstrained, res);
    CHECK(unc.profile == profile_class::unconstrained);
    const trajectory_plan pu = plan(k_unconstrained);
    CHECK(unc.energy == doctest::Approx(pu.energy).epsilon(1e-12));
}

TEST_CASE("grid search has no feasible candidate at the exact boundary") {
    // The degenerate two-arc optimum switches between grid lines; every
    // gridded candidate misses the target or breaks a bound, and the search
    // says so instead of returning a wrong nearby plan.
    try {
        grid_search_switch(k_bang_coast, 2000);
        FAIL("expected a planner_error");
    } catch (const planner_error& err) {
        CHECK(err.code() == error_code::no_feasible_candidate);
    }
}

TEST_CASE("search energy brackets the closed form from above") {
    testutil::rng r(17);
    int seen = 0;
    while (seen < 100) {
        const normalized_problem np = testutil::random_instance(r);
        const profile_class profile = classify(np);
        if (profile != profile_class::affine_coast &&
            profile != profile_class::bang_affine &&
            profile != profile_class::bang_affine_coast) {
            continue;
        }
        ++seen;
        const trajectory_plan p = plan(np);
        const search_result best = grid_search_switch(np, 2000);
        CAPTURE(seen);
        // Continuum optimum lower-bounds every feasible gridded candidate.
        CHECK(best.energy >= p.energy - 1e-6);
        // And the winner sits within the resolution-limited band above it.
        CHECK(best.energy <= p.energy + 0.05 * std::max(1.0, p.energy));
    }
}

TEST_CASE("compare reports matched and mismatched gaps") {
    const trajectory_plan p = plan(k_bang_affine_coast);
    const qp_solution sol = solve_qp(k_bang_affine_coast, 1000, 1e-7);
    const comparison_report matched = compare(p, sol);
    CHECK(std::abs(matched.energy_gap) <= 1e-3);
    CHECK(matched.max_control_gap <= 0.05);
    CHECK(matched.max_state_gap <= 1e-3);

    const trajectory_plan other = plan(k_unconstrained);
    const qp_solution sol2 = solve_qp(k_unconstrained, 1000, 1e-7);
    const comparison_report mismatched = compare(p, sol2);
    CHECK(std::abs(mismatched.energy_gap) > 0.1);
}
