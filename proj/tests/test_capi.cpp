// Exercises the shared-library surface only: every call goes through the
// opaque-handle C API, never the internal headers.

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include <ditraj/ditraj.h>

namespace {

ditraj_scenario_spec canonical_spec(double v0, double T, double pT, double u_max,
                                    double v_max) {
    ditraj_scenario_spec spec{};
    spec.t0 = 0.0;
    spec.p0 = 0.0;
    spec.v0 = v0;
    spec.terminal_time = T;
    spec.terminal_position = pT;
    spec.u_min = -u_max;
    spec.u_max = u_max;
    spec.v_min = -v_max;
    spec.v_max = v_max;
    return spec;
}

struct scenario_guard {
    ditraj_scenario* ptr = nullptr;
    ~scenario_guard() { ditraj_scenario_destroy(ptr); }
};

struct plan_guard {
    ditraj_plan* ptr = nullptr;
    ~plan_guard() { ditraj_plan_destroy(ptr); }
};

}  // namespace

TEST_CASE("scenario creation validates arguments and reports status codes") {
    ditraj_scenario* sc = nullptr;
    CHECK(ditraj_scenario_create(nullptr, &sc) == DITRAJ_ERR_INVALID_ARGUMENT);

    ditraj_scenario_spec spec = canonical_spec(0.0, 1.0, 0.4, 1.0, 1.0);
    CHECK(ditraj_scenario_create(&spec, nullptr) == DITRAJ_ERR_INVALID_ARGUMENT);

    spec.u_min = 2.0;  // limits out of order
    CHECK(ditraj_scenario_create(&spec, &sc) == DITRAJ_ERR_LIMIT_ORDER);

    spec = canonical_spec(5.0, 1.0, 0.4, 1.0, 1.0);  // v0 above v_max
    CHECK(ditraj_scenario_create(&spec, &sc) == DITRAJ_ERR_INITIAL_SPEED);

    spec = canonical_spec(0.0, 0.0, 0.4, 1.0, 1.0);  // empty horizon
    CHECK(ditraj_scenario_create(&spec, &sc) == DITRAJ_ERR_NONPOSITIVE_HORIZON);

    spec = canonical_spec(0.0, 1.0, 0.4, 1.0, 1.0);
    REQUIRE(ditraj_scenario_create(&spec, &sc) == DITRAJ_OK);
    REQUIRE(sc != nullptr);
    ditraj_scenario_destroy(sc);
    ditraj_scenario_destroy(nullptr);  // harmless
}

TEST_CASE("classification fills the report for feasible and infeasible inputs") {
    scenario_guard sc;
    ditraj_scenario_spec spec = canonical_spec(0.0, 3.0, 2.7, 2.0, 1.0);
    REQUIRE(ditraj_scenario_create(&spec, &sc.ptr) == DITRAJ_OK);

    ditraj_classification c{};
    REQUIRE(ditraj_scenario_classify(sc.ptr, &c) == DITRAJ_OK);
    CHECK(c.feasible == 1);
    CHECK(c.mirrored == 0);
    CHECK(c.profile == DITRAJ_PROFILE_BANG_AFFINE_COAST);
    CHECK(c.min_distance == 0.0);
    CHECK(c.max_distance == doctest::Approx(2.75));
    CHECK(std::string(ditraj_profile_name(c.profile)) == "BangAffineCoast");

    scenario_guard far;
    spec = canonical_spec(0.0, 1.0, 10.0, 1.0, 1.0);
    REQUIRE(ditraj_scenario_create(&spec, &far.ptr) == DITRAJ_OK);
    CHECK(ditraj_scenario_classify(far.ptr, &c) == DITRAJ_ERR_INFEASIBLE);
    CHECK(c.feasible == 0);
    CHECK(c.max_distance == doctest::Approx(0.5));

    ditraj_plan* plan = nullptr;
    CHECK(ditraj_scenario_plan(far.ptr, &plan) == DITRAJ_ERR_INFEASIBLE);
    CHECK(plan == nullptr);
}

TEST_CASE("plan accessors expose arcs, junctions and samples") {
    scenario_guard sc;
    ditraj_scenario_spec spec = canonical_spec(0.0, 3.0, 2.7, 2.0, 1.0);
    REQUIRE(ditraj_scenario_create(&spec, &sc.ptr) == DITRAJ_OK);

    plan_guard plan;
    REQUIRE(ditraj_scenario_plan(sc.ptr, &plan.ptr) == DITRAJ_OK);

    CHECK(ditraj_plan_profile(plan.ptr) == DITRAJ_PROFILE_BANG_AFFINE_COAST);
    CHECK(ditraj_plan_mirrored(plan.ptr) == 0);
    CHECK(ditraj_plan_energy(plan.ptr) > 0.0);
    REQUIRE(ditraj_plan_arc_count(plan.ptr) == 3);

    ditraj_arc a{};
    REQUIRE(ditraj_plan_arc(plan.ptr, 0, &a) == DITRAJ_OK);
    CHECK(a.kind == DITRAJ_ARC_BANG);
    CHECK(a.t_start == 0.0);
    CHECK(ditraj_plan_arc(plan.ptr, 3, &a) == DITRAJ_ERR_INVALID_ARGUMENT);

    int has_tau_c = 0, has_tau_s = 0;
    double tau_c = 0.0, tau_s = 0.0;
    REQUIRE(ditraj_plan_junctions(plan.ptr, &has_tau_c, &tau_c, &has_tau_s,
                                  &tau_s) == DITRAJ_OK);
    CHECK(has_tau_c == 1);
    CHECK(has_tau_s == 1);
    CHECK(tau_c == doctest::Approx(0.11270166537925852).epsilon(1e-9));
    CHECK(tau_s == doctest::Approx(0.88729833462074181).epsilon(1e-9));
    // Output pointers are individually optional.
    CHECK(ditraj_plan_junctions(plan.ptr, nullptr, nullptr, nullptr, nullptr) ==
          DITRAJ_OK);

    ditraj_state st{};
    REQUIRE(ditraj_plan_eval(plan.ptr, tau_s, &st) == DITRAJ_OK);
    CHECK(st.u == 0.0);
    CHECK(st.v == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ditraj_plan_eval(plan.ptr, -1.0, &st) == DITRAJ_ERR_TIME_RANGE);

    // Two-call sampling protocol.
    size_t count = 0;
    REQUIRE(ditraj_plan_sample_count(plan.ptr, 25, &count) == DITRAJ_OK);
    CHECK(count >= 25);
    std::vector<ditraj_state> rows(count);
    size_t written = 0;
    REQUIRE(ditraj_plan_sample(plan.ptr, 25, rows.data(), rows.size(),
                               &written) == DITRAJ_OK);
    CHECK(written == count);
    CHECK(rows.front().t == 0.0);
    CHECK(rows.back().t == 3.0);
    CHECK(ditraj_plan_sample(plan.ptr, 25, rows.data(), 3, &written) ==
          DITRAJ_ERR_INVALID_ARGUMENT);
}

TEST_CASE("mirrored scenarios plan in user coordinates") {
    scenario_guard sc;
    ditraj_scenario_spec spec{};
    spec.t0 = 1.0;
    spec.p0 = 4.0;
    spec.v0 = 2.0;
    spec.terminal_time = 3.0;
    spec.terminal_position = 4.5;
    spec.u_min = -3.0;
    spec.u_max = 3.0;
    spec.v_min = -2.5;
    spec.v_max = 2.5;
    REQUIRE(ditraj_scenario_create(&spec, &sc.ptr) == DITRAJ_OK);

    plan_guard plan;
    REQUIRE(ditraj_scenario_plan(sc.ptr, &plan.ptr) == DITRAJ_OK);
    CHECK(ditraj_plan_mirrored(plan.ptr) == 1);

    ditraj_state st{};
    REQUIRE(ditraj_plan_eval(plan.ptr, 1.0, &st) == DITRAJ_OK);
    CHECK(st.v == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(st.p == doctest::Approx(4.0).epsilon(1e-12));
    REQUIRE(ditraj_plan_eval(plan.ptr, 3.0, &st) == DITRAJ_OK);
    CHECK(st.p == doctest::Approx(4.5).epsilon(1e-12));

    ditraj_diagnostics d{};
    REQUIRE(ditraj_plan_validate(plan.ptr, &d) == DITRAJ_OK);
    CHECK(d.max_control_violation <= 1e-9);
    CHECK(d.max_speed_violation <= 1e-9);
    CHECK(d.terminal_position_error <= 1e-9);
}

TEST_CASE("verification cross-checks a plan against both oracles") {
    scenario_guard sc;
    ditraj_scenario_spec spec = canonical_spec(0.0, 3.0, 2.7, 2.0, 1.0);
    REQUIRE(ditraj_scenario_create(&spec, &sc.ptr) == DITRAJ_OK);
    plan_guard plan;
    REQUIRE(ditraj_scenario_plan(sc.ptr, &plan.ptr) == DITRAJ_OK);

    ditraj_verification v{};
    CHECK(ditraj_plan_verify(plan.ptr, 5, 2000, 1e-6, &v) ==
          DITRAJ_ERR_INVALID_ARGUMENT);
    REQUIRE(ditraj_plan_verify(plan.ptr, 600, 1000, 1e-6, &v) == DITRAJ_OK);

    CHECK(v.qp_status == DITRAJ_QP_OPTIMAL);
    CHECK(std::abs(v.qp_energy_gap) <= 5e-3 * v.plan_energy + 1e-3);
    CHECK(v.search_found == 1);
    CHECK(v.search_profile == DITRAJ_PROFILE_BANG_AFFINE_COAST);
    CHECK(v.search_energy >= v.plan_energy - 1e-6);
    CHECK(v.diagnostics.junction_discontinuity <= 1e-12);

    // Identical inputs give identical reports.
    ditraj_verification v2{};
    REQUIRE(ditraj_plan_verify(plan.ptr, 600, 1000, 1e-6, &v2) == DITRAJ_OK);
    CHECK(std::memcmp(&v, &v2, sizeof v) == 0);
}

TEST_CASE("verification survives the degenerate boundary without a search result") {
    scenario_guard sc;
    ditraj_scenario_spec spec = canonical_spec(0.0, 3.0, 2.75, 2.0, 1.0);
    REQUIRE(ditraj_scenario_create(&spec, &sc.ptr) == DITRAJ_OK);
    plan_guard plan;
    REQUIRE(ditraj_scenario_plan(sc.ptr, &plan.ptr) == DITRAJ_OK);
    CHECK(ditraj_plan_profile(plan.ptr) == DITRAJ_PROFILE_BANG_COAST);
    CHECK(ditraj_plan_energy(plan.ptr) == 2.0);

    ditraj_verification v{};
    REQUIRE(ditraj_plan_verify(plan.ptr, 600, 1000, 1e-6, &v) == DITRAJ_OK);
    CHECK(v.qp_status == DITRAJ_QP_OPTIMAL);
    CHECK(v.search_found == 0);
}

TEST_CASE("perturbed plans fail validation measurably") {
    scenario_guard sc;
    ditraj_scenario_spec spec = canonical_spec(0.0, 3.0, 2.7, 2.0, 1.0);
    REQUIRE(ditraj_scenario_create(&spec, &sc.ptr) == DITRAJ_OK);
    plan_guard plan;
    REQUIRE(ditraj_scenario_plan(sc.ptr, &plan.ptr) == DITRAJ_OK);

    REQUIRE(ditraj_plan_perturb(plan.ptr, 0.05) == DITRAJ_OK);
    ditraj_diagnostics d{};
    REQUIRE(ditraj_plan_validate(plan.ptr, &d) == DITRAJ_OK);
    CHECK(d.max_control_violation == doctest::Approx(0.05).epsilon(1e-6));
    CHECK(d.terminal_position_error > 1e-3);
    CHECK(d.junction_discontinuity > 1e-6);
}

TEST_CASE("name helpers return stable strings") {
    CHECK(std::string(ditraj_status_name(DITRAJ_OK)) == "Ok");
    CHECK(std::string(ditraj_status_name(DITRAJ_ERR_INFEASIBLE)) ==
          "InfeasibleProblem");
    CHECK(std::string(ditraj_profile_name(DITRAJ_PROFILE_BANG)) == "Bang");
    CHECK(std::string(ditraj_arc_kind_name(DITRAJ_ARC_COAST)) == "coast");
    CHECK(std::string(ditraj_qp_status_name(DITRAJ_QP_OPTIMAL)) == "Optimal");
}
