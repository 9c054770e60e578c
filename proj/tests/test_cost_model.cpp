#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "coldroute/cost_model.hpp"
#include "coldroute/oracle.hpp"
#include "coldroute/rng.hpp"
#include "test_fixtures.hpp"

using namespace coldroute;

TEST_CASE("worked emission fixtures match exactly") {
    Instance inst = test::co2_fixture();
    // Route depot0 -> customer0 (10 km, demand 40) -> depot0 (20 km total).
    Route r = test::propagated_route(inst, 0, 0, {0});

    CHECK(co2_cost_at_visit(r, 0, inst) == doctest::Approx(0.783).epsilon(1e-12));
    CHECK(co2_cost_at_visit(r, 1, inst) == doctest::Approx(1.044).epsilon(1e-12));

    const CostBreakdown b = route_cost(r, inst);
    CHECK(b.co2 == doctest::Approx(0.783 + 1.044).epsilon(1e-12));
}

TEST_CASE("penalty fixtures: 30 min early and 20 min late") {
    Instance inst = test::two_depot_fixture();
    // Window [120, 180]; c2 = 5/60 $/min, c3 = 10/60 $/min.
    inst.customers[0] = {0, 17.5, 0.0, 20, 120.0, 180.0, 60.0, 10.0, -1};

    // 17.5 km from depot 0 departing at t=0: 10 km in the first hour at
    // 10 km/h, then 7.5 km at 15 km/h = 30 min. Arrive at 90 -> 30 min early.
    Route r = test::propagated_route(inst, 0, 0, {0});
    REQUIRE(r.arrivals[0] == doctest::Approx(90.0));
    CHECK(route_cost(r, inst).penalty == doctest::Approx(2.5).epsilon(1e-12));

    // Same geometry, window shifted so the arrival is 20 min late.
    inst.customers[0].earliest = 30.0;
    inst.customers[0].latest = 70.0;
    inst.customers[0].ideal_earliest = 0.0;
    Route late = test::propagated_route(inst, 0, 0, {0});
    CHECK(route_cost(late, inst).penalty == doctest::Approx(10.0 / 3.0).epsilon(1e-12));

    // Inside the window: zero penalty.
    inst.customers[0].earliest = 80.0;
    inst.customers[0].latest = 100.0;
    inst.customers[0].ideal_earliest = 20.0;
    Route inside = test::propagated_route(inst, 0, 0, {0});
    CHECK(route_cost(inside, inst).penalty == doctest::Approx(0.0));
}

TEST_CASE("empty route costs the fix charge only") {
    Instance inst = test::two_depot_fixture();
    Route r;
    r.depart_depot = 1;
    r.return_depot = 1;
    propagate_route_times(r, 0.0, inst);
    const CostBreakdown b = route_cost(r, inst);
    CHECK(b.fix == doctest::Approx(inst.costs.fix_cost));
    CHECK(b.total == doctest::Approx(b.fix));
    CHECK(b.transport == doctest::Approx(0.0));
    CHECK(b.co2 == doctest::Approx(0.0));
}

TEST_CASE("solution cost is the componentwise sum of route costs") {
    Instance inst = test::two_depot_fixture();
    Solution sol;
    sol.routes.push_back(test::propagated_route(inst, 0, 0, {0, 1}));
    sol.routes.push_back(test::propagated_route(inst, 1, 1, {2, 3}));

    CostBreakdown manual;
    for (const auto& r : sol.routes) manual += route_cost(r, inst);
    const CostBreakdown b = solution_cost(sol, inst);
    CHECK(b.total == doctest::Approx(manual.total).epsilon(1e-12));
    CHECK(b.fix == doctest::Approx(2 * inst.costs.fix_cost));
    CHECK(b.total == doctest::Approx(b.fix + b.transport + b.co2 + b.cooling + b.good_loss +
                                     b.penalty + b.rebalance));
}

TEST_CASE("two empty routes cost twice the fix charge") {
    Instance inst = test::two_depot_fixture();
    Solution sol;
    for (int d : {0, 1}) {
        Route r;
        r.depart_depot = d;
        r.return_depot = d;
        propagate_route_times(r, 0.0, inst);
        sol.routes.push_back(r);
    }
    const CostBreakdown b = solution_cost(sol, inst);
    CHECK(b.fix == doctest::Approx(2 * inst.costs.fix_cost));
    CHECK(b.total == doctest::Approx(b.fix));
}

TEST_CASE("emission cost scales linearly in both carbon coefficients") {
    Instance inst = test::two_depot_fixture();
    Route r = test::propagated_route(inst, 0, 1, {0, 2, 3});
    const double base = route_cost(r, inst).co2;

    Instance doubled_e = inst;
    doubled_e.costs.carbon_price *= 2.0;
    CHECK(route_cost(r, doubled_e).co2 == doctest::Approx(2.0 * base).epsilon(1e-12));

    Instance tripled_lambda = inst;
    tripled_lambda.costs.carbon_emission *= 3.0;
    CHECK(route_cost(r, tripled_lambda).co2 == doctest::Approx(3.0 * base).epsilon(1e-12));
}

TEST_CASE("penalty is zero iff every arrival is inside its window") {
    Instance inst = test::two_depot_fixture();
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<int> visits = {0, 1};
        Route r = test::propagated_route(inst, 0, 0, visits, rng.uniform(0.0, 120.0));
        bool all_inside = true;
        for (std::size_t i = 0; i < r.visits.size(); ++i) {
            const Customer& c = inst.customers[r.visits[i]];
            if (r.arrivals[i] < c.earliest || r.arrivals[i] > c.latest) all_inside = false;
        }
        const double penalty = route_cost(r, inst).penalty;
        CHECK((penalty == 0.0) == all_inside);
    }
}

TEST_CASE("re-evaluation is pure and longer legs cost more inside one period") {
    Instance inst = test::two_depot_fixture();
    // Stay within period 1 (speed 10 km/h, 60 min): short distances only.
    inst.customers[0] = {0, 2.0, 0.0, 20, 0.0, 480.0, 0.0, 1.0, -1};
    Route r = test::propagated_route(inst, 0, 0, {0});
    const double once = route_cost(r, inst).total;
    CHECK(route_cost(r, inst).total == once);

    inst.customers[0].x = 3.0;  // longer leg, same period
    Route longer = test::propagated_route(inst, 0, 0, {0});
    CHECK(route_cost(longer, inst).total > once);
}

TEST_CASE("relative improvement follows its definition") {
    CHECK(relative_improvement(90.0, 100.0) == doctest::Approx(-10.0));
    CHECK(relative_improvement(123.4, 123.4) == doctest::Approx(0.0));
    // Table 2 sign convention: a better (smaller) SAVNS objective is negative.
    CHECK(relative_improvement(13919.54, 15388.24) < 0.0);
    CHECK_THROWS_AS(relative_improvement(1.0, 0.0), std::domain_error);
}

TEST_CASE("cost model agrees with the audit evaluator on random tiny routes") {
    Rng rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        GenSpec spec;
        spec.n_customers = 1 + static_cast<int>(rng.uniform_int(0, 4));
        spec.n_depots = 2;
        spec.area_km = 30.0;
        spec.demand_min = 1;
        spec.demand_max = 20;
        spec.seed = rng.next();
        Instance inst = generate_instance(spec);

        std::vector<int> visits(inst.customers.size());
        for (std::size_t i = 0; i < visits.size(); ++i) visits[i] = static_cast<int>(i);
        for (std::size_t i = visits.size(); i > 1; --i)
            std::swap(visits[i - 1], visits[rng.index(i)]);

        const int depart = static_cast<int>(rng.uniform_int(0, 1));
        const int ret = static_cast<int>(rng.uniform_int(0, 1));
        Route r = test::propagated_route(inst, depart, ret, visits, rng.uniform(0.0, 90.0));

        const CostBreakdown lhs = route_cost(r, inst);
        const CostBreakdown rhs = audit_cost(r, inst);
        CHECK(lhs.total == doctest::Approx(rhs.total).epsilon(1e-9));
        CHECK(lhs.co2 == doctest::Approx(rhs.co2).epsilon(1e-9));
        CHECK(lhs.penalty == doctest::Approx(rhs.penalty).epsilon(1e-9));
        CHECK(lhs.cooling == doctest::Approx(rhs.cooling).epsilon(1e-9));
    }
}
