#include <doctest.h>

#include "coldroute/departure.hpp"
#include "coldroute/errors.hpp"
#include "coldroute/strategies.hpp"
#include "test_fixtures.hpp"

using namespace coldroute;

TEST_CASE("clock parsing counts minutes from 09:00") {
    CHECK(DeparturePolicy::parse("fixed:09:00").fixed_min == doctest::Approx(0.0));
    CHECK(DeparturePolicy::parse("fixed:10:00").fixed_min == doctest::Approx(60.0));
    CHECK(DeparturePolicy::parse("fixed:09:40").fixed_min == doctest::Approx(40.0));

    const DeparturePolicy flex = DeparturePolicy::parse("flexible:09:30-10:00");
    CHECK(flex.kind == DeparturePolicy::Kind::Flexible);
    CHECK(flex.flexible_lo == doctest::Approx(30.0));
    CHECK(flex.flexible_hi == doctest::Approx(60.0));

    CHECK_THROWS_AS(DeparturePolicy::parse("fixed:08:00"), ParseError);
    CHECK_THROWS_AS(DeparturePolicy::parse("sometimes:10:00"), ParseError);
    CHECK_THROWS_AS(DeparturePolicy::parse("garbage"), ParseError);
}

TEST_CASE("fixed policy sets every route start") {
    Instance inst = test::two_depot_fixture();
    Solution sol;
    sol.routes.push_back(test::propagated_route(inst, 0, 0, {0, 1}));
    sol.routes.push_back(test::propagated_route(inst, 1, 1, {2, 3}));

    Solution at10 = assign_departures(sol, DeparturePolicy::fixed(60.0), inst);
    for (const auto& r : at10.routes) CHECK(r.start_min == doctest::Approx(60.0));

    // Arrivals re-propagate consistently (the validator replays them).
    at10.strategy = Strategy::CC;
    CHECK(validate_solution(at10, inst, Strategy::CC).empty());
}

TEST_CASE("fixed 09:00 is the identity on the default pipeline") {
    Instance inst = test::two_depot_fixture();
    Solution sol;
    sol.routes.push_back(test::propagated_route(inst, 0, 0, {0, 1}, 0.0));
    Solution same = assign_departures(sol, DeparturePolicy::fixed(0.0), inst);
    CHECK(same == sol);
}

TEST_CASE("flexible draws are reproducible and inside the interval") {
    Instance inst = test::two_depot_fixture();
    Solution sol;
    sol.routes.push_back(test::propagated_route(inst, 0, 0, {0}));
    sol.routes.push_back(test::propagated_route(inst, 0, 0, {1}));
    sol.routes.push_back(test::propagated_route(inst, 1, 1, {2, 3}));

    const DeparturePolicy policy = DeparturePolicy::flexible(30.0, 60.0, 17);
    Solution a = assign_departures(sol, policy, inst);
    Solution b = assign_departures(sol, policy, inst);
    CHECK(a == b);
    bool all_equal = true;
    for (const auto& r : a.routes) {
        CHECK(r.start_min >= 30.0);
        CHECK(r.start_min < 60.0);
        if (r.start_min != a.routes[0].start_min) all_equal = false;
    }
    CHECK_FALSE(all_equal);  // independent draws per route
}
