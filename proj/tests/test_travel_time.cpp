#include <doctest.h>

#include "coldroute/instance.hpp"
#include "coldroute/rng.hpp"
#include "coldroute/travel_time.hpp"
#include "test_fixtures.hpp"

using namespace coldroute;

namespace {

SpeedSchedule table_schedule() { return Defaults::table_defaults().schedule; }

}  // namespace

TEST_CASE("departure period uses half-open intervals and clamps the tail") {
    const SpeedSchedule s = table_schedule();
    CHECK(departure_period(0.0, s) == 0);
    CHECK(departure_period(60.0, s) == 1);  // boundary belongs to the later period
    CHECK(departure_period(65.0, s) == 1);
    CHECK(departure_period(479.9, s) == 7);
    CHECK(departure_period(480.0, s) == 7);
    CHECK(departure_period(10000.0, s) == 7);
}

TEST_CASE("hand-derived leg times match to 1e-9 minutes") {
    const SpeedSchedule s = table_schedule();
    CHECK(leg_travel_time(0.0, 5.0, s) == doctest::Approx(30.0).epsilon(1e-12));
    CHECK(leg_travel_time(50.0, 4.0, s) == doctest::Approx(58.0 / 3.0).epsilon(1e-12));
    CHECK(leg_travel_time(123.0, 0.0, s) == doctest::Approx(0.0));
    CHECK(leg_travel_time(470.0, 3.0, s) == doctest::Approx(18.0).epsilon(1e-12));
}

TEST_CASE("per-period contributions compose exactly for hand-fixed cases") {
    const SpeedSchedule s = table_schedule();
    // Depart 50: 10 min in period 1 at 10 km/h (1.6667 km), remainder in
    // period 2 at 15 km/h.
    const double within_first = (60.0 - 50.0);
    const double covered_first = 10.0 * within_first / 60.0;
    const double second = 60.0 * (4.0 - covered_first) / 15.0;
    CHECK(leg_travel_time(50.0, 4.0, s) ==
          doctest::Approx(within_first + second).epsilon(1e-12));
}

TEST_CASE("additivity: a split leg takes the same total time") {
    const SpeedSchedule s = table_schedule();
    Rng rng(99);
    for (int i = 0; i < 10000; ++i) {
        const double depart = rng.uniform(0.0, 520.0);
        const double dist = rng.uniform(0.0, 40.0);
        const double cut = rng.uniform(0.0, dist);
        const double whole = leg_travel_time(depart, dist, s);
        const double part1 = leg_travel_time(depart, cut, s);
        const double part2 = leg_travel_time(depart + part1, dist - cut, s);
        CHECK(whole == doctest::Approx(part1 + part2).epsilon(1e-9));
    }
}

TEST_CASE("monotonicity in distance and FIFO in departure time") {
    const SpeedSchedule s = table_schedule();
    Rng rng(123);
    for (int i = 0; i < 10000; ++i) {
        const double depart = rng.uniform(0.0, 500.0);
        const double d1 = rng.uniform(0.0, 30.0);
        const double d2 = rng.uniform(0.0, 30.0);
        const double lo = std::min(d1, d2), hi = std::max(d1, d2);
        CHECK(leg_travel_time(depart, lo, s) <= leg_travel_time(depart, hi, s) + 1e-12);

        const double t1 = rng.uniform(0.0, 500.0);
        const double t2 = rng.uniform(0.0, 500.0);
        const double early = std::min(t1, t2), late = std::max(t1, t2);
        const double dist = rng.uniform(0.0, 30.0);
        const double arrive_early = early + leg_travel_time(early, dist, s);
        const double arrive_late = late + leg_travel_time(late, dist, s);
        CHECK(arrive_early <= arrive_late + 1e-9);
    }
}

TEST_CASE("route propagation chains legs and service times") {
    Instance inst = test::two_depot_fixture();
    // Customer at 5 km from depot 0, departing at t=0 in the 10 km/h period.
    inst.customers[0] = {0, 5.0, 0.0, 20, 60.0, 180.0, 0.0, 10.0, -1};
    Route r = test::propagated_route(inst, 0, 0, {0});
    REQUIRE(r.arrivals.size() == 1);
    CHECK(r.arrivals[0] == doctest::Approx(30.0).epsilon(1e-12));
    // Return leg departs at 40 after 10 min of service.
    const double expected_return = 40.0 + leg_travel_time(40.0, 5.0, inst.schedule);
    CHECK(r.arrival_return == doctest::Approx(expected_return).epsilon(1e-12));
}

TEST_CASE("empty route arrives where it started") {
    Instance inst = test::two_depot_fixture();
    Route r;
    r.depart_depot = 0;
    r.return_depot = 0;
    propagate_route_times(r, 37.5, inst);
    CHECK(r.arrival_return == doctest::Approx(37.5));
}

TEST_CASE("permuting later visits never changes earlier arrivals") {
    Instance inst = test::two_depot_fixture();
    Route a = test::propagated_route(inst, 0, 0, {0, 1, 2});
    Route b = test::propagated_route(inst, 0, 0, {0, 2, 1});
    CHECK(a.arrivals[0] == b.arrivals[0]);
}
