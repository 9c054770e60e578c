#ifndef COLDROUTE_TRAVEL_TIME_HPP
#define COLDROUTE_TRAVEL_TIME_HPP

#include <cstddef>

#include "coldroute/instance.hpp"

namespace coldroute {

struct Route;

// Index of the period containing departure time t, using half-open intervals
// [start, end). Times at or beyond the last period's end map to the last
// period (whose speed then extends indefinitely).
std::size_t departure_period(double t_min, const SpeedSchedule& schedule);

// Minutes needed to cover distance_km starting at depart_min, integrating
// the piecewise-constant speed profile period by period.
double leg_travel_time(double depart_min, double distance_km, const SpeedSchedule& schedule);

// Fills route.arrivals (one entry per visit) and route.arrival_return from
// route.start_min: each arrival is the previous departure plus the leg time,
// and departures add the service time. Depots have zero service time.
void propagate_route_times(Route& route, double start_min, const Instance& instance);

}  // namespace coldroute

#endif
