#include "coldroute/travel_time.hpp"

#include <cassert>

#include "coldroute/solution.hpp"

namespace coldroute {

std::size_t departure_period(double t_min, const SpeedSchedule& schedule) {
    assert(t_min >= 0);
    const auto& periods = schedule.periods;
    for (std::size_t i = 0; i + 1 < periods.size(); ++i) {
        if (t_min < periods[i].end_min) return i;
    }
    return periods.size() - 1;
}

double leg_travel_time(double depart_min, double distance_km, const SpeedSchedule& schedule) {
    assert(distance_km >= 0);
    if (distance_km <= 0) return 0.0;

    const auto& periods = schedule.periods;
    std::size_t p = departure_period(depart_min, schedule);
    double clock = depart_min;
    double elapsed = 0.0;
    double resd = distance_km;
    for (;;) {
        const TimePeriod& period = periods[p];
        if (p + 1 == periods.size()) {
            // Last period's speed extends past the horizon.
            return elapsed + 60.0 * resd / period.speed_kmh;
        }
        const double window = period.end_min - clock;
        const double coverable = period.speed_kmh * window / 60.0;
        if (coverable >= resd) {
            return elapsed + 60.0 * resd / period.speed_kmh;
        }
        elapsed += window;
        resd -= coverable;
        clock = period.end_min;
        ++p;
    }
}

void propagate_route_times(Route& route, double start_min, const Instance& instance) {
    route.start_min = start_min;
    route.arrivals.resize(route.visits.size());

    double px = instance.depots[route.depart_depot].x;
    double py = instance.depots[route.depart_depot].y;
    double depart = start_min;
    for (std::size_t i = 0; i < route.visits.size(); ++i) {
        const Customer& c = instance.customers[route.visits[i]];
        const double d = euclid(px, py, c.x, c.y);
        route.arrivals[i] = depart + leg_travel_time(depart, d, instance.schedule);
        depart = route.arrivals[i] + c.service_time;
        px = c.x;
        py = c.y;
    }
    const Depot& ret = instance.depots[route.return_depot];
    route.arrival_return = depart + leg_travel_time(depart, euclid(px, py, ret.x, ret.y),
                                                    instance.schedule);
}

}  // namespace coldroute
