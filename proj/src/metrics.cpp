#include "coldroute/metrics.hpp"

#include <stdexcept>

namespace coldroute {

double customer_satisfaction(double arrival, const Customer& c) {
    if (arrival < c.ideal_earliest) return 0.0;
    if (arrival <= c.earliest) return 1.0;
    if (arrival <= c.latest && c.latest > c.earliest)
        return 1.0 - (arrival - c.earliest) / (c.latest - c.earliest);
    return 0.0;
}

IndicatorReport indicators(const Solution& solution, const Instance& inst, double flr_threshold) {
    if (solution.routes.empty())
        throw std::invalid_argument("indicators: empty solution");

    IndicatorReport rep;
    int total_load = 0;
    int full_routes = 0;
    long visits = 0, early = 0, late = 0;
    double satisfaction = 0.0;
    for (const auto& r : solution.routes) {
        total_load += r.load;
        if (r.load >= flr_threshold * inst.vehicle.capacity) ++full_routes;
        for (std::size_t i = 0; i < r.visits.size(); ++i) {
            const Customer& c = inst.customers[r.visits[i]];
            const double a = r.arrivals[i];
            ++visits;
            if (a < c.earliest) ++early;
            if (a > c.latest) ++late;
            satisfaction += customer_satisfaction(a, c);
        }
    }
    rep.lr = static_cast<double>(total_load) /
             (static_cast<double>(inst.vehicle.capacity) * solution.routes.size());
    rep.flr = static_cast<double>(full_routes) / solution.routes.size();
    rep.cs = visits > 0 ? satisfaction / static_cast<double>(visits) : 0.0;
    rep.ear = visits > 0 ? static_cast<double>(early) / static_cast<double>(visits) : 0.0;
    rep.tr = visits > 0 ? static_cast<double>(late) / static_cast<double>(visits) : 0.0;
    return rep;
}

}  // namespace coldroute
