#ifndef COLDROUTE_METRICS_HPP
#define COLDROUTE_METRICS_HPP

#include "coldroute/instance.hpp"
#include "coldroute/solution.hpp"

namespace coldroute {

struct IndicatorReport {
    double lr = 0.0;   // loading rate: total load / (capacity * routes)
    double flr = 0.0;  // share of routes at or above the fullness threshold
    double cs = 0.0;   // mean fuzzy-appointment satisfaction
    double ear = 0.0;  // share of visits arriving before the earliest time
    double tr = 0.0;   // share of visits arriving after the latest time
};

// Fuzzy appointment satisfaction: 1 on [et*, et], linear decay on (et, lt],
// 0 elsewhere. A degenerate window (lt == et) keeps the value 1 up to et.
double customer_satisfaction(double arrival_min, const Customer& customer);

IndicatorReport indicators(const Solution& solution, const Instance& instance,
                           double flr_threshold = 1.0);

}  // namespace coldroute

#endif
