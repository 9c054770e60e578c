#ifndef COLDROUTE_DEPARTURE_HPP
#define COLDROUTE_DEPARTURE_HPP

#include <cstdint>
#include <string>

#include "coldroute/instance.hpp"
#include "coldroute/solution.hpp"

namespace coldroute {

// When vehicles leave the depot: all at one fixed minute, or each drawn
// uniformly from [lo, hi]. Minutes count from the start of the horizon
// (9:00 AM in the default schedule).
struct DeparturePolicy {
    enum class Kind { Fixed, Flexible };
    Kind kind = Kind::Fixed;
    double fixed_min = 0.0;
    double flexible_lo = 0.0;
    double flexible_hi = 0.0;
    std::uint64_t seed = 0;

    static DeparturePolicy fixed(double t0);
    static DeparturePolicy flexible(double lo, double hi, std::uint64_t seed);
    // "fixed:HH:MM" or "flexible:HH:MM-HH:MM", offsets from 09:00.
    static DeparturePolicy parse(const std::string& text);
    std::string describe() const;
};

// Sets every route's start clock per the policy and re-propagates arrivals.
// Flexible draws are made in route order from a fresh seeded stream.
Solution assign_departures(const Solution& solution, const DeparturePolicy& policy,
                           const Instance& instance);

}  // namespace coldroute

#endif
