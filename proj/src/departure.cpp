#include "coldroute/departure.hpp"

#include <sstream>

#include "coldroute/errors.hpp"
#include "coldroute/rng.hpp"
#include "coldroute/travel_time.hpp"

namespace coldroute {

DeparturePolicy DeparturePolicy::fixed(double t0) {
    if (t0 < 0) throw ValidationError("departure: fixed time must be >= 0");
    DeparturePolicy p;
    p.kind = Kind::Fixed;
    p.fixed_min = t0;
    return p;
}

DeparturePolicy DeparturePolicy::flexible(double lo, double hi, std::uint64_t seed) {
    if (lo < 0 || lo > hi) throw ValidationError("departure: need 0 <= lo <= hi");
    DeparturePolicy p;
    p.kind = Kind::Flexible;
    p.flexible_lo = lo;
    p.flexible_hi = hi;
    p.seed = seed;
    return p;
}

namespace {

// "HH:MM" as minutes past 09:00.
double parse_clock(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw ParseError("departure: expected HH:MM, got '" + text + "'");
    int hh = 0, mm = 0;
    try {
        hh = std::stoi(text.substr(0, colon));
        mm = std::stoi(text.substr(colon + 1));
    } catch (const std::exception&) {
        throw ParseError("departure: expected HH:MM, got '" + text + "'");
    }
    const double t = (hh - 9) * 60.0 + mm;
    if (t < 0) throw ParseError("departure: time '" + text + "' is before 09:00");
    return t;
}

}  // namespace

DeparturePolicy DeparturePolicy::parse(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw ParseError("departure: expected fixed:HH:MM or flexible:HH:MM-HH:MM");
    const std::string kind = text.substr(0, colon);
    const std::string rest = text.substr(colon + 1);
    if (kind == "fixed") return fixed(parse_clock(rest));
    if (kind == "flexible") {
        const auto dash = rest.find('-');
        if (dash == std::string::npos)
            throw ParseError("departure: flexible needs HH:MM-HH:MM");
        return flexible(parse_clock(rest.substr(0, dash)), parse_clock(rest.substr(dash + 1)), 0);
    }
    throw ParseError("departure: unknown policy kind '" + kind + "'");
}

std::string DeparturePolicy::describe() const {
    std::ostringstream os;
    if (kind == Kind::Fixed) {
        os << "fixed @" << fixed_min << "min";
    } else {
        os << "flexible [" << flexible_lo << "," << flexible_hi << "]min";
    }
    return os.str();
}

Solution assign_departures(const Solution& solution, const DeparturePolicy& policy,
                           const Instance& inst) {
    Solution out = solution;
    Rng rng(policy.seed);
    for (auto& route : out.routes) {
        const double start = policy.kind == DeparturePolicy::Kind::Fixed
                                 ? policy.fixed_min
                                 : rng.uniform(policy.flexible_lo, policy.flexible_hi);
        propagate_route_times(route, start, inst);
    }
    return out;
}

}  // namespace coldroute
