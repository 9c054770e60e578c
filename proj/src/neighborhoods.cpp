#include "coldroute/neighborhoods.hpp"

#include <algorithm>
#include <cassert>

#include "coldroute/travel_time.hpp"

namespace coldroute {

namespace {

std::vector<int> spliced(const std::vector<int>& visits, std::size_t from, std::size_t len,
                         std::vector<int> replacement, bool reverse) {
    if (reverse) std::reverse(replacement.begin(), replacement.end());
    std::vector<int> out;
    out.reserve(visits.size() - len + replacement.size());
    out.insert(out.end(), visits.begin(), visits.begin() + static_cast<std::ptrdiff_t>(from));
    out.insert(out.end(), replacement.begin(), replacement.end());
    out.insert(out.end(), visits.begin() + static_cast<std::ptrdiff_t>(from + len), visits.end());
    return out;
}

int visits_load(const std::vector<int>& visits, const Instance& inst) {
    int load = 0;
    for (int c : visits) load += inst.customers[c].demand;
    return load;
}

}  // namespace

std::pair<Route, Route> apply_cross_exchange(const Route& a, const Route& b, std::size_t start_a,
                                             std::size_t len_a, std::size_t start_b,
                                             std::size_t len_b, bool reversed,
                                             const Instance& inst) {
    assert(start_a + len_a <= a.visits.size());
    assert(start_b + len_b <= b.visits.size());

    std::vector<int> sub_a(a.visits.begin() + static_cast<std::ptrdiff_t>(start_a),
                           a.visits.begin() + static_cast<std::ptrdiff_t>(start_a + len_a));
    std::vector<int> sub_b(b.visits.begin() + static_cast<std::ptrdiff_t>(start_b),
                           b.visits.begin() + static_cast<std::ptrdiff_t>(start_b + len_b));

    Route new_a = a;
    new_a.visits = spliced(a.visits, start_a, len_a, std::move(sub_b), reversed);
    new_a.load = visits_load(new_a.visits, inst);
    Route new_b = b;
    new_b.visits = spliced(b.visits, start_b, len_b, std::move(sub_a), reversed);
    new_b.load = visits_load(new_b.visits, inst);

    propagate_route_times(new_a, new_a.start_min, inst);
    propagate_route_times(new_b, new_b.start_min, inst);
    return {std::move(new_a), std::move(new_b)};
}

MoveResult vns_strategy_k(const Solution& solution, int k, Rng& rng, const Instance& inst,
                          const std::vector<std::size_t>& eligible, int retry_cap) {
    assert(k >= 1);
    MoveResult result;
    result.candidate = solution;
    if (eligible.size() < 2) return result;

    for (int attempt = 0; attempt < retry_cap; ++attempt) {
        const std::size_t pick1 = rng.index(eligible.size());
        std::size_t pick2 = rng.index(eligible.size() - 1);
        if (pick2 >= pick1) ++pick2;
        const std::size_t r1 = eligible[pick1];
        const std::size_t r2 = eligible[pick2];

        const Route& a = solution.routes[r1];
        const Route& b = solution.routes[r2];

        // Half the draws swap two sub-paths; the rest leave one side empty,
        // turning the exchange into a relocation. One-sided moves are what
        // lets a sole customer leave its route, emptying it so the vehicle
        // can be saved. Both sides empty never happens.
        const double variant = rng.uniform01();
        std::size_t start_a, len_a, start_b, len_b;
        if (variant < 0.25) {
            start_a = rng.index(a.visits.size() + 1);  // pure insertion slot
            len_a = 0;
            start_b = rng.index(b.visits.size());
            len_b = std::min<std::size_t>(k, b.visits.size() - start_b);
        } else if (variant < 0.5) {
            start_a = rng.index(a.visits.size());
            len_a = std::min<std::size_t>(k, a.visits.size() - start_a);
            start_b = rng.index(b.visits.size() + 1);
            len_b = 0;
        } else {
            start_a = rng.index(a.visits.size());
            len_a = std::min<std::size_t>(k, a.visits.size() - start_a);
            start_b = rng.index(b.visits.size());
            len_b = std::min<std::size_t>(k, b.visits.size() - start_b);
        }
        const bool reversed = rng.coin();  // Cross if false, i-Cross if true

        auto [new_a, new_b] =
            apply_cross_exchange(a, b, start_a, len_a, start_b, len_b, reversed, inst);
        if (new_a.load > inst.vehicle.capacity || new_b.load > inst.vehicle.capacity) continue;

        result.candidate.routes[r1] = std::move(new_a);
        result.candidate.routes[r2] = std::move(new_b);
        result.changed = {r1, r2};

        // Swapped sub-paths are nonempty, so routes cannot empty out here;
        // still, drop any empty route (erasing back-to-front keeps `changed`
        // indices valid).
        std::vector<std::size_t> empties;
        for (std::size_t idx : result.changed)
            if (result.candidate.routes[idx].visits.empty()) empties.push_back(idx);
        std::sort(empties.rbegin(), empties.rend());
        for (std::size_t idx : empties) {
            result.candidate.routes.erase(result.candidate.routes.begin() +
                                          static_cast<std::ptrdiff_t>(idx));
            std::vector<std::size_t> fixed;
            for (std::size_t c : result.changed)
                if (c != idx) fixed.push_back(c > idx ? c - 1 : c);
            result.changed = std::move(fixed);
        }
        result.moved = true;
        return result;
    }
    return result;  // retries exhausted: identity
}

}  // namespace coldroute
