#ifndef COLDROUTE_NEIGHBORHOODS_HPP
#define COLDROUTE_NEIGHBORHOODS_HPP

#include <vector>

#include "coldroute/instance.hpp"
#include "coldroute/rng.hpp"
#include "coldroute/solution.hpp"

namespace coldroute {

struct MoveResult {
    Solution candidate;
    std::vector<std::size_t> changed;  // indices into candidate.routes
    bool moved = false;                // false = retries exhausted, candidate == input
};

// Deterministic core of the exchange: cut visits[start_a, start_a+len_a) out
// of `a` and visits[start_b, start_b+len_b) out of `b`, then splice each
// sub-path into the other route's cut position — forward order for Cross,
// both reversed for i-Cross. Loads and arrival times are refreshed; capacity
// is not checked here.
std::pair<Route, Route> apply_cross_exchange(const Route& a, const Route& b, std::size_t start_a,
                                             std::size_t len_a, std::size_t start_b,
                                             std::size_t len_b, bool reversed,
                                             const Instance& instance);

// One VNS shake: pick two distinct eligible routes, cut a sub-path of up to k
// customers from a random start in each (truncated at the tail), and swap the
// sub-paths in forward (Cross) or reversed (i-Cross) order. Candidates whose
// loads break capacity are re-drawn up to retry_cap times, after which the
// input is returned unchanged. Depot endpoints are never touched here.
// Changed routes are re-propagated; a route left empty is dropped.
MoveResult vns_strategy_k(const Solution& solution, int k, Rng& rng, const Instance& instance,
                          const std::vector<std::size_t>& eligible_routes, int retry_cap = 50);

}  // namespace coldroute

#endif
