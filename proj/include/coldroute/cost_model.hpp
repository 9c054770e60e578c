#ifndef COLDROUTE_COST_MODEL_HPP
#define COLDROUTE_COST_MODEL_HPP

#include <cstddef>

#include "coldroute/instance.hpp"
#include "coldroute/solution.hpp"

namespace coldroute {

// Emission cost charged when the vehicle reaches the node at visit_index,
// proportional to the cumulative Euclidean distance travelled from the
// departure depot. visit_index == visits.size() addresses the return depot,
// which carries zero demand. The model charges every visited node the full
// distance travelled so far; that repetition is intentional.
double co2_cost_at_visit(const Route& route, std::size_t visit_index, const Instance& instance);

// Full per-route breakdown: fix cost for the vehicle, travel cost over the
// whole length including the return leg, emission cost per visited node,
// cooling and good-loss charges on customer-bound legs, and the soft
// time-window penalties. Requires arrivals populated by propagate_route_times.
CostBreakdown route_cost(const Route& route, const Instance& instance);

// Componentwise sum over routes plus the rebalance plan cost, if present.
CostBreakdown solution_cost(const Solution& solution, const Instance& instance);

// Cost of an existing transfer plan under the given parameters: each moved
// vehicle pays the fix cost plus discounted travel and empty-running emission
// over the highway shortest-path distance.
double rebalance_plan_cost(const RebalancePlan& plan,
                           const std::vector<std::vector<double>>& highway_dist,
                           const CostParams& costs, const VehicleSpec& vehicle);

// (obj_savns - obj_other) / obj_other * 100. Throws on a nonpositive base.
double relative_improvement(double obj_savns, double obj_other);

}  // namespace coldroute

#endif
