#ifndef COLDROUTE_STRATEGIES_HPP
#define COLDROUTE_STRATEGIES_HPP

#include <string>
#include <utility>
#include <vector>

#include "coldroute/departure.hpp"
#include "coldroute/instance.hpp"
#include "coldroute/savns.hpp"
#include "coldroute/solution.hpp"

namespace coldroute {

// u_i = returns(i) - departures(i) per depot. Sums to zero by construction.
std::vector<int> compute_depot_imbalance(const Solution& solution, const Instance& instance);

// Synchronous balancing: re-points return depots of surplus depots' routes to
// the nearest deficit depot until u == 0 everywhere. Visit sequences and
// departure depots are untouched. nonincreasing selects the processing order
// of each surplus depot's routes by distance from last customer to the depot.
Solution balancing_approach(const Solution& solution, const Instance& instance,
                            bool nonincreasing = true);

// All-pairs shortest distances over the highway edges (Euclidean weights).
// Throws InfeasibleError if the network does not connect all depots.
std::vector<std::vector<double>> floyd_shortest_paths(const HighwayNetwork& highway,
                                                      const std::vector<Depot>& depots);

// Minimum-cost integer transfer plan moving surplus vehicles (u_i > 0) to
// deficit depots over the highway metric closure; successive shortest paths.
RebalancePlan solve_rebalance(const std::vector<int>& imbalance,
                              const std::vector<std::vector<double>>& highway_dist,
                              const CostParams& costs, const VehicleSpec& vehicle);

// Nearest-depot rule for open routes: depart depot nearest the first customer,
// return depot nearest the last customer.
void repoint_route_endpoints(Route& route, const Instance& instance);

// Empty list means the solution satisfies every structural constraint and the
// strategy's endpoint/balance rules; otherwise each violation is described.
std::vector<std::string> validate_solution(const Solution& solution, const Instance& instance,
                                           Strategy strategy);

struct SolveResult {
    Solution solution;
    CostBreakdown cost;
};

// Full pipeline for one scenario: construction, departure assignment, SAVNS
// improvement, and (RBOC) final rebalancing. Stand-alone requires an instance
// whose orders are already bound to depots via split_standalone_demand.
SolveResult solve(const Instance& instance, Strategy strategy, const SavnsConfig& config,
                  const DeparturePolicy& policy = DeparturePolicy::fixed(0.0));

}  // namespace coldroute

#endif
