#ifndef COLDROUTE_ORACLE_HPP
#define COLDROUTE_ORACLE_HPP

#include "coldroute/departure.hpp"
#include "coldroute/instance.hpp"
#include "coldroute/solution.hpp"
#include "coldroute/strategies.hpp"

namespace coldroute {

// Exhaustive ground-truth solver for tiny instances (<= 7 customers,
// <= 3 depots; throws above that). Enumerates every ordered set-partition of
// the customers into routes and every depot-endpoint assignment the strategy
// allows, evaluating each candidate with the production cost model. Ties are
// broken toward the lexicographically smallest route encoding. Only fixed
// departure policies are supported.
SolveResult exact_solve(const Instance& instance, Strategy strategy,
                        const DeparturePolicy& policy = DeparturePolicy::fixed(0.0));

// Minimum distribution cost over free-endpoint solutions, ignoring balance
// and rebalancing: the RBOC feasible set at zero transfer cost.
double exact_distribution_optimum(const Instance& instance,
                                  const DeparturePolicy& policy = DeparturePolicy::fixed(0.0));

// Deliberately plain re-implementation of the cost equations, written without
// shared code or incremental shortcuts, for cross-checking cost_model. It
// recomputes arrival times with its own period walk and the emission charge
// with a literal arc-set sum.
CostBreakdown audit_cost(const Route& route, const Instance& instance);
CostBreakdown audit_cost(const Solution& solution, const Instance& instance);

}  // namespace coldroute

#endif
