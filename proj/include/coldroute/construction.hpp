#ifndef COLDROUTE_CONSTRUCTION_HPP
#define COLDROUTE_CONSTRUCTION_HPP

#include <vector>

#include "coldroute/instance.hpp"
#include "coldroute/solution.hpp"

namespace coldroute {

// customer id -> depot id, by smallest Euclidean distance, ties to the
// lower depot index.
std::vector<int> cluster_customers(const Instance& instance);

// Arithmetic mean of the depot coordinates.
std::pair<double, double> virtual_depot(const Instance& instance);

struct PfihWeights {
    double eta = 0.7;
    double theta = 0.2;
    double xi = 0.1;
};

// Sequential push-forward insertion from one depot location. Seeds each new
// route with the unrouted customer minimizing
//   -eta*d(depot,i) + theta*lt_i + xi*(angle_i/360)*d(depot,i)
// then repeatedly inserts the capacity-feasible customer with the cheapest
// length increase at its cheapest position. Time windows stay soft here.
//
// depot_id -1 builds routes around a virtual depot at (depot_x, depot_y);
// endpoints are then left at -1 for the caller to re-point. fleet_cap < 0
// means unlimited; otherwise exceeding it throws InfeasibleError.
std::vector<Route> pfih_construct(const std::vector<int>& customers, int depot_id,
                                  double depot_x, double depot_y, const Instance& instance,
                                  const PfihWeights& weights, int fleet_cap);

}  // namespace coldroute

#endif
