#include "coldroute/construction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "coldroute/errors.hpp"

namespace coldroute {

std::vector<int> cluster_customers(const Instance& inst) {
    std::vector<int> assignment(inst.customers.size(), 0);
    for (std::size_t c = 0; c < inst.customers.size(); ++c) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t d = 0; d < inst.depots.size(); ++d) {
            const double dist = inst.depot_customer_dist(static_cast<int>(d), static_cast<int>(c));
            if (dist < best) {
                best = dist;
                assignment[c] = static_cast<int>(d);
            }
        }
    }
    return assignment;
}

std::pair<double, double> virtual_depot(const Instance& inst) {
    double sx = 0, sy = 0;
    for (const auto& d : inst.depots) {
        sx += d.x;
        sy += d.y;
    }
    return {sx / inst.depots.size(), sy / inst.depots.size()};
}

namespace {

double polar_angle_deg(double cx, double cy, double ox, double oy) {
    double deg = std::atan2(cy - oy, cx - ox) * 180.0 / std::numbers::pi;
    if (deg < 0) deg += 360.0;
    return deg;
}

}  // namespace

std::vector<Route> pfih_construct(const std::vector<int>& customers, int depot_id,
                                  double depot_x, double depot_y, const Instance& inst,
                                  const PfihWeights& weights, int fleet_cap) {
    std::vector<int> unrouted = customers;
    std::sort(unrouted.begin(), unrouted.end());

    auto seed_cost = [&](int c) {
        const Customer& cu = inst.customers[c];
        const double d = euclid(depot_x, depot_y, cu.x, cu.y);
        const double angle = polar_angle_deg(cu.x, cu.y, depot_x, depot_y);
        return -weights.eta * d + weights.theta * cu.latest + weights.xi * (angle / 360.0) * d;
    };

    std::vector<Route> routes;
    while (!unrouted.empty()) {
        if (fleet_cap >= 0 && static_cast<int>(routes.size()) >= fleet_cap)
            throw InfeasibleError("pfih: depot " + std::to_string(depot_id) + " needs more than " +
                                  std::to_string(fleet_cap) + " vehicles");

        // Seed: minimal seed cost, ties to the lower customer id.
        std::size_t seed_pos = 0;
        double best_seed = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < unrouted.size(); ++i) {
            const double s = seed_cost(unrouted[i]);
            if (s < best_seed) {
                best_seed = s;
                seed_pos = i;
            }
        }
        Route route;
        route.depart_depot = depot_id;
        route.return_depot = depot_id;
        route.visits.push_back(unrouted[seed_pos]);
        route.load = inst.customers[unrouted[seed_pos]].demand;
        unrouted.erase(unrouted.begin() + static_cast<std::ptrdiff_t>(seed_pos));

        // Fill the current route with cheapest-insertion until nothing fits.
        for (;;) {
            double best_increase = std::numeric_limits<double>::infinity();
            std::size_t best_customer_pos = 0;
            std::size_t best_slot = 0;
            bool found = false;
            for (std::size_t i = 0; i < unrouted.size(); ++i) {
                const Customer& cand = inst.customers[unrouted[i]];
                if (route.load + cand.demand > inst.vehicle.capacity) continue;
                for (std::size_t slot = 0; slot <= route.visits.size(); ++slot) {
                    double ax = depot_x, ay = depot_y;
                    if (slot > 0) {
                        const Customer& a = inst.customers[route.visits[slot - 1]];
                        ax = a.x;
                        ay = a.y;
                    }
                    double bx = depot_x, by = depot_y;
                    if (slot < route.visits.size()) {
                        const Customer& b = inst.customers[route.visits[slot]];
                        bx = b.x;
                        by = b.y;
                    }
                    const double increase = euclid(ax, ay, cand.x, cand.y) +
                                            euclid(cand.x, cand.y, bx, by) -
                                            euclid(ax, ay, bx, by);
                    if (increase < best_increase - 1e-12) {
                        best_increase = increase;
                        best_customer_pos = i;
                        best_slot = slot;
                        found = true;
                    }
                }
            }
            if (!found) break;
            const int c = unrouted[best_customer_pos];
            route.visits.insert(route.visits.begin() + static_cast<std::ptrdiff_t>(best_slot), c);
            route.load += inst.customers[c].demand;
            unrouted.erase(unrouted.begin() + static_cast<std::ptrdiff_t>(best_customer_pos));
        }
        routes.push_back(std::move(route));
    }
    return routes;
}

}  // namespace coldroute
