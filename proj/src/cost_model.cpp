#include "coldroute/cost_model.hpp"

#include <cassert>
#include <stdexcept>

#include "coldroute/errors.hpp"

namespace coldroute {

namespace {

double emission_coeff(int demand, const Instance& inst) {
    const auto& v = inst.vehicle;
    return inst.costs.carbon_price * inst.costs.carbon_emission *
           (v.fuel_empty + demand * (v.fuel_full - v.fuel_empty) / v.capacity);
}

}  // namespace

double co2_cost_at_visit(const Route& route, std::size_t visit_index, const Instance& inst) {
    assert(visit_index <= route.visits.size());
    double cum = 0.0;
    double px = inst.depots[route.depart_depot].x;
    double py = inst.depots[route.depart_depot].y;
    for (std::size_t i = 0; i < visit_index && i < route.visits.size(); ++i) {
        const Customer& c = inst.customers[route.visits[i]];
        cum += euclid(px, py, c.x, c.y);
        px = c.x;
        py = c.y;
    }
    int demand = 0;
    if (visit_index < route.visits.size()) {
        const Customer& c = inst.customers[route.visits[visit_index]];
        cum += euclid(px, py, c.x, c.y);
        demand = c.demand;
    } else {
        const Depot& ret = inst.depots[route.return_depot];
        cum += euclid(px, py, ret.x, ret.y);
    }
    return emission_coeff(demand, inst) * cum;
}

CostBreakdown route_cost(const Route& route, const Instance& inst) {
    if (route.arrivals.size() != route.visits.size())
        throw std::logic_error("route_cost: arrivals not propagated");

    const CostParams& cp = inst.costs;
    CostBreakdown b;
    b.fix = cp.fix_cost;

    double px = inst.depots[route.depart_depot].x;
    double py = inst.depots[route.depart_depot].y;
    double cum = 0.0;
    double prev_depart = route.start_min;
    for (std::size_t i = 0; i < route.visits.size(); ++i) {
        const Customer& c = inst.customers[route.visits[i]];
        cum += euclid(px, py, c.x, c.y);
        px = c.x;
        py = c.y;

        b.co2 += emission_coeff(c.demand, inst) * cum;

        const double arrival = route.arrivals[i];
        const double leg_time = arrival - prev_depart;
        b.cooling += cp.cooling_unit * (leg_time + c.service_time);
        b.good_loss += cp.good_loss * c.demand * (leg_time + c.service_time);

        if (arrival < c.earliest) b.penalty += cp.early_penalty * (c.earliest - arrival);
        if (arrival > c.latest) b.penalty += cp.late_penalty * (arrival - c.latest);

        prev_depart = arrival + c.service_time;
    }
    const Depot& ret = inst.depots[route.return_depot];
    cum += euclid(px, py, ret.x, ret.y);
    b.co2 += emission_coeff(0, inst) * cum;
    b.transport = cp.travel_unit * cum;

    b.total = b.fix + b.transport + b.co2 + b.cooling + b.good_loss + b.penalty;
    return b;
}

CostBreakdown solution_cost(const Solution& solution, const Instance& inst) {
    CostBreakdown total;
    for (const auto& r : solution.routes) total += route_cost(r, inst);
    if (solution.rebalance) {
        total.rebalance += solution.rebalance->cost;
        total.total += solution.rebalance->cost;
    }
    return total;
}

double rebalance_plan_cost(const RebalancePlan& plan,
                           const std::vector<std::vector<double>>& highway_dist,
                           const CostParams& costs, const VehicleSpec& vehicle) {
    double cost = 0.0;
    for (const auto& t : plan.transfers) {
        const double d = highway_dist[t.from][t.to];
        cost += t.count * (costs.fix_cost + (1.0 - costs.rebalance_discount) * costs.travel_unit * d +
                           costs.carbon_emission * costs.carbon_price * vehicle.fuel_empty * d);
    }
    return cost;
}

double relative_improvement(double obj_savns, double obj_other) {
    if (obj_other <= 0)
        throw std::domain_error("relative_improvement: reference objective must be positive");
    return (obj_savns - obj_other) / obj_other * 100.0;
}

}  // namespace coldroute
