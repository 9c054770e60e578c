#include "coldroute/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "coldroute/construction.hpp"
#include "coldroute/cost_model.hpp"
#include "coldroute/errors.hpp"
#include "coldroute/travel_time.hpp"

namespace coldroute {

namespace {

constexpr int kMaxCustomers = 7;
constexpr int kMaxDepots = 3;
constexpr double kTie = 1e-12;

std::string encode_solution(const Solution& sol) {
    std::vector<std::string> parts;
    for (const auto& r : sol.routes) {
        std::ostringstream os;
        os << r.depart_depot << "|";
        for (int v : r.visits) os << v << ",";
        os << "|" << r.return_depot;
        parts.push_back(os.str());
    }
    std::sort(parts.begin(), parts.end());
    std::string enc;
    for (const auto& p : parts) enc += p + ";";
    return enc;
}

struct Best {
    double cost = std::numeric_limits<double>::infinity();
    Solution solution;
    std::string encoding;

    void offer(double candidate_cost, const Solution& candidate) {
        if (candidate_cost < cost - kTie) {
            cost = candidate_cost;
            solution = candidate;
            encoding = encode_solution(candidate);
            return;
        }
        if (candidate_cost <= cost + kTie) {
            std::string enc = encode_solution(candidate);
            if (enc < encoding) {
                cost = std::min(cost, candidate_cost);
                solution = candidate;
                encoding = std::move(enc);
            }
        }
    }
};

// All ordered set-partitions of ids: permutations x cut masks. Blocks keep
// the permutation's internal order.
template <typename Fn>
void for_each_partition(std::vector<int> ids, Fn&& fn) {
    std::sort(ids.begin(), ids.end());
    if (ids.empty()) return;
    do {
        const std::size_t n = ids.size();
        const std::size_t masks = std::size_t{1} << (n - 1);
        for (std::size_t mask = 0; mask < masks; ++mask) {
            std::vector<std::vector<int>> blocks(1);
            for (std::size_t i = 0; i < n; ++i) {
                blocks.back().push_back(ids[i]);
                if (i + 1 < n && (mask & (std::size_t{1} << i))) blocks.emplace_back();
            }
            fn(blocks);
        }
    } while (std::next_permutation(ids.begin(), ids.end()));
}

Route make_route(const std::vector<int>& visits, int depart, int ret, double start,
                 const Instance& inst) {
    Route r;
    r.depart_depot = depart;
    r.return_depot = ret;
    r.visits = visits;
    r.load = 0;
    for (int c : visits) r.load += inst.customers[c].demand;
    propagate_route_times(r, start, inst);
    return r;
}

// Best closed-route plan (depart == return == depot) for one depot's customer
// set, within its fleet cap. Returns infinity cost when no partition fits.
Best best_closed_for_depot(const std::vector<int>& customers, int depot, double start,
                           const Instance& inst) {
    Best best;
    if (customers.empty()) {
        best.cost = 0.0;
        return best;
    }
    for_each_partition(customers, [&](const std::vector<std::vector<int>>& blocks) {
        if (static_cast<int>(blocks.size()) > inst.depots[depot].fleet_size) return;
        Solution cand;
        double total = 0;
        for (const auto& b : blocks) {
            int load = 0;
            for (int c : b) load += inst.customers[c].demand;
            if (load > inst.vehicle.capacity) return;
            cand.routes.push_back(make_route(b, depot, depot, start, inst));
            total += route_cost(cand.routes.back(), inst).total;
        }
        best.offer(total, cand);
    });
    return best;
}

void check_caps(const Instance& inst) {
    if (static_cast<int>(inst.customers.size()) > kMaxCustomers ||
        static_cast<int>(inst.depots.size()) > kMaxDepots)
        throw InfeasibleError("oracle: instance above the enumeration cap (7 customers, 3 depots)");
}

double fixed_start(const DeparturePolicy& policy) {
    if (policy.kind != DeparturePolicy::Kind::Fixed)
        throw InfeasibleError("oracle: only fixed departure policies are enumerable");
    return policy.fixed_min;
}

// Closed-route strategies decompose by depot once customers are assigned.
SolveResult solve_assigned(const Instance& inst, const std::vector<int>& assignment,
                           Strategy strategy, double start) {
    Solution sol;
    sol.strategy = strategy;
    for (std::size_t d = 0; d < inst.depots.size(); ++d) {
        std::vector<int> members;
        for (std::size_t c = 0; c < assignment.size(); ++c)
            if (assignment[c] == static_cast<int>(d)) members.push_back(static_cast<int>(c));
        Best best = best_closed_for_depot(members, static_cast<int>(d), start, inst);
        if (!(best.cost < std::numeric_limits<double>::infinity()))
            throw InfeasibleError("oracle: depot " + std::to_string(d) +
                                  " cannot serve its customers within the fleet cap");
        for (auto& r : best.solution.routes) sol.routes.push_back(std::move(r));
    }
    return {sol, solution_cost(sol, inst)};
}

struct OpenSearch {
    Best boc;
    Best rboc;                // objective includes the optimal transfer plan
    double free_dist = std::numeric_limits<double>::infinity();
    std::map<std::vector<int>, RebalancePlan> plans;
};

OpenSearch search_open(const Instance& inst, double start, bool want_boc, bool want_rboc,
                       const std::vector<std::vector<double>>* highway_dist) {
    OpenSearch result;
    const int m = static_cast<int>(inst.depots.size());
    std::vector<int> all(inst.customers.size());
    std::iota(all.begin(), all.end(), 0);

    for_each_partition(all, [&](const std::vector<std::vector<int>>& blocks) {
        const int k = static_cast<int>(blocks.size());
        if (k > inst.total_fleet()) return;
        for (const auto& b : blocks) {
            int load = 0;
            for (int c : b) load += inst.customers[c].demand;
            if (load > inst.vehicle.capacity) return;
        }

        // cost[r][dep][ret], via materialized routes.
        std::vector<std::vector<std::vector<double>>> cost(
            static_cast<std::size_t>(k),
            std::vector<std::vector<double>>(m, std::vector<double>(m)));
        std::vector<std::vector<std::vector<Route>>> routes(
            static_cast<std::size_t>(k),
            std::vector<std::vector<Route>>(m, std::vector<Route>(m)));
        for (int r = 0; r < k; ++r) {
            for (int dep = 0; dep < m; ++dep) {
                Route base = make_route(blocks[static_cast<std::size_t>(r)], dep, dep, start, inst);
                for (int ret = 0; ret < m; ++ret) {
                    Route variant = base;
                    variant.return_depot = ret;
                    propagate_route_times(variant, start, inst);
                    cost[static_cast<std::size_t>(r)][dep][ret] =
                        route_cost(variant, inst).total;
                    routes[static_cast<std::size_t>(r)][dep][ret] = std::move(variant);
                }
            }
        }

        // Enumerate depart vectors subject to per-depot fleet caps.
        std::vector<int> depart(static_cast<std::size_t>(k), 0);
        std::vector<int> ret(static_cast<std::size_t>(k), 0);
        auto depart_counts_ok = [&]() {
            std::vector<int> count(m, 0);
            for (int d : depart)
                if (++count[d] > inst.depots[d].fleet_size) return false;
            return true;
        };
        auto build_solution = [&](Strategy tag) {
            Solution s;
            s.strategy = tag;
            for (int r = 0; r < k; ++r)
                s.routes.push_back(routes[static_cast<std::size_t>(r)][depart[r]][ret[r]]);
            return s;
        };

        for (;;) {
            if (depart_counts_ok()) {
                std::vector<int> dep_count(m, 0);
                for (int d : depart) ++dep_count[d];

                std::fill(ret.begin(), ret.end(), 0);
                for (;;) {
                    double dist = 0;
                    for (int r = 0; r < k; ++r)
                        dist += cost[static_cast<std::size_t>(r)][depart[r]][ret[r]];

                    std::vector<int> ret_count(m, 0);
                    for (int d : ret) ++ret_count[d];

                    if (want_boc && ret_count == dep_count)
                        result.boc.offer(dist, build_solution(Strategy::BOC));
                    if (want_rboc) {
                        result.free_dist = std::min(result.free_dist, dist);
                        std::vector<int> u(m, 0);
                        for (int d = 0; d < m; ++d) u[d] = ret_count[d] - dep_count[d];
                        auto it = result.plans.find(u);
                        if (it == result.plans.end())
                            it = result.plans
                                     .emplace(u, solve_rebalance(u, *highway_dist, inst.costs,
                                                                 inst.vehicle))
                                     .first;
                        Solution cand = build_solution(Strategy::RBOC);
                        cand.rebalance = it->second;
                        result.rboc.offer(dist + it->second.cost, cand);
                    }

                    int pos = 0;
                    while (pos < k && ++ret[pos] == m) ret[pos++] = 0;
                    if (pos == k) break;
                }
            }
            int pos = 0;
            while (pos < k && ++depart[pos] == m) depart[pos++] = 0;
            if (pos == k) break;
        }
    });
    return result;
}

}  // namespace

SolveResult exact_solve(const Instance& inst, Strategy strategy, const DeparturePolicy& policy) {
    check_caps(inst);
    const double start = fixed_start(policy);

    switch (strategy) {
        case Strategy::Standalone: {
            std::vector<int> assignment(inst.customers.size());
            for (std::size_t c = 0; c < inst.customers.size(); ++c) {
                if (inst.customers[c].bound_depot < 0)
                    throw InfeasibleError("oracle: stand-alone requires split demands");
                assignment[c] = inst.customers[c].bound_depot;
            }
            return solve_assigned(inst, assignment, Strategy::Standalone, start);
        }
        case Strategy::CC:
            return solve_assigned(inst, cluster_customers(inst), Strategy::CC, start);
        case Strategy::BOC: {
            OpenSearch search = search_open(inst, start, true, false, nullptr);
            if (!(search.boc.cost < std::numeric_limits<double>::infinity()))
                throw InfeasibleError("oracle: no balanced solution within fleet caps");
            return {search.boc.solution, solution_cost(search.boc.solution, inst)};
        }
        case Strategy::RBOC: {
            const auto highway_dist = floyd_shortest_paths(inst.highway, inst.depots);
            OpenSearch search = search_open(inst, start, false, true, &highway_dist);
            if (!(search.rboc.cost < std::numeric_limits<double>::infinity()))
                throw InfeasibleError("oracle: no feasible solution within fleet caps");
            return {search.rboc.solution, solution_cost(search.rboc.solution, inst)};
        }
    }
    throw std::logic_error("exact_solve: unknown strategy");
}

double exact_distribution_optimum(const Instance& inst, const DeparturePolicy& policy) {
    check_caps(inst);
    const double start = fixed_start(policy);
    const auto highway_dist = floyd_shortest_paths(inst.highway, inst.depots);
    OpenSearch search = search_open(inst, start, false, true, &highway_dist);
    return search.free_dist;
}

// ---------------------------------------------------------------------------
// Audit evaluator: straight transcription of the cost equations.

namespace {

// Minutes to drive dist_km leaving at t, found by stepping whole periods.
double audit_leg_minutes(double t, double dist_km, const SpeedSchedule& schedule) {
    double minutes = 0;
    double remaining = dist_km;
    while (remaining > 1e-15) {
        // Period containing the current moment, scanning from the front.
        std::size_t p = schedule.periods.size() - 1;
        for (std::size_t i = 0; i < schedule.periods.size(); ++i) {
            if (t + minutes < schedule.periods[i].end_min) {
                p = i;
                break;
            }
        }
        const auto& period = schedule.periods[p];
        const double speed = period.speed_kmh;
        if (p == schedule.periods.size() - 1) {
            minutes += remaining / speed * 60.0;
            remaining = 0;
        } else {
            const double minutes_left = period.end_min - (t + minutes);
            const double km_possible = speed * minutes_left / 60.0;
            if (km_possible >= remaining) {
                minutes += remaining / speed * 60.0;
                remaining = 0;
            } else {
                minutes += minutes_left;
                remaining -= km_possible;
            }
        }
    }
    return minutes;
}

struct AuditNode {
    double x, y;
    int demand;
    double service;
    double earliest, latest;
    bool is_customer;
};

}  // namespace

CostBreakdown audit_cost(const Route& route, const Instance& inst) {
    std::vector<AuditNode> nodes;
    nodes.push_back({inst.depots[route.depart_depot].x, inst.depots[route.depart_depot].y, 0, 0.0,
                     0.0, 0.0, false});
    for (int c : route.visits) {
        const Customer& cu = inst.customers[c];
        nodes.push_back({cu.x, cu.y, cu.demand, cu.service_time, cu.earliest, cu.latest, true});
    }
    nodes.push_back({inst.depots[route.return_depot].x, inst.depots[route.return_depot].y, 0, 0.0,
                     0.0, 0.0, false});

    const CostParams& cp = inst.costs;
    const VehicleSpec& vs = inst.vehicle;
    CostBreakdown b;
    b.fix = cp.fix_cost;

    // Arrival times, recomputed from scratch.
    std::vector<double> arrival(nodes.size(), 0.0);
    std::vector<double> leg_time(nodes.size(), 0.0);
    arrival[0] = route.start_min;
    for (std::size_t j = 1; j < nodes.size(); ++j) {
        const double depart = arrival[j - 1] + nodes[j - 1].service;
        const double d = euclid(nodes[j - 1].x, nodes[j - 1].y, nodes[j].x, nodes[j].y);
        leg_time[j] = audit_leg_minutes(depart, d, inst.schedule);
        arrival[j] = depart + leg_time[j];
    }

    for (std::size_t j = 1; j < nodes.size(); ++j) {
        const double d = euclid(nodes[j - 1].x, nodes[j - 1].y, nodes[j].x, nodes[j].y);
        b.transport += cp.travel_unit * d;

        // Emission charge for node j: coefficient times the summed length of
        // every arc travelled before reaching j.
        double travelled = 0;
        for (std::size_t a = 1; a <= j; ++a)
            travelled += euclid(nodes[a - 1].x, nodes[a - 1].y, nodes[a].x, nodes[a].y);
        b.co2 += cp.carbon_price * cp.carbon_emission *
                 (vs.fuel_empty +
                  nodes[j].demand * (vs.fuel_full - vs.fuel_empty) / vs.capacity) *
                 travelled;

        if (nodes[j].is_customer) {
            b.cooling += cp.cooling_unit * (leg_time[j] + nodes[j].service);
            b.good_loss += cp.good_loss * nodes[j].demand * (leg_time[j] + nodes[j].service);
            b.penalty += cp.early_penalty * std::max(nodes[j].earliest - arrival[j], 0.0) +
                         cp.late_penalty * std::max(arrival[j] - nodes[j].latest, 0.0);
        }
    }
    b.total = b.fix + b.transport + b.co2 + b.cooling + b.good_loss + b.penalty;
    return b;
}

CostBreakdown audit_cost(const Solution& solution, const Instance& inst) {
    CostBreakdown total;
    for (const auto& r : solution.routes) total += audit_cost(r, inst);
    if (solution.rebalance) {
        // Pairwise shortest depot distances by exhaustive relaxation.
        const std::size_t m = inst.depots.size();
        const double inf = std::numeric_limits<double>::infinity();
        std::vector<std::vector<double>> dist(m, std::vector<double>(m, inf));
        for (std::size_t i = 0; i < m; ++i) dist[i][i] = 0;
        for (const auto& [a, b] : inst.highway.edges)
            dist[a][b] = dist[b][a] = inst.depot_dist(a, b);
        for (std::size_t round = 0; round < m; ++round)
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    for (std::size_t k = 0; k < m; ++k)
                        if (dist[i][k] + dist[k][j] < dist[i][j])
                            dist[i][j] = dist[i][k] + dist[k][j];

        double cost = 0;
        for (const auto& t : solution.rebalance->transfers) {
            const double d = dist[t.from][t.to];
            cost += t.count * inst.costs.fix_cost;
            cost += t.count * (1.0 - inst.costs.rebalance_discount) * inst.costs.travel_unit * d;
            cost += t.count * inst.costs.carbon_emission * inst.costs.carbon_price *
                    inst.vehicle.fuel_empty * d;
        }
        total.rebalance += cost;
        total.total += cost;
    }
    return total;
}

}  // namespace coldroute
