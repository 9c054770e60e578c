#include "coldroute/strategies.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "coldroute/construction.hpp"
#include "coldroute/cost_model.hpp"
#include "coldroute/errors.hpp"
#include "coldroute/travel_time.hpp"

namespace coldroute {

const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::Standalone: return "standalone";
        case Strategy::CC: return "cc";
        case Strategy::BOC: return "boc";
        case Strategy::RBOC: return "rboc";
    }
    return "?";
}

std::optional<Strategy> strategy_from_name(const std::string& name) {
    if (name == "standalone") return Strategy::Standalone;
    if (name == "cc") return Strategy::CC;
    if (name == "boc") return Strategy::BOC;
    if (name == "rboc") return Strategy::RBOC;
    return std::nullopt;
}

std::vector<int> compute_depot_imbalance(const Solution& solution, const Instance& inst) {
    std::vector<int> u(inst.depots.size(), 0);
    for (const auto& r : solution.routes) {
        u[r.return_depot] += 1;
        u[r.depart_depot] -= 1;
    }
    return u;
}

namespace {

double last_customer_depot_dist(const Route& route, int depot, const Instance& inst) {
    if (route.visits.empty()) return inst.depot_dist(route.depart_depot, depot);
    return inst.depot_customer_dist(depot, route.visits.back());
}

int nearest_depot_to(double x, double y, const Instance& inst) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t d = 0; d < inst.depots.size(); ++d) {
        const double dist = euclid(x, y, inst.depots[d].x, inst.depots[d].y);
        if (dist < best_d) {
            best_d = dist;
            best = static_cast<int>(d);
        }
    }
    return best;
}

}  // namespace

Solution balancing_approach(const Solution& solution, const Instance& inst, bool nonincreasing) {
    Solution out = solution;
    std::vector<int> u = compute_depot_imbalance(out, inst);

    for (std::size_t m = 0; m < inst.depots.size(); ++m) {
        if (u[m] <= 0) continue;

        std::vector<std::size_t> returning;
        for (std::size_t i = 0; i < out.routes.size(); ++i)
            if (out.routes[i].return_depot == static_cast<int>(m)) returning.push_back(i);

        std::sort(returning.begin(), returning.end(), [&](std::size_t a, std::size_t b) {
            const double da = last_customer_depot_dist(out.routes[a], static_cast<int>(m), inst);
            const double db = last_customer_depot_dist(out.routes[b], static_cast<int>(m), inst);
            if (da != db) return nonincreasing ? da > db : da < db;
            return a < b;
        });

        const int surplus = u[m];
        for (int n = 0; n < surplus; ++n) {
            Route& route = out.routes[returning[static_cast<std::size_t>(n)]];
            // Nearest depot that still lacks vehicles, measured from the last
            // customer of the route being re-pointed.
            int target = -1;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t d = 0; d < inst.depots.size(); ++d) {
                if (u[d] >= 0) continue;
                const double dist = last_customer_depot_dist(route, static_cast<int>(d), inst);
                if (dist < best) {
                    best = dist;
                    target = static_cast<int>(d);
                }
            }
            assert(target >= 0);  // sum(u) == 0 guarantees a deficit exists
            route.return_depot = target;
            propagate_route_times(route, route.start_min, inst);
            u[target] += 1;
            u[m] -= 1;
        }
    }
    return out;
}

std::vector<std::vector<double>> floyd_shortest_paths(const HighwayNetwork& highway,
                                                      const std::vector<Depot>& depots) {
    const std::size_t n = depots.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
    for (const auto& [a, b] : highway.edges) {
        const double w = euclid(depots[a].x, depots[a].y, depots[b].x, depots[b].y);
        d[a][b] = std::min(d[a][b], w);
        d[b][a] = std::min(d[b][a], w);
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!(d[i][j] < inf))
                throw InfeasibleError("highway network disconnected: no path between depot " +
                                      std::to_string(i) + " and depot " + std::to_string(j));
    return d;
}

RebalancePlan solve_rebalance(const std::vector<int>& imbalance,
                              const std::vector<std::vector<double>>& highway_dist,
                              const CostParams& costs, const VehicleSpec& vehicle) {
    if (std::accumulate(imbalance.begin(), imbalance.end(), 0) != 0)
        throw std::logic_error("solve_rebalance: imbalance does not sum to zero");

    const std::size_t m = imbalance.size();
    RebalancePlan plan;
    const bool any = std::any_of(imbalance.begin(), imbalance.end(), [](int u) { return u != 0; });
    if (!any) return plan;

    // Min-cost flow, successive shortest paths. Nodes: depots, source, sink.
    const std::size_t source = m, sink = m + 1, n_nodes = m + 2;
    struct Arc {
        std::size_t to;
        int cap;
        double cost;
        std::size_t rev;
    };
    std::vector<std::vector<Arc>> graph(n_nodes);
    auto add_arc = [&](std::size_t from, std::size_t to, int cap, double cost) {
        graph[from].push_back({to, cap, cost, graph[to].size()});
        graph[to].push_back({from, 0, -cost, graph[from].size() - 1});
    };

    int total_surplus = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (imbalance[i] > 0) {
            add_arc(source, i, imbalance[i], 0.0);
            total_surplus += imbalance[i];
        } else if (imbalance[i] < 0) {
            add_arc(i, sink, -imbalance[i], 0.0);
        }
    }
    const double unit = (1.0 - costs.rebalance_discount) * costs.travel_unit +
                        costs.carbon_emission * costs.carbon_price * vehicle.fuel_empty;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (i != j) add_arc(i, j, total_surplus, costs.fix_cost + unit * highway_dist[i][j]);

    std::map<std::pair<int, int>, int> flow;
    int remaining = total_surplus;
    while (remaining > 0) {
        // SPFA over the residual network (residual arcs can be negative).
        const double inf = std::numeric_limits<double>::infinity();
        std::vector<double> dist(n_nodes, inf);
        std::vector<std::pair<std::size_t, std::size_t>> parent(n_nodes, {SIZE_MAX, SIZE_MAX});
        std::vector<char> in_queue(n_nodes, 0);
        std::deque<std::size_t> queue{source};
        dist[source] = 0;
        in_queue[source] = 1;
        while (!queue.empty()) {
            const std::size_t v = queue.front();
            queue.pop_front();
            in_queue[v] = 0;
            for (std::size_t e = 0; e < graph[v].size(); ++e) {
                const Arc& arc = graph[v][e];
                if (arc.cap <= 0) continue;
                if (dist[v] + arc.cost < dist[arc.to] - 1e-12) {
                    dist[arc.to] = dist[v] + arc.cost;
                    parent[arc.to] = {v, e};
                    if (!in_queue[arc.to]) {
                        queue.push_back(arc.to);
                        in_queue[arc.to] = 1;
                    }
                }
            }
        }
        if (!(dist[sink] < inf))
            throw std::logic_error("solve_rebalance: no augmenting path despite remaining surplus");

        int bottleneck = remaining;
        for (std::size_t v = sink; v != source;) {
            const auto [pv, pe] = parent[v];
            bottleneck = std::min(bottleneck, graph[pv][pe].cap);
            v = pv;
        }
        for (std::size_t v = sink; v != source;) {
            const auto [pv, pe] = parent[v];
            Arc& arc = graph[pv][pe];
            arc.cap -= bottleneck;
            graph[arc.to][arc.rev].cap += bottleneck;
            if (pv < m && arc.to < m)
                flow[{static_cast<int>(pv), static_cast<int>(arc.to)}] += bottleneck;
            v = pv;
        }
        remaining -= bottleneck;
    }

    for (const auto& [key, count] : flow) {
        // Opposite flows can cancel when augmenting paths back-track.
        if (count <= 0) continue;
        const auto rev = flow.find({key.second, key.first});
        int net = count;
        if (rev != flow.end()) net = count - rev->second;
        if (net > 0) plan.transfers.push_back({key.first, key.second, net});
    }
    plan.cost = rebalance_plan_cost(plan, highway_dist, costs, vehicle);
    return plan;
}

void repoint_route_endpoints(Route& route, const Instance& inst) {
    if (route.visits.empty()) return;
    const Customer& first = inst.customers[route.visits.front()];
    const Customer& last = inst.customers[route.visits.back()];
    route.depart_depot = nearest_depot_to(first.x, first.y, inst);
    route.return_depot = nearest_depot_to(last.x, last.y, inst);
}

std::vector<std::string> validate_solution(const Solution& solution, const Instance& inst,
                                           Strategy strategy) {
    std::vector<std::string> violations;
    auto flag = [&](const std::string& text) { violations.push_back(text); };

    std::vector<int> served(inst.customers.size(), 0);
    std::vector<int> departures(inst.depots.size(), 0);
    const int n_depots = static_cast<int>(inst.depots.size());

    for (std::size_t ri = 0; ri < solution.routes.size(); ++ri) {
        const Route& r = solution.routes[ri];
        const std::string tag = "route " + std::to_string(ri);
        if (r.depart_depot < 0 || r.depart_depot >= n_depots ||
            r.return_depot < 0 || r.return_depot >= n_depots) {
            flag(tag + ": endpoint not a depot");
            continue;
        }
        departures[r.depart_depot] += 1;

        int load = 0;
        for (int c : r.visits) {
            if (c < 0 || c >= static_cast<int>(inst.customers.size())) {
                flag(tag + ": unknown customer " + std::to_string(c));
                continue;
            }
            served[c] += 1;
            load += inst.customers[c].demand;
        }
        if (load != r.load) flag(tag + ": load field " + std::to_string(r.load) +
                                 " != visit demand sum " + std::to_string(load));
        if (load > inst.vehicle.capacity)
            flag(tag + ": load " + std::to_string(load) + " exceeds capacity " +
                 std::to_string(inst.vehicle.capacity));

        Route replayed = r;
        propagate_route_times(replayed, r.start_min, inst);
        bool times_ok = replayed.arrivals.size() == r.arrivals.size();
        if (times_ok) {
            for (std::size_t i = 0; i < r.arrivals.size(); ++i)
                if (std::abs(replayed.arrivals[i] - r.arrivals[i]) > 1e-9) times_ok = false;
            if (std::abs(replayed.arrival_return - r.arrival_return) > 1e-9) times_ok = false;
        }
        if (!times_ok) flag(tag + ": arrival times inconsistent with travel-time engine");

        if ((strategy == Strategy::Standalone || strategy == Strategy::CC) &&
            r.depart_depot != r.return_depot)
            flag(tag + ": must return to its departure depot");
        if (strategy == Strategy::Standalone) {
            for (int c : r.visits)
                if (inst.customers[c].bound_depot != r.depart_depot)
                    flag(tag + ": customer " + std::to_string(c) + " is bound to depot " +
                         std::to_string(inst.customers[c].bound_depot));
        }
    }

    for (std::size_t c = 0; c < served.size(); ++c) {
        if (served[c] == 0) flag("customer " + std::to_string(c) + " not served");
        if (served[c] > 1)
            flag("customer " + std::to_string(c) + " served " + std::to_string(served[c]) +
                 " times");
    }
    for (std::size_t d = 0; d < departures.size(); ++d)
        if (departures[d] > inst.depots[d].fleet_size)
            flag("depot " + std::to_string(d) + ": " + std::to_string(departures[d]) +
                 " departures exceed fleet of " + std::to_string(inst.depots[d].fleet_size));

    const std::vector<int> u = compute_depot_imbalance(solution, inst);
    if (strategy == Strategy::BOC) {
        for (std::size_t d = 0; d < u.size(); ++d)
            if (u[d] != 0)
                flag("depot " + std::to_string(d) + ": vehicle flow imbalance u=" +
                     std::to_string(u[d]));
        if (solution.rebalance) flag("BOC solution must not carry a rebalance plan");
    }
    if (strategy == Strategy::RBOC) {
        if (!solution.rebalance) {
            flag("RBOC solution missing its rebalance plan");
        } else {
            std::vector<int> post = u;
            for (const auto& t : solution.rebalance->transfers) {
                if (t.count <= 0) flag("rebalance transfer with nonpositive count");
                if (t.from < 0 || t.from >= n_depots || t.to < 0 || t.to >= n_depots) {
                    flag("rebalance transfer between unknown depots");
                    continue;
                }
                post[t.from] -= t.count;  // shipping out works off the surplus
                post[t.to] += t.count;
            }
            for (std::size_t d = 0; d < post.size(); ++d)
                if (post[d] != 0)
                    flag("depot " + std::to_string(d) + ": imbalance u=" + std::to_string(post[d]) +
                         " after rebalance");
        }
    }
    if (strategy != solution.strategy) flag("solution strategy tag mismatch");
    return violations;
}

namespace {

// Initial open-route solution for BOC/RBOC: PFIH around the virtual depot,
// endpoints by the nearest-depot rule, then departure caps repaired by
// re-pointing excess departures to the closest depot with a spare vehicle.
Solution open_route_initial(const Instance& inst, const PfihWeights& weights) {
    std::vector<int> all(inst.customers.size());
    std::iota(all.begin(), all.end(), 0);
    const auto [vx, vy] = virtual_depot(inst);
    std::vector<Route> routes = pfih_construct(all, -1, vx, vy, inst, weights, -1);

    if (static_cast<int>(routes.size()) > inst.total_fleet())
        throw InfeasibleError("open-route construction needs " + std::to_string(routes.size()) +
                              " vehicles, fleet has " + std::to_string(inst.total_fleet()));

    Solution sol;
    sol.routes = std::move(routes);
    for (auto& r : sol.routes) {
        repoint_route_endpoints(r, inst);
        propagate_route_times(r, 0.0, inst);
    }

    std::vector<int> departures(inst.depots.size(), 0);
    for (const auto& r : sol.routes) departures[r.depart_depot] += 1;
    for (std::size_t d = 0; d < inst.depots.size(); ++d) {
        while (departures[d] > inst.depots[d].fleet_size) {
            // Move the departure whose first customer sits farthest from this
            // depot to the nearest depot that still has a vehicle to spare.
            std::size_t worst = SIZE_MAX;
            double worst_dist = -1;
            for (std::size_t i = 0; i < sol.routes.size(); ++i) {
                const Route& r = sol.routes[i];
                if (r.depart_depot != static_cast<int>(d)) continue;
                const double dist = inst.depot_customer_dist(r.depart_depot, r.visits.front());
                if (dist > worst_dist) {
                    worst_dist = dist;
                    worst = i;
                }
            }
            Route& r = sol.routes[worst];
            int target = -1;
            double best = std::numeric_limits<double>::infinity();
            const Customer& first = inst.customers[r.visits.front()];
            for (std::size_t d2 = 0; d2 < inst.depots.size(); ++d2) {
                if (departures[d2] >= inst.depots[d2].fleet_size) continue;
                const double dist = euclid(first.x, first.y, inst.depots[d2].x, inst.depots[d2].y);
                if (dist < best) {
                    best = dist;
                    target = static_cast<int>(d2);
                }
            }
            if (target < 0)
                throw InfeasibleError("cannot satisfy per-depot fleet limits");
            departures[d] -= 1;
            departures[target] += 1;
            r.depart_depot = target;
            propagate_route_times(r, r.start_min, inst);
        }
    }
    return sol;
}

Solution closed_route_initial(const Instance& inst, const std::vector<int>& assignment,
                              const PfihWeights& weights) {
    Solution sol;
    for (std::size_t d = 0; d < inst.depots.size(); ++d) {
        std::vector<int> members;
        for (std::size_t c = 0; c < assignment.size(); ++c)
            if (assignment[c] == static_cast<int>(d)) members.push_back(static_cast<int>(c));
        if (members.empty()) continue;
        const Depot& depot = inst.depots[d];
        auto routes = pfih_construct(members, depot.id, depot.x, depot.y, inst, weights,
                                     depot.fleet_size);
        for (auto& r : routes) {
            propagate_route_times(r, 0.0, inst);
            sol.routes.push_back(std::move(r));
        }
    }
    return sol;
}

}  // namespace

SolveResult solve(const Instance& inst, Strategy strategy, const SavnsConfig& config,
                  const DeparturePolicy& policy) {
    const PfihWeights weights;  // Table defaults; instance files cannot override these
    Solution improved;

    switch (strategy) {
        case Strategy::Standalone: {
            std::vector<int> assignment(inst.customers.size());
            for (std::size_t c = 0; c < inst.customers.size(); ++c) {
                if (inst.customers[c].bound_depot < 0)
                    throw InfeasibleError(
                        "stand-alone requires split demands (run split_standalone_demand)");
                assignment[c] = inst.customers[c].bound_depot;
            }
            Solution initial = closed_route_initial(inst, assignment, weights);
            initial.strategy = Strategy::Standalone;
            initial = assign_departures(initial, policy, inst);
            improved = savns1(initial, inst, config);
            break;
        }
        case Strategy::CC: {
            Solution initial = closed_route_initial(inst, cluster_customers(inst), weights);
            initial.strategy = Strategy::CC;
            initial = assign_departures(initial, policy, inst);
            improved = savns1(initial, inst, config);
            break;
        }
        case Strategy::BOC: {
            Solution initial = open_route_initial(inst, weights);
            initial.strategy = Strategy::BOC;
            initial = assign_departures(initial, policy, inst);
            initial = balancing_approach(initial, inst, config.ba_nonincreasing);
            improved = savns2(initial, inst, config, Strategy::BOC, {});
            break;
        }
        case Strategy::RBOC: {
            const auto highway_dist = floyd_shortest_paths(inst.highway, inst.depots);
            Solution initial = open_route_initial(inst, weights);
            initial.strategy = Strategy::RBOC;
            initial = assign_departures(initial, policy, inst);
            initial.rebalance = solve_rebalance(compute_depot_imbalance(initial, inst),
                                                highway_dist, inst.costs, inst.vehicle);
            improved = savns2(initial, inst, config, Strategy::RBOC, highway_dist);
            break;
        }
    }

    const auto violations = validate_solution(improved, inst, strategy);
    if (!violations.empty()) {
        std::ostringstream os;
        os << "solver produced an invalid solution:";
        for (const auto& v : violations) os << "\n  " << v;
        throw std::logic_error(os.str());
    }
    return {improved, solution_cost(improved, inst)};
}

}  // namespace coldroute
