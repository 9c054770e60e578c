#include "coldroute/savns.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "coldroute/cost_model.hpp"
#include "coldroute/neighborhoods.hpp"
#include "coldroute/strategies.hpp"
#include "coldroute/travel_time.hpp"

namespace coldroute {

bool metropolis_accept(double delta, double temperature, Rng& rng) {
    if (temperature <= 0) throw std::domain_error("metropolis_accept: temperature must be positive");
    if (delta <= 0) return true;
    return rng.uniform01() < std::exp(-delta / temperature);
}

int temperature_step_count(const SavnsConfig& config) {
    if (config.t_initial < config.t_final) return 0;
    return static_cast<int>(
        std::ceil(std::log(config.t_final / config.t_initial) / std::log(config.cooling)));
}

namespace {

class TraceWriter {
  public:
    explicit TraceWriter(const std::string& path) {
        if (!path.empty()) {
            out_.open(path);
            if (out_) out_ << "iteration,temperature,current_obj,best_obj\n";
        }
    }
    void line(long iteration, double t, double current, double best) {
        if (out_) out_ << iteration << "," << t << "," << current << "," << best << "\n";
    }

  private:
    std::ofstream out_;
};

// Shared bookkeeping: cached per-route costs, incremental deltas, and the
// periodic full re-evaluation that guards against drift.
class ObjectiveTracker {
  public:
    ObjectiveTracker(const Solution& sol, const Instance& inst, int audit_interval)
        : inst_(inst), audit_interval_(audit_interval) {
        reset(sol);
    }

    void reset(const Solution& sol) {
        route_costs_.clear();
        route_costs_.reserve(sol.routes.size());
        total_ = 0;
        for (const auto& r : sol.routes) {
            route_costs_.push_back(route_cost(r, inst_).total);
            total_ += route_costs_.back();
        }
        if (sol.rebalance) total_ += sol.rebalance->cost;
        rebalance_cost_ = sol.rebalance ? sol.rebalance->cost : 0.0;
    }

    double total() const { return total_; }

    // Objective delta if `candidate` replaced the tracked solution, where only
    // the routes listed in `changed` differ (plus the rebalance plan).
    double delta_for(const Solution& candidate, const std::vector<std::size_t>& changed,
                     std::vector<double>& new_costs_out) const {
        double delta = 0;
        new_costs_out.clear();
        for (std::size_t idx : changed) {
            const double fresh = route_cost(candidate.routes[idx], inst_).total;
            new_costs_out.push_back(fresh);
            delta += fresh - route_costs_[idx];
        }
        const double cand_reb = candidate.rebalance ? candidate.rebalance->cost : 0.0;
        delta += cand_reb - rebalance_cost_;
        return delta;
    }

    void commit(const Solution& accepted, const std::vector<std::size_t>& changed,
                const std::vector<double>& new_costs, double delta) {
        for (std::size_t i = 0; i < changed.size(); ++i) route_costs_[changed[i]] = new_costs[i];
        rebalance_cost_ = accepted.rebalance ? accepted.rebalance->cost : 0.0;
        total_ += delta;
        ++acceptances_;
        if (audit_interval_ > 0 && acceptances_ % audit_interval_ == 0) {
            const double audited = solution_cost(accepted, inst_).total;
            if (std::abs(audited - total_) > 1e-6 * std::max(1.0, std::abs(audited)))
                throw std::logic_error("savns: incremental objective drifted from full evaluation");
            total_ = audited;
        }
    }

  private:
    const Instance& inst_;
    std::vector<double> route_costs_;
    double rebalance_cost_ = 0;
    double total_ = 0;
    int audit_interval_ = 0;
    long acceptances_ = 0;
};

bool accepts(SearchMode mode, double delta, double temperature, Rng& rng) {
    if (mode == SearchMode::VnsOnly) return delta <= 0;
    return metropolis_accept(delta, temperature, rng);
}

std::vector<std::size_t> depot_route_indices(const Solution& sol, int depot) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < sol.routes.size(); ++i)
        if (sol.routes[i].depart_depot == depot) idx.push_back(i);
    return idx;
}

}  // namespace

Solution savns1(const Solution& initial, const Instance& inst, const SavnsConfig& config) {
    Solution current = initial;
    Solution best = initial;
    ObjectiveTracker tracker(current, inst, config.audit_interval);
    double best_obj = tracker.total();
    Rng rng(config.seed);
    TraceWriter trace(config.trace_path);
    long iteration = 0;
    std::vector<double> new_costs;

    for (std::size_t depot = 0; depot < inst.depots.size(); ++depot) {
        std::vector<std::size_t> eligible = depot_route_indices(current, static_cast<int>(depot));
        if (eligible.size() < 2) continue;  // no two-route move exists

        for (double t = config.t_initial; t >= config.t_final; t *= config.cooling) {
            for (int k = 1; k <= config.k_max; ++k) {
                ++iteration;
                const int shake = config.mode == SearchMode::SaOnly ? 1 : k;
                MoveResult mv = vns_strategy_k(current, shake, rng, inst, eligible,
                                               config.vns_retry_cap);
                if (!mv.moved) {
                    trace.line(iteration, t, tracker.total(), best_obj);
                    continue;
                }
                const bool resized = mv.candidate.routes.size() != current.routes.size();
                const double delta =
                    resized ? solution_cost(mv.candidate, inst).total - tracker.total()
                            : tracker.delta_for(mv.candidate, mv.changed, new_costs);
                if (accepts(config.mode, delta, t, rng)) {
                    current = std::move(mv.candidate);
                    if (resized) {
                        tracker.reset(current);
                    } else {
                        tracker.commit(current, mv.changed, new_costs, delta);
                    }
                    eligible = depot_route_indices(current, static_cast<int>(depot));
                    if (tracker.total() < best_obj) {
                        best_obj = tracker.total();
                        best = current;
                    }
                }
                trace.line(iteration, t, tracker.total(), best_obj);
            }
        }
    }
    return best;
}

Solution savns2(const Solution& initial, const Instance& inst, const SavnsConfig& config,
                Strategy strategy, const std::vector<std::vector<double>>& highway_dist) {
    assert(strategy == Strategy::BOC || strategy == Strategy::RBOC);
    Solution current = initial;
    Solution best = initial;
    ObjectiveTracker tracker(current, inst, config.audit_interval);
    double best_obj = tracker.total();
    Rng rng(config.seed);
    TraceWriter trace(config.trace_path);
    long iteration = 0;
    std::vector<double> new_costs;

    std::vector<std::size_t> all(current.routes.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

    for (double t = config.t_initial; t >= config.t_final; t *= config.cooling) {
        for (int k = 1; k <= config.k_max; ++k) {
            ++iteration;
            const int shake = config.mode == SearchMode::SaOnly ? 1 : k;
            MoveResult mv = vns_strategy_k(current, shake, rng, inst, all, config.vns_retry_cap);
            if (!mv.moved) {
                trace.line(iteration, t, tracker.total(), best_obj);
                continue;
            }

            Solution& cand = mv.candidate;
            for (std::size_t idx : mv.changed) {
                repoint_route_endpoints(cand.routes[idx], inst);
                propagate_route_times(cand.routes[idx], cand.routes[idx].start_min, inst);
            }
            if (strategy == Strategy::BOC) {
                cand = balancing_approach(cand, inst, config.ba_nonincreasing);
            } else {
                cand.rebalance = solve_rebalance(compute_depot_imbalance(cand, inst), highway_dist,
                                                 inst.costs, inst.vehicle);
            }

            // Hard constraint (departure caps) rejects outside Metropolis.
            std::vector<int> departures(inst.depots.size(), 0);
            bool caps_ok = true;
            for (const auto& r : cand.routes) {
                if (++departures[r.depart_depot] > inst.depots[r.depart_depot].fleet_size) {
                    caps_ok = false;
                    break;
                }
            }
            if (!caps_ok) {
                trace.line(iteration, t, tracker.total(), best_obj);
                continue;
            }

            // BA may have re-pointed returns beyond the two moved routes.
            const bool resized = cand.routes.size() != current.routes.size();
            std::vector<std::size_t> changed = mv.changed;
            if (!resized) {
                for (std::size_t i = 0; i < cand.routes.size(); ++i) {
                    if (std::find(changed.begin(), changed.end(), i) != changed.end()) continue;
                    if (cand.routes[i].return_depot != current.routes[i].return_depot)
                        changed.push_back(i);
                }
            }

            const double delta = resized ? solution_cost(cand, inst).total - tracker.total()
                                         : tracker.delta_for(cand, changed, new_costs);
            if (accepts(config.mode, delta, t, rng)) {
                current = std::move(cand);
                if (resized) {
                    tracker.reset(current);
                } else {
                    tracker.commit(current, changed, new_costs, delta);
                }
                if (current.routes.size() != all.size()) {
                    all.resize(current.routes.size());
                    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
                }
                if (tracker.total() < best_obj) {
                    best_obj = tracker.total();
                    best = current;
                }
            }
            trace.line(iteration, t, tracker.total(), best_obj);
        }
    }
    return best;
}

}  // namespace coldroute
