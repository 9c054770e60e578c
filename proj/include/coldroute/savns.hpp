#ifndef COLDROUTE_SAVNS_HPP
#define COLDROUTE_SAVNS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "coldroute/instance.hpp"
#include "coldroute/rng.hpp"
#include "coldroute/solution.hpp"

namespace coldroute {

enum class SearchMode {
    Hybrid,   // full SAVNS: k = 1..k_max shakes under Metropolis acceptance
    SaOnly,   // ablation: Metropolis acceptance, neighborhood fixed at k = 1
    VnsOnly,  // ablation: k = 1..k_max shakes, improving moves only
};

struct SavnsConfig {
    double t_initial = 5000.0;
    double t_final = 1.0;
    double cooling = 0.98;
    int k_max = 8;
    std::uint64_t seed = 1;
    int vns_retry_cap = 50;
    SearchMode mode = SearchMode::Hybrid;
    int audit_interval = 1000;       // full re-evaluation every N acceptances
    bool ba_nonincreasing = true;    // BA route processing order
    std::string trace_path;          // per-iteration CSV when nonempty
};

// Metropolis criterion: improving or equal deltas always pass, worsening ones
// pass with probability exp(-delta / temperature).
bool metropolis_accept(double delta, double temperature, Rng& rng);

// Number of iterations of "run at T, then T *= cooling" until T < t_final.
int temperature_step_count(const SavnsConfig& config);

// Per-depot hybrid search for closed-route solutions (stand-alone and CC):
// for each depot in turn, anneal from t_initial over that depot's routes,
// shaking with k = 1..k_max cross-exchanges. Returns the best solution seen.
Solution savns1(const Solution& initial, const Instance& instance, const SavnsConfig& config);

// Global hybrid search for open-route solutions. After every shake the two
// changed routes' endpoints follow the nearest-depot rule; BOC then restores
// balance synchronously, RBOC re-prices the transfer plan. Candidates that
// break a depot's departure cap are rejected outright.
Solution savns2(const Solution& initial, const Instance& instance, const SavnsConfig& config,
                Strategy strategy, const std::vector<std::vector<double>>& highway_dist);

}  // namespace coldroute

#endif
