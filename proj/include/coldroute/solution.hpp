#ifndef COLDROUTE_SOLUTION_HPP
#define COLDROUTE_SOLUTION_HPP

#include <optional>
#include <string>
#include <vector>

#include "coldroute/instance.hpp"

namespace coldroute {

enum class Strategy { Standalone, CC, BOC, RBOC };

const char* strategy_name(Strategy s);
std::optional<Strategy> strategy_from_name(const std::string& name);

// One vehicle's plan: an ordered visit sequence between two depots, with the
// arrival times computed by the travel-time engine.
struct Route {
    int depart_depot = -1;  // -1 = virtual depot during construction
    int return_depot = -1;
    double start_min = 0.0;
    std::vector<int> visits;       // customer ids
    std::vector<double> arrivals;  // minutes, aligned with visits
    double arrival_return = 0.0;   // minutes, at the return depot
    int load = 0;                  // boxes

    bool operator==(const Route&) const = default;
};

// Integer vehicle transfers restoring per-depot balance after distribution.
struct RebalancePlan {
    struct Transfer {
        int from = 0;
        int to = 0;
        int count = 0;
        bool operator==(const Transfer&) const = default;
    };
    std::vector<Transfer> transfers;
    double cost = 0.0;

    bool operator==(const RebalancePlan&) const = default;
};

struct Solution {
    Strategy strategy = Strategy::CC;
    std::vector<Route> routes;
    std::optional<RebalancePlan> rebalance;

    bool operator==(const Solution&) const = default;
};

// The seven cost components of the objective.
struct CostBreakdown {
    double fix = 0.0;
    double transport = 0.0;
    double co2 = 0.0;
    double cooling = 0.0;
    double good_loss = 0.0;
    double penalty = 0.0;
    double rebalance = 0.0;
    double total = 0.0;

    CostBreakdown& operator+=(const CostBreakdown& o) {
        fix += o.fix;
        transport += o.transport;
        co2 += o.co2;
        cooling += o.cooling;
        good_loss += o.good_loss;
        penalty += o.penalty;
        rebalance += o.rebalance;
        total += o.total;
        return *this;
    }
};

}  // namespace coldroute

#endif
