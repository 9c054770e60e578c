#include <doctest.h>

#include <string>

#include "coldroute/cost_model.hpp"
#include "coldroute/io.hpp"
#include "coldroute/metrics.hpp"
#include "test_fixtures.hpp"

using namespace coldroute;

TEST_CASE("costs csv header is frozen") {
    CHECK(std::string(kCostsCsvHeader) ==
          "strategy,seed,fix,transport,co2,cooling,good_loss,penalty,rebalance,total,"
          "lr,flr,cs,ear,tr");
}

TEST_CASE("solution json is deterministic and carries every section") {
    Instance inst = test::two_depot_fixture();
    Solution sol;
    sol.strategy = Strategy::RBOC;
    sol.routes.push_back(test::propagated_route(inst, 0, 1, {0, 1}));
    sol.routes.push_back(test::propagated_route(inst, 1, 0, {2, 3}));
    RebalancePlan plan;
    plan.transfers = {{0, 1, 1}};
    plan.cost = 621.044;
    sol.rebalance = plan;

    const CostBreakdown cost = solution_cost(sol, inst);
    const IndicatorReport rep = indicators(sol, inst);
    const std::string a = solution_json_string(sol, inst, cost, rep, 42);
    const std::string b = solution_json_string(sol, inst, cost, rep, 42);
    CHECK(a == b);
    CHECK(a.find("\"strategy\": \"rboc\"") != std::string::npos);
    CHECK(a.find("\"routes\"") != std::string::npos);
    CHECK(a.find("\"rebalance\"") != std::string::npos);
    CHECK(a.find("\"indicators\"") != std::string::npos);

    const std::string row = costs_csv_row("rboc", 42, cost, rep);
    CHECK(row.substr(0, 8) == "rboc,42,");
    // One value per header column.
    CHECK(std::count(row.begin(), row.end(), ',') ==
          std::count(kCostsCsvHeader, kCostsCsvHeader + std::string(kCostsCsvHeader).size(), ','));
}
