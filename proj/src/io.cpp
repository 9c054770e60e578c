#include "coldroute/io.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "coldroute/errors.hpp"
#include "coldroute/strategies.hpp"

namespace coldroute {

const char* kCostsCsvHeader =
    "strategy,seed,fix,transport,co2,cooling,good_loss,penalty,rebalance,total,"
    "lr,flr,cs,ear,tr";

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

std::string solution_json_string(const Solution& sol, const Instance& inst,
                                 const CostBreakdown& cost, const IndicatorReport& report,
                                 std::uint64_t seed) {
    nlohmann::json j;
    j["strategy"] = strategy_name(sol.strategy);
    j["seed"] = seed;
    j["objective"] = cost.total;
    j["costs"] = {{"fix", cost.fix},           {"transport", cost.transport},
                  {"co2", cost.co2},           {"cooling", cost.cooling},
                  {"good_loss", cost.good_loss}, {"penalty", cost.penalty},
                  {"rebalance", cost.rebalance}, {"total", cost.total}};
    j["indicators"] = {{"lr", report.lr},
                       {"flr", report.flr},
                       {"cs", report.cs},
                       {"ear", report.ear},
                       {"tr", report.tr}};
    j["routes"] = nlohmann::json::array();
    for (const auto& r : sol.routes) {
        j["routes"].push_back({{"depart_depot", r.depart_depot},
                               {"return_depot", r.return_depot},
                               {"start_min", r.start_min},
                               {"load", r.load},
                               {"visits", r.visits},
                               {"arrivals", r.arrivals},
                               {"arrival_return", r.arrival_return}});
    }
    if (sol.rebalance) {
        nlohmann::json transfers = nlohmann::json::array();
        for (const auto& t : sol.rebalance->transfers)
            transfers.push_back({{"from", t.from}, {"to", t.to}, {"count", t.count}});
        j["rebalance"] = {{"transfers", transfers}, {"cost", sol.rebalance->cost}};
    } else {
        j["rebalance"] = nullptr;
    }
    j["n_depots"] = inst.depots.size();
    j["n_customers"] = inst.customers.size();
    return j.dump(2) + "\n";
}

void write_solution_json(const std::string& path, const Solution& sol, const Instance& inst,
                         const CostBreakdown& cost, const IndicatorReport& report,
                         std::uint64_t seed) {
    write_text_file(path, solution_json_string(sol, inst, cost, report, seed));
}

std::string costs_csv_row(const std::string& strategy, std::uint64_t seed,
                          const CostBreakdown& cost, const IndicatorReport& report) {
    std::string row = strategy + "," + std::to_string(seed);
    for (double v : {cost.fix, cost.transport, cost.co2, cost.cooling, cost.good_loss,
                     cost.penalty, cost.rebalance, cost.total, report.lr, report.flr, report.cs,
                     report.ear, report.tr})
        row += "," + fmt(v);
    return row;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write file: " + path);
    out << content;
}

}  // namespace coldroute
