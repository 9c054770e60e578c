#ifndef COLDROUTE_IO_HPP
#define COLDROUTE_IO_HPP

#include <cstdint>
#include <string>

#include "coldroute/instance.hpp"
#include "coldroute/metrics.hpp"
#include "coldroute/solution.hpp"

namespace coldroute {

// Solution file: strategy, objective, per-component costs, indicators,
// routes (endpoints, start, visits, arrivals, load) and transfer plan.
std::string solution_json_string(const Solution& solution, const Instance& instance,
                                 const CostBreakdown& cost, const IndicatorReport& report,
                                 std::uint64_t seed);
void write_solution_json(const std::string& path, const Solution& solution,
                         const Instance& instance, const CostBreakdown& cost,
                         const IndicatorReport& report, std::uint64_t seed);

// Cost/indicator CSV row (field order is part of the output contract).
extern const char* kCostsCsvHeader;
std::string costs_csv_row(const std::string& strategy, std::uint64_t seed,
                          const CostBreakdown& cost, const IndicatorReport& report);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace coldroute

#endif
