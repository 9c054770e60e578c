#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "coldroute/cost_model.hpp"
#include "coldroute/oracle.hpp"
#include "coldroute/savns.hpp"
#include "coldroute/strategies.hpp"
#include "test_fixtures.hpp"

using namespace coldroute;

namespace {

GenSpec tiny_spec(std::uint64_t seed, int customers = 4) {
    GenSpec spec;
    spec.n_customers = customers;
    spec.n_depots = 2;
    spec.area_km = 15.0;
    spec.demand_min = 20;
    spec.demand_max = 60;
    spec.service_min = 5.0;
    spec.service_max = 15.0;
    spec.fleet_min = 4;
    spec.fleet_max = 4;
    spec.tw_start_min = 30.0;
    spec.tw_start_max = 240.0;
    spec.tw_width_min = 60.0;
    spec.tw_width_max = 150.0;
    spec.seed = seed;
    return spec;
}

SavnsConfig fast_config(std::uint64_t seed) {
    SavnsConfig cfg;
    cfg.t_initial = 500.0;
    cfg.t_final = 1.0;
    cfg.cooling = 0.95;
    cfg.k_max = 8;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("metropolis always accepts improving or neutral deltas") {
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        CHECK(metropolis_accept(-5.0, 10.0, rng));
        CHECK(metropolis_accept(0.0, 10.0, rng));
    }
    CHECK_THROWS_AS(metropolis_accept(1.0, 0.0, rng), std::domain_error);
}

TEST_CASE("metropolis accepts delta == T at frequency about exp(-1)") {
    Rng rng(42);
    const int trials = 100000;
    int accepted = 0;
    for (int i = 0; i < trials; ++i)
        if (metropolis_accept(50.0, 50.0, rng)) ++accepted;
    const double freq = static_cast<double>(accepted) / trials;
    CHECK(std::abs(freq - std::exp(-1.0)) < 0.01);
}

TEST_CASE("temperature step count matches the closed form") {
    SavnsConfig table;
    table.t_initial = 5000.0;
    table.t_final = 1.0;
    table.cooling = 0.98;
    const int expected = static_cast<int>(
        std::ceil(std::log(table.t_final / table.t_initial) / std::log(table.cooling)));
    CHECK(temperature_step_count(table) == expected);
    CHECK(temperature_step_count(table) == 422);

    // Count the loop the engines actually run.
    int loop_steps = 0;
    for (double t = table.t_initial; t >= table.t_final; t *= table.cooling) ++loop_steps;
    CHECK(loop_steps == temperature_step_count(table));

    SavnsConfig nearly_done;
    nearly_done.t_initial = 1.0001;
    nearly_done.t_final = 1.0;
    nearly_done.cooling = 0.98;
    CHECK(temperature_step_count(nearly_done) == 1);
}

TEST_CASE("savns1 is deterministic for a fixed seed") {
    Instance inst = generate_instance(tiny_spec(3, 5));
    SavnsConfig cfg = fast_config(9);
    SolveResult a = solve(inst, Strategy::CC, cfg);
    SolveResult b = solve(inst, Strategy::CC, cfg);
    CHECK(a.solution == b.solution);
    CHECK(a.cost.total == b.cost.total);
}

TEST_CASE("savns1 reaches the exact optimum on a tiny instance") {
    Instance inst = generate_instance(tiny_spec(21, 3));
    SolveResult heuristic = solve(inst, Strategy::CC, fast_config(5));
    SolveResult oracle = exact_solve(inst, Strategy::CC);
    CHECK(heuristic.cost.total >= oracle.cost.total - 1e-9);
    CHECK(heuristic.cost.total == doctest::Approx(oracle.cost.total).epsilon(1e-6));
}

TEST_CASE("incumbent objective never increases along the trace") {
    Instance inst = generate_instance(tiny_spec(4, 5));
    SavnsConfig cfg = fast_config(2);
    cfg.trace_path = "/tmp/coldroute_trace.csv";
    solve(inst, Strategy::CC, cfg);

    std::ifstream in(cfg.trace_path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "iteration,temperature,current_obj,best_obj");
    double prev_best = 1e300;
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string field;
        std::getline(ss, field, ',');
        std::getline(ss, field, ',');
        std::getline(ss, field, ',');
        std::getline(ss, field, ',');
        const double best = std::stod(field);
        CHECK(best <= prev_best + 1e-9);
        prev_best = best;
        ++rows;
    }
    CHECK(rows > 0);
    std::remove(cfg.trace_path.c_str());
}

TEST_CASE("savns2 improves and stays feasible for BOC and RBOC") {
    Instance inst = generate_instance(tiny_spec(8, 5));
    for (Strategy strategy : {Strategy::BOC, Strategy::RBOC}) {
        SolveResult res = solve(inst, strategy, fast_config(3));
        CHECK(validate_solution(res.solution, inst, strategy).empty());
        if (strategy == Strategy::BOC) {
            const auto u = compute_depot_imbalance(res.solution, inst);
            for (int v : u) CHECK(v == 0);
        }
    }
}

TEST_CASE("savns2 gets within a whisker of the oracle on most seeds") {
    Instance inst = generate_instance(tiny_spec(14, 4));
    SolveResult oracle = exact_solve(inst, Strategy::BOC);
    int close = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SolveResult res = solve(inst, Strategy::BOC, fast_config(seed));
        CHECK(res.cost.total >= oracle.cost.total - 1e-9);
        if (res.cost.total <= oracle.cost.total * 1.001) ++close;
    }
    CHECK(close >= 9);
}

TEST_CASE("single-depot instance collapses savns2 to fixed endpoints") {
    GenSpec spec = tiny_spec(6, 4);
    spec.n_depots = 1;
    Instance inst = generate_instance(spec);
    SolveResult res = solve(inst, Strategy::BOC, fast_config(4));
    for (const auto& r : res.solution.routes) {
        CHECK(r.depart_depot == 0);
        CHECK(r.return_depot == 0);
    }
}

TEST_CASE("ablation modes run and return valid solutions") {
    Instance inst = generate_instance(tiny_spec(10, 5));
    for (SearchMode mode : {SearchMode::SaOnly, SearchMode::VnsOnly}) {
        SavnsConfig cfg = fast_config(6);
        cfg.mode = mode;
        SolveResult res = solve(inst, Strategy::CC, cfg);
        CHECK(validate_solution(res.solution, inst, Strategy::CC).empty());
    }
}
