// Command-line front end: solve one scenario, compare strategies over
// replications, sweep cost parameters, run the exhaustive oracle, and
// generate synthetic instances.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "coldroute/cost_model.hpp"
#include "coldroute/departure.hpp"
#include "coldroute/errors.hpp"
#include "coldroute/instance.hpp"
#include "coldroute/io.hpp"
#include "coldroute/metrics.hpp"
#include "coldroute/oracle.hpp"
#include "coldroute/savns.hpp"
#include "coldroute/strategies.hpp"

namespace {

using namespace coldroute;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
    std::string instance_path;
    std::string format = "native-json";
    std::string config_path;
    std::vector<std::string> overrides;  // key=value
    std::string departure = "fixed:09:00";
    std::uint64_t seed = 1;
    std::uint64_t split_seed = 1;
    double t_initial = -1;  // negative = take from defaults
    double t_final = -1;
    double cooling = -1;
    int k_max = -1;
    std::string mode = "hybrid";
    std::string trace_path;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool needs_instance = true) {
    auto* inst = cmd->add_option("--instance", opt.instance_path, "Instance file");
    if (needs_instance) inst->required();
    cmd->add_option("--format", opt.format, "Instance format: native-json or cordeau")
        ->check(CLI::IsMember({"native-json", "cordeau"}));
    cmd->add_option("--config", opt.config_path, "Key-value defaults file");
    cmd->add_option("--set", opt.overrides, "Override a config key, e.g. --set fix_cost=450");
    cmd->add_option("--departure", opt.departure,
                    "fixed:HH:MM or flexible:HH:MM-HH:MM (offsets from 09:00)");
    cmd->add_option("--seed", opt.seed, "Random seed");
    cmd->add_option("--split-seed", opt.split_seed, "Seed for the stand-alone demand split");
    cmd->add_option("--t0", opt.t_initial, "Initial SA temperature");
    cmd->add_option("--t-final", opt.t_final, "Final SA temperature");
    cmd->add_option("--cooling", opt.cooling, "SA cooling rate in (0,1)");
    cmd->add_option("--kmax", opt.k_max, "VNS neighborhood count");
    cmd->add_option("--search-mode", opt.mode, "hybrid, sa or vns")
        ->check(CLI::IsMember({"hybrid", "sa", "vns"}));
    cmd->add_option("--trace", opt.trace_path, "Per-iteration trace CSV path");
}

Defaults load_defaults(const CommonOptions& opt) {
    Defaults d = opt.config_path.empty() ? Defaults::table_defaults()
                                         : Defaults::from_file(opt.config_path);
    for (const auto& kv : opt.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ParseError("--set expects key=value, got '" + kv + "'");
        d.apply_override(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return d;
}

Instance load(const CommonOptions& opt, const Defaults& defaults) {
    const InstanceFormat fmt = opt.format == "cordeau" ? InstanceFormat::Cordeau
                                                       : InstanceFormat::NativeJson;
    return load_instance(opt.instance_path, fmt, defaults);
}

SavnsConfig make_config(const CommonOptions& opt, const Defaults& defaults, std::uint64_t seed) {
    SavnsConfig cfg;
    cfg.t_initial = opt.t_initial > 0 ? opt.t_initial : defaults.t_initial;
    cfg.t_final = opt.t_final > 0 ? opt.t_final : defaults.t_final;
    cfg.cooling = opt.cooling > 0 ? opt.cooling : defaults.cooling_rate;
    cfg.k_max = opt.k_max > 0 ? opt.k_max : defaults.k_max;
    cfg.seed = seed;
    cfg.trace_path = opt.trace_path;
    if (opt.mode == "sa") cfg.mode = SearchMode::SaOnly;
    if (opt.mode == "vns") cfg.mode = SearchMode::VnsOnly;
    return cfg;
}

Strategy parse_strategy(const std::string& name) {
    const auto s = strategy_from_name(name);
    if (!s) throw CLI::ValidationError("--strategy", "unknown strategy '" + name + "'");
    return *s;
}

// The stand-alone scenario needs orders bound to depots; split on demand.
Instance instance_for(const Instance& base, Strategy strategy, std::uint64_t split_seed) {
    if (strategy != Strategy::Standalone) return base;
    bool bound = !base.customers.empty();
    for (const auto& c : base.customers)
        if (c.bound_depot < 0) bound = false;
    return bound ? base : split_standalone_demand(base, split_seed);
}

void print_breakdown(const std::string& label, const CostBreakdown& cost) {
    std::printf("%-11s total %12.2f | fix %9.2f transport %10.2f co2 %10.2f "
                "cooling %8.2f good_loss %8.2f penalty %8.2f rebalance %8.2f\n",
                label.c_str(), cost.total, cost.fix, cost.transport, cost.co2, cost.cooling,
                cost.good_loss, cost.penalty, cost.rebalance);
}

void run_parallel(std::vector<std::function<void()>>& tasks, int jobs) {
    if (jobs < 1) jobs = 1;
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    const int n = std::min<int>(jobs, static_cast<int>(tasks.size()));
    for (int w = 0; w < n; ++w) {
        workers.emplace_back([&] {
            for (;;) {
                const std::size_t idx = next.fetch_add(1);
                if (idx >= tasks.size()) break;
                try {
                    tasks[idx]();
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& w : workers) w.join();
    if (first_error) std::rethrow_exception(first_error);
}

struct RunOutcome {
    CostBreakdown cost;
    IndicatorReport report;
};

int cmd_solve(const CommonOptions& opt, const std::string& strategy_name,
              const std::string& out_dir) {
    const Defaults defaults = load_defaults(opt);
    const Strategy strategy = parse_strategy(strategy_name);
    const Instance base = load(opt, defaults);
    const Instance inst = instance_for(base, strategy, opt.split_seed);
    const DeparturePolicy policy = [&] {
        DeparturePolicy p = DeparturePolicy::parse(opt.departure);
        p.seed = opt.seed;
        return p;
    }();
    const SavnsConfig cfg = make_config(opt, defaults, opt.seed);

    const SolveResult res = solve(inst, strategy, cfg, policy);
    const IndicatorReport rep = indicators(res.solution, inst);

    std::filesystem::create_directories(out_dir);
    write_solution_json((std::filesystem::path(out_dir) / "solution.json").string(),
                        res.solution, inst, res.cost, rep, opt.seed);
    write_text_file((std::filesystem::path(out_dir) / "costs.csv").string(),
                    std::string(kCostsCsvHeader) + "\n" +
                        costs_csv_row(strategy_name, opt.seed, res.cost, rep) + "\n");

    print_breakdown(strategy_name, res.cost);
    std::printf("indicators  LR %.4f FLR %.4f CS %.4f EAR %.4f TR %.4f | routes %zu\n",
                rep.lr, rep.flr, rep.cs, rep.ear, rep.tr, res.solution.routes.size());
    return kExitOk;
}

int cmd_compare(const CommonOptions& opt, const std::vector<std::string>& strategy_names,
                int replications, const std::string& out_path, int jobs) {
    const Defaults defaults = load_defaults(opt);
    const Instance base = load(opt, defaults);
    const DeparturePolicy base_policy = DeparturePolicy::parse(opt.departure);

    std::vector<Strategy> strategies;
    for (const auto& name : strategy_names) strategies.push_back(parse_strategy(name));

    std::vector<std::vector<RunOutcome>> outcomes(strategies.size(),
                                                  std::vector<RunOutcome>(replications));
    std::vector<std::function<void()>> tasks;
    for (std::size_t si = 0; si < strategies.size(); ++si) {
        const Instance inst = instance_for(base, strategies[si], opt.split_seed);
        for (int rep = 0; rep < replications; ++rep) {
            const std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(rep);
            tasks.push_back([&, si, rep, seed, inst] {
                DeparturePolicy policy = base_policy;
                policy.seed = seed;
                CommonOptions run_opt = opt;
                const SavnsConfig cfg = make_config(run_opt, defaults, seed);
                const SolveResult res = solve(inst, strategies[si], cfg, policy);
                outcomes[si][static_cast<std::size_t>(rep)] = {
                    res.cost, indicators(res.solution, inst)};
            });
        }
    }
    run_parallel(tasks, jobs);

    // Aggregate: means, dispersion, and savings against stand-alone.
    double standalone_mean = -1;
    for (std::size_t si = 0; si < strategies.size(); ++si) {
        if (strategies[si] != Strategy::Standalone) continue;
        double sum = 0;
        for (const auto& o : outcomes[si]) sum += o.cost.total;
        standalone_mean = sum / replications;
    }

    std::string csv =
        "strategy,replications,total_mean,total_std,std_avg,mre,fix,transport,co2,cooling,"
        "good_loss,penalty,rebalance,savings_vs_standalone,lr,flr,cs,ear,tr\n";
    char buf[512];
    for (std::size_t si = 0; si < strategies.size(); ++si) {
        CostBreakdown mean;
        IndicatorReport rep_mean;
        for (const auto& o : outcomes[si]) {
            mean += o.cost;
            rep_mean.lr += o.report.lr;
            rep_mean.flr += o.report.flr;
            rep_mean.cs += o.report.cs;
            rep_mean.ear += o.report.ear;
            rep_mean.tr += o.report.tr;
        }
        const double n = replications;
        mean.fix /= n; mean.transport /= n; mean.co2 /= n; mean.cooling /= n;
        mean.good_loss /= n; mean.penalty /= n; mean.rebalance /= n; mean.total /= n;
        rep_mean.lr /= n; rep_mean.flr /= n; rep_mean.cs /= n; rep_mean.ear /= n;
        rep_mean.tr /= n;

        double variance = 0, mre = 0;
        for (const auto& o : outcomes[si]) {
            variance += (o.cost.total - mean.total) * (o.cost.total - mean.total);
            mre = std::max(mre, std::abs(o.cost.total - mean.total) / mean.total);
        }
        const double stddev = std::sqrt(variance / n);
        const double savings = standalone_mean > 0
                                   ? (standalone_mean - mean.total) / standalone_mean
                                   : std::nan("");

        std::snprintf(buf, sizeof(buf),
                      "%s,%d,%.4f,%.4f,%.6f,%.6f,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%.6f,"
                      "%.6f,%.6f,%.6f,%.6f,%.6f\n",
                      strategy_name(strategies[si]), replications, mean.total, stddev,
                      stddev / mean.total, mre, mean.fix, mean.transport, mean.co2, mean.cooling,
                      mean.good_loss, mean.penalty, mean.rebalance, savings, rep_mean.lr,
                      rep_mean.flr, rep_mean.cs, rep_mean.ear, rep_mean.tr);
        csv += buf;
        print_breakdown(strategy_name(strategies[si]), mean);
    }
    write_text_file(out_path, csv);
    std::printf("wrote %s\n", out_path.c_str());
    return kExitOk;
}

int cmd_sweep(const CommonOptions& opt, const std::string& parameter,
              const std::vector<double>& values, const std::vector<std::string>& strategy_names,
              int replications, const std::string& out_path, int jobs) {
    if (values.empty()) throw CLI::ValidationError("--values", "empty value list");
    const Defaults defaults = load_defaults(opt);
    const Instance base = load(opt, defaults);
    const DeparturePolicy base_policy = DeparturePolicy::parse(opt.departure);

    std::vector<Strategy> strategies;
    for (const auto& name : strategy_names) strategies.push_back(parse_strategy(name));

    struct Cell {
        double value;
        Strategy strategy;
        std::uint64_t seed;
        CostBreakdown cost;
    };
    std::vector<Cell> cells;
    for (double v : values)
        for (Strategy s : strategies)
            for (int rep = 0; rep < replications; ++rep)
                cells.push_back({v, s, opt.seed + static_cast<std::uint64_t>(rep), {}});

    std::vector<std::function<void()>> tasks;
    for (auto& cell : cells) {
        tasks.push_back([&, cell_ptr = &cell] {
            Instance inst = base;
            if (parameter == "lambda") {
                inst.costs.carbon_emission = cell_ptr->value;
            } else if (parameter == "c1") {
                inst.costs.cooling_unit = cell_ptr->value / 60.0;  // given in $/h
            } else {
                inst.costs.rebalance_discount = cell_ptr->value;
            }
            const Instance run_inst = instance_for(inst, cell_ptr->strategy, opt.split_seed);
            DeparturePolicy policy = base_policy;
            policy.seed = cell_ptr->seed;
            const SavnsConfig cfg = make_config(opt, defaults, cell_ptr->seed);
            cell_ptr->cost = solve(run_inst, cell_ptr->strategy, cfg, policy).cost;
        });
    }
    run_parallel(tasks, jobs);

    std::string csv =
        "parameter,value,strategy,seed,fix,transport,co2,cooling,good_loss,penalty,"
        "rebalance,total\n";
    char buf[384];
    for (const auto& cell : cells) {
        std::snprintf(buf, sizeof(buf), "%s,%.6f,%s,%llu,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f\n",
                      parameter.c_str(), cell.value, strategy_name(cell.strategy),
                      static_cast<unsigned long long>(cell.seed), cell.cost.fix,
                      cell.cost.transport, cell.cost.co2, cell.cost.cooling, cell.cost.good_loss,
                      cell.cost.penalty, cell.cost.rebalance, cell.cost.total);
        csv += buf;
    }
    write_text_file(out_path, csv);
    std::printf("wrote %s (%zu cells)\n", out_path.c_str(), cells.size());
    return kExitOk;
}

int cmd_oracle(const CommonOptions& opt, const std::string& strategy_name_arg,
               const std::string& out_dir) {
    const Defaults defaults = load_defaults(opt);
    const Strategy strategy = parse_strategy(strategy_name_arg);
    const Instance base = load(opt, defaults);
    const Instance inst = instance_for(base, strategy, opt.split_seed);
    const DeparturePolicy policy = DeparturePolicy::parse(opt.departure);

    const SolveResult res = exact_solve(inst, strategy, policy);
    print_breakdown("oracle", res.cost);
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        const IndicatorReport rep = indicators(res.solution, inst);
        write_solution_json((std::filesystem::path(out_dir) / "solution.json").string(),
                            res.solution, inst, res.cost, rep, 0);
    }
    return kExitOk;
}

int cmd_generate(const GenSpec& spec, double threshold, const std::string& out_path,
                 const CommonOptions& opt) {
    Defaults defaults = load_defaults(opt);
    defaults.highway_threshold_km = threshold;
    const Instance inst = generate_instance(spec, defaults);
    save_instance(inst, out_path);
    std::printf("wrote %s (%d customers, %d depots)\n", out_path.c_str(), spec.n_customers,
                spec.n_depots);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Collaborative refrigerated-logistics MDVRPTW solver"};
    app.require_subcommand(1);

    CommonOptions opt;

    auto* solve_cmd = app.add_subcommand("solve", "Run one strategy on one instance");
    std::string strategy = "cc";
    std::string out_dir = "out";
    add_common(solve_cmd, opt);
    solve_cmd->add_option("--strategy", strategy, "standalone, cc, boc or rboc")->required();
    solve_cmd->add_option("--out", out_dir, "Output directory");

    auto* compare_cmd = app.add_subcommand("compare", "Replicated comparison across strategies");
    std::vector<std::string> strategies = {"standalone", "cc", "boc", "rboc"};
    int replications = 5;
    int jobs = 1;
    std::string compare_out = "compare.csv";
    add_common(compare_cmd, opt);
    compare_cmd->add_option("--strategies", strategies, "Subset of strategies to run");
    compare_cmd->add_option("--reps", replications, "Replications per strategy");
    compare_cmd->add_option("--out", compare_out, "Summary CSV path");
    compare_cmd->add_option("--jobs", jobs, "Concurrent solver runs");

    auto* sweep_cmd = app.add_subcommand("sweep", "Sensitivity sweep over lambda, c1 or alpha");
    std::string parameter;
    std::vector<double> values;
    std::vector<std::string> sweep_strategies = {"cc", "boc", "rboc"};
    int sweep_reps = 1;
    std::string sweep_out = "sweep.csv";
    add_common(sweep_cmd, opt);
    sweep_cmd->add_option("--parameter", parameter, "lambda, c1 or alpha")
        ->required()
        ->check(CLI::IsMember({"lambda", "c1", "alpha"}));
    sweep_cmd->add_option("--values", values, "Parameter values")->required();
    sweep_cmd->add_option("--strategies", sweep_strategies, "Strategies to sweep");
    sweep_cmd->add_option("--reps", sweep_reps, "Replications per cell");
    sweep_cmd->add_option("--out", sweep_out, "Sweep CSV path");
    sweep_cmd->add_option("--jobs", jobs, "Concurrent solver runs");

    auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive optimum for tiny instances");
    std::string oracle_strategy = "cc";
    std::string oracle_out;
    add_common(oracle_cmd, opt);
    oracle_cmd->add_option("--strategy", oracle_strategy, "standalone, cc, boc or rboc")
        ->required();
    oracle_cmd->add_option("--out", oracle_out, "Optional output directory");

    auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic native-JSON instance");
    GenSpec spec;
    double threshold = 60.0;
    std::string gen_out = "instance.json";
    gen_cmd->add_option("--customers", spec.n_customers, "Customer count");
    gen_cmd->add_option("--depots", spec.n_depots, "Depot count");
    gen_cmd->add_option("--area", spec.area_km, "Square side in km");
    gen_cmd->add_option("--demand-min", spec.demand_min, "Min demand (boxes)");
    gen_cmd->add_option("--demand-max", spec.demand_max, "Max demand (boxes)");
    gen_cmd->add_option("--service-min", spec.service_min, "Min service time (min)");
    gen_cmd->add_option("--service-max", spec.service_max, "Max service time (min)");
    gen_cmd->add_option("--fleet-min", spec.fleet_min, "Min per-depot fleet");
    gen_cmd->add_option("--fleet-max", spec.fleet_max, "Max per-depot fleet");
    gen_cmd->add_option("--tw-start-min", spec.tw_start_min, "Earliest window start (min)");
    gen_cmd->add_option("--tw-start-max", spec.tw_start_max, "Latest window start (min)");
    gen_cmd->add_option("--tw-width-min", spec.tw_width_min, "Min window width (min)");
    gen_cmd->add_option("--tw-width-max", spec.tw_width_max, "Max window width (min)");
    gen_cmd->add_option("--gen-seed", spec.seed, "Generation seed");
    gen_cmd->add_option("--threshold", threshold, "Highway threshold (km)");
    gen_cmd->add_option("--out", gen_out, "Output instance path");
    gen_cmd->add_option("--config", opt.config_path, "Key-value defaults file");
    gen_cmd->add_option("--set", opt.overrides, "Override a config key");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (solve_cmd->parsed()) return cmd_solve(opt, strategy, out_dir);
        if (compare_cmd->parsed())
            return cmd_compare(opt, strategies, replications, compare_out, jobs);
        if (sweep_cmd->parsed())
            return cmd_sweep(opt, parameter, values, sweep_strategies, sweep_reps, sweep_out,
                             jobs);
        if (oracle_cmd->parsed()) return cmd_oracle(opt, oracle_strategy, oracle_out);
        if (gen_cmd->parsed()) return cmd_generate(spec, threshold, gen_out, opt);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    }
    return kExitUsage;
}
