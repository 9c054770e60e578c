#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "coldroute/instance.hpp"

using namespace coldroute;

namespace {

const std::string kBin = COLDROUTE_CLI_PATH;

int run(const std::string& args) {
    const std::string cmd = kBin + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fixture_path() {
    static std::string path = [] {
        GenSpec spec;
        spec.n_customers = 6;
        spec.n_depots = 2;
        spec.area_km = 15.0;
        spec.demand_min = 10;
        spec.demand_max = 40;
        spec.fleet_min = 4;
        spec.fleet_max = 4;
        spec.seed = 3;
        Instance inst = generate_instance(spec);
        const std::string p = "/tmp/coldroute_cli_fixture.json";
        save_instance(inst, p);
        return p;
    }();
    return path;
}

std::string fast = " --t0 50 --t-final 1 --cooling 0.9 ";

}  // namespace

TEST_CASE("solve writes artifacts and exits zero") {
    const int code = run("solve --instance " + fixture_path() +
                         " --strategy boc --seed 1 --out /tmp/coldroute_run1" + fast);
    CHECK(code == 0);
    const std::string json = slurp("/tmp/coldroute_run1/solution.json");
    CHECK(json.find("\"strategy\": \"boc\"") != std::string::npos);
    const std::string csv = slurp("/tmp/coldroute_run1/costs.csv");
    CHECK(csv.rfind("strategy,seed,fix,transport", 0) == 0);
}

TEST_CASE("identical flags give byte-identical solutions") {
    REQUIRE(run("solve --instance " + fixture_path() +
                " --strategy cc --seed 7 --out /tmp/coldroute_runA" + fast) == 0);
    REQUIRE(run("solve --instance " + fixture_path() +
                " --strategy cc --seed 7 --out /tmp/coldroute_runB" + fast) == 0);
    CHECK(slurp("/tmp/coldroute_runA/solution.json") ==
          slurp("/tmp/coldroute_runB/solution.json"));
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("solve --instance " + fixture_path() + " --strategy warp") == 2);
    CHECK(run("frobnicate") == 2);
    CHECK(run("sweep --instance " + fixture_path() + " --parameter mass --values 1") == 2);
}

TEST_CASE("missing instance file exits with code 1") {
    CHECK(run("solve --instance /tmp/no_such_instance.json --strategy cc") == 1);
}

TEST_CASE("compare emits the summary csv with the frozen header") {
    const int code = run("compare --instance " + fixture_path() +
                         " --strategies cc boc --reps 2 --seed 1 --jobs 2 "
                         "--out /tmp/coldroute_compare.csv" + fast);
    CHECK(code == 0);
    const std::string csv = slurp("/tmp/coldroute_compare.csv");
    CHECK(csv.rfind("strategy,replications,total_mean,total_std,std_avg,mre,fix,transport,"
                    "co2,cooling,good_loss,penalty,rebalance,savings_vs_standalone,lr,flr,"
                    "cs,ear,tr",
                    0) == 0);
    // 2 strategies -> header + 2 rows.
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("sweep produces one row per cell") {
    const int code = run("sweep --instance " + fixture_path() +
                         " --parameter lambda --values 0.5 1.5 --strategies cc boc --reps 1 "
                         "--out /tmp/coldroute_sweep.csv" + fast);
    CHECK(code == 0);
    const std::string csv = slurp("/tmp/coldroute_sweep.csv");
    CHECK(csv.rfind("parameter,value,strategy,seed,fix,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);  // header + 2x2 cells
}

TEST_CASE("oracle subcommand runs on tiny instances") {
    GenSpec spec;
    spec.n_customers = 3;
    spec.n_depots = 2;
    spec.area_km = 10.0;
    spec.fleet_min = 3;
    spec.fleet_max = 3;
    spec.seed = 5;
    Instance inst = generate_instance(spec);
    save_instance(inst, "/tmp/coldroute_tiny.json");
    CHECK(run("oracle --instance /tmp/coldroute_tiny.json --strategy cc") == 0);
    CHECK(run("oracle --instance " + fixture_path() + " --strategy cc") == 1);  // above cap
}

TEST_CASE("generate round-trips through the loader") {
    const int code = run("generate --customers 10 --depots 2 --area 20 --gen-seed 4 "
                         "--out /tmp/coldroute_gen.json");
    CHECK(code == 0);
    const Instance inst = load_instance("/tmp/coldroute_gen.json", InstanceFormat::NativeJson);
    CHECK(inst.customers.size() == 10);
    CHECK(inst.depots.size() == 2);
}
