#include "coldroute/instance.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "coldroute/errors.hpp"
#include "coldroute/rng.hpp"

namespace coldroute {

namespace {

std::string field(const std::string& kind, int id, const std::string& name) {
    return kind + " " + std::to_string(id) + ": " + name;
}

std::vector<std::pair<int, int>> highway_edges(const std::vector<Depot>& depots,
                                               double threshold_km) {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < depots.size(); ++i) {
        for (std::size_t j = i + 1; j < depots.size(); ++j) {
            const double d = euclid(depots[i].x, depots[i].y, depots[j].x, depots[j].y);
            if (d < threshold_km) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    }
    return edges;
}

bool highway_connected(std::size_t n_depots, const std::vector<std::pair<int, int>>& edges) {
    if (n_depots <= 1) return true;
    std::vector<std::vector<int>> adj(n_depots);
    for (const auto& [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<char> seen(n_depots, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::size_t visited = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : adj[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++visited;
                stack.push_back(w);
            }
        }
    }
    return visited == n_depots;
}

SpeedSchedule table_schedule() {
    SpeedSchedule s;
    const double speeds[] = {10, 15, 15, 30, 30, 15, 15, 10};
    double t = 0;
    for (double v : speeds) {
        s.periods.push_back({t, t + 60.0, v});
        t += 60.0;
    }
    return s;
}

}  // namespace

Defaults Defaults::table_defaults() {
    Defaults d;
    d.costs.fix_cost = 500.0;
    d.costs.travel_unit = 10.0;
    d.costs.rebalance_discount = 0.4;
    d.costs.cooling_unit = 4.5 / 60.0;
    d.costs.early_penalty = 5.0 / 60.0;
    d.costs.late_penalty = 10.0 / 60.0;
    d.costs.good_loss = 0.005;
    d.costs.carbon_emission = 2.61;
    d.costs.carbon_price = 0.1;
    d.vehicle.capacity = 80;
    d.vehicle.fuel_empty = 0.165;
    d.vehicle.fuel_full = 0.377;
    d.schedule = table_schedule();
    return d;
}

void Defaults::apply_override(const std::string& key, const std::string& value) {
    auto as_double = [&]() {
        try {
            return std::stod(value);
        } catch (const std::exception&) {
            throw ParseError("config key '" + key + "': bad numeric value '" + value + "'");
        }
    };
    if (key == "fix_cost") costs.fix_cost = as_double();
    else if (key == "travel_unit") costs.travel_unit = as_double();
    else if (key == "rebalance_discount") costs.rebalance_discount = as_double();
    else if (key == "cooling_per_min") costs.cooling_unit = as_double();
    else if (key == "early_penalty_per_min") costs.early_penalty = as_double();
    else if (key == "late_penalty_per_min") costs.late_penalty = as_double();
    else if (key == "good_loss_per_unit_min") costs.good_loss = as_double();
    else if (key == "carbon_emission") costs.carbon_emission = as_double();
    else if (key == "carbon_price") costs.carbon_price = as_double();
    else if (key == "fuel_empty") vehicle.fuel_empty = as_double();
    else if (key == "fuel_full") vehicle.fuel_full = as_double();
    else if (key == "capacity") { capacity = static_cast<int>(as_double()); vehicle.capacity = capacity; }
    else if (key == "highway_threshold_km") highway_threshold_km = as_double();
    else if (key == "ideal_earliest_offset_min") ideal_earliest_offset_min = as_double();
    else if (key == "t_initial") t_initial = as_double();
    else if (key == "t_final") t_final = as_double();
    else if (key == "cooling_rate") cooling_rate = as_double();
    else if (key == "k_max") k_max = static_cast<int>(as_double());
    else if (key == "pfih_eta") pfih_eta = as_double();
    else if (key == "pfih_theta") pfih_theta = as_double();
    else if (key == "pfih_xi") pfih_xi = as_double();
    else if (key == "period_minutes" || key == "speeds") {
        // Handled jointly: "speeds" is a comma list, "period_minutes" its step.
        if (key == "speeds") {
            SpeedSchedule s;
            double t = 0;
            std::stringstream ss(value);
            std::string tok;
            const double step = schedule.periods.empty()
                                    ? 60.0
                                    : schedule.periods.front().end_min - schedule.periods.front().start_min;
            while (std::getline(ss, tok, ',')) {
                s.periods.push_back({t, t + step, std::stod(tok)});
                t += step;
            }
            if (s.periods.empty()) throw ParseError("config key 'speeds': empty list");
            schedule = s;
        } else {
            const double step = as_double();
            if (step <= 0) throw ParseError("config key 'period_minutes': must be positive");
            double t = 0;
            for (auto& p : schedule.periods) {
                p.start_min = t;
                p.end_min = t + step;
                t += step;
            }
        }
    } else {
        throw ParseError("unknown config key '" + key + "'");
    }
}

Defaults Defaults::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    Defaults d = table_defaults();
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::stringstream ss(line);
        std::string key, value;
        if (!(ss >> key)) continue;
        if (!(ss >> value)) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": key '" + key +
                             "' has no value");
        }
        d.apply_override(key, value);
    }
    return d;
}

void validate_instance(const Instance& instance) {
    if (instance.depots.empty()) throw ValidationError("instance: no depots");
    if (instance.customers.empty()) throw ValidationError("instance: no customers");
    if (instance.vehicle.capacity <= 0) throw ValidationError("vehicle: capacity must be positive");
    if (instance.vehicle.fuel_empty <= 0 || instance.vehicle.fuel_empty > instance.vehicle.fuel_full)
        throw ValidationError("vehicle: need 0 < fuel_empty <= fuel_full");

    const auto& c = instance.costs;
    const double coeffs[] = {c.fix_cost,     c.travel_unit,     c.cooling_unit,
                             c.early_penalty, c.late_penalty,   c.good_loss,
                             c.carbon_emission, c.carbon_price};
    for (double v : coeffs)
        if (v < 0) throw ValidationError("costs: coefficients must be nonnegative");
    if (c.rebalance_discount < 0 || c.rebalance_discount > 1)
        throw ValidationError("costs: rebalance_discount must be in [0,1]");

    const auto& periods = instance.schedule.periods;
    if (periods.empty()) throw ValidationError("schedule: no periods");
    if (periods.front().start_min != 0)
        throw ValidationError("schedule: first period must start at minute 0");
    for (std::size_t i = 0; i < periods.size(); ++i) {
        const auto& p = periods[i];
        if (p.start_min >= p.end_min)
            throw ValidationError("schedule: period " + std::to_string(i) + ": start >= end");
        if (p.speed_kmh <= 0)
            throw ValidationError("schedule: period " + std::to_string(i) + ": speed must be positive");
        if (i > 0 && periods[i - 1].end_min != p.start_min)
            throw ValidationError("schedule: period " + std::to_string(i) + ": gap before start");
    }

    // Routes address nodes positionally, so ids double as indices.
    for (std::size_t i = 0; i < instance.depots.size(); ++i) {
        const auto& d = instance.depots[i];
        if (d.id != static_cast<int>(i))
            throw ValidationError(field("depot", d.id, "ids must be dense 0..n-1 in file order"));
        if (d.fleet_size < 0) throw ValidationError(field("depot", d.id, "fleet_size must be >= 0"));
    }
    for (std::size_t i = 0; i < instance.customers.size(); ++i) {
        const auto& cu = instance.customers[i];
        if (cu.id != static_cast<int>(i))
            throw ValidationError(field("customer", cu.id, "ids must be dense 0..n-1 in file order"));
        if (cu.demand <= 0) throw ValidationError(field("customer", cu.id, "demand must be positive"));
        if (cu.demand > instance.vehicle.capacity)
            throw ValidationError(field("customer", cu.id, "demand exceeds vehicle capacity"));
        if (cu.service_time < 0)
            throw ValidationError(field("customer", cu.id, "service_time must be >= 0"));
        if (cu.ideal_earliest < 0)
            throw ValidationError(field("customer", cu.id, "ideal_earliest must be >= 0"));
        if (cu.ideal_earliest > cu.earliest)
            throw ValidationError(field("customer", cu.id, "ideal_earliest > earliest"));
        if (cu.earliest > cu.latest)
            throw ValidationError(field("customer", cu.id, "earliest > latest"));
        if (cu.bound_depot >= static_cast<int>(instance.depots.size()))
            throw ValidationError(field("customer", cu.id, "bound_depot out of range"));
    }

    if (!highway_connected(instance.depots.size(), instance.highway.edges))
        throw ValidationError("highway: depot graph disconnected under threshold " +
                              std::to_string(instance.highway.threshold_km) + " km");
}

namespace {

Instance load_native_json(const std::string& path, const Defaults& defaults) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }

    Instance inst;
    inst.costs = defaults.costs;
    inst.vehicle = defaults.vehicle;
    inst.schedule = defaults.schedule;
    inst.highway.threshold_km = defaults.highway_threshold_km;
    try {
        for (const auto& jd : j.at("depots")) {
            Depot d;
            d.id = jd.at("id").get<int>();
            d.x = jd.at("x").get<double>();
            d.y = jd.at("y").get<double>();
            d.fleet_size = jd.at("fleet_size").get<int>();
            inst.depots.push_back(d);
        }
        for (const auto& jc : j.at("customers")) {
            Customer c;
            c.id = jc.at("id").get<int>();
            c.x = jc.at("x").get<double>();
            c.y = jc.at("y").get<double>();
            c.demand = jc.at("demand").get<int>();
            c.earliest = jc.at("earliest").get<double>();
            c.latest = jc.at("latest").get<double>();
            c.service_time = jc.at("service_time").get<double>();
            c.ideal_earliest = jc.contains("ideal_earliest")
                                   ? jc.at("ideal_earliest").get<double>()
                                   : std::max(0.0, c.earliest - defaults.ideal_earliest_offset_min);
            if (jc.contains("bound_depot")) c.bound_depot = jc.at("bound_depot").get<int>();
            inst.customers.push_back(c);
        }
        if (j.contains("vehicle")) {
            const auto& jv = j.at("vehicle");
            inst.vehicle.capacity = jv.at("capacity").get<int>();
            if (jv.contains("fuel_empty")) inst.vehicle.fuel_empty = jv.at("fuel_empty").get<double>();
            if (jv.contains("fuel_full")) inst.vehicle.fuel_full = jv.at("fuel_full").get<double>();
        }
        if (j.contains("schedule")) {
            SpeedSchedule s;
            for (const auto& jp : j.at("schedule").at("periods"))
                s.periods.push_back({jp.at("start").get<double>(), jp.at("end").get<double>(),
                                     jp.at("speed").get<double>()});
            inst.schedule = s;
        }
        if (j.contains("costs")) {
            const auto& jc = j.at("costs");
            auto pick = [&](const char* key, double& slot) {
                if (jc.contains(key)) slot = jc.at(key).get<double>();
            };
            pick("fix_cost", inst.costs.fix_cost);
            pick("travel_unit", inst.costs.travel_unit);
            pick("rebalance_discount", inst.costs.rebalance_discount);
            pick("cooling_unit", inst.costs.cooling_unit);
            pick("early_penalty", inst.costs.early_penalty);
            pick("late_penalty", inst.costs.late_penalty);
            pick("good_loss", inst.costs.good_loss);
            pick("carbon_emission", inst.costs.carbon_emission);
            pick("carbon_price", inst.costs.carbon_price);
        }
        if (j.contains("highway_threshold_km"))
            inst.highway.threshold_km = j.at("highway_threshold_km").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    inst.highway.edges = highway_edges(inst.depots, inst.highway.threshold_km);
    validate_instance(inst);
    return inst;
}

// Cordeau-format MDVRPTW file: header "type m n t", t lines of "D Q", n
// customer lines "id x y service demand freq nvc vc... et lt", t depot lines
// in the same shape. Missing cold-chain fields come from the defaults.
Instance load_cordeau(const std::string& path, const Defaults& defaults) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file: " + path);

    int type = 0, vehicles_per_depot = 0, n_customers = 0, n_depots = 0;
    if (!(in >> type >> vehicles_per_depot >> n_customers >> n_depots))
        throw ParseError(path + ": bad header line");
    if (n_customers <= 0 || n_depots <= 0)
        throw ParseError(path + ": nonpositive customer or depot count in header");

    std::vector<double> max_load(n_depots);
    for (int i = 0; i < n_depots; ++i) {
        double max_duration = 0;
        if (!(in >> max_duration >> max_load[i]))
            throw ParseError(path + ": bad depot capacity line " + std::to_string(i));
    }

    Instance inst;
    inst.costs = defaults.costs;
    inst.vehicle = defaults.vehicle;
    inst.vehicle.capacity = static_cast<int>(max_load[0] > 0 ? max_load[0] : defaults.capacity);
    inst.schedule = defaults.schedule;
    inst.highway.threshold_km = defaults.highway_threshold_km;

    std::string line;
    std::getline(in, line);  // consume end of capacity section
    auto read_node = [&](bool depot_section, int index) {
        while (std::getline(in, line)) {
            std::stringstream ss(line);
            std::vector<double> tok;
            double v;
            while (ss >> v) tok.push_back(v);
            if (tok.empty()) continue;
            if (tok.size() < 5)
                throw ParseError(path + ": truncated node line '" + line + "'");
            const int id = static_cast<int>(tok[0]);
            const double x = tok[1], y = tok[2], service = tok[3];
            const double demand = tok[4];
            // Visit-combination list sits between demand and the window; the
            // window is always the last two columns in the TW variants.
            const double et = tok.size() >= 7 ? tok[tok.size() - 2] : 0.0;
            const double lt = tok.size() >= 7 ? tok[tok.size() - 1] : 0.0;
            if (depot_section) {
                Depot d;
                d.id = index;
                d.x = x;
                d.y = y;
                d.fleet_size = vehicles_per_depot;
                inst.depots.push_back(d);
            } else {
                Customer c;
                c.id = id;
                c.x = x;
                c.y = y;
                c.demand = static_cast<int>(demand);
                c.service_time = service;
                c.earliest = et;
                c.latest = lt;
                c.ideal_earliest = std::max(0.0, et - defaults.ideal_earliest_offset_min);
                inst.customers.push_back(c);
            }
            return;
        }
        throw ParseError(path + ": unexpected end of file in node section");
    };
    for (int i = 0; i < n_customers; ++i) read_node(false, i);
    for (int i = 0; i < n_depots; ++i) read_node(true, i);

    // Renumber customers densely from 0 to keep ids unique and index-aligned.
    for (std::size_t i = 0; i < inst.customers.size(); ++i)
        inst.customers[i].id = static_cast<int>(i);

    inst.highway.edges = highway_edges(inst.depots, inst.highway.threshold_km);
    validate_instance(inst);
    return inst;
}

}  // namespace

Instance load_instance(const std::string& path, InstanceFormat format, const Defaults& defaults) {
    switch (format) {
        case InstanceFormat::NativeJson:
            return load_native_json(path, defaults);
        case InstanceFormat::Cordeau:
            return load_cordeau(path, defaults);
    }
    throw ParseError("unknown instance format");
}

void save_instance(const Instance& inst, const std::string& path) {
    nlohmann::json j;
    for (const auto& d : inst.depots)
        j["depots"].push_back({{"id", d.id}, {"x", d.x}, {"y", d.y}, {"fleet_size", d.fleet_size}});
    for (const auto& c : inst.customers) {
        nlohmann::json jc = {{"id", c.id},
                             {"x", c.x},
                             {"y", c.y},
                             {"demand", c.demand},
                             {"earliest", c.earliest},
                             {"latest", c.latest},
                             {"ideal_earliest", c.ideal_earliest},
                             {"service_time", c.service_time}};
        if (c.bound_depot >= 0) jc["bound_depot"] = c.bound_depot;
        j["customers"].push_back(jc);
    }
    j["vehicle"] = {{"capacity", inst.vehicle.capacity},
                    {"fuel_empty", inst.vehicle.fuel_empty},
                    {"fuel_full", inst.vehicle.fuel_full}};
    for (const auto& p : inst.schedule.periods)
        j["schedule"]["periods"].push_back(
            {{"start", p.start_min}, {"end", p.end_min}, {"speed", p.speed_kmh}});
    j["costs"] = {{"fix_cost", inst.costs.fix_cost},
                  {"travel_unit", inst.costs.travel_unit},
                  {"rebalance_discount", inst.costs.rebalance_discount},
                  {"cooling_unit", inst.costs.cooling_unit},
                  {"early_penalty", inst.costs.early_penalty},
                  {"late_penalty", inst.costs.late_penalty},
                  {"good_loss", inst.costs.good_loss},
                  {"carbon_emission", inst.costs.carbon_emission},
                  {"carbon_price", inst.costs.carbon_price}};
    j["highway_threshold_km"] = inst.highway.threshold_km;

    std::ofstream out(path);
    if (!out) throw ParseError("cannot write instance file: " + path);
    out << j.dump(2) << "\n";
}

Instance generate_instance(const GenSpec& spec, const Defaults& defaults) {
    if (spec.n_customers < 1 || spec.n_depots < 1)
        throw ValidationError("generate: need at least one customer and one depot");
    if (spec.demand_min > spec.demand_max || spec.service_min > spec.service_max ||
        spec.fleet_min > spec.fleet_max)
        throw ValidationError("generate: empty parameter range");

    Rng rng(spec.seed);
    Instance inst;
    inst.costs = defaults.costs;
    inst.vehicle = defaults.vehicle;
    inst.schedule = defaults.schedule;
    inst.highway.threshold_km = defaults.highway_threshold_km;

    for (int i = 0; i < spec.n_depots; ++i) {
        Depot d;
        d.id = i;
        d.x = rng.uniform(0, spec.area_km);
        d.y = rng.uniform(0, spec.area_km);
        d.fleet_size = static_cast<int>(rng.uniform_int(spec.fleet_min, spec.fleet_max));
        inst.depots.push_back(d);
    }
    for (int i = 0; i < spec.n_customers; ++i) {
        Customer c;
        c.id = i;
        c.x = rng.uniform(0, spec.area_km);
        c.y = rng.uniform(0, spec.area_km);
        c.demand = static_cast<int>(rng.uniform_int(spec.demand_min, spec.demand_max));
        c.service_time = rng.uniform(spec.service_min, spec.service_max);
        c.earliest = rng.uniform(spec.tw_start_min, spec.tw_start_max);
        c.latest = c.earliest + rng.uniform(spec.tw_width_min, spec.tw_width_max);
        c.ideal_earliest = std::max(0.0, c.earliest - defaults.ideal_earliest_offset_min);
        inst.customers.push_back(c);
    }
    inst.highway.edges = highway_edges(inst.depots, inst.highway.threshold_km);
    validate_instance(inst);
    return inst;
}

Instance split_standalone_demand(const Instance& instance, std::uint64_t seed) {
    if (instance.depots.size() < 2)
        throw ValidationError("split_standalone_demand: needs at least 2 depots");

    Rng rng(seed);
    Instance out = instance;
    out.customers.clear();
    int next_id = 0;
    for (const auto& c : instance.customers) {
        // Two nearest depots; ties resolved toward the lower index.
        int first = -1, second = -1;
        double best1 = std::numeric_limits<double>::infinity();
        double best2 = std::numeric_limits<double>::infinity();
        for (std::size_t d = 0; d < instance.depots.size(); ++d) {
            const double dist = euclid(c.x, c.y, instance.depots[d].x, instance.depots[d].y);
            if (dist < best1) {
                best2 = best1;
                second = first;
                best1 = dist;
                first = static_cast<int>(d);
            } else if (dist < best2) {
                best2 = dist;
                second = static_cast<int>(d);
            }
        }
        const int part1 = static_cast<int>(rng.uniform_int(0, c.demand));
        const int part2 = c.demand - part1;
        for (const auto& [depot, amount] : {std::pair{first, part1}, std::pair{second, part2}}) {
            if (amount == 0) continue;
            Customer order = c;
            order.id = next_id++;
            order.demand = amount;
            order.bound_depot = depot;
            out.customers.push_back(order);
        }
    }
    validate_instance(out);
    return out;
}

}  // namespace coldroute
