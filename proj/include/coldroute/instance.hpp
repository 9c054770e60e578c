#ifndef COLDROUTE_INSTANCE_HPP
#define COLDROUTE_INSTANCE_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace coldroute {

inline double euclid(double ax, double ay, double bx, double by) {
    const double dx = ax - bx;
    const double dy = ay - by;
    return std::sqrt(dx * dx + dy * dy);
}

// One entry of the piecewise-constant speed profile. Times are minutes from
// the start of the planning horizon, speed is km/h.
struct TimePeriod {
    double start_min = 0.0;
    double end_min = 0.0;
    double speed_kmh = 0.0;
};

// Contiguous, gap-free sequence of periods starting at minute 0.
struct SpeedSchedule {
    std::vector<TimePeriod> periods;
};

struct Depot {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
    int fleet_size = 0;
};

struct Customer {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
    int demand = 0;             // boxes
    double earliest = 0.0;      // et, minutes
    double latest = 0.0;        // lt, minutes
    double ideal_earliest = 0;  // et*, minutes
    double service_time = 0.0;  // TT, minutes
    int bound_depot = -1;       // stand-alone order binding; -1 = unbound
};

struct VehicleSpec {
    int capacity = 0;          // Q, boxes
    double fuel_empty = 0.0;   // P0, L/km when empty
    double fuel_full = 0.0;    // P*, L/km when fully loaded
};

// All monetary coefficients. Time-proportional ones are stored per minute.
struct CostParams {
    double fix_cost = 0.0;            // f, $ per vehicle used
    double travel_unit = 0.0;         // c0, $/km
    double rebalance_discount = 0.0;  // alpha in [0,1]
    double cooling_unit = 0.0;        // c1, $/min
    double early_penalty = 0.0;       // c2, $/min
    double late_penalty = 0.0;        // c3, $/min
    double good_loss = 0.0;           // beta, $/(box*min)
    double carbon_emission = 0.0;     // lambda, kgCO2/L
    double carbon_price = 0.0;        // e, $/kgCO2
};

// Depot pairs closer than threshold_km are joined by a highway edge; the
// resulting graph must connect all depots.
struct HighwayNetwork {
    double threshold_km = 0.0;
    std::vector<std::pair<int, int>> edges;  // i < j, depot indices
};

struct Instance {
    std::vector<Depot> depots;
    std::vector<Customer> customers;
    VehicleSpec vehicle;
    SpeedSchedule schedule;
    CostParams costs;
    HighwayNetwork highway;

    double depot_customer_dist(int depot, int customer) const {
        return euclid(depots[depot].x, depots[depot].y,
                      customers[customer].x, customers[customer].y);
    }
    double customer_dist(int a, int b) const {
        return euclid(customers[a].x, customers[a].y, customers[b].x, customers[b].y);
    }
    double depot_dist(int a, int b) const {
        return euclid(depots[a].x, depots[a].y, depots[b].x, depots[b].y);
    }
    int total_fleet() const {
        int n = 0;
        for (const auto& d : depots) n += d.fleet_size;
        return n;
    }
};

// Fallback values for fields a Cordeau benchmark file does not carry, and the
// built-in cost/schedule defaults. Loadable from a key-value config file.
struct Defaults {
    CostParams costs;
    VehicleSpec vehicle;
    SpeedSchedule schedule;
    double highway_threshold_km = 60.0;
    double ideal_earliest_offset_min = 60.0;
    int capacity = 80;
    // SAVNS knobs kept alongside so one config file drives the whole run.
    double t_initial = 5000.0;
    double t_final = 1.0;
    double cooling_rate = 0.98;
    int k_max = 8;
    double pfih_eta = 0.7;
    double pfih_theta = 0.2;
    double pfih_xi = 0.1;

    static Defaults table_defaults();
    static Defaults from_file(const std::string& path);
    void apply_override(const std::string& key, const std::string& value);
};

enum class InstanceFormat { NativeJson, Cordeau };

// Throws ValidationError naming the offending field if any invariant fails.
void validate_instance(const Instance& instance);

Instance load_instance(const std::string& path, InstanceFormat format,
                       const Defaults& defaults = Defaults::table_defaults());

void save_instance(const Instance& instance, const std::string& path);

struct GenSpec {
    int n_customers = 10;
    int n_depots = 2;
    double area_km = 20.0;  // square side
    int demand_min = 1;
    int demand_max = 25;
    double service_min = 10.0;
    double service_max = 20.0;
    int fleet_min = 6;
    int fleet_max = 10;
    double tw_start_min = 60.0;
    double tw_start_max = 300.0;
    double tw_width_min = 60.0;
    double tw_width_max = 180.0;
    std::uint64_t seed = 1;
};

Instance generate_instance(const GenSpec& spec,
                           const Defaults& defaults = Defaults::table_defaults());

// Replaces every customer by up to two co-located orders bound to its two
// nearest depots, splitting the demand uniformly at random. Zero-demand halves
// are dropped so the returned instance keeps the demand > 0 invariant.
Instance split_standalone_demand(const Instance& instance, std::uint64_t seed);

}  // namespace coldroute

#endif
