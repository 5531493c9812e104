#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace resa {

/// Historical exposure used to split a forced outage rate into normal- and
/// adverse-condition rates.
struct AdverseStats {
    double hours_total = 0.0;   // H
    double hours_adverse = 0.0; // H^A
    double adverse_share = 0.0; // F^A, share of outages during adverse hours
};

struct Bus {
    std::string id;
    std::vector<double> demand; // MW per period
};

struct Line {
    std::string id;
    std::string from_bus;
    std::string to_bus;
    double susceptance = 0.0;      // per unit
    double rating_normal = 0.0;    // MW
    double rating_emergency = 0.0; // MW, short-duration limit >= rating_normal
    double for_rate = 0.0;         // outages/hour
    std::optional<AdverseStats> adverse_stats;
};

struct CostSegment {
    double slope = 0.0;     // $/MWh
    double intercept = 0.0; // $/h
};

struct Generator {
    std::string id;
    std::string bus;
    double p_min = 0.0;
    double p_max = 0.0;
    double ramp_hourly = 0.0; // MW per hour
    double ramp_10min = 0.0;  // MW per 10 minutes
    int min_up = 1;           // hours
    int min_down = 1;         // hours
    std::vector<CostSegment> cost_segments; // convex lower envelope
    double no_load_cost = 0.0;
    double startup_cost = 0.0;
    double shutdown_cost = 0.0;
    bool fast_start = false;
    double for_rate = 0.0;      // outages/hour
    double sync_fail_rate = 0.0; // probability a start-up fails to synchronize
    std::optional<AdverseStats> adverse_stats;
    bool initial_on = false;     // status before the first period
    double initial_power = 0.0;  // MW before the first period
};

struct VresUnit {
    std::string id;
    std::string bus;
    bool dispatchable = true;      // curtailable down to zero when true
    std::vector<double> forecast;  // MW available per period
    double for_rate = 0.0;         // per-turbine rate; zero means no outage model
    double turbine_rating = 0.0;   // MW
    int turbine_count = 0;
};

/// Immutable network + fleet + time-series snapshot. Construction validates;
/// afterwards the object is safe to share across concurrent readers.
class PowerSystem {
public:
    std::vector<Bus> buses;
    std::vector<Line> lines;
    std::vector<Generator> generators;
    std::vector<VresUnit> vres_units;
    std::string reference_bus;
    std::vector<std::string> horizon;

    /// Checks all structural invariants and builds the index maps.
    /// Throws DataError naming the offending record.
    void validate();

    int periods() const { return static_cast<int>(horizon.size()); }

    int bus_index(const std::string& id) const;
    int line_index(const std::string& id) const;
    int generator_index(const std::string& id) const;
    int vres_index(const std::string& id) const;
    int reference_index() const { return ref_index_; }

    bool has_vres(const std::string& id) const { return vres_idx_.count(id) > 0; }
    bool has_generator(const std::string& id) const { return gen_idx_.count(id) > 0; }
    bool has_line(const std::string& id) const { return line_idx_.count(id) > 0; }

    double total_demand(int t) const;

private:
    std::unordered_map<std::string, int> bus_idx_;
    std::unordered_map<std::string, int> line_idx_;
    std::unordered_map<std::string, int> gen_idx_;
    std::unordered_map<std::string, int> vres_idx_;
    int ref_index_ = -1;
};

struct LoadOptions {
    double line_rating_factor = 1.0;      // scales normal and emergency ratings
    double wind_availability_factor = 1.0; // scales VRES forecasts
    // RTS-GMLC conveniences; JSON fixtures carry these fields explicitly.
    bool default_sync_rates = false;  // fill sync_fail_rate from unit-group table
    bool default_adverse = false;     // fill adverse_stats from fuel-type table
    double wind_turbine_for = 0.0;    // per-turbine rate for wind COPT scenarios
};

/// Loads either the compact JSON fixture format (a *.json file) or an
/// RTS-GMLC-style CSV directory, applies the scaling options and validates.
PowerSystem load_system(const std::filesystem::path& path, const LoadOptions& options = {});

/// Compact JSON fixture parser; exposed for in-memory fixtures in tests.
PowerSystem load_system_json_text(const std::string& json_text, const LoadOptions& options = {});

} // namespace resa
