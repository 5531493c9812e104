#include "resa/system.hpp"

#include "resa/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace resa {

using nlohmann::json;

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw DataError(message);
}

void check_adverse_stats(const AdverseStats& a, const std::string& owner) {
    require(a.hours_adverse > 0.0 && a.hours_adverse < a.hours_total,
            owner + ": adverse_stats requires 0 < hours_adverse < hours_total");
    require(a.adverse_share >= 0.0 && a.adverse_share <= 1.0,
            owner + ": adverse_share must lie in [0,1]");
}

// Connectivity over the full line set; outage-specific islanding is the
// sensitivity module's business.
bool base_graph_connected(const PowerSystem& sys) {
    if (sys.buses.empty()) return false;
    std::vector<std::vector<int>> adj(sys.buses.size());
    for (const auto& line : sys.lines) {
        int a = sys.bus_index(line.from_bus);
        int b = sys.bus_index(line.to_bus);
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<bool> seen(sys.buses.size(), false);
    std::vector<int> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        int at = stack.back();
        stack.pop_back();
        for (int next : adj[at]) {
            if (!seen[next]) {
                seen[next] = true;
                ++reached;
                stack.push_back(next);
            }
        }
    }
    return reached == sys.buses.size();
}

} // namespace

void PowerSystem::validate() {
    bus_idx_.clear();
    line_idx_.clear();
    gen_idx_.clear();
    vres_idx_.clear();

    require(!horizon.empty(), "horizon must contain at least one period");
    require(!buses.empty(), "system has no buses");

    const auto T = horizon.size();

    for (std::size_t i = 0; i < buses.size(); ++i) {
        const auto& bus = buses[i];
        require(!bus.id.empty(), "bus with empty id");
        require(bus_idx_.emplace(bus.id, static_cast<int>(i)).second,
                "duplicate bus id '" + bus.id + "'");
        require(bus.demand.size() == T,
                "bus '" + bus.id + "': demand series length " +
                    std::to_string(bus.demand.size()) + " != horizon length " +
                    std::to_string(T));
    }

    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto& line = lines[i];
        require(line_idx_.emplace(line.id, static_cast<int>(i)).second,
                "duplicate line id '" + line.id + "'");
        require(bus_idx_.count(line.from_bus) > 0,
                "line '" + line.id + "': unknown from_bus '" + line.from_bus + "'");
        require(bus_idx_.count(line.to_bus) > 0,
                "line '" + line.id + "': unknown to_bus '" + line.to_bus + "'");
        require(line.from_bus != line.to_bus,
                "line '" + line.id + "': from_bus equals to_bus");
        require(line.susceptance > 0.0,
                "line '" + line.id + "': susceptance must be positive");
        require(line.rating_normal >= 0.0 &&
                    line.rating_emergency >= line.rating_normal,
                "line '" + line.id + "': requires rating_emergency >= rating_normal >= 0");
        require(line.for_rate >= 0.0, "line '" + line.id + "': negative for_rate");
        if (line.adverse_stats) check_adverse_stats(*line.adverse_stats, "line '" + line.id + "'");
    }

    for (std::size_t i = 0; i < generators.size(); ++i) {
        const auto& gen = generators[i];
        require(gen_idx_.emplace(gen.id, static_cast<int>(i)).second,
                "duplicate generator id '" + gen.id + "'");
        require(bus_idx_.count(gen.bus) > 0,
                "generator '" + gen.id + "': unknown bus '" + gen.bus + "'");
        require(gen.p_min >= 0.0 && gen.p_min <= gen.p_max,
                "generator '" + gen.id + "': requires 0 <= p_min <= p_max");
        require(gen.ramp_hourly >= 0.0 && gen.ramp_10min >= 0.0,
                "generator '" + gen.id + "': negative ramp rate");
        require(gen.min_up >= 0 && gen.min_down >= 0,
                "generator '" + gen.id + "': negative min up/down time");
        require(!gen.cost_segments.empty(),
                "generator '" + gen.id + "': cost_segments must be non-empty");
        for (std::size_t o = 1; o < gen.cost_segments.size(); ++o) {
            require(gen.cost_segments[o].slope >= gen.cost_segments[o - 1].slope,
                    "generator '" + gen.id + "': cost segment slopes must be nondecreasing");
        }
        require(gen.for_rate >= 0.0, "generator '" + gen.id + "': negative for_rate");
        require(gen.sync_fail_rate >= 0.0 && gen.sync_fail_rate <= 1.0,
                "generator '" + gen.id + "': sync_fail_rate must lie in [0,1]");
        if (gen.adverse_stats) check_adverse_stats(*gen.adverse_stats, "generator '" + gen.id + "'");
    }

    for (std::size_t i = 0; i < vres_units.size(); ++i) {
        const auto& unit = vres_units[i];
        require(vres_idx_.emplace(unit.id, static_cast<int>(i)).second,
                "duplicate vres id '" + unit.id + "'");
        require(gen_idx_.count(unit.id) == 0,
                "vres '" + unit.id + "': id collides with a generator");
        require(bus_idx_.count(unit.bus) > 0,
                "vres '" + unit.id + "': unknown bus '" + unit.bus + "'");
        require(unit.forecast.size() == T,
                "vres '" + unit.id + "': forecast length != horizon length");
        for (double v : unit.forecast) {
            require(v >= 0.0, "vres '" + unit.id + "': negative forecast value");
        }
        require(unit.for_rate >= 0.0, "vres '" + unit.id + "': negative for_rate");
        if (unit.for_rate > 0.0) {
            require(unit.turbine_count >= 1 && unit.turbine_rating > 0.0,
                    "vres '" + unit.id + "': turbine data required when for_rate > 0");
        }
    }

    auto ref = bus_idx_.find(reference_bus);
    require(ref != bus_idx_.end(), "reference_bus '" + reference_bus + "' does not exist");
    ref_index_ = ref->second;

    require(buses.size() == 1 || base_graph_connected(*this),
            "base topology is not connected");
}

int PowerSystem::bus_index(const std::string& id) const {
    auto it = bus_idx_.find(id);
    if (it == bus_idx_.end()) throw DataError("unknown bus '" + id + "'");
    return it->second;
}

int PowerSystem::line_index(const std::string& id) const {
    auto it = line_idx_.find(id);
    if (it == line_idx_.end()) throw DataError("unknown line '" + id + "'");
    return it->second;
}

int PowerSystem::generator_index(const std::string& id) const {
    auto it = gen_idx_.find(id);
    if (it == gen_idx_.end()) throw DataError("unknown generator '" + id + "'");
    return it->second;
}

int PowerSystem::vres_index(const std::string& id) const {
    auto it = vres_idx_.find(id);
    if (it == vres_idx_.end()) throw DataError("unknown vres unit '" + id + "'");
    return it->second;
}

double PowerSystem::total_demand(int t) const {
    double total = 0.0;
    for (const auto& bus : buses) total += bus.demand[t];
    return total;
}

namespace {

// ---------------------------------------------------------------------------
// Compact JSON fixture format
// ---------------------------------------------------------------------------

std::optional<AdverseStats> parse_adverse(const json& j, const std::string& owner) {
    if (!j.contains("adverse_stats") || j["adverse_stats"].is_null()) return std::nullopt;
    const auto& a = j["adverse_stats"];
    AdverseStats out;
    try {
        out.hours_total = a.at("hours_total").get<double>();
        out.hours_adverse = a.at("hours_adverse").get<double>();
        out.adverse_share = a.at("adverse_share").get<double>();
    } catch (const json::exception& e) {
        throw DataError(owner + ": malformed adverse_stats (" + e.what() + ")");
    }
    return out;
}

PowerSystem parse_json_system(const json& root, const LoadOptions& options) {
    PowerSystem sys;
    try {
        for (const auto& period : root.at("horizon")) {
            sys.horizon.push_back(period.is_string() ? period.get<std::string>()
                                                     : period.dump());
        }
        sys.reference_bus = root.at("reference_bus").get<std::string>();

        for (const auto& j : root.at("buses")) {
            Bus bus;
            bus.id = j.at("id").get<std::string>();
            bus.demand = j.at("demand").get<std::vector<double>>();
            sys.buses.push_back(std::move(bus));
        }
        for (const auto& j : root.at("lines")) {
            Line line;
            line.id = j.at("id").get<std::string>();
            line.from_bus = j.at("from_bus").get<std::string>();
            line.to_bus = j.at("to_bus").get<std::string>();
            line.susceptance = j.at("susceptance").get<double>();
            line.rating_normal = j.at("rating_normal").get<double>() * options.line_rating_factor;
            line.rating_emergency =
                j.at("rating_emergency").get<double>() * options.line_rating_factor;
            line.for_rate = j.value("for_rate", 0.0);
            line.adverse_stats = parse_adverse(j, "line '" + line.id + "'");
            sys.lines.push_back(std::move(line));
        }
        for (const auto& j : root.at("generators")) {
            Generator gen;
            gen.id = j.at("id").get<std::string>();
            gen.bus = j.at("bus").get<std::string>();
            gen.p_min = j.at("p_min").get<double>();
            gen.p_max = j.at("p_max").get<double>();
            gen.ramp_hourly = j.at("ramp_hourly").get<double>();
            gen.ramp_10min = j.at("ramp_10min").get<double>();
            gen.min_up = j.value("min_up", 1);
            gen.min_down = j.value("min_down", 1);
            for (const auto& seg : j.at("cost_segments")) {
                gen.cost_segments.push_back(
                    {seg.at("slope").get<double>(), seg.value("intercept", 0.0)});
            }
            gen.no_load_cost = j.value("no_load_cost", 0.0);
            gen.startup_cost = j.value("startup_cost", 0.0);
            gen.shutdown_cost = j.value("shutdown_cost", 0.0);
            gen.fast_start = j.value("fast_start", false);
            gen.for_rate = j.value("for_rate", 0.0);
            gen.sync_fail_rate = j.value("sync_fail_rate", 0.0);
            gen.adverse_stats = parse_adverse(j, "generator '" + gen.id + "'");
            gen.initial_on = j.value("initial_on", false);
            gen.initial_power = j.value("initial_power", 0.0);
            sys.generators.push_back(std::move(gen));
        }
        if (root.contains("vres")) {
            for (const auto& j : root.at("vres")) {
                VresUnit unit;
                unit.id = j.at("id").get<std::string>();
                unit.bus = j.at("bus").get<std::string>();
                unit.dispatchable = j.value("dispatchable", true);
                unit.forecast = j.at("forecast").get<std::vector<double>>();
                for (double& v : unit.forecast) v *= options.wind_availability_factor;
                unit.for_rate = j.value("for_rate", 0.0);
                unit.turbine_rating = j.value("turbine_rating", 0.0);
                unit.turbine_count = j.value("turbine_count", 0);
                sys.vres_units.push_back(std::move(unit));
            }
        }
    } catch (const json::exception& e) {
        throw DataError(std::string("fixture schema violation: ") + e.what());
    }
    sys.validate();
    return sys;
}

// ---------------------------------------------------------------------------
// RTS-GMLC-style CSV directory
// ---------------------------------------------------------------------------

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::unordered_map<std::string, int> columns;

    int column(const std::string& name) const {
        auto it = columns.find(name);
        return it == columns.end() ? -1 : it->second;
    }
    const std::string& cell(std::size_t row, int col) const { return rows[row][col]; }
};

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
        } else if (c == ',' && !quoted) {
            out.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    out.push_back(field);
    return out;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("missing file: " + path.string());
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty CSV file: " + path.string());
    table.header = split_csv_line(line);
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        table.columns.emplace(table.header[i], static_cast<int>(i));
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        fields.resize(table.header.size());
        table.rows.push_back(std::move(fields));
    }
    return table;
}

double to_double(const std::string& s, const std::string& context) {
    if (s.empty()) return 0.0;
    try {
        return std::stod(s);
    } catch (const std::exception&) {
        throw DataError(context + ": cannot parse number '" + s + "'");
    }
}

int require_column(const CsvTable& table, const std::string& name,
                   const std::string& file) {
    int col = table.column(name);
    if (col < 0) throw DataError(file + ": missing column '" + name + "'");
    return col;
}

// Failure-to-synchronize rates by RTS unit group.
double sync_rate_for_group(const std::string& group) {
    static const std::unordered_map<std::string, double> rates = {
        {"U12", 0.0148}, {"U20", 0.0201}, {"U76", 0.0083},  {"U100", 0.0399},
        {"U155", 0.0042}, {"U197", 0.0250}, {"U350", 0.0041}, {"U400", 0.0050},
    };
    auto it = rates.find(group);
    return it == rates.end() ? 0.0 : it->second;
}

// Adverse-condition outage shares by fuel; exposure fixed at 2 weeks/year.
std::optional<AdverseStats> adverse_for_fuel(const std::string& fuel) {
    double share = 0.0;
    if (fuel == "NG" || fuel == "Gas") share = 0.40;
    else if (fuel == "Nuclear") share = 0.20;
    else if (fuel == "Oil" || fuel == "Coal") share = 0.10;
    else return std::nullopt;
    return AdverseStats{8760.0, 438.0, share};
}

std::vector<CostSegment> cost_segments_from_rts(const CsvTable& gen, std::size_t row,
                                                double p_min, double p_max,
                                                double fuel_price,
                                                double* no_load_cost) {
    // Heat-rate data: average rate at the first output point, incremental rates
    // between subsequent points. BTU/kWh * $/MMBTU / 1000 = $/MWh.
    std::vector<double> breakpoints;
    std::vector<double> incr_rates;
    double hr_avg0 = 0.0;
    int hr_avg0_col = gen.column("HR_avg_0");
    if (hr_avg0_col >= 0) hr_avg0 = to_double(gen.cell(row, hr_avg0_col), "gen.csv HR_avg_0");
    for (int seg = 0;; ++seg) {
        int pct_col = gen.column("Output_pct_" + std::to_string(seg));
        if (pct_col < 0) break;
        double pct = to_double(gen.cell(row, pct_col), "gen.csv Output_pct");
        breakpoints.push_back(pct * p_max);
        if (seg > 0) {
            int hr_col = gen.column("HR_incr_" + std::to_string(seg));
            incr_rates.push_back(
                hr_col >= 0 ? to_double(gen.cell(row, hr_col), "gen.csv HR_incr") : 0.0);
        }
    }

    std::vector<CostSegment> segments;
    if (breakpoints.size() < 2) {
        double slope = hr_avg0 * fuel_price / 1000.0;
        segments.push_back({slope, 0.0});
        *no_load_cost = 0.0;
        return segments;
    }

    double cost_at_min = hr_avg0 * breakpoints.front() * fuel_price / 1000.0;
    double first_slope = incr_rates.front() * fuel_price / 1000.0;
    *no_load_cost = cost_at_min - first_slope * breakpoints.front();

    // Build the epigraph: segment o covers [bp_{o-1}, bp_o]; intercepts chain so
    // the envelope is continuous and the first intercept is zero.
    double running_cost = first_slope * breakpoints.front(); // relative to no-load
    for (std::size_t o = 0; o < incr_rates.size(); ++o) {
        double slope = incr_rates[o] * fuel_price / 1000.0;
        double intercept = running_cost - slope * breakpoints[o];
        segments.push_back({slope, intercept});
        running_cost += slope * (breakpoints[o + 1] - breakpoints[o]);
    }
    (void)p_min;
    return segments;
}

PowerSystem load_rts_directory(const std::filesystem::path& dir, const LoadOptions& options) {
    auto bus_table = read_csv(dir / "bus.csv");
    auto branch_table = read_csv(dir / "branch.csv");
    auto gen_table = read_csv(dir / "gen.csv");
    auto demand_table = read_csv(dir / "demand.csv");
    auto vres_table_path = dir / "vres.csv";
    std::optional<CsvTable> vres_table;
    if (std::filesystem::exists(vres_table_path)) vres_table = read_csv(vres_table_path);

    PowerSystem sys;

    const std::size_t T = demand_table.rows.size();
    for (std::size_t t = 0; t < T; ++t) sys.horizon.push_back(std::to_string(t + 1));

    int bus_id_col = require_column(bus_table, "Bus ID", "bus.csv");
    for (std::size_t r = 0; r < bus_table.rows.size(); ++r) {
        Bus bus;
        bus.id = bus_table.cell(r, bus_id_col);
        int demand_col = demand_table.column(bus.id);
        if (demand_col < 0) {
            bus.demand.assign(T, 0.0);
        } else {
            for (std::size_t t = 0; t < T; ++t) {
                bus.demand.push_back(to_double(demand_table.cell(t, demand_col),
                                               "demand.csv bus " + bus.id));
            }
        }
        sys.buses.push_back(std::move(bus));
    }
    if (!sys.buses.empty()) sys.reference_bus = sys.buses.front().id;

    int uid = require_column(branch_table, "UID", "branch.csv");
    int from_col = require_column(branch_table, "From Bus", "branch.csv");
    int to_col = require_column(branch_table, "To Bus", "branch.csv");
    int x_col = require_column(branch_table, "X", "branch.csv");
    int cont_col = require_column(branch_table, "Cont Rating", "branch.csv");
    int lte_col = branch_table.column("LTE Rating");
    int perm_col = branch_table.column("Perm OutRate");
    int tran_col = branch_table.column("Tran OutRate");
    for (std::size_t r = 0; r < branch_table.rows.size(); ++r) {
        Line line;
        line.id = branch_table.cell(r, uid);
        line.from_bus = branch_table.cell(r, from_col);
        line.to_bus = branch_table.cell(r, to_col);
        double x = to_double(branch_table.cell(r, x_col), "branch.csv X");
        if (x <= 0.0) throw DataError("branch '" + line.id + "': reactance must be positive");
        line.susceptance = 1.0 / x;
        line.rating_normal =
            to_double(branch_table.cell(r, cont_col), "branch.csv Cont Rating") *
            options.line_rating_factor;
        double lte = lte_col >= 0
                         ? to_double(branch_table.cell(r, lte_col), "branch.csv LTE Rating")
                         : line.rating_normal / options.line_rating_factor;
        line.rating_emergency = std::max(lte * options.line_rating_factor, line.rating_normal);
        double outages_per_year = 0.0;
        if (perm_col >= 0)
            outages_per_year += to_double(branch_table.cell(r, perm_col), "branch.csv Perm OutRate");
        if (tran_col >= 0)
            outages_per_year += to_double(branch_table.cell(r, tran_col), "branch.csv Tran OutRate");
        line.for_rate = outages_per_year / 8760.0;
        sys.lines.push_back(std::move(line));
    }

    int gen_uid = require_column(gen_table, "GEN UID", "gen.csv");
    int gen_bus = require_column(gen_table, "Bus ID", "gen.csv");
    int pmax_col = require_column(gen_table, "PMax MW", "gen.csv");
    int pmin_col = gen_table.column("PMin MW");
    int type_col = gen_table.column("Unit Type");
    int group_col = gen_table.column("Unit Group");
    int fuel_col = gen_table.column("Fuel");
    int ramp_col = gen_table.column("Ramp Rate MW/Min");
    int up_col = gen_table.column("Min Up Time Hr");
    int down_col = gen_table.column("Min Down Time Hr");
    int for_col = gen_table.column("FOR");
    int fuel_price_col = gen_table.column("Fuel Price $/MMBTU");
    int start_heat_col = gen_table.column("Start Heat Cold MBTU");
    int start_cost_col = gen_table.column("Non Fuel Start Cost $");

    for (std::size_t r = 0; r < gen_table.rows.size(); ++r) {
        std::string id = gen_table.cell(r, gen_uid);
        std::string type = type_col >= 0 ? gen_table.cell(r, type_col) : "";
        double p_max = to_double(gen_table.cell(r, pmax_col), "gen.csv PMax");

        if (type == "HYDRO" || type == "STORAGE" || type == "ROR") continue; // out of fleet

        bool is_vres = type == "WIND" || type == "PV" || type == "RTPV";
        if (is_vres) {
            VresUnit unit;
            unit.id = id;
            unit.bus = gen_table.cell(r, gen_bus);
            unit.dispatchable = type != "RTPV"; // rooftop PV is must-take
            int fc_col = vres_table ? vres_table->column(id) : -1;
            for (std::size_t t = 0; t < T; ++t) {
                double v = fc_col >= 0 ? to_double(vres_table->cell(t, fc_col), "vres.csv " + id)
                                       : 0.0;
                unit.forecast.push_back(v * options.wind_availability_factor);
            }
            if (type == "WIND" && options.wind_turbine_for > 0.0) {
                // Farms are modeled as identical ~5 MW turbines.
                int count = std::max(1, static_cast<int>(std::lround(p_max / 5.0)));
                unit.turbine_count = count;
                unit.turbine_rating = p_max / count;
                unit.for_rate = options.wind_turbine_for;
            }
            sys.vres_units.push_back(std::move(unit));
            continue;
        }

        Generator gen;
        gen.id = id;
        gen.bus = gen_table.cell(r, gen_bus);
        gen.p_max = p_max;
        gen.p_min = pmin_col >= 0 ? to_double(gen_table.cell(r, pmin_col), "gen.csv PMin") : 0.0;
        double ramp_per_min =
            ramp_col >= 0 ? to_double(gen_table.cell(r, ramp_col), "gen.csv Ramp Rate") : p_max;
        gen.ramp_hourly = ramp_per_min * 60.0;
        gen.ramp_10min = ramp_per_min * 10.0;
        gen.min_up = up_col >= 0
                         ? static_cast<int>(to_double(gen_table.cell(r, up_col), "gen.csv Min Up"))
                         : 1;
        gen.min_down =
            down_col >= 0
                ? static_cast<int>(to_double(gen_table.cell(r, down_col), "gen.csv Min Down"))
                : 1;
        gen.fast_start = type == "CT" || type == "GT";
        gen.for_rate = for_col >= 0 ? to_double(gen_table.cell(r, for_col), "gen.csv FOR") : 0.0;

        double fuel_price =
            fuel_price_col >= 0
                ? to_double(gen_table.cell(r, fuel_price_col), "gen.csv Fuel Price")
                : 0.0;
        gen.cost_segments = cost_segments_from_rts(gen_table, r, gen.p_min, gen.p_max,
                                                   fuel_price, &gen.no_load_cost);
        double start_heat =
            start_heat_col >= 0
                ? to_double(gen_table.cell(r, start_heat_col), "gen.csv Start Heat")
                : 0.0;
        double start_cash =
            start_cost_col >= 0
                ? to_double(gen_table.cell(r, start_cost_col), "gen.csv Start Cost")
                : 0.0;
        gen.startup_cost = start_cash + start_heat * fuel_price;
        gen.shutdown_cost = 0.0;

        if (options.default_sync_rates && group_col >= 0) {
            gen.sync_fail_rate = sync_rate_for_group(gen_table.cell(r, group_col));
        }
        if (options.default_adverse && fuel_col >= 0) {
            gen.adverse_stats = adverse_for_fuel(gen_table.cell(r, fuel_col));
        }
        sys.generators.push_back(std::move(gen));
    }

    if (options.default_adverse) {
        for (auto& line : sys.lines) {
            line.adverse_stats = AdverseStats{8760.0, 438.0, 0.40};
        }
    }

    sys.validate();
    return sys;
}

} // namespace

PowerSystem load_system_json_text(const std::string& json_text, const LoadOptions& options) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        throw DataError(std::string("invalid JSON fixture: ") + e.what());
    }
    return parse_json_system(root, options);
}

PowerSystem load_system(const std::filesystem::path& path, const LoadOptions& options) {
    if (std::filesystem::is_directory(path)) {
        return load_rts_directory(path, options);
    }
    std::ifstream in(path);
    if (!in) throw DataError("missing file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_system_json_text(buffer.str(), options);
}

} // namespace resa
