#pragma once

#include "resa/milp.hpp"
#include "resa/reliability.hpp"
#include "resa/schedule.hpp"
#include "resa/system.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace resa {

struct PenaltyWeights {
    double load_shed_cost = 1000.0; // $/MWh, must dominate overload_cost
    double overload_cost = 10.0;    // $/MW
};

/// Corrective re-dispatch result for one contingency across the horizon.
struct ContingencyOutcome {
    std::string scenario_id;
    std::vector<std::vector<double>> load_shed;       // [bus][t] MW
    std::vector<std::vector<double>> overload_pos;    // [line][t] MW
    std::vector<std::vector<double>> overload_neg;    // [line][t] MW
    std::vector<std::vector<double>> redispatch;      // [gen][t] MW
    std::vector<std::vector<double>> activation;      // [gen][t] p_c - p*
    std::vector<std::vector<double>> vres_redispatch; // [vres][t] MW
    double objective = 0.0;
    bool deliverable = false; // true iff no shedding and no overload

    std::vector<double> shed_per_period() const;
    double total_shed() const;
    double total_overload() const;

    std::string to_json() const;
    static ContingencyOutcome from_json(const std::string& text);
};

/// Solves the per-period corrective dispatch LP for one contingency:
/// re-dispatch within short-term limits, emergency line ratings with overload
/// slack, and load shedding as last resort. Islanding outages are solved per
/// island with the island's first bus as angle reference.
ContingencyOutcome corrective_dispatch(const PowerSystem& system, const Schedule& schedule,
                                       const ContingencyScenario& scenario,
                                       const PenaltyWeights& weights,
                                       const milp::SolverConfig& solver = {});

/// Fan-out over all scenarios; results are keyed by scenario id and identical
/// to standalone corrective_dispatch calls regardless of execution order.
/// Duplicate scenario ids are rejected. max_parallel <= 0 uses the hardware
/// concurrency.
std::map<std::string, ContingencyOutcome>
run_all(const PowerSystem& system, const Schedule& schedule,
        const std::vector<ContingencyScenario>& scenarios, const PenaltyWeights& weights,
        const milp::SolverConfig& solver = {}, int max_parallel = 0);

/// Optional dump: one CSV row per (scenario, period) with shed, overload
/// totals and objective share.
void write_outcomes_csv(const std::filesystem::path& path,
                        const std::map<std::string, ContingencyOutcome>& outcomes);

} // namespace resa
