#pragma once

#include "resa/contingency.hpp"
#include "resa/raf.hpp"
#include "resa/reliability.hpp"
#include "resa/schedule.hpp"
#include "resa/scuc.hpp"
#include "resa/sensitivity.hpp"
#include "resa/system.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace resa {

struct CaseConfig {
    enum class Mode { Robust, RiskAdjusted };

    Mode mode = Mode::Robust;
    double alpha = 0.1; // risk level for the worst-case set (risk-adjusted mode)
    ReliabilityModel::Condition condition = ReliabilityModel::Condition::Normal;
    bool include_vres_outages = false;
    double epsilon = 1e-6; // MWh stopping threshold
    double lambda = 0.0;   // RAF memory decay
    int max_iterations = 25;
    ReservePolicy reserve_policy;
    PenaltyWeights penalty_weights;
    milp::SolverConfig solver;
    LoadOptions scaling; // applied when the CLI loads the data
    double wind_turbine_for = 0.08; // per-turbine rate for wind COPT scenarios
    int max_parallel = 0;           // contingency fan-out width; 0 = hardware

    void validate() const;
    std::string to_json() const;
    static CaseConfig from_json(const std::string& text);
};

struct IterationReport {
    int k = 0;
    double eens_total = 0.0; // MWh
    std::map<std::string, double> eens_per_contingency;
    double objective = 0.0; // $
    double total_avg_reserve = 0.0; // MW, hourly average
    std::map<std::string, double> reserve_by_bus; // MW, hourly average
    int commitment_delta = 0; // changed (g,t) cells vs k=0
    int commitments_added = 0;
    int commitments_removed = 0;
    std::string raf_snapshot; // checkpoint file, when persisted
    double scuc_seconds = 0.0;
    double contingency_seconds = 0.0;
    double risk_seconds = 0.0;
};

struct ConvergenceReport {
    enum class Termination { EensThreshold, MaxIterations };

    std::vector<IterationReport> iterations;
    Termination terminated_by = Termination::EensThreshold;
    Schedule final_schedule;
    RafState final_rafs{0.0};
    std::vector<std::string> notices;
};

/// All credible N-1 scenarios: one per conventional generator, one per
/// non-islanding line (bridge lines are skipped with a notice), and, when
/// VRES outages are enabled, four capacity-outage quartile scenarios per wind
/// farm.
std::vector<ContingencyScenario>
build_contingency_set(const PowerSystem& system, const CaseConfig& config,
                      const SensitivityBundle& sens,
                      std::vector<std::string>* notices = nullptr);

using LogFn = std::function<void(const std::string&)>;

/// The iterative co-refinement: base SCUC, contingency analysis, risk
/// assessment, RAF learning (and worst-case selection in risk-adjusted mode),
/// reserve-aware re-solve; stops when total EENS falls to the threshold or the
/// iteration budget is exhausted. Contingency probabilities are recomputed
/// every iteration from the current commitments. When `checkpoint_dir` is
/// non-empty each iteration is persisted and `resume` continues from the last
/// stored iteration.
ConvergenceReport run_loop(const PowerSystem& system, const CaseConfig& config,
                           const std::filesystem::path& checkpoint_dir = {},
                           bool resume = false, const LogFn& log = {});

/// Deterministic machine-readable outputs: eens_by_iteration.csv,
/// cost_by_iteration.csv, reserve_by_bus.csv, commitment_delta.csv,
/// betas_k{K}.csv and summary.json. Re-emitting the same report is
/// byte-identical.
void emit_reports(const ConvergenceReport& report, const std::filesystem::path& out_dir);

/// Rebuilds a ConvergenceReport from a checkpoint directory (for re-emitting
/// reports without re-running the loop).
ConvergenceReport report_from_checkpoints(const std::filesystem::path& checkpoint_dir);

} // namespace resa
