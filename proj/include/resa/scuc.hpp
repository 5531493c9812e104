#pragma once

#include "resa/milp.hpp"
#include "resa/raf.hpp"
#include "resa/reliability.hpp"
#include "resa/schedule.hpp"
#include "resa/sensitivity.hpp"
#include "resa/system.hpp"

#include <Eigen/Dense>

#include <map>
#include <string>
#include <vector>

namespace resa {

struct ReservePolicy {
    double demand_fraction = 0.07;   // R^D
    double spinning_fraction = 0.5;  // R^S
};

/// One contingency prepared for the reserve-aware SCUC: the scenario, its
/// post-outage injection sensitivities (line/mixed scenarios only) and its
/// adjusted probability (risk-adjusted mode only).
struct ResaScenario {
    ContingencyScenario scenario;
    Eigen::MatrixXd outage_sens; // F^c, |L| x |N|; empty for generator scenarios
    double weight = 0.0;         // adjusted probability pi_hat
};

struct ResaAugmentation {
    enum class Mode { Robust, RiskAdjusted };
    Mode mode = Mode::Robust;
    double alpha = 0.1;                 // recorded risk level (risk-adjusted mode)
    const RafState* rafs = nullptr;
    std::vector<ResaScenario> scenarios;
};

/// Security-constrained unit commitment over the abstract solver interface.
///
/// The base model carries, per period: the piecewise cost epigraph, capacity
/// with spinning-reserve headroom, minimum up/down windows (truncated at the
/// horizon start), start/stop linking, hourly ramps with start/stop terms,
/// VRES bounds (dispatchability as variable bounds), DC flows with reference
/// angle and thermal limits, nodal balance, and the reserve system: total
/// reserve, demand floor, largest-unit floor, spinning share, and non-spinning
/// reserve from offline fast-start units capped by the 10-minute ramp.
class ScucModel {
public:
    ScucModel(const PowerSystem& system, const ReservePolicy& policy);

    /// Adds reserve-aware post-contingency flow constraints. Robust mode
    /// enforces every scenario; risk-adjusted mode enforces the weighted
    /// expectation over the worst-case set. Rows whose flow-change expression
    /// has no coefficient above 1e-9 are pruned. Scenarios with island-flagged
    /// outaged lines are rejected.
    void attach_resa_constraints(const ResaAugmentation& aug, const SensitivityBundle& sens);

    /// Solves, rounds binaries to exact 0/1, re-verifies, audits the schedule
    /// arithmetically and returns it. Throws SolverError on infeasible,
    /// unbounded or time-limit-without-incumbent outcomes; InternalError when
    /// the audit fails.
    Schedule solve(const milp::SolverConfig& config) const;

    const milp::Model& model() const { return model_; }
    milp::Model& model() { return model_; }

    // Variable indices, exposed for tests and the auditor.
    int var_u(int g, int t) const { return u0_ + g * periods_ + t; }
    int var_v(int g, int t) const { return v0_ + g * periods_ + t; }
    int var_w(int g, int t) const { return w0_ + g * periods_ + t; }
    int var_p(int g, int t) const { return p0_ + g * periods_ + t; }
    int var_rs(int g, int t) const { return rs0_ + g * periods_ + t; }
    int var_rns(int g, int t) const { return rns0_ + g * periods_ + t; }
    int var_cost(int g, int t) const { return tg0_ + g * periods_ + t; }
    int var_vres(int w, int t) const { return pw0_ + w * periods_ + t; }
    int var_flow(int l, int t) const { return f0_ + l * periods_ + t; }
    int var_angle(int b, int t) const { return th0_ + b * periods_ + t; }
    int var_rtot(int t) const { return rtot0_ + t; }

private:
    void build();
    Schedule extract(const milp::Solution& solution, const milp::SolverConfig& config) const;

    const PowerSystem& system_;
    ReservePolicy policy_;
    milp::Model model_;
    int periods_ = 0;
    int u0_ = 0, v0_ = 0, w0_ = 0, p0_ = 0, rs0_ = 0, rns0_ = 0, tg0_ = 0;
    int pw0_ = 0, f0_ = 0, th0_ = 0, rtot0_ = 0;
};

/// Independent arithmetic re-check of a solved schedule against the system
/// and reserve policy: nodal balance and flow definition within 1e-6 MW, all
/// reserve requirements, capacity, ramps, VRES bounds and minimum up/down
/// counting. Returns human-readable violations; empty means clean.
std::vector<std::string> audit_schedule(const PowerSystem& system, const ReservePolicy& policy,
                                        const Schedule& schedule);

} // namespace resa
