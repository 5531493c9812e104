#pragma once

#include "resa/schedule.hpp"
#include "resa/system.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace resa {

/// Outage replacement rate: probability of an unplanned outage within mission
/// time T given failure rate q (outages/hour). ORR = 1 - exp(-q*T).
double orr(double q, double mission_time = 1.0);

struct AdverseRates {
    double normal;  // q^N
    double adverse; // q^A
};

/// Splits a failure rate into normal- and adverse-condition rates from the
/// historical exposure record. Conserves total expected outages:
/// q_N*(H - H_A) + q_A*H_A = q*H.
AdverseRates adverse_rates(double q, double hours_total, double hours_adverse,
                           double adverse_share);

/// Probability that a scheduled generator is unavailable at a period, folding
/// failure-to-synchronize into the ORR when the unit is starting up:
/// U = u* (1 - (1 - v* q_s)(1 - ORR)).
double generator_unavailability(double committed, double starting, double sync_fail,
                                double orr_value);

struct WindBin {
    double loss_mw = 0.0;
    double probability = 0.25;
};

/// Aggregates the farm's binomial capacity-outage table into four equal-mass
/// bins; atoms straddling a bin boundary are split proportionally so every bin
/// carries exactly 0.25 and the mean loss is preserved.
std::array<WindBin, 4> wind_copt_quartiles(const VresUnit& unit, double turbine_for);

struct ContingencyScenario {
    enum class Kind { Generator, Line, Mixed };

    struct WindLoss {
        std::string unit;          // VRES unit id
        double expected_mw = 0.0;  // expected lost capacity of the bin
        double bin_probability = 0.25;
    };

    std::string id;
    std::vector<std::string> outaged_generators; // generator ids (conventional)
    std::vector<std::string> outaged_lines;      // line ids
    Kind kind = Kind::Generator;
    std::optional<WindLoss> wind_loss; // set on wind-quartile scenarios

    bool empty() const { return outaged_generators.empty() && outaged_lines.empty() && !wind_loss; }
};

/// Per-element ORRs under normal and adverse conditions plus synchronization
/// failure rates. Pure data; build once per case from the system.
class ReliabilityModel {
public:
    enum class Condition { Normal, Adverse };

    static ReliabilityModel from_system(const PowerSystem& system, Condition condition,
                                        double mission_time = 1.0);

    double generator_orr(int g) const { return condition_ == Condition::Adverse
                                                   ? gen_orr_adverse_[g]
                                                   : gen_orr_normal_[g]; }
    double line_orr(int l) const { return condition_ == Condition::Adverse
                                              ? line_orr_adverse_[l]
                                              : line_orr_normal_[l]; }
    double sync_fail(int g) const { return gen_sync_fail_[g]; }
    Condition condition() const { return condition_; }
    double mission_time() const { return mission_time_; }

private:
    Condition condition_ = Condition::Normal;
    double mission_time_ = 1.0;
    std::vector<double> gen_orr_normal_, gen_orr_adverse_, gen_sync_fail_;
    std::vector<double> line_orr_normal_, line_orr_adverse_;
};

/// Probability of contingency `scenario` at period t given the commitment and
/// start-up decisions of `schedule`. Elements with zero failure rate are
/// skipped in the no-outage product; wind-quartile scenarios contribute their
/// fixed bin probability instead of a commitment-dependent unavailability.
double contingency_probability(const ContingencyScenario& scenario,
                               const PowerSystem& system, const Schedule& schedule,
                               const ReliabilityModel& model, int t);

struct RiskAssessment {
    std::map<std::string, std::vector<double>> probabilities; // scenario -> per-period
    std::map<std::string, double> eens_per_contingency;       // MWh
    double eens_total = 0.0;                                  // MWh
    std::vector<std::string> worst_case_set;                  // C_alpha, severity order
    std::map<std::string, double> adjusted_probabilities;     // zero outside C_alpha
};

/// Probability-weighted unserved energy: EENS_c = sum_t pi_{c,t} * shed_t,c.
/// `shed_by_scenario` maps scenario id to total MW shed per period. Scenario
/// sets of the two maps must coincide.
RiskAssessment eens(const std::map<std::string, std::vector<double>>& shed_by_scenario,
                    const std::map<std::string, std::vector<double>>& probabilities);

} // namespace resa
