#pragma once

#include "resa/contingency.hpp"
#include "resa/schedule.hpp"
#include "resa/system.hpp"

#include <map>
#include <string>
#include <vector>

namespace resa {

/// Learned reserve activation factors, indexed by (generator, period,
/// scenario). Generator scenarios carry beta in [0,1] against scheduled
/// reserve; line scenarios carry beta+/- in [0,1]/[-1,0] against the 10-minute
/// ramp capability. With lambda = 0 each factor is the running extreme of the
/// observed activation ratios.
class RafState {
public:
    explicit RafState(double lambda = 0.0);

    double lambda() const { return lambda_; }
    int iteration() const { return iteration_; }
    void advance_iteration() { ++iteration_; }

    double beta(const std::string& scenario, int g, int t) const;
    double beta_pos(const std::string& scenario, int g, int t) const;
    double beta_neg(const std::string& scenario, int g, int t) const;

    /// Any factor of the scenario away from zero (pruning rule for carrying
    /// scenarios into the reserve-aware SCUC).
    bool scenario_active(const std::string& scenario) const;
    std::vector<std::string> scenarios() const;

    /// Ratio r_hat/r for generator and mixed scenarios; only positive
    /// activations against scheduled reserve contribute. Keys without
    /// scheduled reserve keep a zero ratio.
    void update_generator_factors(const PowerSystem& system, const Schedule& schedule,
                                  const std::map<std::string, ContingencyOutcome>& outcomes);

    /// Ratio r_hat/R10 for line and mixed scenarios, branched by activation
    /// sign; the untouched branch carries its previous value. R10 = 0 with a
    /// nonzero activation is a data inconsistency.
    void update_line_factors(const PowerSystem& system,
                             const std::map<std::string, ContingencyOutcome>& outcomes);

    /// Keyed by (generator id, period index, scenario id).
    std::string to_json() const;
    static RafState from_json(const std::string& text);

    const std::vector<std::string>& generator_ids() const { return gen_ids_; }
    int periods() const;

    /// Fraction of generator-scenario factors exactly one, exactly zero and
    /// strictly inside (0,1), over all stored (g,t,c) entries.
    struct Shares {
        double one = 0.0;
        double zero = 0.0;
        double partial = 0.0;
        long entries = 0;
    };
    Shares beta_shares() const;

private:
    using Grid = std::vector<std::vector<double>>; // [gen][t]
    static double get(const std::map<std::string, Grid>& store, const std::string& scenario,
                      int g, int t);
    Grid& ensure(std::map<std::string, Grid>& store, const std::string& scenario, int gens,
                 int periods);
    void remember_ids(const PowerSystem& system);

    double lambda_ = 0.0;
    int iteration_ = 0;
    std::vector<std::string> gen_ids_;
    std::map<std::string, Grid> beta_, beta_pos_, beta_neg_;
};

struct WorstCaseSelection {
    std::vector<std::string> set;              // C_alpha in severity order
    std::map<std::string, double> adjusted;    // renormalized inside the set, 0 outside
};

/// Sorts contingencies by EENS (descending; ties by ascending id), accumulates
/// until the cumulative probability exceeds alpha, and renormalizes the
/// probabilities inside the selected set. All-zero probabilities renormalize
/// to a uniform distribution over the set.
WorstCaseSelection select_worst_case(const std::map<std::string, double>& eens_per_contingency,
                                     const std::map<std::string, double>& probabilities,
                                     double alpha);

} // namespace resa
