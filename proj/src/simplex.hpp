#pragma once

#include "resa/milp.hpp"

#include <vector>

namespace resa::milp {

struct LpResult {
    SolveStatus status = SolveStatus::Numerical;
    std::vector<double> x; // structural variables only
    double objective = 0.0;
    long iterations = 0;
};

/// Reusable simplex data for a fixed constraint matrix. Structural variable
/// bounds are supplied per solve, which is what branch-and-bound needs. The
/// solve call keeps all mutable state on its own stack, so one workspace can
/// serve concurrent callers.
class LpWorkspace {
public:
    explicit LpWorkspace(const Model& model);

    LpResult solve(const std::vector<double>& lb, const std::vector<double>& ub) const;

    int num_structural() const { return n_; }
    int num_rows() const { return m_; }

private:
    friend class Simplex;
    int n_ = 0;
    int m_ = 0;
    std::vector<std::vector<Term>> cols_; // structural columns
    std::vector<double> rhs_;
    std::vector<double> slack_lo_, slack_hi_;
    std::vector<double> cost_;
};

} // namespace resa::milp
