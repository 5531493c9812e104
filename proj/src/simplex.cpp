#include "simplex.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace resa::milp {

namespace {

constexpr double kDualTol = 1e-9;
constexpr double kPrimalTol = 1e-8;
constexpr double kPivotTol = 1e-8;
constexpr double kDegenerateStep = 1e-11;
constexpr int kRefactorInterval = 128;
constexpr long kStallLimit = 4000;

enum class ColStatus : unsigned char { AtLower, AtUpper, Free, Basic, Fixed };

} // namespace

LpWorkspace::LpWorkspace(const Model& model) {
    n_ = model.num_variables();
    m_ = model.num_constraints();
    cols_.assign(n_, {});
    cost_ = model.objective();
    rhs_.resize(m_);
    slack_lo_.resize(m_);
    slack_hi_.resize(m_);
    for (int i = 0; i < m_; ++i) {
        const auto& row = model.constraint(i);
        rhs_[i] = row.rhs;
        for (const auto& term : row.terms) cols_[term.var].push_back({i, term.coef});
        switch (row.sense) {
        case Sense::LessEqual:
            slack_lo_[i] = 0.0;
            slack_hi_[i] = kInfinity;
            break;
        case Sense::GreaterEqual:
            slack_lo_[i] = -kInfinity;
            slack_hi_[i] = 0.0;
            break;
        case Sense::Equal:
            slack_lo_[i] = 0.0;
            slack_hi_[i] = 0.0;
            break;
        }
    }
}

/// Bounded-variable primal simplex with explicit basis inverse, two phases
/// (artificial columns repair an infeasible slack basis), Dantzig pricing and
/// a Bland fallback after degenerate stalls.
class Simplex {
public:
    Simplex(const LpWorkspace& ws, const std::vector<double>& lb,
            const std::vector<double>& ub)
        : ws_(ws), n_(ws.n_), m_(ws.m_) {
        total_ = n_ + 2 * m_; // structural | slack | artificial
        lo_.assign(total_, 0.0);
        hi_.assign(total_, 0.0);
        value_.assign(total_, 0.0);
        status_.assign(total_, ColStatus::AtLower);
        art_sign_.assign(m_, 0.0);

        for (int j = 0; j < n_; ++j) {
            lo_[j] = lb[j];
            hi_[j] = ub[j];
        }
        for (int i = 0; i < m_; ++i) {
            lo_[n_ + i] = ws.slack_lo_[i];
            hi_[n_ + i] = ws.slack_hi_[i];
            lo_[art(i)] = 0.0;
            hi_[art(i)] = 0.0; // opened only where phase 1 needs them
            status_[art(i)] = ColStatus::Fixed;
        }
    }

    LpResult run() {
        LpResult result;
        for (int j = 0; j < n_; ++j) {
            if (lo_[j] > hi_[j] + 1e-12) {
                result.status = SolveStatus::Infeasible;
                return result;
            }
            init_nonbasic(j);
        }

        basic_.resize(m_);
        binv_ = Eigen::MatrixXd::Identity(m_, m_);
        xb_ = Eigen::VectorXd::Zero(m_);

        // Slack basis; rows whose slack cannot absorb the residual get an
        // artificial column carrying the infeasibility.
        Eigen::VectorXd residual = row_activity_of_nonbasics();
        bool need_phase1 = false;
        for (int i = 0; i < m_; ++i) {
            double r = ws_.rhs_[i] - residual(i);
            int slack = n_ + i;
            if (r >= lo_[slack] - kPrimalTol && r <= hi_[slack] + kPrimalTol) {
                basic_[i] = slack;
                status_[slack] = ColStatus::Basic;
                xb_(i) = r;
                continue;
            }
            double pinned = std::clamp(r, lo_[slack], hi_[slack]);
            value_[slack] = pinned;
            status_[slack] = pinned == lo_[slack] ? ColStatus::AtLower : ColStatus::AtUpper;
            if (lo_[slack] == hi_[slack]) status_[slack] = ColStatus::Fixed;
            double gap = r - pinned;
            art_sign_[i] = gap > 0.0 ? 1.0 : -1.0;
            hi_[art(i)] = kInfinity;
            basic_[i] = art(i);
            status_[art(i)] = ColStatus::Basic;
            xb_(i) = std::abs(gap);
            need_phase1 = true;
        }

        if (need_phase1) {
            refactor(); // artificial columns may carry sign -1
            std::vector<double> phase1_cost(total_, 0.0);
            for (int i = 0; i < m_; ++i) phase1_cost[art(i)] = 1.0;
            SolveStatus status = iterate(phase1_cost, /*phase1=*/true);
            if (status != SolveStatus::Optimal) {
                result.status = status == SolveStatus::Unbounded ? SolveStatus::Numerical
                                                                 : status;
                result.iterations = iterations_;
                return result;
            }
            double infeasibility = 0.0;
            for (int i = 0; i < m_; ++i) {
                if (basic_[i] >= n_ + m_) infeasibility += std::abs(xb_(i));
            }
            if (infeasibility > 1e-7) {
                result.status = SolveStatus::Infeasible;
                result.iterations = iterations_;
                return result;
            }
            for (int i = 0; i < m_; ++i) hi_[art(i)] = 0.0; // pin artificials
        }

        std::vector<double> cost(total_, 0.0);
        std::copy(ws_.cost_.begin(), ws_.cost_.end(), cost.begin());
        SolveStatus status = iterate(cost, /*phase1=*/false);
        result.status = status;
        result.iterations = iterations_;
        if (status != SolveStatus::Optimal) return result;

        result.x.assign(n_, 0.0);
        for (int j = 0; j < n_; ++j) result.x[j] = value_[j];
        for (int i = 0; i < m_; ++i) {
            if (basic_[i] < n_) result.x[basic_[i]] = xb_(i);
        }
        double objective = 0.0;
        for (int j = 0; j < n_; ++j) objective += ws_.cost_[j] * result.x[j];
        result.objective = objective;
        return result;
    }

private:
    int art(int row) const { return n_ + m_ + row; }

    void init_nonbasic(int j) {
        if (lo_[j] == hi_[j]) {
            status_[j] = ColStatus::Fixed;
            value_[j] = lo_[j];
        } else if (std::isfinite(lo_[j])) {
            status_[j] = ColStatus::AtLower;
            value_[j] = lo_[j];
        } else if (std::isfinite(hi_[j])) {
            status_[j] = ColStatus::AtUpper;
            value_[j] = hi_[j];
        } else {
            status_[j] = ColStatus::Free;
            value_[j] = 0.0;
        }
    }

    template <typename F> void for_column(int j, F&& f) const {
        if (j < n_) {
            for (const auto& term : ws_.cols_[j]) f(term.var, term.coef);
        } else if (j < n_ + m_) {
            f(j - n_, 1.0);
        } else {
            f(j - n_ - m_, art_sign_[j - n_ - m_]);
        }
    }

    Eigen::VectorXd row_activity_of_nonbasics() const {
        Eigen::VectorXd activity = Eigen::VectorXd::Zero(m_);
        for (int j = 0; j < total_; ++j) {
            if (status_[j] == ColStatus::Basic || value_[j] == 0.0) continue;
            for_column(j, [&](int row, double coef) { activity(row) += coef * value_[j]; });
        }
        return activity;
    }

    void refactor() {
        Eigen::MatrixXd basis(m_, m_);
        basis.setZero();
        for (int i = 0; i < m_; ++i) {
            for_column(basic_[i], [&](int row, double coef) { basis(row, i) = coef; });
        }
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis);
        binv_ = lu.inverse();
        Eigen::VectorXd rhs = Eigen::VectorXd::Map(ws_.rhs_.data(), m_);
        xb_ = binv_ * (rhs - row_activity_of_nonbasics());
    }

    double reduced_cost(const std::vector<double>& cost, const Eigen::VectorXd& y,
                        int j) const {
        double dot = 0.0;
        for_column(j, [&](int row, double coef) { dot += coef * y(row); });
        return cost[j] - dot;
    }

    SolveStatus iterate(const std::vector<double>& cost, bool phase1) {
        long stall = 0;
        bool bland = false;
        int pivots_since_refactor = 0;
        const long iteration_limit = 40L * (n_ + m_) + 20000;
        long local_iterations = 0;

        Eigen::VectorXd cb(m_), y(m_), w(m_);
        while (true) {
            if (++local_iterations > iteration_limit) return SolveStatus::Numerical;
            ++iterations_;

            for (int i = 0; i < m_; ++i) cb(i) = cost[basic_[i]];
            y.noalias() = binv_.transpose() * cb;

            // Pricing: Dantzig by default, Bland when stalled. Artificial
            // columns never re-enter outside phase 1.
            int entering = -1;
            int direction = 0;
            double best_score = kDualTol;
            const int price_limit = phase1 ? total_ : n_ + m_;
            for (int j = 0; j < price_limit; ++j) {
                ColStatus st = status_[j];
                if (st == ColStatus::Basic || st == ColStatus::Fixed) continue;
                double d = reduced_cost(cost, y, j);
                int dir = 0;
                if (st == ColStatus::AtLower && d < -kDualTol) dir = 1;
                else if (st == ColStatus::AtUpper && d > kDualTol) dir = -1;
                else if (st == ColStatus::Free && std::abs(d) > kDualTol) dir = d < 0 ? 1 : -1;
                if (dir == 0) continue;
                if (bland) {
                    entering = j;
                    direction = dir;
                    break;
                }
                if (std::abs(d) > best_score) {
                    best_score = std::abs(d);
                    entering = j;
                    direction = dir;
                }
            }
            if (entering < 0) return SolveStatus::Optimal;

            w.setZero();
            for_column(entering, [&](int row, double coef) { w += coef * binv_.col(row); });

            // Ratio test: smallest blocking step; ties prefer the largest
            // pivot magnitude for stability.
            double span = hi_[entering] - lo_[entering];
            double best_step = std::isfinite(span) ? span : kInfinity;
            int leaving = -1;
            int leaving_to = 0; // -1 lower, +1 upper
            double best_pivot = 0.0;
            for (int i = 0; i < m_; ++i) {
                double delta = -direction * w(i); // change of xb_(i) per unit step
                if (delta > kPivotTol) {
                    double bound = hi_[basic_[i]];
                    if (!std::isfinite(bound)) continue;
                    double step = (bound - xb_(i)) / delta;
                    if (step < -kPrimalTol) step = 0.0;
                    if (step < best_step - 1e-10 ||
                        (step < best_step + 1e-10 && std::abs(w(i)) > best_pivot)) {
                        best_step = std::max(step, 0.0);
                        leaving = i;
                        leaving_to = 1;
                        best_pivot = std::abs(w(i));
                    }
                } else if (delta < -kPivotTol) {
                    double bound = lo_[basic_[i]];
                    if (!std::isfinite(bound)) continue;
                    double step = (xb_(i) - bound) / (-delta);
                    if (step < -kPrimalTol) step = 0.0;
                    if (step < best_step - 1e-10 ||
                        (step < best_step + 1e-10 && std::abs(w(i)) > best_pivot)) {
                        best_step = std::max(step, 0.0);
                        leaving = i;
                        leaving_to = -1;
                        best_pivot = std::abs(w(i));
                    }
                }
            }

            if (!std::isfinite(best_step)) {
                return phase1 ? SolveStatus::Numerical : SolveStatus::Unbounded;
            }

            if (best_step < kDegenerateStep) {
                if (++stall > kStallLimit) bland = true;
            } else {
                stall = 0;
                bland = false;
            }

            if (leaving < 0) {
                // Bound flip: entering variable crosses to its other bound.
                xb_ -= direction * best_step * w;
                value_[entering] = direction > 0 ? hi_[entering] : lo_[entering];
                status_[entering] =
                    direction > 0 ? ColStatus::AtUpper : ColStatus::AtLower;
                continue;
            }

            double entering_value = value_[entering] + direction * best_step;
            int leaving_col = basic_[leaving];
            xb_ -= direction * best_step * w;

            value_[leaving_col] = leaving_to > 0 ? hi_[leaving_col] : lo_[leaving_col];
            status_[leaving_col] = lo_[leaving_col] == hi_[leaving_col]
                                       ? ColStatus::Fixed
                                       : (leaving_to > 0 ? ColStatus::AtUpper
                                                         : ColStatus::AtLower);

            double pivot = w(leaving);
            for (int i = 0; i < m_; ++i) {
                if (i == leaving) continue;
                double factor = w(i) / pivot;
                if (factor != 0.0) binv_.row(i) -= factor * binv_.row(leaving);
            }
            binv_.row(leaving) /= pivot;

            basic_[leaving] = entering;
            status_[entering] = ColStatus::Basic;
            xb_(leaving) = entering_value;

            if (++pivots_since_refactor >= kRefactorInterval) {
                refactor();
                pivots_since_refactor = 0;
            }
        }
    }

    const LpWorkspace& ws_;
    int n_, m_, total_;
    std::vector<double> lo_, hi_, value_;
    std::vector<ColStatus> status_;
    std::vector<double> art_sign_;
    std::vector<int> basic_;
    Eigen::MatrixXd binv_;
    Eigen::VectorXd xb_;
    long iterations_ = 0;
};

LpResult LpWorkspace::solve(const std::vector<double>& lb,
                            const std::vector<double>& ub) const {
    Simplex simplex(*this, lb, ub);
    return simplex.run();
}

} // namespace resa::milp
