#include "resa/milp.hpp"

#include "resa/errors.hpp"
#include "simplex.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <queue>
#include <stdexcept>

namespace resa::milp {

std::string to_string(SolveStatus status) {
    switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::TimeLimit: return "time_limit";
    case SolveStatus::Numerical: return "numerical";
    }
    return "unknown";
}

int Model::add_variable(const std::string& name, double lb, double ub, VarType type,
                        double objective) {
    if (lb > ub) throw DataError("variable '" + name + "': lower bound exceeds upper");
    if (type == VarType::Binary) {
        lb = std::max(lb, 0.0);
        ub = std::min(ub, 1.0);
    }
    lb_.push_back(lb);
    ub_.push_back(ub);
    objective_.push_back(objective);
    types_.push_back(type);
    names_.push_back(name);
    return static_cast<int>(lb_.size()) - 1;
}

int Model::add_constraint(const std::string& name, std::vector<Term> terms, Sense sense,
                          double rhs) {
    std::map<int, double> merged;
    for (const auto& term : terms) {
        if (term.var < 0 || term.var >= num_variables()) {
            throw DataError("constraint '" + name + "': unknown variable index");
        }
        merged[term.var] += term.coef;
    }
    Constraint row;
    row.name = name;
    row.sense = sense;
    row.rhs = rhs;
    for (const auto& [var, coef] : merged) {
        if (std::abs(coef) > 1e-12) row.terms.push_back({var, coef});
    }
    constraints_.push_back(std::move(row));
    return static_cast<int>(constraints_.size()) - 1;
}

void Model::set_bounds(int var, double lb, double ub) {
    if (lb > ub) throw DataError("set_bounds: lower bound exceeds upper");
    lb_[var] = lb;
    ub_[var] = ub;
}

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

constexpr double kIntegralityTol = 1e-6;

/// Best-bound branch-and-bound over the bounded-variable simplex. Entirely
/// deterministic: fixed scan orders and node ids break every tie.
class BnbBackend : public SolverBackend {
public:
    std::string name() const override { return "bnb"; }

    Solution solve(const Model& model, const SolverConfig& config) const override {
        const double start = now_seconds();
        const double deadline = start + std::max(0.0, config.time_limit_seconds);

        LpWorkspace workspace(model);
        const int n = model.num_variables();
        std::vector<double> lb(n), ub(n);
        std::vector<int> binaries;
        for (int j = 0; j < n; ++j) {
            lb[j] = model.lower_bound(j);
            ub[j] = model.upper_bound(j);
            if (model.type(j) == VarType::Binary) binaries.push_back(j);
        }

        Solution solution;
        long total_iterations = 0;

        auto solve_lp = [&](const std::vector<std::pair<int, int>>& fixes) {
            std::vector<double> node_lb = lb, node_ub = ub;
            for (auto [var, val] : fixes) {
                node_lb[var] = std::max(node_lb[var], static_cast<double>(val));
                node_ub[var] = std::min(node_ub[var], static_cast<double>(val));
            }
            LpResult lp = workspace.solve(node_lb, node_ub);
            total_iterations += lp.iterations;
            return lp;
        };

        auto finish = [&](Solution s) {
            s.iterations = total_iterations;
            s.wall_seconds = now_seconds() - start;
            return s;
        };

        // Most fractional binary; first index wins ties. -1 when integral.
        auto branch_candidate = [&](const std::vector<double>& x) {
            int pick = -1;
            double best_score = 0.0;
            for (int v : binaries) {
                double frac = std::abs(x[v] - std::lround(x[v]));
                if (frac <= kIntegralityTol) continue;
                double score = 0.5 - std::abs(x[v] - 0.5);
                if (score > best_score + 1e-15) {
                    best_score = score;
                    pick = v;
                }
            }
            return pick;
        };

        LpResult root = solve_lp({});
        solution.nodes = 1;
        if (root.status != SolveStatus::Optimal) {
            solution.status = root.status;
            return finish(solution);
        }

        if (binaries.empty() || branch_candidate(root.x) < 0) {
            solution.status = SolveStatus::Optimal;
            solution.x = root.x;
            round_binaries(solution.x, binaries);
            solution.objective = root.objective;
            solution.best_bound = root.objective;
            return finish(solution);
        }

        struct Node {
            double bound;
            long id;
            std::vector<std::pair<int, int>> fixes;
        };
        struct NodeOrder {
            bool operator()(const Node& a, const Node& b) const {
                if (a.bound != b.bound) return a.bound > b.bound; // min-heap
                return a.id > b.id;
            }
        };
        std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
        long next_id = 0;

        bool have_incumbent = false;
        double incumbent_obj = kInfinity;
        std::vector<double> incumbent_x;

        auto accept_incumbent = [&](const LpResult& lp) {
            if (!have_incumbent || lp.objective < incumbent_obj - 1e-12) {
                have_incumbent = true;
                incumbent_obj = lp.objective;
                incumbent_x = lp.x;
            }
        };

        // Rounding dive from the root relaxation for an early incumbent.
        {
            std::vector<std::pair<int, int>> fixes;
            fixes.reserve(binaries.size());
            for (int v : binaries) fixes.emplace_back(v, root.x[v] > 0.5 ? 1 : 0);
            LpResult dive = solve_lp(fixes);
            ++solution.nodes;
            if (dive.status == SolveStatus::Optimal) accept_incumbent(dive);
        }

        auto gap_cut = [&]() {
            return have_incumbent
                       ? incumbent_obj -
                             config.mip_gap * std::max(1.0, std::abs(incumbent_obj))
                       : kInfinity;
        };

        open.push({root.objective, next_id++, {}});
        bool root_pending = true;
        bool timed_out = false;

        while (!open.empty()) {
            if (now_seconds() > deadline) {
                timed_out = true;
                break;
            }
            if (open.top().bound >= gap_cut() - 1e-12) break; // proven within gap

            Node node = open.top();
            open.pop();

            LpResult lp;
            if (root_pending && node.fixes.empty()) {
                lp = root;
                root_pending = false;
            } else {
                lp = solve_lp(node.fixes);
                ++solution.nodes;
            }
            if (lp.status == SolveStatus::Infeasible) continue;
            if (lp.status != SolveStatus::Optimal) {
                solution.status = lp.status;
                return finish(solution);
            }
            if (lp.objective >= gap_cut() - 1e-12) continue;

            int branch_var = branch_candidate(lp.x);
            if (branch_var < 0) {
                accept_incumbent(lp);
                continue;
            }
            for (int value : {0, 1}) {
                auto fixes = node.fixes;
                fixes.emplace_back(branch_var, value);
                open.push({lp.objective, next_id++, std::move(fixes)});
            }
        }

        if (!have_incumbent) {
            solution.status = timed_out ? SolveStatus::TimeLimit : SolveStatus::Infeasible;
            return finish(solution);
        }

        double proven_bound =
            open.empty() ? incumbent_obj : std::min(open.top().bound, incumbent_obj);

        // Snap binaries to exact 0/1 and re-verify the rounded point by
        // re-solving its continuous part.
        std::vector<std::pair<int, int>> final_fixes;
        final_fixes.reserve(binaries.size());
        for (int v : binaries) final_fixes.emplace_back(v, incumbent_x[v] > 0.5 ? 1 : 0);
        LpResult polished = solve_lp(final_fixes);
        if (polished.status != SolveStatus::Optimal) {
            solution.status = SolveStatus::Numerical;
            return finish(solution);
        }
        round_binaries(polished.x, binaries);

        solution.status = timed_out ? SolveStatus::TimeLimit : SolveStatus::Optimal;
        solution.x = polished.x;
        solution.objective = polished.objective;
        solution.best_bound = proven_bound;
        solution.gap = (polished.objective - proven_bound) /
                       std::max(1.0, std::abs(polished.objective));
        if (solution.gap < 0.0) solution.gap = 0.0;
        return finish(solution);
    }

private:
    static void round_binaries(std::vector<double>& x, const std::vector<int>& binaries) {
        for (int v : binaries) x[v] = x[v] > 0.5 ? 1.0 : 0.0;
    }
};

} // namespace

const SolverBackend& backend(const std::string& name) {
    static const BnbBackend bnb;
    if (name.empty() || name == "bnb" || name == "default") return bnb;
    throw DataError("unknown solver backend '" + name + "'");
}

Solution solve(const Model& model, const SolverConfig& config) {
    return backend(config.backend).solve(model, config);
}

} // namespace resa::milp
