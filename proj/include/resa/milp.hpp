#pragma once

#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace resa::milp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class VarType { Continuous, Binary };
enum class Sense { LessEqual, GreaterEqual, Equal };

enum class SolveStatus { Optimal, Infeasible, Unbounded, TimeLimit, Numerical };

std::string to_string(SolveStatus status);

struct Term {
    int var = -1;
    double coef = 0.0;
};

struct Constraint {
    std::string name;
    std::vector<Term> terms; // sorted by variable, duplicates merged
    Sense sense = Sense::LessEqual;
    double rhs = 0.0;
};

/// Solver-agnostic linear model: variables with bounds, linear constraints and
/// a linear objective (minimized). Backends consume this read-only.
class Model {
public:
    int add_variable(const std::string& name, double lb, double ub,
                     VarType type = VarType::Continuous, double objective = 0.0);
    int add_constraint(const std::string& name, std::vector<Term> terms, Sense sense,
                       double rhs);

    void add_objective(int var, double coef) { objective_[var] += coef; }
    void set_bounds(int var, double lb, double ub);

    int num_variables() const { return static_cast<int>(lb_.size()); }
    int num_constraints() const { return static_cast<int>(constraints_.size()); }

    const Constraint& constraint(int row) const { return constraints_[row]; }
    const std::vector<Constraint>& constraints() const { return constraints_; }
    const std::vector<double>& objective() const { return objective_; }
    double lower_bound(int var) const { return lb_[var]; }
    double upper_bound(int var) const { return ub_[var]; }
    VarType type(int var) const { return types_[var]; }
    const std::string& variable_name(int var) const { return names_[var]; }

private:
    std::vector<double> lb_, ub_, objective_;
    std::vector<VarType> types_;
    std::vector<std::string> names_;
    std::vector<Constraint> constraints_;
};

struct SolverConfig {
    std::string backend = "bnb";
    double mip_gap = 1e-3;
    double time_limit_seconds = 600.0;
    int threads = 1; // interface parity; the built-in backend is serial
};

struct Solution {
    SolveStatus status = SolveStatus::Numerical;
    std::vector<double> x;
    double objective = 0.0;
    double best_bound = 0.0;
    double gap = 0.0;
    long nodes = 0;
    long iterations = 0;
    double wall_seconds = 0.0;

    bool has_solution() const { return !x.empty(); }
};

/// Branch-and-bound LP/MILP backend behind a name, so other solvers can be
/// plugged in through configuration.
class SolverBackend {
public:
    virtual ~SolverBackend() = default;
    virtual std::string name() const = 0;
    virtual Solution solve(const Model& model, const SolverConfig& config) const = 0;
};

/// Looks up a backend by name ("bnb" is built in). Throws DataError for
/// unknown names.
const SolverBackend& backend(const std::string& name);

/// Convenience: solve with the backend named in the config.
Solution solve(const Model& model, const SolverConfig& config);

} // namespace resa::milp
