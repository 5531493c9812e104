#pragma once

#include <stdexcept>
#include <string>

namespace resa {

/// Input data or validation failure. The message names the offending record.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Optimization backend failure with a structured reason.
class SolverError : public std::runtime_error {
public:
    enum class Reason { Infeasible, Unbounded, TimeLimitNoIncumbent, Numerical };

    SolverError(Reason reason, const std::string& what)
        : std::runtime_error(what), reason_(reason) {}

    Reason reason() const { return reason_; }

private:
    Reason reason_;
};

/// A scenario that splits the network; sensitivity math does not apply and the
/// contingency analyzer must take its island path instead.
class IslandingError : public std::runtime_error {
public:
    explicit IslandingError(const std::string& what) : std::runtime_error(what) {}
};

/// Broken internal assumption (e.g. a corrective LP that should always be
/// feasible reports infeasibility, or a solved schedule fails the audit).
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace resa
