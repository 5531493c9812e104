#pragma once

#include "resa/system.hpp"

#include <string>
#include <vector>

namespace resa {

struct SolverStats {
    std::string backend;
    std::string status;        // optimal | time_limit | ...
    double objective = 0.0;
    double best_bound = 0.0;
    double gap = 0.0;          // relative MIP gap at termination
    long nodes = 0;
    long iterations = 0;
    double wall_seconds = 0.0;
};

/// A solved unit-commitment schedule. Outer index is the element (generator,
/// VRES unit, line or bus in system order), inner index the period.
struct Schedule {
    std::vector<std::vector<int>> u;         // commitment, exact 0/1
    std::vector<std::vector<double>> v;      // start-up indicator
    std::vector<std::vector<double>> w;      // shut-down indicator
    std::vector<std::vector<double>> p;      // dispatch MW
    std::vector<std::vector<double>> r_spin;    // spinning reserve MW
    std::vector<std::vector<double>> r_nonspin; // non-spinning reserve MW
    std::vector<std::vector<double>> vres_p; // VRES dispatch MW
    std::vector<std::vector<double>> flow;   // line flow MW
    std::vector<std::vector<double>> angle;  // bus angle rad
    std::vector<double> r_total;             // system reserve MW per period
    double objective = 0.0;
    SolverStats stats;

    int periods() const { return static_cast<int>(r_total.size()); }

    /// Scheduled reserve r_{g,t} = spinning + non-spinning.
    double reserve(int g, int t) const { return r_spin[g][t] + r_nonspin[g][t]; }

    std::string to_json() const;
    static Schedule from_json(const std::string& text);
};

} // namespace resa
