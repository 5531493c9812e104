#pragma once

#include "resa/system.hpp"

#include <Eigen/Dense>

#include <vector>

namespace resa {

/// DC power-flow sensitivities for a fixed topology. Immutable after
/// construction; safe to share across concurrent readers.
///
/// Conventions:
///  - ptdf row for line (i->j) maps nodal injections to the flow B*(theta_i -
///    theta_j); the reference-bus column is identically zero.
///  - lodf(l, m) is the share of line m's pre-outage flow picked up by line l
///    when m trips; diagonal entries are -1. Columns of island-flagged lines
///    are NaN (no finite redistribution exists).
///  - island_flags marks bridge lines whose outage disconnects the graph.
struct SensitivityBundle {
    Eigen::MatrixXd ptdf; // |L| x |N|
    Eigen::MatrixXd lodf; // |L| x |L|
    std::vector<bool> island_flags;

    // Topology snapshot so outage sensitivities can be formed from the bundle
    // alone.
    std::vector<std::pair<int, int>> line_ends; // (from, to) bus indices
    int reference_index = -1;
};

/// Builds PTDF/LODF by reducing the susceptance Laplacian at the reference
/// bus, factoring once and back-substituting per line.
/// Throws DataError if the susceptance system is singular.
SensitivityBundle compute_sensitivities(const PowerSystem& system);

/// Injection sensitivity of post-outage flow changes for the simultaneous
/// outage of `outaged_lines`: post-contingency flow on surviving line l equals
/// f_l + sum_k F(l,k) * p_inj(k) for the unchanged injection vector. Rows of
/// outaged lines are set to -ptdf so the identity yields zero flow on them.
///
/// Throws IslandingError when the outage disconnects the graph (single bridge
/// line, or a singular multi-line impact matrix).
Eigen::MatrixXd outage_sensitivity(const SensitivityBundle& bundle,
                                   const std::vector<int>& outaged_lines);

} // namespace resa
