#include "resa/sensitivity.hpp"

#include "resa/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace resa {

namespace {

constexpr double kPivotTolerance = 1e-10; // relative singularity threshold
constexpr double kBridgeTolerance = 1e-8; // 1 - h_mm below this means bridge

} // namespace

SensitivityBundle compute_sensitivities(const PowerSystem& system) {
    const int n_bus = static_cast<int>(system.buses.size());
    const int n_line = static_cast<int>(system.lines.size());
    const int ref = system.reference_index();

    SensitivityBundle bundle;
    bundle.reference_index = ref;
    bundle.ptdf = Eigen::MatrixXd::Zero(n_line, n_bus);
    bundle.lodf = Eigen::MatrixXd::Zero(n_line, n_line);
    bundle.island_flags.assign(n_line, false);
    bundle.line_ends.reserve(n_line);
    for (const auto& line : system.lines) {
        bundle.line_ends.emplace_back(system.bus_index(line.from_bus),
                                      system.bus_index(line.to_bus));
    }
    if (n_line == 0) return bundle;

    // Susceptance Laplacian, reduced by deleting the reference row/column.
    const int n_red = n_bus - 1;
    auto red = [ref](int bus) { return bus < ref ? bus : bus - 1; };
    Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(n_red, n_red);
    for (int l = 0; l < n_line; ++l) {
        auto [a, b] = bundle.line_ends[l];
        double susceptance = system.lines[l].susceptance;
        if (a != ref && b != ref) {
            laplacian(red(a), red(b)) -= susceptance;
            laplacian(red(b), red(a)) -= susceptance;
        }
        if (a != ref) laplacian(red(a), red(a)) += susceptance;
        if (b != ref) laplacian(red(b), red(b)) += susceptance;
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(laplacian);
    const Eigen::MatrixXd& lu_matrix = lu.matrixLU();
    double max_pivot = 0.0;
    for (int i = 0; i < n_red; ++i) max_pivot = std::max(max_pivot, std::abs(lu_matrix(i, i)));
    for (int i = 0; i < n_red; ++i) {
        if (std::abs(lu_matrix(i, i)) <= kPivotTolerance * max_pivot) {
            throw DataError("singular susceptance system: reduced Laplacian pivot " +
                            std::to_string(i) + " below tolerance");
        }
    }

    // PTDF row of line (a->b): susceptance * (row_a - row_b) of the reduced
    // inverse, with the reference column fixed at zero.
    for (int l = 0; l < n_line; ++l) {
        auto [a, b] = bundle.line_ends[l];
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n_red);
        if (a != ref) rhs(red(a)) += 1.0;
        if (b != ref) rhs(red(b)) -= 1.0;
        Eigen::VectorXd potential = lu.solve(rhs);
        double susceptance = system.lines[l].susceptance;
        for (int k = 0; k < n_bus; ++k) {
            if (k == ref) continue;
            bundle.ptdf(l, k) = susceptance * potential(red(k));
        }
    }

    // LODF from PTDF transfer factors h(l, m) = ptdf(l, from_m) - ptdf(l, to_m).
    for (int m = 0; m < n_line; ++m) {
        auto [a, b] = bundle.line_ends[m];
        double self_transfer = bundle.ptdf(m, a) - bundle.ptdf(m, b);
        double denominator = 1.0 - self_transfer;
        if (denominator < kBridgeTolerance) {
            bundle.island_flags[m] = true;
            bundle.lodf.col(m).setConstant(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        for (int l = 0; l < n_line; ++l) {
            if (l == m) {
                bundle.lodf(l, m) = -1.0;
                continue;
            }
            double transfer = bundle.ptdf(l, a) - bundle.ptdf(l, b);
            bundle.lodf(l, m) = transfer / denominator;
        }
    }

    return bundle;
}

Eigen::MatrixXd outage_sensitivity(const SensitivityBundle& bundle,
                                   const std::vector<int>& outaged_lines) {
    const int n_line = static_cast<int>(bundle.ptdf.rows());
    const int n_bus = static_cast<int>(bundle.ptdf.cols());
    Eigen::MatrixXd result = Eigen::MatrixXd::Zero(n_line, n_bus);
    if (outaged_lines.empty()) return result;

    for (int m : outaged_lines) {
        if (bundle.island_flags[m]) {
            throw IslandingError("outage of line index " + std::to_string(m) +
                                 " disconnects the network");
        }
    }

    const int n_out = static_cast<int>(outaged_lines.size());
    auto transfer = [&](int line, int m) {
        auto [a, b] = bundle.line_ends[m];
        return bundle.ptdf(line, a) - bundle.ptdf(line, b);
    };

    // Simultaneous-outage impact matrix (I - H_SS); pairwise LODF products are
    // not sufficient for multi-line outages.
    Eigen::MatrixXd impact(n_out, n_out);
    for (int u = 0; u < n_out; ++u) {
        for (int v = 0; v < n_out; ++v) {
            double h = transfer(outaged_lines[u], outaged_lines[v]);
            impact(u, v) = (u == v ? 1.0 : 0.0) - h;
        }
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(impact);
    const Eigen::MatrixXd& lu_matrix = lu.matrixLU();
    double max_pivot = 0.0;
    for (int i = 0; i < n_out; ++i) max_pivot = std::max(max_pivot, std::abs(lu_matrix(i, i)));
    for (int i = 0; i < n_out; ++i) {
        if (std::abs(lu_matrix(i, i)) <= kPivotTolerance * std::max(max_pivot, 1.0)) {
            throw IslandingError("simultaneous line outage disconnects the network "
                                 "(singular impact matrix)");
        }
    }

    Eigen::MatrixXd outaged_ptdf(n_out, n_bus);
    for (int u = 0; u < n_out; ++u) outaged_ptdf.row(u) = bundle.ptdf.row(outaged_lines[u]);
    Eigen::MatrixXd distribution = lu.solve(outaged_ptdf); // (I - H_SS)^-1 * PTDF_S

    for (int l = 0; l < n_line; ++l) {
        Eigen::RowVectorXd h_row(n_out);
        for (int u = 0; u < n_out; ++u) h_row(u) = transfer(l, outaged_lines[u]);
        result.row(l) = h_row * distribution;
    }
    // Outaged lines carry zero post-contingency flow.
    for (int m : outaged_lines) result.row(m) = -bundle.ptdf.row(m);

    return result;
}

} // namespace resa
