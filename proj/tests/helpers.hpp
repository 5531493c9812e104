#pragma once

#include "resa/system.hpp"

#include <Eigen/Dense>

#include <random>
#include <string>
#include <vector>

namespace resa::test {

// ---------------------------------------------------------------------------
// Independent DC power-flow oracle: assemble B theta = p on the (optionally
// outaged) topology, pin the reference angle, solve densely and read branch
// flows. Kept free of the production sensitivity path on purpose.
// ---------------------------------------------------------------------------
inline std::vector<double> dc_resolve_flows(const PowerSystem& sys,
                                            const std::vector<double>& injection,
                                            const std::vector<int>& outaged = {}) {
    const int n = static_cast<int>(sys.buses.size());
    const int ref = sys.reference_index();
    std::vector<bool> out(sys.lines.size(), false);
    for (int l : outaged) out[l] = true;

    Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t l = 0; l < sys.lines.size(); ++l) {
        if (out[l]) continue;
        int a = sys.bus_index(sys.lines[l].from_bus);
        int b = sys.bus_index(sys.lines[l].to_bus);
        double s = sys.lines[l].susceptance;
        laplacian(a, a) += s;
        laplacian(b, b) += s;
        laplacian(a, b) -= s;
        laplacian(b, a) -= s;
    }

    Eigen::MatrixXd reduced(n - 1, n - 1);
    Eigen::VectorXd rhs(n - 1);
    auto red = [ref](int b) { return b < ref ? b : b - 1; };
    for (int i = 0; i < n; ++i) {
        if (i == ref) continue;
        rhs(red(i)) = injection[i];
        for (int j = 0; j < n; ++j) {
            if (j == ref) continue;
            reduced(red(i), red(j)) = laplacian(i, j);
        }
    }
    Eigen::VectorXd theta_red = reduced.fullPivLu().solve(rhs);
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
        if (i != ref) theta(i) = theta_red(red(i));
    }

    std::vector<double> flows(sys.lines.size(), 0.0);
    for (std::size_t l = 0; l < sys.lines.size(); ++l) {
        if (out[l]) continue;
        int a = sys.bus_index(sys.lines[l].from_bus);
        int b = sys.bus_index(sys.lines[l].to_bus);
        flows[l] = sys.lines[l].susceptance * (theta(a) - theta(b));
    }
    return flows;
}

// Tarjan bridge finding on the multigraph; parallel edges handled by skipping
// the arriving edge id rather than the parent vertex.
inline std::vector<bool> bridge_oracle(const PowerSystem& sys) {
    const int n = static_cast<int>(sys.buses.size());
    const int m = static_cast<int>(sys.lines.size());
    std::vector<std::vector<std::pair<int, int>>> adj(n); // (neighbor, edge id)
    for (int l = 0; l < m; ++l) {
        int a = sys.bus_index(sys.lines[l].from_bus);
        int b = sys.bus_index(sys.lines[l].to_bus);
        adj[a].push_back({b, l});
        adj[b].push_back({a, l});
    }
    std::vector<bool> bridges(m, false);
    std::vector<int> tin(n, -1), low(n, 0);
    int timer = 0;
    // iterative DFS
    struct Frame {
        int v;
        int from_edge;
        std::size_t next = 0;
    };
    for (int root = 0; root < n; ++root) {
        if (tin[root] >= 0) continue;
        std::vector<Frame> stack{{root, -1}};
        tin[root] = low[root] = timer++;
        while (!stack.empty()) {
            Frame& frame = stack.back();
            if (frame.next < adj[frame.v].size()) {
                auto [to, edge] = adj[frame.v][frame.next++];
                if (edge == frame.from_edge) continue;
                if (tin[to] >= 0) {
                    low[frame.v] = std::min(low[frame.v], tin[to]);
                } else {
                    tin[to] = low[to] = timer++;
                    stack.push_back({to, edge});
                }
            } else {
                int v = frame.v;
                int edge = frame.from_edge;
                stack.pop_back();
                if (!stack.empty()) {
                    int parent = stack.back().v;
                    low[parent] = std::min(low[parent], low[v]);
                    if (low[v] > tin[parent]) bridges[edge] = true;
                }
            }
        }
    }
    return bridges;
}

inline std::vector<double> random_balanced_injection(int n, std::mt19937& rng,
                                                     double scale = 100.0) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    std::vector<double> injection(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        injection[i] = dist(rng);
        total += injection[i];
    }
    for (int i = 0; i < n; ++i) injection[i] -= total / n;
    return injection;
}

inline std::string fixture_path(const std::string& name) {
#ifdef RESA_FIXTURE_DIR
    return std::string(RESA_FIXTURE_DIR) + "/" + name;
#else
    return "tests/fixtures/" + name;
#endif
}

} // namespace resa::test
