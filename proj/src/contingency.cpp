#include "resa/contingency.hpp"

#include "resa/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <thread>

namespace resa {

using milp::kInfinity;
using milp::Sense;
using milp::Term;

std::vector<double> ContingencyOutcome::shed_per_period() const {
    if (load_shed.empty()) return {};
    std::vector<double> shed(load_shed.front().size(), 0.0);
    for (const auto& bus : load_shed) {
        for (std::size_t t = 0; t < bus.size(); ++t) shed[t] += bus[t];
    }
    return shed;
}

double ContingencyOutcome::total_shed() const {
    double total = 0.0;
    for (const auto& bus : load_shed) {
        for (double v : bus) total += v;
    }
    return total;
}

double ContingencyOutcome::total_overload() const {
    double total = 0.0;
    for (const auto& line : overload_pos) {
        for (double v : line) total += v;
    }
    for (const auto& line : overload_neg) {
        for (double v : line) total += v;
    }
    return total;
}

std::string ContingencyOutcome::to_json() const {
    nlohmann::json j;
    j["scenario_id"] = scenario_id;
    j["load_shed"] = load_shed;
    j["overload_pos"] = overload_pos;
    j["overload_neg"] = overload_neg;
    j["redispatch"] = redispatch;
    j["activation"] = activation;
    j["vres_redispatch"] = vres_redispatch;
    j["objective"] = objective;
    j["deliverable"] = deliverable;
    return j.dump(2);
}

ContingencyOutcome ContingencyOutcome::from_json(const std::string& text) {
    ContingencyOutcome o;
    try {
        nlohmann::json j = nlohmann::json::parse(text);
        o.scenario_id = j.at("scenario_id").get<std::string>();
        o.load_shed = j.at("load_shed").get<std::vector<std::vector<double>>>();
        o.overload_pos = j.at("overload_pos").get<std::vector<std::vector<double>>>();
        o.overload_neg = j.at("overload_neg").get<std::vector<std::vector<double>>>();
        o.redispatch = j.at("redispatch").get<std::vector<std::vector<double>>>();
        o.activation = j.at("activation").get<std::vector<std::vector<double>>>();
        o.vres_redispatch = j.at("vres_redispatch").get<std::vector<std::vector<double>>>();
        o.objective = j.at("objective").get<double>();
        o.deliverable = j.at("deliverable").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed outcome JSON: ") + e.what());
    }
    return o;
}

namespace {

struct AvailabilityBox {
    double lo = 0.0;
    double hi = 0.0;
};

// Short-term dispatch window: outaged units pinned at zero; online units keep
// the 10-minute ramp band around the schedule (fast-start units may fall below
// minimum output); offline fast-start units may start into [0, min(Pmax,R10)].
AvailabilityBox dispatch_box(const Generator& gen, bool outaged, int committed,
                             double scheduled) {
    AvailabilityBox box;
    if (outaged) return box;
    if (committed) {
        double lo = gen.fast_start ? 0.0 : gen.p_min;
        box.lo = std::max(lo, scheduled - gen.ramp_10min);
        box.hi = std::min(gen.p_max, scheduled + gen.ramp_10min);
        box.lo = std::min(box.lo, box.hi);
    } else if (gen.fast_start) {
        box.lo = 0.0;
        box.hi = std::min(gen.p_max, gen.ramp_10min);
    }
    return box;
}

} // namespace

ContingencyOutcome corrective_dispatch(const PowerSystem& system, const Schedule& schedule,
                                       const ContingencyScenario& scenario,
                                       const PenaltyWeights& weights,
                                       const milp::SolverConfig& solver) {
    if (!(weights.load_shed_cost > weights.overload_cost && weights.overload_cost > 0.0)) {
        throw DataError("penalty weights: requires load_shed_cost > overload_cost > 0");
    }

    const int G = static_cast<int>(system.generators.size());
    const int W = static_cast<int>(system.vres_units.size());
    const int L = static_cast<int>(system.lines.size());
    const int N = static_cast<int>(system.buses.size());
    const int T = system.periods();

    std::vector<bool> gen_out(G, false);
    std::vector<bool> line_out(L, false);
    for (const auto& id : scenario.outaged_generators) {
        if (system.has_generator(id)) {
            gen_out[system.generator_index(id)] = true;
        } else if (!system.has_vres(id)) {
            throw DataError("scenario '" + scenario.id + "': unknown element '" + id + "'");
        }
    }
    for (const auto& id : scenario.outaged_lines) line_out[system.line_index(id)] = true;

    // Wind-quartile scenarios shrink the affected farm's availability.
    std::vector<std::vector<double>> available(W);
    for (int w = 0; w < W; ++w) available[w] = system.vres_units[w].forecast;
    if (scenario.wind_loss) {
        int w = system.vres_index(scenario.wind_loss->unit);
        for (int t = 0; t < T; ++t) {
            available[w][t] =
                std::max(0.0, available[w][t] - scenario.wind_loss->expected_mw);
        }
    }

    // Islands of the surviving topology; each island gets its first bus (in
    // system order) as angle reference.
    std::vector<int> island(N, -1);
    {
        int next_island = 0;
        for (int seed = 0; seed < N; ++seed) {
            if (island[seed] >= 0) continue;
            std::vector<int> stack{seed};
            island[seed] = next_island;
            while (!stack.empty()) {
                int at = stack.back();
                stack.pop_back();
                for (int l = 0; l < L; ++l) {
                    if (line_out[l]) continue;
                    int i = system.bus_index(system.lines[l].from_bus);
                    int j = system.bus_index(system.lines[l].to_bus);
                    int other = i == at ? j : (j == at ? i : -1);
                    if (other >= 0 && island[other] < 0) {
                        island[other] = island[seed];
                        stack.push_back(other);
                    }
                }
            }
            ++next_island;
        }
    }
    std::vector<int> island_reference;
    {
        std::set<int> seen;
        for (int b = 0; b < N; ++b) {
            if (seen.insert(island[b]).second) island_reference.push_back(b);
        }
    }

    ContingencyOutcome outcome;
    outcome.scenario_id = scenario.id;
    auto grid = [T](int count) {
        return std::vector<std::vector<double>>(count, std::vector<double>(T, 0.0));
    };
    outcome.load_shed = grid(N);
    outcome.overload_pos = grid(L);
    outcome.overload_neg = grid(L);
    outcome.redispatch = grid(G);
    outcome.activation = grid(G);
    outcome.vres_redispatch = grid(W);

    milp::SolverConfig lp_config = solver;
    lp_config.backend = solver.backend.empty() ? "bnb" : solver.backend;

    // Periods decouple: the corrective model anchors to the schedule, not to
    // the previous contingency period.
    for (int t = 0; t < T; ++t) {
        milp::Model lp;
        std::vector<int> vp(G), vw(W), vth(N), vshed(N);
        std::vector<int> vf(L, -1), vsp(L, -1), vsn(L, -1);

        for (int g = 0; g < G; ++g) {
            auto box = dispatch_box(system.generators[g], gen_out[g], schedule.u[g][t],
                                    schedule.p[g][t]);
            vp[g] = lp.add_variable("p:" + system.generators[g].id, box.lo, box.hi);
        }
        for (int w = 0; w < W; ++w) {
            const auto& unit = system.vres_units[w];
            double hi = available[w][t];
            double lo = unit.dispatchable ? 0.0 : hi;
            vw[w] = lp.add_variable("pw:" + unit.id, lo, hi);
        }
        for (int b = 0; b < N; ++b) {
            bool fixed = std::find(island_reference.begin(), island_reference.end(), b) !=
                         island_reference.end();
            vth[b] = lp.add_variable("theta:" + system.buses[b].id,
                                     fixed ? 0.0 : -kInfinity, fixed ? 0.0 : kInfinity);
            double cap = std::max(0.0, system.buses[b].demand[t]);
            vshed[b] = lp.add_variable("shed:" + system.buses[b].id, 0.0, cap,
                                       milp::VarType::Continuous, weights.load_shed_cost);
        }
        for (int l = 0; l < L; ++l) {
            if (line_out[l]) continue;
            const auto& line = system.lines[l];
            vf[l] = lp.add_variable("f:" + line.id, -kInfinity, kInfinity);
            vsp[l] = lp.add_variable("s+:" + line.id, 0.0, kInfinity,
                                     milp::VarType::Continuous, weights.overload_cost);
            vsn[l] = lp.add_variable("s-:" + line.id, 0.0, kInfinity,
                                     milp::VarType::Continuous, weights.overload_cost);
            int i = system.bus_index(line.from_bus);
            int j = system.bus_index(line.to_bus);
            lp.add_constraint("flow:" + line.id,
                              {{vf[l], 1.0},
                               {vth[i], -line.susceptance},
                               {vth[j], line.susceptance}},
                              Sense::Equal, 0.0);
            lp.add_constraint("limit_hi:" + line.id, {{vf[l], 1.0}, {vsp[l], -1.0}},
                              Sense::LessEqual, line.rating_emergency);
            lp.add_constraint("limit_lo:" + line.id, {{vf[l], -1.0}, {vsn[l], -1.0}},
                              Sense::LessEqual, line.rating_emergency);
        }
        for (int b = 0; b < N; ++b) {
            std::vector<Term> terms{{vshed[b], 1.0}};
            for (int g = 0; g < G; ++g) {
                if (system.bus_index(system.generators[g].bus) == b) {
                    terms.push_back({vp[g], 1.0});
                }
            }
            for (int w = 0; w < W; ++w) {
                if (system.bus_index(system.vres_units[w].bus) == b) {
                    terms.push_back({vw[w], 1.0});
                }
            }
            for (int l = 0; l < L; ++l) {
                if (line_out[l]) continue;
                int i = system.bus_index(system.lines[l].from_bus);
                int j = system.bus_index(system.lines[l].to_bus);
                if (j == b) terms.push_back({vf[l], 1.0});
                if (i == b) terms.push_back({vf[l], -1.0});
            }
            lp.add_constraint("balance:" + system.buses[b].id, std::move(terms),
                              Sense::Equal, system.buses[b].demand[t]);
        }

        milp::Solution sol = milp::solve(lp, lp_config);
        if (sol.status != milp::SolveStatus::Optimal) {
            throw InternalError("corrective dispatch LP for scenario '" + scenario.id +
                                "' period " + std::to_string(t) + " ended " +
                                milp::to_string(sol.status) +
                                "; the slack formulation should always be feasible");
        }

        for (int b = 0; b < N; ++b) outcome.load_shed[b][t] = sol.x[vshed[b]];
        for (int l = 0; l < L; ++l) {
            if (line_out[l]) continue;
            outcome.overload_pos[l][t] = sol.x[vsp[l]];
            outcome.overload_neg[l][t] = sol.x[vsn[l]];
        }
        for (int g = 0; g < G; ++g) {
            outcome.redispatch[g][t] = sol.x[vp[g]];
            outcome.activation[g][t] = sol.x[vp[g]] - schedule.p[g][t];
        }
        for (int w = 0; w < W; ++w) outcome.vres_redispatch[w][t] = sol.x[vw[w]];
        outcome.objective += sol.objective;
    }

    outcome.deliverable = outcome.total_shed() + outcome.total_overload() <= 1e-9;
    return outcome;
}

std::map<std::string, ContingencyOutcome>
run_all(const PowerSystem& system, const Schedule& schedule,
        const std::vector<ContingencyScenario>& scenarios, const PenaltyWeights& weights,
        const milp::SolverConfig& solver, int max_parallel) {
    {
        std::set<std::string> ids;
        for (const auto& scenario : scenarios) {
            if (!ids.insert(scenario.id).second) {
                throw DataError("duplicate scenario id '" + scenario.id + "'");
            }
        }
    }

    std::vector<ContingencyOutcome> results(scenarios.size());
    std::vector<std::string> failures(scenarios.size());
    std::atomic<std::size_t> next{0};

    int workers = max_parallel > 0
                      ? max_parallel
                      : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers, static_cast<int>(scenarios.size())));

    auto worker = [&]() {
        while (true) {
            std::size_t at = next.fetch_add(1);
            if (at >= scenarios.size()) break;
            try {
                results[at] =
                    corrective_dispatch(system, schedule, scenarios[at], weights, solver);
            } catch (const std::exception& e) {
                failures[at] = e.what();
            }
        }
    };

    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& thread : pool) thread.join();
    }

    std::string aggregated;
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        if (!failures[i].empty()) {
            aggregated += "\n  [" + scenarios[i].id + "] " + failures[i];
        }
    }
    if (!aggregated.empty()) {
        throw InternalError("contingency analysis failures:" + aggregated);
    }

    std::map<std::string, ContingencyOutcome> outcomes;
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        outcomes.emplace(scenarios[i].id, std::move(results[i]));
    }
    return outcomes;
}

void write_outcomes_csv(const std::filesystem::path& path,
                        const std::map<std::string, ContingencyOutcome>& outcomes) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << "scenario,period,shed_mw,overload_pos_mw,overload_neg_mw,objective\n";
    char buffer[64];
    auto fmt = [&buffer](double v) {
        std::snprintf(buffer, sizeof(buffer), "%.10g", v);
        return std::string(buffer);
    };
    for (const auto& [id, outcome] : outcomes) {
        auto shed = outcome.shed_per_period();
        for (std::size_t t = 0; t < shed.size(); ++t) {
            double pos = 0.0, neg = 0.0;
            for (const auto& line : outcome.overload_pos) pos += line[t];
            for (const auto& line : outcome.overload_neg) neg += line[t];
            out << id << ',' << t << ',' << fmt(shed[t]) << ',' << fmt(pos) << ','
                << fmt(neg) << ',' << fmt(outcome.objective) << '\n';
        }
    }
}

} // namespace resa
