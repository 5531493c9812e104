#include "resa/loop.hpp"

#include "resa/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>

namespace resa {

using nlohmann::json;

namespace {

double stopwatch() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

std::string mode_name(CaseConfig::Mode mode) {
    return mode == CaseConfig::Mode::Robust ? "robust" : "risk_adjusted";
}

std::string condition_name(ReliabilityModel::Condition condition) {
    return condition == ReliabilityModel::Condition::Adverse ? "adverse" : "normal";
}

} // namespace

void CaseConfig::validate() const {
    if (alpha < 0.0 || alpha > 1.0) throw DataError("case config: alpha must lie in [0,1]");
    if (epsilon < 0.0) throw DataError("case config: epsilon must be >= 0");
    if (lambda < 0.0 || lambda > 1.0) throw DataError("case config: lambda must lie in [0,1]");
    if (max_iterations < 1) throw DataError("case config: max_iterations must be >= 1");
}

std::string CaseConfig::to_json() const {
    json j;
    j["mode"] = mode_name(mode);
    j["alpha"] = alpha;
    j["condition"] = condition_name(condition);
    j["include_vres_outages"] = include_vres_outages;
    j["epsilon"] = epsilon;
    j["lambda"] = lambda;
    j["max_iterations"] = max_iterations;
    j["reserve_policy"] = {{"demand_fraction", reserve_policy.demand_fraction},
                           {"spinning_fraction", reserve_policy.spinning_fraction}};
    j["penalty_weights"] = {{"load_shed_cost", penalty_weights.load_shed_cost},
                            {"overload_cost", penalty_weights.overload_cost}};
    j["solver"] = {{"name", solver.backend},
                   {"mip_gap", solver.mip_gap},
                   {"time_limit", solver.time_limit_seconds},
                   {"threads", solver.threads}};
    j["scaling"] = {{"line_rating_factor", scaling.line_rating_factor},
                    {"wind_availability_factor", scaling.wind_availability_factor}};
    j["wind_turbine_for"] = wind_turbine_for;
    j["max_parallel"] = max_parallel;
    return j.dump(2);
}

CaseConfig CaseConfig::from_json(const std::string& text) {
    CaseConfig config;
    try {
        json j = json::parse(text);
        std::string mode = j.value("mode", "robust");
        if (mode == "robust") {
            config.mode = Mode::Robust;
        } else if (mode == "risk_adjusted") {
            config.mode = Mode::RiskAdjusted;
        } else {
            throw DataError("case config: unknown mode '" + mode + "'");
        }
        config.alpha = j.value("alpha", 0.1);
        std::string condition = j.value("condition", "normal");
        if (condition == "normal") {
            config.condition = ReliabilityModel::Condition::Normal;
        } else if (condition == "adverse") {
            config.condition = ReliabilityModel::Condition::Adverse;
        } else {
            throw DataError("case config: unknown condition '" + condition + "'");
        }
        config.include_vres_outages = j.value("include_vres_outages", false);
        config.epsilon = j.value("epsilon", 1e-6);
        config.lambda = j.value("lambda", 0.0);
        config.max_iterations = j.value("max_iterations", 25);
        if (j.contains("reserve_policy")) {
            const auto& rp = j["reserve_policy"];
            config.reserve_policy.demand_fraction = rp.value("demand_fraction", 0.07);
            config.reserve_policy.spinning_fraction = rp.value("spinning_fraction", 0.5);
        }
        if (j.contains("penalty_weights")) {
            const auto& pw = j["penalty_weights"];
            config.penalty_weights.load_shed_cost = pw.value("load_shed_cost", 1000.0);
            config.penalty_weights.overload_cost = pw.value("overload_cost", 10.0);
        }
        if (j.contains("solver")) {
            const auto& s = j["solver"];
            config.solver.backend = s.value("name", "bnb");
            config.solver.mip_gap = s.value("mip_gap", 1e-3);
            config.solver.time_limit_seconds = s.value("time_limit", 600.0);
            config.solver.threads = s.value("threads", 1);
        }
        if (j.contains("scaling")) {
            const auto& sc = j["scaling"];
            config.scaling.line_rating_factor = sc.value("line_rating_factor", 1.0);
            config.scaling.wind_availability_factor =
                sc.value("wind_availability_factor", 1.0);
        }
        config.wind_turbine_for = j.value("wind_turbine_for", 0.08);
        config.max_parallel = j.value("max_parallel", 0);
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed case config: ") + e.what());
    }
    config.validate();
    return config;
}

std::vector<ContingencyScenario>
build_contingency_set(const PowerSystem& system, const CaseConfig& config,
                      const SensitivityBundle& sens, std::vector<std::string>* notices) {
    std::vector<ContingencyScenario> scenarios;

    for (const auto& gen : system.generators) {
        ContingencyScenario s;
        s.id = "G:" + gen.id;
        s.kind = ContingencyScenario::Kind::Generator;
        s.outaged_generators.push_back(gen.id);
        scenarios.push_back(std::move(s));
    }
    for (std::size_t l = 0; l < system.lines.size(); ++l) {
        if (sens.island_flags[l]) {
            if (notices) {
                notices->push_back("line '" + system.lines[l].id +
                                   "' islands the network when outaged; excluded from "
                                   "the N-1 set");
            }
            continue;
        }
        ContingencyScenario s;
        s.id = "L:" + system.lines[l].id;
        s.kind = ContingencyScenario::Kind::Line;
        s.outaged_lines.push_back(system.lines[l].id);
        scenarios.push_back(std::move(s));
    }
    if (config.include_vres_outages) {
        for (const auto& unit : system.vres_units) {
            if (unit.for_rate <= 0.0 || unit.turbine_count < 1) continue;
            auto bins = wind_copt_quartiles(unit, unit.for_rate);
            for (int q = 0; q < 4; ++q) {
                ContingencyScenario s;
                s.id = "W:" + unit.id + ":q" + std::to_string(q + 1);
                s.kind = ContingencyScenario::Kind::Generator;
                s.outaged_generators.push_back(unit.id);
                s.wind_loss = ContingencyScenario::WindLoss{unit.id, bins[q].loss_mw,
                                                            bins[q].probability};
                scenarios.push_back(std::move(s));
            }
        }
    }
    return scenarios;
}

namespace {

std::map<std::string, std::vector<double>>
scenario_probabilities(const std::vector<ContingencyScenario>& scenarios,
                       const PowerSystem& system, const Schedule& schedule,
                       const ReliabilityModel& model) {
    std::map<std::string, std::vector<double>> probabilities;
    const int T = system.periods();
    for (const auto& scenario : scenarios) {
        std::vector<double> pi(T, 0.0);
        for (int t = 0; t < T; ++t) {
            pi[t] = contingency_probability(scenario, system, schedule, model, t);
        }
        probabilities.emplace(scenario.id, std::move(pi));
    }
    return probabilities;
}

std::map<std::string, double>
mean_probabilities(const std::map<std::string, std::vector<double>>& probabilities) {
    std::map<std::string, double> mean;
    for (const auto& [id, pi] : probabilities) {
        double total = 0.0;
        for (double v : pi) total += v;
        mean[id] = pi.empty() ? 0.0 : total / static_cast<double>(pi.size());
    }
    return mean;
}

IterationReport make_iteration_report(int k, const PowerSystem& system,
                                      const Schedule& schedule,
                                      const RiskAssessment& risk,
                                      const std::vector<std::vector<int>>& base_commitment) {
    IterationReport report;
    report.k = k;
    report.eens_total = risk.eens_total;
    report.eens_per_contingency = risk.eens_per_contingency;
    report.objective = schedule.objective;

    const int T = system.periods();
    double total = 0.0;
    for (std::size_t g = 0; g < system.generators.size(); ++g) {
        double unit_total = 0.0;
        for (int t = 0; t < T; ++t) unit_total += schedule.reserve(static_cast<int>(g), t);
        total += unit_total;
        report.reserve_by_bus[system.generators[g].bus] +=
            unit_total / static_cast<double>(T);
    }
    for (const auto& bus : system.buses) report.reserve_by_bus.emplace(bus.id, 0.0);
    report.total_avg_reserve = total / static_cast<double>(T);

    for (std::size_t g = 0; g < schedule.u.size(); ++g) {
        for (int t = 0; t < T; ++t) {
            int now = schedule.u[g][t];
            int base = base_commitment[g][t];
            if (now != base) {
                ++report.commitment_delta;
                if (now > base) ++report.commitments_added;
                else ++report.commitments_removed;
            }
        }
    }
    return report;
}

json checkpoint_json(const IterationReport& report, const Schedule& schedule,
                     const RafState& rafs,
                     const std::map<std::string, std::vector<double>>& probabilities,
                     double epsilon) {
    json j;
    j["k"] = report.k;
    j["epsilon"] = epsilon;
    j["schedule"] = json::parse(schedule.to_json());
    j["rafs"] = json::parse(rafs.to_json());
    j["probabilities"] = probabilities;
    j["report"] = {{"k", report.k},
                   {"eens_total", report.eens_total},
                   {"eens_per_contingency", report.eens_per_contingency},
                   {"objective", report.objective},
                   {"total_avg_reserve", report.total_avg_reserve},
                   {"reserve_by_bus", report.reserve_by_bus},
                   {"commitment_delta", report.commitment_delta},
                   {"commitments_added", report.commitments_added},
                   {"commitments_removed", report.commitments_removed},
                   {"scuc_seconds", report.scuc_seconds},
                   {"contingency_seconds", report.contingency_seconds},
                   {"risk_seconds", report.risk_seconds}};
    return j;
}

IterationReport report_from_json(const json& j) {
    IterationReport report;
    report.k = j.at("k").get<int>();
    report.eens_total = j.at("eens_total").get<double>();
    report.eens_per_contingency =
        j.at("eens_per_contingency").get<std::map<std::string, double>>();
    report.objective = j.at("objective").get<double>();
    report.total_avg_reserve = j.at("total_avg_reserve").get<double>();
    report.reserve_by_bus = j.at("reserve_by_bus").get<std::map<std::string, double>>();
    report.commitment_delta = j.at("commitment_delta").get<int>();
    report.commitments_added = j.value("commitments_added", 0);
    report.commitments_removed = j.value("commitments_removed", 0);
    report.scuc_seconds = j.value("scuc_seconds", 0.0);
    report.contingency_seconds = j.value("contingency_seconds", 0.0);
    report.risk_seconds = j.value("risk_seconds", 0.0);
    return report;
}

} // namespace

ConvergenceReport run_loop(const PowerSystem& system, const CaseConfig& config,
                           const std::filesystem::path& checkpoint_dir, bool resume,
                           const LogFn& log) {
    config.validate();
    auto say = [&](const std::string& message) {
        if (log) log(message);
    };

    ConvergenceReport result;
    result.final_rafs = RafState(config.lambda);

    SensitivityBundle sens = compute_sensitivities(system);
    auto scenarios = build_contingency_set(system, config, sens, &result.notices);
    for (const auto& notice : result.notices) say(notice);

    ReliabilityModel reliability = ReliabilityModel::from_system(system, config.condition);

    const bool persist = !checkpoint_dir.empty();
    if (persist) std::filesystem::create_directories(checkpoint_dir);
    auto checkpoint_path = [&](int i) {
        return checkpoint_dir / ("iteration_" + std::to_string(i) + ".json");
    };

    RafState rafs(config.lambda);
    Schedule schedule;
    std::vector<std::vector<int>> base_commitment;
    int k = 0;
    double pending_scuc_seconds = 0.0;
    bool resumed = false;

    if (resume && persist) {
        int last = -1;
        while (std::filesystem::exists(checkpoint_path(last + 1))) ++last;
        if (last >= 0) {
            // Earlier iterations are trusted as stored; the last one is
            // re-analyzed so learning can continue from its outcomes.
            for (int i = 0; i < last; ++i) {
                std::ifstream in(checkpoint_path(i));
                json j = json::parse(in);
                result.iterations.push_back(report_from_json(j.at("report")));
            }
            {
                std::ifstream in(checkpoint_path(last));
                json j = json::parse(in);
                schedule = Schedule::from_json(j.at("schedule").dump());
                rafs = RafState::from_json(j.at("rafs").dump());
                pending_scuc_seconds = j.at("report").value("scuc_seconds", 0.0);
            }
            {
                std::ifstream in(checkpoint_path(0));
                json j = json::parse(in);
                base_commitment =
                    Schedule::from_json(j.at("schedule").dump()).u;
            }
            k = last;
            resumed = true;
            say("resuming from stored iteration " + std::to_string(last));
        }
    }

    if (!resumed) {
        say("k=0: solving base SCUC");
        double t0 = stopwatch();
        ScucModel base_model(system, config.reserve_policy);
        schedule = base_model.solve(config.solver);
        pending_scuc_seconds = stopwatch() - t0;
        base_commitment = schedule.u;
    }

    while (true) {
        // Steps 2-3: contingency analysis and risk assessment of the current
        // schedule. Probabilities are recomputed every iteration because they
        // depend on the commitment status.
        double t0 = stopwatch();
        auto outcomes = run_all(system, schedule, scenarios, config.penalty_weights,
                                config.solver, config.max_parallel);
        double contingency_seconds = stopwatch() - t0;

        t0 = stopwatch();
        auto probabilities =
            scenario_probabilities(scenarios, system, schedule, reliability);
        std::map<std::string, std::vector<double>> shed;
        for (const auto& [id, outcome] : outcomes) shed[id] = outcome.shed_per_period();
        RiskAssessment risk = eens(shed, probabilities);
        double risk_seconds = stopwatch() - t0;

        IterationReport report =
            make_iteration_report(k, system, schedule, risk, base_commitment);
        report.scuc_seconds = pending_scuc_seconds;
        report.contingency_seconds = contingency_seconds;
        report.risk_seconds = risk_seconds;
        if (persist) report.raf_snapshot = "iteration_" + std::to_string(k) + ".json";
        result.iterations.push_back(report);

        say("k=" + std::to_string(k) + ": EENS=" + std::to_string(risk.eens_total) +
            " MWh, cost=" + std::to_string(schedule.objective / 1e6) + " M$");

        if (persist) {
            std::ofstream out(checkpoint_path(k));
            out << checkpoint_json(report, schedule, rafs, probabilities, config.epsilon)
                       .dump(2)
                << '\n';
        }

        if (risk.eens_total <= config.epsilon) {
            result.terminated_by = ConvergenceReport::Termination::EensThreshold;
            break;
        }
        if (k >= config.max_iterations) {
            result.terminated_by = ConvergenceReport::Termination::MaxIterations;
            break;
        }

        // Step 4: learn activation factors from the corrective actions; mixed
        // scenarios feed both families.
        std::map<std::string, ContingencyOutcome> gen_like, line_like;
        for (const auto& scenario : scenarios) {
            const auto& outcome = outcomes.at(scenario.id);
            if (!scenario.outaged_generators.empty() || scenario.wind_loss) {
                gen_like.emplace(scenario.id, outcome);
            }
            if (!scenario.outaged_lines.empty()) {
                line_like.emplace(scenario.id, outcome);
            }
        }
        rafs.update_generator_factors(system, schedule, gen_like);
        rafs.update_line_factors(system, line_like);
        rafs.advance_iteration();

        // Step 4b: in risk-adjusted mode pick the alpha-worst-case set from
        // this iteration's risk figures.
        ResaAugmentation aug;
        aug.rafs = &rafs;
        aug.alpha = config.alpha;
        aug.mode = config.mode == CaseConfig::Mode::RiskAdjusted
                       ? ResaAugmentation::Mode::RiskAdjusted
                       : ResaAugmentation::Mode::Robust;
        std::map<std::string, double> weights;
        if (aug.mode == ResaAugmentation::Mode::RiskAdjusted) {
            auto selection = select_worst_case(risk.eens_per_contingency,
                                               mean_probabilities(probabilities),
                                               config.alpha);
            weights = selection.adjusted;
        }

        for (const auto& scenario : scenarios) {
            bool carry;
            double weight = 0.0;
            if (aug.mode == ResaAugmentation::Mode::Robust) {
                carry = rafs.scenario_active(scenario.id);
            } else {
                auto it = weights.find(scenario.id);
                weight = it == weights.end() ? 0.0 : it->second;
                carry = weight > 0.0;
            }
            if (!carry) continue;
            ResaScenario entry;
            entry.scenario = scenario;
            entry.weight = weight;
            if (!scenario.outaged_lines.empty()) {
                std::vector<int> outaged;
                for (const auto& id : scenario.outaged_lines) {
                    outaged.push_back(system.line_index(id));
                }
                entry.outage_sens = outage_sensitivity(sens, outaged);
            }
            aug.scenarios.push_back(std::move(entry));
        }

        // Step 5: reserve-aware re-solve.
        ++k;
        say("k=" + std::to_string(k) + ": solving reserve-aware SCUC with " +
            std::to_string(aug.scenarios.size()) + " carried scenarios");
        t0 = stopwatch();
        ScucModel model(system, config.reserve_policy);
        model.attach_resa_constraints(aug, sens);
        schedule = model.solve(config.solver);
        pending_scuc_seconds = stopwatch() - t0;
    }

    result.final_schedule = schedule;
    result.final_rafs = rafs;
    return result;
}

ConvergenceReport report_from_checkpoints(const std::filesystem::path& checkpoint_dir) {
    ConvergenceReport report;
    report.final_rafs = RafState(0.0);
    double epsilon = 1e-6;
    for (int k = 0;; ++k) {
        auto path = checkpoint_dir / ("iteration_" + std::to_string(k) + ".json");
        if (!std::filesystem::exists(path)) break;
        std::ifstream in(path);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw DataError("malformed checkpoint " + path.string() + ": " + e.what());
        }
        report.iterations.push_back(report_from_json(j.at("report")));
        report.final_schedule = Schedule::from_json(j.at("schedule").dump());
        report.final_rafs = RafState::from_json(j.at("rafs").dump());
        epsilon = j.value("epsilon", 1e-6);
    }
    if (report.iterations.empty()) {
        throw DataError("no checkpoints found under " + checkpoint_dir.string());
    }
    report.terminated_by = report.iterations.back().eens_total <= epsilon
                               ? ConvergenceReport::Termination::EensThreshold
                               : ConvergenceReport::Termination::MaxIterations;
    return report;
}

} // namespace resa
