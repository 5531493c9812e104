#include "resa/resa.h"

#include "resa/contingency.hpp"
#include "resa/errors.hpp"
#include "resa/loop.hpp"
#include "resa/raf.hpp"
#include "resa/reliability.hpp"
#include "resa/schedule.hpp"
#include "resa/scuc.hpp"
#include "resa/sensitivity.hpp"
#include "resa/system.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <string>

using nlohmann::json;

struct resa_system {
    resa::PowerSystem system;
};

namespace {

thread_local std::string g_last_error;

char* copy_out(const std::string& text) {
    char* buffer = static_cast<char*>(std::malloc(text.size() + 1));
    if (!buffer) return nullptr;
    std::memcpy(buffer, text.c_str(), text.size() + 1);
    return buffer;
}

resa_status fail(resa_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

template <typename Fn> resa_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const resa::DataError& e) {
        return fail(RESA_E_DATA, e.what());
    } catch (const resa::SolverError& e) {
        return fail(RESA_E_SOLVER, e.what());
    } catch (const resa::IslandingError& e) {
        return fail(RESA_E_DATA, e.what());
    } catch (const resa::InternalError& e) {
        return fail(RESA_E_INTERNAL, e.what());
    } catch (const json::exception& e) {
        return fail(RESA_E_DATA, std::string("malformed JSON: ") + e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        return fail(RESA_E_IO, e.what());
    } catch (const std::exception& e) {
        return fail(RESA_E_INTERNAL, e.what());
    } catch (...) {
        return fail(RESA_E_INTERNAL, "unknown failure");
    }
}

resa::LoadOptions parse_load_options(const char* options_json) {
    resa::LoadOptions options;
    if (!options_json || !*options_json) return options;
    json j = json::parse(options_json, nullptr, true);
    options.line_rating_factor = j.value("line_rating_factor", 1.0);
    options.wind_availability_factor = j.value("wind_availability_factor", 1.0);
    options.default_sync_rates = j.value("default_sync_rates", false);
    options.default_adverse = j.value("default_adverse", false);
    options.wind_turbine_for = j.value("wind_turbine_for", 0.0);
    return options;
}

resa::CaseConfig parse_config(const char* config_json) {
    if (!config_json || !*config_json) return resa::CaseConfig{};
    return resa::CaseConfig::from_json(config_json);
}

} // namespace

extern "C" {

const char* resa_version(void) { return "0.1.0"; }

const char* resa_status_name(resa_status status) {
    switch (status) {
    case RESA_OK: return "ok";
    case RESA_E_INVALID_ARG: return "invalid_argument";
    case RESA_E_DATA: return "data_error";
    case RESA_E_SOLVER: return "solver_error";
    case RESA_E_INTERNAL: return "internal_error";
    case RESA_E_IO: return "io_error";
    }
    return "unknown";
}

const char* resa_last_error(void) { return g_last_error.c_str(); }

void resa_string_free(char* text) { std::free(text); }

resa_status resa_system_load(const char* path, const char* options_json,
                             resa_system** out_system) {
    if (!path || !out_system) return fail(RESA_E_INVALID_ARG, "null argument");
    *out_system = nullptr;
    return guarded([&]() {
        auto options = parse_load_options(options_json);
        auto handle = std::make_unique<resa_system>();
        handle->system = resa::load_system(path, options);
        *out_system = handle.release();
        return RESA_OK;
    });
}

void resa_system_free(resa_system* system) { delete system; }

resa_status resa_system_info(const resa_system* system, char** out_json) {
    if (!system || !out_json) return fail(RESA_E_INVALID_ARG, "null argument");
    *out_json = nullptr;
    return guarded([&]() {
        const auto& sys = system->system;
        json j;
        j["buses"] = sys.buses.size();
        j["lines"] = sys.lines.size();
        j["generators"] = sys.generators.size();
        j["vres_units"] = sys.vres_units.size();
        j["periods"] = sys.periods();
        j["reference_bus"] = sys.reference_bus;
        json gens = json::array();
        for (const auto& gen : sys.generators) gens.push_back(gen.id);
        j["generator_ids"] = std::move(gens);
        json lines = json::array();
        for (const auto& line : sys.lines) lines.push_back(line.id);
        j["line_ids"] = std::move(lines);
        *out_json = copy_out(j.dump(2));
        return *out_json ? RESA_OK : fail(RESA_E_INTERNAL, "allocation failure");
    });
}

resa_status resa_scuc_solve(const resa_system* system, const char* config_json,
                            char** out_schedule_json) {
    if (!system || !out_schedule_json) return fail(RESA_E_INVALID_ARG, "null argument");
    *out_schedule_json = nullptr;
    return guarded([&]() {
        auto config = parse_config(config_json);
        resa::ScucModel model(system->system, config.reserve_policy);
        resa::Schedule schedule = model.solve(config.solver);
        *out_schedule_json = copy_out(schedule.to_json());
        return *out_schedule_json ? RESA_OK : fail(RESA_E_INTERNAL, "allocation failure");
    });
}

resa_status resa_contingency_run(const resa_system* system, const char* config_json,
                                 const char* schedule_json, const char* csv_path,
                                 char** out_outcomes_json) {
    if (!system || !schedule_json || !out_outcomes_json) {
        return fail(RESA_E_INVALID_ARG, "null argument");
    }
    *out_outcomes_json = nullptr;
    return guarded([&]() {
        auto config = parse_config(config_json);
        auto schedule = resa::Schedule::from_json(schedule_json);
        auto sens = resa::compute_sensitivities(system->system);
        auto scenarios = resa::build_contingency_set(system->system, config, sens);
        auto outcomes = resa::run_all(system->system, schedule, scenarios,
                                      config.penalty_weights, config.solver,
                                      config.max_parallel);
        if (csv_path && *csv_path) resa::write_outcomes_csv(csv_path, outcomes);
        json j;
        json out = json::object();
        for (const auto& [id, outcome] : outcomes) {
            out[id] = json::parse(outcome.to_json());
        }
        j["outcomes"] = std::move(out);
        *out_outcomes_json = copy_out(j.dump(2));
        return *out_outcomes_json ? RESA_OK : fail(RESA_E_INTERNAL, "allocation failure");
    });
}

resa_status resa_risk_assess(const resa_system* system, const char* config_json,
                             const char* schedule_json, const char* outcomes_json,
                             char** out_risk_json) {
    if (!system || !schedule_json || !outcomes_json || !out_risk_json) {
        return fail(RESA_E_INVALID_ARG, "null argument");
    }
    *out_risk_json = nullptr;
    return guarded([&]() {
        auto config = parse_config(config_json);
        auto schedule = resa::Schedule::from_json(schedule_json);
        auto sens = resa::compute_sensitivities(system->system);
        auto scenarios = resa::build_contingency_set(system->system, config, sens);
        auto model = resa::ReliabilityModel::from_system(system->system, config.condition);

        json parsed = json::parse(outcomes_json);
        std::map<std::string, std::vector<double>> shed;
        for (auto it = parsed.at("outcomes").begin(); it != parsed.at("outcomes").end();
             ++it) {
            auto outcome = resa::ContingencyOutcome::from_json(it.value().dump());
            shed[it.key()] = outcome.shed_per_period();
        }

        std::map<std::string, std::vector<double>> probabilities;
        for (const auto& scenario : scenarios) {
            if (shed.count(scenario.id) == 0) continue;
            std::vector<double> pi(system->system.periods(), 0.0);
            for (int t = 0; t < system->system.periods(); ++t) {
                pi[t] = resa::contingency_probability(scenario, system->system, schedule,
                                                      model, t);
            }
            probabilities.emplace(scenario.id, std::move(pi));
        }
        auto risk = resa::eens(shed, probabilities);

        json j;
        j["probabilities"] = risk.probabilities;
        j["eens_per_contingency"] = risk.eens_per_contingency;
        j["eens_total_mwh"] = risk.eens_total;
        *out_risk_json = copy_out(j.dump(2));
        return *out_risk_json ? RESA_OK : fail(RESA_E_INTERNAL, "allocation failure");
    });
}

resa_status resa_run_loop(const resa_system* system, const char* config_json,
                          const char* out_dir, int resume, char** out_summary_json) {
    if (!system || !out_dir || !out_summary_json) {
        return fail(RESA_E_INVALID_ARG, "null argument");
    }
    *out_summary_json = nullptr;
    return guarded([&]() {
        auto config = parse_config(config_json);
        std::filesystem::path base(out_dir);
        auto report = resa::run_loop(system->system, config, base / "checkpoints",
                                     resume != 0);
        resa::emit_reports(report, base);

        json j;
        j["terminated_by"] =
            report.terminated_by == resa::ConvergenceReport::Termination::EensThreshold
                ? "eens_threshold"
                : "max_iterations";
        j["iterations"] = report.iterations.size();
        j["final_k"] = report.iterations.empty() ? 0 : report.iterations.back().k;
        j["final_eens_mwh"] =
            report.iterations.empty() ? 0.0 : report.iterations.back().eens_total;
        j["final_cost"] =
            report.iterations.empty() ? 0.0 : report.iterations.back().objective;
        j["notices"] = report.notices;
        *out_summary_json = copy_out(j.dump(2));
        return *out_summary_json ? RESA_OK : fail(RESA_E_INTERNAL, "allocation failure");
    });
}

resa_status resa_report_emit(const char* checkpoint_dir, const char* out_dir) {
    if (!checkpoint_dir || !out_dir) return fail(RESA_E_INVALID_ARG, "null argument");
    return guarded([&]() {
        auto report = resa::report_from_checkpoints(checkpoint_dir);
        resa::emit_reports(report, out_dir);
        return RESA_OK;
    });
}

} // extern "C"
