// Command-line front end over the C API (libresa).

#include "resa/resa.h"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;

constexpr int kExitConverged = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMaxIterations = 2;
constexpr int kExitDataError = 3;
constexpr int kExitSolverError = 4;

int exit_code_for(resa_status status) {
    switch (status) {
    case RESA_OK: return kExitConverged;
    case RESA_E_INVALID_ARG:
    case RESA_E_DATA:
    case RESA_E_IO: return kExitDataError;
    case RESA_E_SOLVER:
    case RESA_E_INTERNAL: return kExitSolverError;
    }
    return kExitSolverError;
}

struct CommonArgs {
    std::string data_path;
    std::string case_path;
    std::string out_dir = "out";
    std::optional<double> alpha;
    std::optional<double> epsilon;
    std::optional<double> lambda;
    bool adverse = false;
    bool vres_outages = false;
    std::optional<int> max_iter;
    std::optional<std::string> solver;
    std::optional<double> mip_gap;
    std::optional<int> threads;
};

void add_common_flags(CLI::App* cmd, CommonArgs& args, bool needs_data) {
    if (needs_data) {
        cmd->add_option("--data", args.data_path, "system data: JSON fixture or CSV directory")
            ->required();
    }
    cmd->add_option("--case", args.case_path, "case configuration file (JSON)");
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--alpha", args.alpha, "risk level for the worst-case set");
    cmd->add_option("--epsilon", args.epsilon, "EENS stopping threshold (MWh)");
    cmd->add_option("--lambda", args.lambda, "activation-factor memory decay");
    cmd->add_flag("--adverse", args.adverse, "use adverse-condition outage rates");
    cmd->add_flag("--vres-outages", args.vres_outages,
                  "include wind-farm capacity-outage scenarios");
    cmd->add_option("--max-iter", args.max_iter, "iteration budget");
    cmd->add_option("--solver", args.solver, "solver backend name");
    cmd->add_option("--mip-gap", args.mip_gap, "relative MIP gap");
    cmd->add_option("--threads", args.threads, "solver thread count");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Case file merged with command-line overrides.
json effective_config(const CommonArgs& args) {
    json config = json::object();
    if (!args.case_path.empty()) config = json::parse(read_file(args.case_path));
    if (args.alpha) {
        config["alpha"] = *args.alpha;
        config["mode"] = "risk_adjusted";
    }
    if (args.epsilon) config["epsilon"] = *args.epsilon;
    if (args.lambda) config["lambda"] = *args.lambda;
    if (args.adverse) config["condition"] = "adverse";
    if (args.vres_outages) config["include_vres_outages"] = true;
    if (args.max_iter) config["max_iterations"] = *args.max_iter;
    json solver = config.value("solver", json::object());
    if (args.solver) solver["name"] = *args.solver;
    if (args.mip_gap) solver["mip_gap"] = *args.mip_gap;
    if (args.threads) solver["threads"] = *args.threads;
    config["solver"] = solver;
    return config;
}

json load_options_from(const json& config, const CommonArgs& args, bool is_directory) {
    json options = config.value("scaling", json::object());
    if (is_directory) {
        options["default_sync_rates"] = true;
        if (args.adverse || config.value("condition", "normal") == std::string("adverse")) {
            options["default_adverse"] = true;
        }
        if (args.vres_outages || config.value("include_vres_outages", false)) {
            options["wind_turbine_for"] = config.value("wind_turbine_for", 0.08);
        }
    }
    return options;
}

struct SystemHandle {
    resa_system* ptr = nullptr;
    ~SystemHandle() { resa_system_free(ptr); }
};

struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { resa_string_free(ptr); }
    std::string str() const { return ptr ? ptr : ""; }
};

int report_failure(const std::string& stage, resa_status status) {
    std::cerr << "error (" << resa_status_name(status) << ") during " << stage << ": "
              << resa_last_error() << '\n';
    return exit_code_for(status);
}

int load_system(const CommonArgs& args, const json& config, SystemHandle& handle) {
    bool is_dir = std::filesystem::is_directory(args.data_path);
    json options = load_options_from(config, args, is_dir);
    resa_status status =
        resa_system_load(args.data_path.c_str(), options.dump().c_str(), &handle.ptr);
    if (status != RESA_OK) return report_failure("data load", status);
    return kExitConverged;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

int cmd_run(const CommonArgs& args, bool resume) {
    json config = effective_config(args);
    SystemHandle system;
    if (int rc = load_system(args, config, system); rc != kExitConverged) return rc;

    OwnedString summary;
    resa_status status = resa_run_loop(system.ptr, config.dump().c_str(),
                                       args.out_dir.c_str(), resume ? 1 : 0, &summary.ptr);
    if (status != RESA_OK) return report_failure("run loop", status);

    json parsed = json::parse(summary.str());
    std::cout << summary.str() << '\n';
    return parsed.value("terminated_by", "") == "eens_threshold" ? kExitConverged
                                                                 : kExitMaxIterations;
}

int cmd_scuc(const CommonArgs& args) {
    json config = effective_config(args);
    SystemHandle system;
    if (int rc = load_system(args, config, system); rc != kExitConverged) return rc;

    OwnedString schedule;
    resa_status status =
        resa_scuc_solve(system.ptr, config.dump().c_str(), &schedule.ptr);
    if (status != RESA_OK) return report_failure("SCUC solve", status);

    auto path = std::filesystem::path(args.out_dir) / "schedule.json";
    write_text(path, schedule.str());
    json parsed = json::parse(schedule.str());
    std::cout << "schedule written to " << path.string() << " (objective "
              << parsed.value("objective", 0.0) << " $)\n";
    return kExitConverged;
}

int cmd_contingency(const CommonArgs& args, const std::string& schedule_path) {
    json config = effective_config(args);
    SystemHandle system;
    if (int rc = load_system(args, config, system); rc != kExitConverged) return rc;

    std::string schedule = read_file(schedule_path);
    auto csv_path = std::filesystem::path(args.out_dir) / "outcomes.csv";
    std::filesystem::create_directories(args.out_dir);
    OwnedString outcomes;
    resa_status status =
        resa_contingency_run(system.ptr, config.dump().c_str(), schedule.c_str(),
                             csv_path.string().c_str(), &outcomes.ptr);
    if (status != RESA_OK) return report_failure("contingency analysis", status);

    write_text(std::filesystem::path(args.out_dir) / "outcomes.json", outcomes.str());
    std::cout << "outcomes written to " << args.out_dir << "\n";
    return kExitConverged;
}

int cmd_risk(const CommonArgs& args, const std::string& schedule_path,
             const std::string& outcomes_path) {
    json config = effective_config(args);
    SystemHandle system;
    if (int rc = load_system(args, config, system); rc != kExitConverged) return rc;

    std::string schedule = read_file(schedule_path);
    std::string outcomes = read_file(outcomes_path);
    OwnedString risk;
    resa_status status = resa_risk_assess(system.ptr, config.dump().c_str(),
                                          schedule.c_str(), outcomes.c_str(), &risk.ptr);
    if (status != RESA_OK) return report_failure("risk assessment", status);

    write_text(std::filesystem::path(args.out_dir) / "risk.json", risk.str());
    json parsed = json::parse(risk.str());
    std::cout << "total EENS: " << parsed.value("eens_total_mwh", 0.0) << " MWh\n";
    return kExitConverged;
}

int cmd_report(const std::string& checkpoints, const std::string& out_dir) {
    resa_status status = resa_report_emit(checkpoints.c_str(), out_dir.c_str());
    if (status != RESA_OK) return report_failure("report emission", status);
    std::cout << "reports written to " << out_dir << "\n";
    return kExitConverged;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"risk-cognizant reserve scheduling toolkit"};
    app.require_subcommand(1);

    CommonArgs args;
    bool resume = false;
    std::string schedule_path, outcomes_path, checkpoints_path;

    auto* run = app.add_subcommand("run", "iterative reserve refinement loop");
    add_common_flags(run, args, true);
    run->add_flag("--resume", resume, "continue from checkpoints in the output directory");

    auto* scuc = app.add_subcommand("scuc", "single base SCUC solve");
    add_common_flags(scuc, args, true);

    auto* contingency =
        app.add_subcommand("contingency", "corrective analysis of a schedule");
    add_common_flags(contingency, args, true);
    contingency->add_option("--schedule", schedule_path, "schedule JSON file")->required();

    auto* risk = app.add_subcommand("risk", "probabilities and EENS for given outcomes");
    add_common_flags(risk, args, true);
    risk->add_option("--schedule", schedule_path, "schedule JSON file")->required();
    risk->add_option("--outcomes", outcomes_path, "outcomes JSON file")->required();

    auto* report = app.add_subcommand("report", "re-emit reports from checkpoints");
    report->add_option("--checkpoints", checkpoints_path, "checkpoint directory")
        ->required();
    report->add_option("--out", args.out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(args, resume);
        if (scuc->parsed()) return cmd_scuc(args);
        if (contingency->parsed()) return cmd_contingency(args, schedule_path);
        if (risk->parsed()) return cmd_risk(args, schedule_path, outcomes_path);
        if (report->parsed()) return cmd_report(checkpoints_path, args.out_dir);
    } catch (const json::exception& e) {
        std::cerr << "error: malformed JSON input: " << e.what() << '\n';
        return kExitDataError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDataError;
    }
    return kExitUsage;
}
