#include "resa/loop.hpp"

#include "resa/errors.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <set>

namespace resa {

using nlohmann::json;

namespace {

std::string fmt(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary); // byte-identical across runs
    if (!out) throw DataError("cannot write " + path.string());
    return out;
}

} // namespace

void emit_reports(const ConvergenceReport& report, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);

    // EENS per iteration, total plus one column per scenario.
    {
        std::set<std::string> scenario_ids;
        for (const auto& it : report.iterations) {
            for (const auto& [id, value] : it.eens_per_contingency) scenario_ids.insert(id);
        }
        auto out = open_out(out_dir / "eens_by_iteration.csv");
        out << "k,eens_total_mwh";
        for (const auto& id : scenario_ids) out << ',' << id;
        out << '\n';
        for (const auto& it : report.iterations) {
            out << it.k << ',' << fmt(it.eens_total);
            for (const auto& id : scenario_ids) {
                auto at = it.eens_per_contingency.find(id);
                out << ',' << fmt(at == it.eens_per_contingency.end() ? 0.0 : at->second);
            }
            out << '\n';
        }
    }

    {
        auto out = open_out(out_dir / "cost_by_iteration.csv");
        out << "k,cost_musd\n";
        for (const auto& it : report.iterations) {
            out << it.k << ',' << fmt(it.objective / 1e6) << '\n';
        }
    }

    {
        auto out = open_out(out_dir / "reserve_by_bus.csv");
        out << "k,bus,avg_hourly_reserve_mw\n";
        for (const auto& it : report.iterations) {
            out << it.k << ",TOTAL," << fmt(it.total_avg_reserve) << '\n';
            for (const auto& [bus, reserve] : it.reserve_by_bus) {
                out << it.k << ',' << bus << ',' << fmt(reserve) << '\n';
            }
        }
    }

    {
        auto out = open_out(out_dir / "commitment_delta.csv");
        out << "k,changed_cells,committed_added,committed_removed\n";
        for (const auto& it : report.iterations) {
            out << it.k << ',' << it.commitment_delta << ',' << it.commitments_added << ','
                << it.commitments_removed << '\n';
        }
    }

    const int final_k = report.iterations.empty() ? 0 : report.iterations.back().k;
    {
        auto out =
            open_out(out_dir / ("betas_k" + std::to_string(final_k) + ".csv"));
        out << "scenario,generator,period,beta,beta_pos,beta_neg\n";
        const auto& rafs = report.final_rafs;
        const auto& gens = rafs.generator_ids();
        const int periods = rafs.periods();
        for (const auto& scenario : rafs.scenarios()) {
            for (std::size_t g = 0; g < gens.size(); ++g) {
                for (int t = 0; t < periods; ++t) {
                    out << scenario << ',' << gens[g] << ',' << t << ','
                        << fmt(rafs.beta(scenario, static_cast<int>(g), t)) << ','
                        << fmt(rafs.beta_pos(scenario, static_cast<int>(g), t)) << ','
                        << fmt(rafs.beta_neg(scenario, static_cast<int>(g), t)) << '\n';
                }
            }
        }
    }

    {
        auto shares = report.final_rafs.beta_shares();
        json summary;
        summary["terminated_by"] =
            report.terminated_by == ConvergenceReport::Termination::EensThreshold
                ? "eens_threshold"
                : "max_iterations";
        summary["iterations"] = report.iterations.size();
        summary["final_k"] = final_k;
        summary["final_eens_mwh"] =
            report.iterations.empty() ? 0.0 : report.iterations.back().eens_total;
        summary["final_cost_musd"] =
            report.iterations.empty() ? 0.0 : report.iterations.back().objective / 1e6;
        summary["final_commitment_delta"] =
            report.iterations.empty() ? 0 : report.iterations.back().commitment_delta;
        summary["beta_shares"] = {{"one", shares.one},
                                  {"zero", shares.zero},
                                  {"partial", shares.partial},
                                  {"entries", shares.entries}};
        summary["notices"] = report.notices;
        auto out = open_out(out_dir / "summary.json");
        out << summary.dump(2) << '\n';
    }
}

} // namespace resa
