#include "resa/reliability.hpp"

#include "resa/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace resa {

double orr(double q, double mission_time) {
    if (q < 0.0) throw DataError("orr: negative failure rate");
    if (mission_time <= 0.0) throw DataError("orr: mission time must be positive");
    return 1.0 - std::exp(-q * mission_time);
}

AdverseRates adverse_rates(double q, double hours_total, double hours_adverse,
                           double adverse_share) {
    if (q < 0.0) throw DataError("adverse_rates: negative failure rate");
    if (!(hours_adverse > 0.0 && hours_adverse < hours_total)) {
        throw DataError("adverse_rates: requires 0 < hours_adverse < hours_total");
    }
    if (adverse_share < 0.0 || adverse_share > 1.0) {
        throw DataError("adverse_rates: adverse_share must lie in [0,1]");
    }
    AdverseRates rates;
    rates.normal = q * hours_total / (hours_total - hours_adverse) * (1.0 - adverse_share);
    rates.adverse = q * (hours_total / hours_adverse) * adverse_share;
    return rates;
}

double generator_unavailability(double committed, double starting, double sync_fail,
                                double orr_value) {
    auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!in_unit(committed) || !in_unit(starting) || !in_unit(sync_fail) ||
        !in_unit(orr_value)) {
        throw DataError("generator_unavailability: arguments must lie in [0,1]");
    }
    return committed * (1.0 - (1.0 - starting * sync_fail) * (1.0 - orr_value));
}

std::array<WindBin, 4> wind_copt_quartiles(const VresUnit& unit, double turbine_for) {
    if (turbine_for < 0.0 || turbine_for > 1.0) {
        throw DataError("wind_copt_quartiles: turbine_for must lie in [0,1]");
    }
    if (unit.turbine_count < 1) {
        throw DataError("wind_copt_quartiles: unit '" + unit.id + "' has no turbines");
    }

    const int n = unit.turbine_count;
    const double p = turbine_for;

    // Binomial capacity-outage table, atoms ordered by lost capacity.
    std::vector<double> pmf(n + 1);
    pmf[0] = std::pow(1.0 - p, n);
    for (int k = 1; k <= n; ++k) {
        if (p >= 1.0) {
            pmf[k] = (k == n) ? 1.0 : 0.0;
            continue;
        }
        pmf[k] = pmf[k - 1] * (static_cast<double>(n - k + 1) / k) * (p / (1.0 - p));
    }
    if (p >= 1.0) {
        std::fill(pmf.begin(), pmf.end() - 1, 0.0);
        pmf[n] = 1.0;
    }

    // Split the mass into four bins of exactly 0.25, dividing straddling atoms
    // proportionally; this preserves the mean lost capacity.
    std::array<WindBin, 4> bins{};
    std::array<double, 4> weighted_loss{0.0, 0.0, 0.0, 0.0};
    int bin = 0;
    double room = 0.25;
    for (int k = 0; k <= n; ++k) {
        double mass = pmf[k];
        double loss = k * unit.turbine_rating;
        while (mass > 1e-15 && bin < 4) {
            double take = std::min(mass, room);
            weighted_loss[bin] += take * loss;
            room -= take;
            mass -= take;
            if (room <= 1e-12 && bin < 3) {
                ++bin;
                room = 0.25;
            }
        }
    }
    for (int b = 0; b < 4; ++b) {
        bins[b].loss_mw = weighted_loss[b] / 0.25;
        bins[b].probability = 0.25;
    }
    return bins;
}

ReliabilityModel ReliabilityModel::from_system(const PowerSystem& system,
                                               Condition condition, double mission_time) {
    ReliabilityModel model;
    model.condition_ = condition;
    model.mission_time_ = mission_time;

    for (const auto& gen : system.generators) {
        double base = orr(gen.for_rate, mission_time);
        double adverse = base;
        if (gen.adverse_stats) {
            auto rates = adverse_rates(gen.for_rate, gen.adverse_stats->hours_total,
                                       gen.adverse_stats->hours_adverse,
                                       gen.adverse_stats->adverse_share);
            adverse = orr(rates.adverse, mission_time);
        }
        model.gen_orr_normal_.push_back(base);
        model.gen_orr_adverse_.push_back(adverse);
        model.gen_sync_fail_.push_back(gen.sync_fail_rate);
    }
    for (const auto& line : system.lines) {
        double base = orr(line.for_rate, mission_time);
        double adverse = base;
        if (line.adverse_stats) {
            auto rates = adverse_rates(line.for_rate, line.adverse_stats->hours_total,
                                       line.adverse_stats->hours_adverse,
                                       line.adverse_stats->adverse_share);
            adverse = orr(rates.adverse, mission_time);
        }
        model.line_orr_normal_.push_back(base);
        model.line_orr_adverse_.push_back(adverse);
    }
    return model;
}

double contingency_probability(const ContingencyScenario& scenario,
                               const PowerSystem& system, const Schedule& schedule,
                               const ReliabilityModel& model, int t) {
    std::vector<bool> gen_out(system.generators.size(), false);
    std::vector<bool> line_out(system.lines.size(), false);
    for (const auto& id : scenario.outaged_generators) {
        if (system.has_generator(id)) {
            gen_out[system.generator_index(id)] = true;
        } else if (!system.has_vres(id)) {
            throw DataError("scenario '" + scenario.id + "': unknown element '" + id + "'");
        }
    }
    for (const auto& id : scenario.outaged_lines) line_out[system.line_index(id)] = true;

    auto unavailability = [&](int g) {
        return generator_unavailability(schedule.u[g][t], schedule.v[g][t],
                                        model.sync_fail(g), model.generator_orr(g));
    };

    // Probability that every operational element performs as intended.
    // Elements with zero failure rate are skipped for numerical stability;
    // wind farms are conditional COPT bins, not independent elements.
    double probability = 1.0;
    for (std::size_t g = 0; g < system.generators.size(); ++g) {
        if (gen_out[g]) continue;
        if (model.generator_orr(g) <= 0.0 && model.sync_fail(g) <= 0.0) continue;
        probability *= 1.0 - unavailability(static_cast<int>(g));
    }
    for (std::size_t l = 0; l < system.lines.size(); ++l) {
        if (line_out[l]) continue;
        if (model.line_orr(static_cast<int>(l)) <= 0.0) continue;
        probability *= 1.0 - model.line_orr(static_cast<int>(l));
    }

    // Outaged generators: uncommitted units contribute a factor of one.
    for (std::size_t g = 0; g < system.generators.size(); ++g) {
        if (!gen_out[g]) continue;
        double u = schedule.u[g][t];
        probability *= unavailability(static_cast<int>(g)) + (1.0 - u);
    }
    for (std::size_t l = 0; l < system.lines.size(); ++l) {
        if (line_out[l]) probability *= model.line_orr(static_cast<int>(l));
    }

    if (scenario.wind_loss) probability *= scenario.wind_loss->bin_probability;

    return probability;
}

RiskAssessment eens(const std::map<std::string, std::vector<double>>& shed_by_scenario,
                    const std::map<std::string, std::vector<double>>& probabilities) {
    if (shed_by_scenario.size() != probabilities.size()) {
        throw DataError("eens: outcome and probability scenario sets differ in size");
    }
    RiskAssessment risk;
    risk.probabilities = probabilities;
    for (const auto& [id, shed] : shed_by_scenario) {
        auto it = probabilities.find(id);
        if (it == probabilities.end()) {
            throw DataError("eens: no probabilities for scenario '" + id + "'");
        }
        const auto& pi = it->second;
        if (pi.size() != shed.size()) {
            throw DataError("eens: period count mismatch for scenario '" + id + "'");
        }
        double value = 0.0;
        for (std::size_t t = 0; t < shed.size(); ++t) value += pi[t] * shed[t];
        risk.eens_per_contingency[id] = value;
        risk.eens_total += value;
    }
    return risk;
}

} // namespace resa
