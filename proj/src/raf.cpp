#include "resa/raf.hpp"

#include "resa/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

namespace resa {

using nlohmann::json;

namespace {

constexpr double kActivationTol = 1e-9; // MW treated as zero activation

double clip(double x, double lo, double hi) { return std::min(hi, std::max(lo, x)); }

} // namespace

RafState::RafState(double lambda) : lambda_(lambda) {
    if (lambda < 0.0 || lambda > 1.0) throw DataError("RafState: lambda must lie in [0,1]");
}

double RafState::get(const std::map<std::string, Grid>& store, const std::string& scenario,
                     int g, int t) {
    auto it = store.find(scenario);
    if (it == store.end()) return 0.0;
    const Grid& grid = it->second;
    if (g < 0 || g >= static_cast<int>(grid.size())) return 0.0;
    const auto& row = grid[g];
    if (t < 0 || t >= static_cast<int>(row.size())) return 0.0;
    return row[t];
}

RafState::Grid& RafState::ensure(std::map<std::string, Grid>& store,
                                 const std::string& scenario, int gens, int periods) {
    auto it = store.find(scenario);
    if (it == store.end()) {
        it = store.emplace(scenario, Grid(gens, std::vector<double>(periods, 0.0))).first;
    }
    return it->second;
}

double RafState::beta(const std::string& scenario, int g, int t) const {
    return get(beta_, scenario, g, t);
}
double RafState::beta_pos(const std::string& scenario, int g, int t) const {
    return get(beta_pos_, scenario, g, t);
}
double RafState::beta_neg(const std::string& scenario, int g, int t) const {
    return get(beta_neg_, scenario, g, t);
}

bool RafState::scenario_active(const std::string& scenario) const {
    for (const auto* store : {&beta_, &beta_pos_, &beta_neg_}) {
        auto it = store->find(scenario);
        if (it == store->end()) continue;
        for (const auto& row : it->second) {
            for (double value : row) {
                if (std::abs(value) > 1e-12) return true;
            }
        }
    }
    return false;
}

int RafState::periods() const {
    for (const auto* store : {&beta_, &beta_pos_, &beta_neg_}) {
        for (const auto& [id, grid] : *store) {
            for (const auto& row : grid) {
                if (!row.empty()) return static_cast<int>(row.size());
            }
        }
    }
    return 0;
}

std::vector<std::string> RafState::scenarios() const {
    std::vector<std::string> ids;
    for (const auto& [id, grid] : beta_) ids.push_back(id);
    for (const auto& [id, grid] : beta_pos_) {
        if (beta_.count(id) == 0) ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

void RafState::remember_ids(const PowerSystem& system) {
    if (!gen_ids_.empty()) return;
    gen_ids_.reserve(system.generators.size());
    for (const auto& gen : system.generators) gen_ids_.push_back(gen.id);
}

void RafState::update_generator_factors(
    const PowerSystem& system, const Schedule& schedule,
    const std::map<std::string, ContingencyOutcome>& outcomes) {
    remember_ids(system);
    const int gens = static_cast<int>(system.generators.size());
    const int periods = system.periods();

    for (const auto& [id, outcome] : outcomes) {
        Grid& grid = ensure(beta_, id, gens, periods);
        for (int g = 0; g < gens; ++g) {
            for (int t = 0; t < periods; ++t) {
                double reserve = schedule.reserve(g, t);
                double ratio = 0.0;
                if (reserve > kActivationTol) {
                    ratio = clip(outcome.activation[g][t] / reserve, 0.0, 1.0);
                }
                double prior = grid[g][t];
                double blended = lambda_ * ratio + (1.0 - lambda_) * prior;
                grid[g][t] = clip(std::max(ratio, blended), 0.0, 1.0);
            }
        }
    }
}

void RafState::update_line_factors(const PowerSystem& system,
                                   const std::map<std::string, ContingencyOutcome>& outcomes) {
    remember_ids(system);
    const int gens = static_cast<int>(system.generators.size());
    const int periods = system.periods();

    for (const auto& [id, outcome] : outcomes) {
        Grid& pos = ensure(beta_pos_, id, gens, periods);
        Grid& neg = ensure(beta_neg_, id, gens, periods);
        for (int g = 0; g < gens; ++g) {
            double ramp = system.generators[g].ramp_10min;
            for (int t = 0; t < periods; ++t) {
                double activation = outcome.activation[g][t];
                if (ramp <= 0.0) {
                    if (std::abs(activation) > 1e-6) {
                        throw DataError("generator '" + system.generators[g].id +
                                        "': activation without 10-minute ramp capability in "
                                        "scenario '" + id + "'");
                    }
                    continue;
                }
                double ratio = clip(activation / ramp, -1.0, 1.0);
                if (activation >= -kActivationTol) {
                    double up = clip(ratio, 0.0, 1.0);
                    double blended = lambda_ * up + (1.0 - lambda_) * pos[g][t];
                    pos[g][t] = clip(std::max(up, blended), 0.0, 1.0);
                }
                if (activation <= kActivationTol) {
                    double down = clip(ratio, -1.0, 0.0);
                    double blended = lambda_ * down + (1.0 - lambda_) * neg[g][t];
                    neg[g][t] = clip(std::min(down, blended), -1.0, 0.0);
                }
            }
        }
    }
}

RafState::Shares RafState::beta_shares() const {
    Shares shares;
    long ones = 0, zeros = 0, partials = 0;
    for (const auto& [id, grid] : beta_) {
        for (const auto& row : grid) {
            for (double value : row) {
                ++shares.entries;
                if (value >= 1.0 - 1e-9) ++ones;
                else if (value <= 1e-9) ++zeros;
                else ++partials;
            }
        }
    }
    if (shares.entries > 0) {
        shares.one = static_cast<double>(ones) / shares.entries;
        shares.zero = static_cast<double>(zeros) / shares.entries;
        shares.partial = static_cast<double>(partials) / shares.entries;
    }
    return shares;
}

std::string RafState::to_json() const {
    json j;
    j["lambda"] = lambda_;
    j["iteration"] = iteration_;
    j["generators"] = gen_ids_;
    auto dump = [this](const std::map<std::string, Grid>& store) {
        json out = json::object();
        for (const auto& [scenario, grid] : store) {
            json per_gen = json::object();
            for (std::size_t g = 0; g < grid.size(); ++g) {
                per_gen[gen_ids_[g]] = grid[g];
            }
            out[scenario] = std::move(per_gen);
        }
        return out;
    };
    j["beta"] = dump(beta_);
    j["beta_pos"] = dump(beta_pos_);
    j["beta_neg"] = dump(beta_neg_);
    return j.dump(2);
}

RafState RafState::from_json(const std::string& text) {
    try {
        json j = json::parse(text);
        RafState state(j.at("lambda").get<double>());
        state.iteration_ = j.value("iteration", 0);
        state.gen_ids_ = j.at("generators").get<std::vector<std::string>>();
        std::map<std::string, int> index;
        for (std::size_t g = 0; g < state.gen_ids_.size(); ++g) {
            index[state.gen_ids_[g]] = static_cast<int>(g);
        }
        auto load = [&](const json& src, std::map<std::string, Grid>& store) {
            for (auto it = src.begin(); it != src.end(); ++it) {
                Grid grid(state.gen_ids_.size());
                std::size_t periods = 0;
                for (auto gen = it.value().begin(); gen != it.value().end(); ++gen) {
                    auto at = index.find(gen.key());
                    if (at == index.end()) {
                        throw DataError("RAF state references unknown generator '" +
                                        gen.key() + "'");
                    }
                    grid[at->second] = gen.value().get<std::vector<double>>();
                    periods = std::max(periods, grid[at->second].size());
                }
                for (auto& row : grid) {
                    if (row.size() < periods) row.resize(periods, 0.0);
                }
                store[it.key()] = std::move(grid);
            }
        };
        load(j.at("beta"), state.beta_);
        load(j.at("beta_pos"), state.beta_pos_);
        load(j.at("beta_neg"), state.beta_neg_);
        return state;
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed RAF state JSON: ") + e.what());
    }
}

WorstCaseSelection select_worst_case(const std::map<std::string, double>& eens_per_contingency,
                                     const std::map<std::string, double>& probabilities,
                                     double alpha) {
    if (alpha < 0.0 || alpha > 1.0) {
        throw DataError("select_worst_case: alpha must lie in [0,1]");
    }

    WorstCaseSelection selection;
    if (eens_per_contingency.empty()) return selection;

    std::vector<std::pair<std::string, double>> order(eens_per_contingency.begin(),
                                                      eens_per_contingency.end());
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first; // deterministic tie-break by id
    });

    auto probability = [&](const std::string& id) {
        auto it = probabilities.find(id);
        return it == probabilities.end() ? 0.0 : it->second;
    };

    double cumulative = 0.0;
    std::size_t i = 0;
    while (cumulative <= alpha && i < order.size()) {
        selection.set.push_back(order[i].first);
        cumulative += probability(order[i].first);
        ++i;
    }

    for (const auto& [id, value] : eens_per_contingency) selection.adjusted[id] = 0.0;
    if (cumulative > 0.0) {
        for (const auto& id : selection.set) {
            selection.adjusted[id] = probability(id) / cumulative;
        }
    } else if (!selection.set.empty()) {
        double uniform = 1.0 / static_cast<double>(selection.set.size());
        for (const auto& id : selection.set) selection.adjusted[id] = uniform;
    }
    return selection;
}

} // namespace resa
