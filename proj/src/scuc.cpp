#include "resa/scuc.hpp"

#include "resa/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace resa {

using milp::kInfinity;
using milp::Sense;
using milp::Term;
using milp::VarType;

namespace {

constexpr double kCoefTol = 1e-9; // constraint-generation pruning threshold

std::string key(const std::string& prefix, const std::string& a, int t) {
    return prefix + "[" + a + "," + std::to_string(t) + "]";
}

} // namespace

ScucModel::ScucModel(const PowerSystem& system, const ReservePolicy& policy)
    : system_(system), policy_(policy), periods_(system.periods()) {
    if (policy.demand_fraction < 0.0) throw DataError("reserve policy: R^D must be >= 0");
    if (policy.spinning_fraction < 0.0 || policy.spinning_fraction > 1.0) {
        throw DataError("reserve policy: R^S must lie in [0,1]");
    }
    build();
}

void ScucModel::build() {
    const int G = static_cast<int>(system_.generators.size());
    const int W = static_cast<int>(system_.vres_units.size());
    const int L = static_cast<int>(system_.lines.size());
    const int N = static_cast<int>(system_.buses.size());
    const int T = periods_;

    auto block = [&](int count) { return count * T; };

    // Variables, blocked per family for O(1) index arithmetic.
    u0_ = 0;
    for (int g = 0; g < G; ++g) {
        const auto& gen = system_.generators[g];
        for (int t = 0; t < T; ++t) {
            model_.add_variable(key("u", gen.id, t), 0.0, 1.0, VarType::Binary,
                                gen.no_load_cost);
        }
    }
    v0_ = u0_ + block(G);
    for (int g = 0; g < G; ++g) {
        for (int t = 0; t < T; ++t) {
            model_.add_variable(key("v", system_.generators[g].id, t), 0.0, 1.0,
                                VarType::Continuous, system_.generators[g].startup_cost);
        }
    }
    w0_ = v0_ + block(G);
    for (int g = 0; g < G; ++g) {
        for (int t = 0; t < T; ++t) {
            model_.add_variable(key("w", system_.generators[g].id, t), 0.0, 1.0,
                                VarType::Continuous, system_.generators[g].shutdown_cost);
        }
    }
    p0_ = w0_ + block(G);
    for (int g = 0; g < G; ++g) {
        for (int t = 0; t < T; ++t) {
            model_.add_variable(key("p", system_.generators[g].id, t), 0.0,
                                system_.generators[g].p_max);
        }
    }
    rs0_ = p0_ + block(G);
    for (int g = 0; g < G; ++g) {
        const auto& gen = system_.generators[g];
        for (int t = 0; t < T; ++t) {
            // Spinning reserve is capped by the 10-minute ramp.
            model_.add_variable(key("rS", gen.id, t), 0.0, gen.ramp_10min);
        }
    }
    rns0_ = rs0_ + block(G);
    for (int g = 0; g < G; ++g) {
        const auto& gen = system_.generators[g];
        double cap = gen.fast_start ? std::min(gen.p_max, gen.ramp_10min) : 0.0;
        for (int t = 0; t < T; ++t) {
            model_.add_variable(key("rNS", gen.id, t), 0.0, cap);
        }
    }
    tg0_ = rns0_ + block(G);
    for (int g = 0; g < G; ++g) {
        for (int t = 0; t < T; ++t) {
            model_.add_variable(key("tg", system_.generators[g].id, t), -kInfinity,
                                kInfinity, VarType::Continuous, 1.0);
        }
    }
    pw0_ = tg0_ + block(G);
    for (int w = 0; w < W; ++w) {
        const auto& unit = system_.vres_units[w];
        for (int t = 0; t < T; ++t) {
            double lo = unit.dispatchable ? 0.0 : unit.forecast[t];
            model_.add_variable(key("pw", unit.id, t), lo, unit.forecast[t]);
        }
    }
    f0_ = pw0_ + block(W);
    for (int l = 0; l < L; ++l) {
        const auto& line = system_.lines[l];
        for (int t = 0; t < T; ++t) {
            model_.add_variable(key("f", line.id, t), -line.rating_normal,
                                line.rating_normal);
        }
    }
    th0_ = f0_ + block(L);
    for (int b = 0; b < N; ++b) {
        bool is_ref = b == system_.reference_index();
        for (int t = 0; t < T; ++t) {
            model_.add_variable(key("theta", system_.buses[b].id, t),
                                is_ref ? 0.0 : -kInfinity, is_ref ? 0.0 : kInfinity);
        }
    }
    rtot0_ = th0_ + block(N);
    for (int t = 0; t < T; ++t) {
        model_.add_variable("r_tot[" + std::to_string(t) + "]", 0.0, kInfinity);
    }

    // Constraints.
    for (int t = 0; t < T; ++t) {
        for (int g = 0; g < G; ++g) {
            const auto& gen = system_.generators[g];
            const std::string& id = gen.id;

            for (std::size_t o = 0; o < gen.cost_segments.size(); ++o) {
                model_.add_constraint(
                    key("cost", id, t) + ":" + std::to_string(o),
                    {{var_cost(g, t), 1.0}, {var_p(g, t), -gen.cost_segments[o].slope}},
                    Sense::GreaterEqual, gen.cost_segments[o].intercept);
            }

            model_.add_constraint(key("cap_lo", id, t),
                                  {{var_p(g, t), 1.0}, {var_u(g, t), -gen.p_min}},
                                  Sense::GreaterEqual, 0.0);
            model_.add_constraint(
                key("cap_hi", id, t),
                {{var_p(g, t), 1.0}, {var_rs(g, t), 1.0}, {var_u(g, t), -gen.p_max}},
                Sense::LessEqual, 0.0);

            if (gen.min_up > 0) {
                std::vector<Term> terms;
                for (int s = std::max(0, t - gen.min_up + 1); s <= t; ++s) {
                    terms.push_back({var_v(g, s), 1.0});
                }
                terms.push_back({var_u(g, t), -1.0});
                model_.add_constraint(key("min_up", id, t), std::move(terms),
                                      Sense::LessEqual, 0.0);
            }
            if (gen.min_down > 0) {
                std::vector<Term> terms;
                for (int s = std::max(0, t - gen.min_down + 1); s <= t; ++s) {
                    terms.push_back({var_w(g, s), 1.0});
                }
                terms.push_back({var_u(g, t), 1.0});
                model_.add_constraint(key("min_down", id, t), std::move(terms),
                                      Sense::LessEqual, 1.0);
            }

            if (t == 0) {
                double u_init = gen.initial_on ? 1.0 : 0.0;
                model_.add_constraint(
                    key("link", id, t),
                    {{var_v(g, t), 1.0}, {var_w(g, t), -1.0}, {var_u(g, t), -1.0}},
                    Sense::Equal, -u_init);
                model_.add_constraint(key("ramp_up", id, t),
                                      {{var_p(g, t), 1.0}, {var_v(g, t), -gen.p_max}},
                                      Sense::LessEqual,
                                      gen.initial_power + gen.ramp_hourly * u_init);
                model_.add_constraint(
                    key("ramp_dn", id, t),
                    {{var_p(g, t), -1.0}, {var_u(g, t), -gen.ramp_hourly},
                     {var_w(g, t), -gen.p_max}},
                    Sense::LessEqual, -gen.initial_power);
            } else {
                model_.add_constraint(key("link", id, t),
                                      {{var_v(g, t), 1.0},
                                       {var_w(g, t), -1.0},
                                       {var_u(g, t), -1.0},
                                       {var_u(g, t - 1), 1.0}},
                                      Sense::Equal, 0.0);
                model_.add_constraint(key("ramp_up", id, t),
                                      {{var_p(g, t), 1.0},
                                       {var_p(g, t - 1), -1.0},
                                       {var_u(g, t - 1), -gen.ramp_hourly},
                                       {var_v(g, t), -gen.p_max}},
                                      Sense::LessEqual, 0.0);
                model_.add_constraint(key("ramp_dn", id, t),
                                      {{var_p(g, t - 1), 1.0},
                                       {var_p(g, t), -1.0},
                                       {var_u(g, t), -gen.ramp_hourly},
                                       {var_w(g, t), -gen.p_max}},
                                      Sense::LessEqual, 0.0);
            }

            if (gen.fast_start) {
                model_.add_constraint(key("ns_lo", id, t),
                                      {{var_rns(g, t), 1.0}, {var_u(g, t), gen.p_min}},
                                      Sense::GreaterEqual, gen.p_min);
                model_.add_constraint(key("ns_cap", id, t),
                                      {{var_rns(g, t), 1.0}, {var_u(g, t), gen.p_max}},
                                      Sense::LessEqual, gen.p_max);
                model_.add_constraint(key("ns_ramp", id, t),
                                      {{var_rns(g, t), 1.0}, {var_u(g, t), gen.ramp_10min}},
                                      Sense::LessEqual, gen.ramp_10min);
            }
        }

        for (int l = 0; l < L; ++l) {
            const auto& line = system_.lines[l];
            int i = system_.bus_index(line.from_bus);
            int j = system_.bus_index(line.to_bus);
            model_.add_constraint(key("flow", line.id, t),
                                  {{var_flow(l, t), 1.0},
                                   {var_angle(i, t), -line.susceptance},
                                   {var_angle(j, t), line.susceptance}},
                                  Sense::Equal, 0.0);
        }

        for (int b = 0; b < N; ++b) {
            std::vector<Term> terms;
            for (int g = 0; g < G; ++g) {
                if (system_.bus_index(system_.generators[g].bus) == b) {
                    terms.push_back({var_p(g, t), 1.0});
                }
            }
            for (int w = 0; w < W; ++w) {
                if (system_.bus_index(system_.vres_units[w].bus) == b) {
                    terms.push_back({var_vres(w, t), 1.0});
                }
            }
            for (int l = 0; l < L; ++l) {
                int i = system_.bus_index(system_.lines[l].from_bus);
                int j = system_.bus_index(system_.lines[l].to_bus);
                if (j == b) terms.push_back({var_flow(l, t), 1.0});
                if (i == b) terms.push_back({var_flow(l, t), -1.0});
            }
            model_.add_constraint(key("balance", system_.buses[b].id, t), std::move(terms),
                                  Sense::Equal, system_.buses[b].demand[t]);
        }

        // Reserve system.
        {
            std::vector<Term> terms{{var_rtot(t), 1.0}};
            for (int g = 0; g < G; ++g) {
                terms.push_back({var_rs(g, t), -1.0});
                terms.push_back({var_rns(g, t), -1.0});
            }
            model_.add_constraint("r_offered[" + std::to_string(t) + "]", std::move(terms),
                                  Sense::LessEqual, 0.0);
        }
        model_.add_constraint("r_demand[" + std::to_string(t) + "]", {{var_rtot(t), 1.0}},
                              Sense::GreaterEqual,
                              policy_.demand_fraction * system_.total_demand(t));
        for (int g = 0; g < G; ++g) {
            model_.add_constraint(
                key("r_largest", system_.generators[g].id, t),
                {{var_rtot(t), 1.0}, {var_p(g, t), -1.0}, {var_rs(g, t), -1.0}},
                Sense::GreaterEqual, 0.0);
        }
        {
            std::vector<Term> terms;
            for (int g = 0; g < G; ++g) terms.push_back({var_rs(g, t), 1.0});
            terms.push_back({var_rtot(t), -policy_.spinning_fraction});
            model_.add_constraint("r_spin_share[" + std::to_string(t) + "]",
                                  std::move(terms), Sense::GreaterEqual, 0.0);
        }
    }
}

void ScucModel::attach_resa_constraints(const ResaAugmentation& aug,
                                        const SensitivityBundle& sens) {
    if (!aug.rafs) throw DataError("resa augmentation: missing RAF state");
    const int G = static_cast<int>(system_.generators.size());
    const int W = static_cast<int>(system_.vres_units.size());
    const int L = static_cast<int>(system_.lines.size());
    const int T = periods_;
    const RafState& rafs = *aug.rafs;

    for (const auto& entry : aug.scenarios) {
        const auto& scenario = entry.scenario;
        for (const auto& line_id : scenario.outaged_lines) {
            int l = system_.line_index(line_id);
            if (sens.island_flags[l]) {
                throw DataError("scenario '" + scenario.id + "': outaged line '" + line_id +
                                "' islands the network; filter it before the SCUC");
            }
        }
    }

    const bool risk_adjusted = aug.mode == ResaAugmentation::Mode::RiskAdjusted;

    struct GenPart {
        std::vector<Term> terms; // flow-change expression in model variables
        double constant = 0.0;   // wind-loss injection, moved to the RHS
        bool any = false;
    };

    // Eq.-5-style flow change of a generator (or wind-bin) scenario.
    auto gen_part = [&](const ContingencyScenario& scenario, int l, int t) {
        GenPart part;
        for (int g = 0; g < G; ++g) {
            double beta = rafs.beta(scenario.id, g, t);
            if (beta == 0.0) continue;
            double coef = beta * sens.ptdf(l, system_.bus_index(system_.generators[g].bus));
            if (std::abs(coef) <= kCoefTol) continue;
            part.terms.push_back({var_rs(g, t), coef});
            part.terms.push_back({var_rns(g, t), coef});
            part.any = true;
        }
        for (const auto& id : scenario.outaged_generators) {
            if (!system_.has_generator(id)) continue; // wind ids handled below
            int g = system_.generator_index(id);
            double coef = -sens.ptdf(l, system_.bus_index(system_.generators[g].bus));
            if (std::abs(coef) <= kCoefTol) continue;
            part.terms.push_back({var_p(g, t), coef});
            part.any = true;
        }
        if (scenario.wind_loss) {
            int w = system_.vres_index(scenario.wind_loss->unit);
            double coef = -sens.ptdf(l, system_.bus_index(system_.vres_units[w].bus));
            double constant = coef * scenario.wind_loss->expected_mw;
            if (std::abs(constant) > kCoefTol) {
                part.constant += constant;
                part.any = true;
            }
        }
        return part;
    };

    // Base term of the Eq.-6 flow change: redistribution of the current net
    // injections over the outaged topology.
    auto line_base = [&](const Eigen::MatrixXd& outage_sens, int l, int t,
                         std::vector<Term>& terms, double& constant, bool& any) {
        for (int g = 0; g < G; ++g) {
            double coef = outage_sens(l, system_.bus_index(system_.generators[g].bus));
            if (std::abs(coef) <= kCoefTol) continue;
            terms.push_back({var_p(g, t), coef});
            any = true;
        }
        for (int w = 0; w < W; ++w) {
            double coef = outage_sens(l, system_.bus_index(system_.vres_units[w].bus));
            if (std::abs(coef) <= kCoefTol) continue;
            terms.push_back({var_vres(w, t), coef});
            any = true;
        }
        for (int b = 0; b < static_cast<int>(system_.buses.size()); ++b) {
            double demand = system_.buses[b].demand[t];
            if (demand == 0.0) continue;
            constant -= outage_sens(l, b) * demand;
        }
    };

    // Reserve-response envelope of the Eq.-6 flow change: nodal aggregation of
    // committed 10-minute flexibility, one term set per sign.
    auto line_flex = [&](const ContingencyScenario& scenario,
                         const Eigen::MatrixXd& outage_sens, int l, int t, bool positive) {
        std::vector<Term> terms;
        for (int g = 0; g < G; ++g) {
            double beta = positive ? rafs.beta_pos(scenario.id, g, t)
                                   : rafs.beta_neg(scenario.id, g, t);
            if (beta == 0.0) continue;
            int bus = system_.bus_index(system_.generators[g].bus);
            double coef = (sens.ptdf(l, bus) + outage_sens(l, bus)) * beta *
                          system_.generators[g].ramp_10min;
            if (std::abs(coef) <= kCoefTol) continue;
            terms.push_back({var_u(g, t), coef});
        }
        return terms;
    };

    auto negated = [](std::vector<Term> terms) {
        for (auto& term : terms) term.coef = -term.coef;
        return terms;
    };

    if (!risk_adjusted) {
        for (const auto& entry : aug.scenarios) {
            const auto& scenario = entry.scenario;
            bool has_gen_part = !scenario.outaged_generators.empty() || scenario.wind_loss;
            bool has_line_part = !scenario.outaged_lines.empty();

            for (int t = 0; t < T; ++t) {
                for (int l = 0; l < L; ++l) {
                    double emergency = system_.lines[l].rating_emergency;
                    std::string tag =
                        scenario.id + ":" + system_.lines[l].id + ":" + std::to_string(t);

                    if (has_gen_part) {
                        GenPart part = gen_part(scenario, l, t);
                        if (part.any) {
                            auto upper = part.terms;
                            upper.push_back({var_flow(l, t), 1.0});
                            model_.add_constraint("resa_up:" + tag, std::move(upper),
                                                  Sense::LessEqual,
                                                  emergency - part.constant);
                            auto lower = negated(part.terms);
                            lower.push_back({var_flow(l, t), -1.0});
                            model_.add_constraint("resa_dn:" + tag, std::move(lower),
                                                  Sense::LessEqual,
                                                  emergency + part.constant);
                        }
                    }

                    if (has_line_part) {
                        std::vector<Term> base;
                        double base_const = 0.0;
                        bool any = false;
                        line_base(entry.outage_sens, l, t, base, base_const, any);
                        auto flex_up = line_flex(scenario, entry.outage_sens, l, t, true);
                        auto flex_dn = line_flex(scenario, entry.outage_sens, l, t, false);
                        if (!any && flex_up.empty() && flex_dn.empty() &&
                            std::abs(base_const) <= kCoefTol) {
                            continue;
                        }
                        const std::vector<Term> zero_branch;
                        const std::vector<const std::vector<Term>*> branches{
                            &zero_branch, &flex_up, &flex_dn};
                        // Upper envelope: base + max{0, P+, P-} <= fE - f.
                        for (std::size_t branch = 0; branch < branches.size(); ++branch) {
                            if (branch > 0 && branches[branch]->empty()) continue;
                            auto row = base;
                            row.insert(row.end(), branches[branch]->begin(),
                                       branches[branch]->end());
                            row.push_back({var_flow(l, t), 1.0});
                            model_.add_constraint(
                                "resa_line_up" + std::to_string(branch) + ":" + tag,
                                std::move(row), Sense::LessEqual, emergency - base_const);
                        }
                        // Lower envelope: -(base + min{0, P+, P-}) <= fE + f.
                        for (std::size_t branch = 0; branch < branches.size(); ++branch) {
                            if (branch > 0 && branches[branch]->empty()) continue;
                            auto row = negated(base);
                            auto neg = negated(*branches[branch]);
                            row.insert(row.end(), neg.begin(), neg.end());
                            row.push_back({var_flow(l, t), -1.0});
                            model_.add_constraint(
                                "resa_line_dn" + std::to_string(branch) + ":" + tag,
                                std::move(row), Sense::LessEqual, emergency + base_const);
                        }
                    }
                }
            }
        }
        return;
    }

    // Risk-adjusted mode: one expectation row per (line, period) and side,
    // over the scenarios carrying adjusted probability. Line scenarios get an
    // auxiliary max/min variable so the envelope stays exact inside the
    // expectation.
    std::vector<const ResaScenario*> active;
    for (const auto& entry : aug.scenarios) {
        if (entry.weight > 1e-15) active.push_back(&entry);
    }
    if (active.empty()) return;

    for (int t = 0; t < T; ++t) {
        for (int l = 0; l < L; ++l) {
            double emergency = system_.lines[l].rating_emergency;
            std::vector<Term> upper_terms, lower_terms;
            double upper_const = 0.0, lower_const = 0.0;
            bool any = false;

            for (const ResaScenario* entry : active) {
                const auto& scenario = entry->scenario;
                double weight = entry->weight;
                bool has_gen_part =
                    !scenario.outaged_generators.empty() || scenario.wind_loss;
                bool has_line_part = !scenario.outaged_lines.empty();
                std::string tag =
                    scenario.id + ":" + system_.lines[l].id + ":" + std::to_string(t);

                if (has_gen_part) {
                    GenPart part = gen_part(scenario, l, t);
                    if (part.any) {
                        for (const auto& term : part.terms) {
                            upper_terms.push_back({term.var, weight * term.coef});
                            lower_terms.push_back({term.var, -weight * term.coef});
                        }
                        upper_const += weight * part.constant;
                        lower_const += weight * part.constant;
                        any = true;
                    }
                }

                if (has_line_part) {
                    std::vector<Term> base;
                    double base_const = 0.0;
                    bool base_any = false;
                    line_base(entry->outage_sens, l, t, base, base_const, base_any);
                    auto flex_up = line_flex(scenario, entry->outage_sens, l, t, true);
                    auto flex_dn = line_flex(scenario, entry->outage_sens, l, t, false);
                    if (!base_any && flex_up.empty() && flex_dn.empty() &&
                        std::abs(base_const) <= kCoefTol) {
                        continue;
                    }
                    any = true;
                    for (const auto& term : base) {
                        upper_terms.push_back({term.var, weight * term.coef});
                        lower_terms.push_back({term.var, -weight * term.coef});
                    }
                    upper_const += weight * base_const;
                    lower_const += weight * base_const;

                    if (!flex_up.empty() || !flex_dn.empty()) {
                        int up_aux = model_.add_variable("df_max:" + tag, 0.0, kInfinity);
                        int dn_aux = model_.add_variable("df_min:" + tag, -kInfinity, 0.0);
                        for (const auto& [flex, aux, sense] :
                             {std::tuple{&flex_up, up_aux, Sense::GreaterEqual},
                              std::tuple{&flex_dn, up_aux, Sense::GreaterEqual},
                              std::tuple{&flex_up, dn_aux, Sense::LessEqual},
                              std::tuple{&flex_dn, dn_aux, Sense::LessEqual}}) {
                            if (flex->empty()) continue;
                            auto row = negated(*flex);
                            row.push_back({aux, 1.0});
                            model_.add_constraint((sense == Sense::GreaterEqual
                                                       ? "df_max_ge:"
                                                       : "df_min_le:") + tag,
                                                  std::move(row), sense, 0.0);
                        }
                        upper_terms.push_back({up_aux, weight});
                        lower_terms.push_back({dn_aux, -weight});
                    }
                }
            }

            if (!any) continue;
            std::string tag = system_.lines[l].id + ":" + std::to_string(t);
            upper_terms.push_back({var_flow(l, t), 1.0});
            model_.add_constraint("resa_cvar_up:" + tag, std::move(upper_terms),
                                  Sense::LessEqual, emergency - upper_const);
            lower_terms.push_back({var_flow(l, t), -1.0});
            model_.add_constraint("resa_cvar_dn:" + tag, std::move(lower_terms),
                                  Sense::LessEqual, emergency + lower_const);
        }
    }
}

Schedule ScucModel::extract(const milp::Solution& solution,
                            const milp::SolverConfig& config) const {
    const int G = static_cast<int>(system_.generators.size());
    const int W = static_cast<int>(system_.vres_units.size());
    const int L = static_cast<int>(system_.lines.size());
    const int N = static_cast<int>(system_.buses.size());
    const int T = periods_;

    Schedule schedule;
    auto grid = [T](int count) {
        return std::vector<std::vector<double>>(count, std::vector<double>(T, 0.0));
    };
    schedule.u.assign(G, std::vector<int>(T, 0));
    schedule.v = grid(G);
    schedule.w = grid(G);
    schedule.p = grid(G);
    schedule.r_spin = grid(G);
    schedule.r_nonspin = grid(G);
    schedule.vres_p = grid(W);
    schedule.flow = grid(L);
    schedule.angle = grid(N);
    schedule.r_total.assign(T, 0.0);

    const auto& x = solution.x;
    for (int g = 0; g < G; ++g) {
        for (int t = 0; t < T; ++t) {
            schedule.u[g][t] = x[var_u(g, t)] > 0.5 ? 1 : 0;
            schedule.v[g][t] = x[var_v(g, t)];
            schedule.w[g][t] = x[var_w(g, t)];
            schedule.p[g][t] = x[var_p(g, t)];
            schedule.r_spin[g][t] = x[var_rs(g, t)];
            schedule.r_nonspin[g][t] = x[var_rns(g, t)];
        }
    }
    for (int w = 0; w < W; ++w) {
        for (int t = 0; t < T; ++t) schedule.vres_p[w][t] = x[var_vres(w, t)];
    }
    for (int l = 0; l < L; ++l) {
        for (int t = 0; t < T; ++t) schedule.flow[l][t] = x[var_flow(l, t)];
    }
    for (int b = 0; b < N; ++b) {
        for (int t = 0; t < T; ++t) schedule.angle[b][t] = x[var_angle(b, t)];
    }
    for (int t = 0; t < T; ++t) schedule.r_total[t] = x[var_rtot(t)];

    schedule.objective = solution.objective;
    schedule.stats.backend = config.backend.empty() ? "bnb" : config.backend;
    schedule.stats.status = milp::to_string(solution.status);
    schedule.stats.objective = solution.objective;
    schedule.stats.best_bound = solution.best_bound;
    schedule.stats.gap = solution.gap;
    schedule.stats.nodes = solution.nodes;
    schedule.stats.iterations = solution.iterations;
    schedule.stats.wall_seconds = solution.wall_seconds;
    return schedule;
}

Schedule ScucModel::solve(const milp::SolverConfig& config) const {
    milp::Solution solution = milp::solve(model_, config);

    switch (solution.status) {
    case milp::SolveStatus::Optimal:
        break;
    case milp::SolveStatus::TimeLimit:
        if (!solution.has_solution()) {
            throw SolverError(SolverError::Reason::TimeLimitNoIncumbent,
                              "SCUC: time limit reached without an incumbent");
        }
        break;
    case milp::SolveStatus::Infeasible:
        throw SolverError(SolverError::Reason::Infeasible,
                          "SCUC: model is infeasible (demand cannot be met within "
                          "capacity, network and reserve constraints)");
    case milp::SolveStatus::Unbounded:
        throw SolverError(SolverError::Reason::Unbounded, "SCUC: model is unbounded");
    case milp::SolveStatus::Numerical:
        throw SolverError(SolverError::Reason::Numerical,
                          "SCUC: solver failed numerically");
    }

    Schedule schedule = extract(solution, config);
    auto violations = audit_schedule(system_, policy_, schedule);
    if (!violations.empty()) {
        std::ostringstream oss;
        oss << "solved schedule failed its arithmetic audit:";
        for (const auto& v : violations) oss << "\n  - " << v;
        throw InternalError(oss.str());
    }
    return schedule;
}

std::vector<std::string> audit_schedule(const PowerSystem& system,
                                        const ReservePolicy& policy,
                                        const Schedule& schedule) {
    constexpr double tol = 1e-6;
    std::vector<std::string> violations;
    auto flag = [&](const std::string& message) { violations.push_back(message); };

    const int G = static_cast<int>(system.generators.size());
    const int W = static_cast<int>(system.vres_units.size());
    const int L = static_cast<int>(system.lines.size());
    const int N = static_cast<int>(system.buses.size());
    const int T = system.periods();

    for (int t = 0; t < T; ++t) {
        for (int g = 0; g < G; ++g) {
            const auto& gen = system.generators[g];
            int u = schedule.u[g][t];
            double v = schedule.v[g][t];
            double w = schedule.w[g][t];
            double p = schedule.p[g][t];
            double rs = schedule.r_spin[g][t];
            double rns = schedule.r_nonspin[g][t];

            if (u != 0 && u != 1) flag("u not binary: " + gen.id);
            if (p < u * gen.p_min - tol || p > u * gen.p_max + tol) {
                flag("capacity: " + gen.id + " t=" + std::to_string(t));
            }
            if (p + rs > u * gen.p_max + tol) {
                flag("spinning headroom: " + gen.id + " t=" + std::to_string(t));
            }
            if (rs < -tol || rs > gen.ramp_10min + tol) {
                flag("spinning reserve ramp cap: " + gen.id + " t=" + std::to_string(t));
            }
            if (rns < -tol) flag("negative non-spinning reserve: " + gen.id);
            if (!gen.fast_start && rns > tol) {
                flag("non-spinning reserve from non-fast-start unit: " + gen.id);
            }
            if (gen.fast_start) {
                double offline = 1.0 - u;
                if (rns < offline * gen.p_min - tol ||
                    rns > offline * std::min(gen.p_max, gen.ramp_10min) + tol) {
                    flag("non-spinning reserve box: " + gen.id + " t=" + std::to_string(t));
                }
            }

            int u_prev = t > 0 ? schedule.u[g][t - 1] : (gen.initial_on ? 1 : 0);
            double p_prev = t > 0 ? schedule.p[g][t - 1] : gen.initial_power;
            if (std::abs(v - w - (u - u_prev)) > tol) {
                flag("start/stop linking: " + gen.id + " t=" + std::to_string(t));
            }
            if (p - p_prev > gen.ramp_hourly * u_prev + gen.p_max * v + tol) {
                flag("ramp up: " + gen.id + " t=" + std::to_string(t));
            }
            if (p_prev - p > gen.ramp_hourly * u + gen.p_max * w + tol) {
                flag("ramp down: " + gen.id + " t=" + std::to_string(t));
            }

            double v_window = 0.0;
            for (int s = std::max(0, t - gen.min_up + 1); s <= t; ++s) {
                v_window += schedule.v[g][s];
            }
            if (gen.min_up > 0 && v_window > u + tol) {
                flag("min up-time: " + gen.id + " t=" + std::to_string(t));
            }
            double w_window = 0.0;
            for (int s = std::max(0, t - gen.min_down + 1); s <= t; ++s) {
                w_window += schedule.w[g][s];
            }
            if (gen.min_down > 0 && w_window > 1.0 - u + tol) {
                flag("min down-time: " + gen.id + " t=" + std::to_string(t));
            }
        }

        for (int w = 0; w < W; ++w) {
            const auto& unit = system.vres_units[w];
            double pw = schedule.vres_p[w][t];
            double lo = unit.dispatchable ? 0.0 : unit.forecast[t];
            if (pw < lo - tol || pw > unit.forecast[t] + tol) {
                flag("VRES bounds: " + unit.id + " t=" + std::to_string(t));
            }
        }

        for (int l = 0; l < L; ++l) {
            const auto& line = system.lines[l];
            double f = schedule.flow[l][t];
            double expected = line.susceptance *
                              (schedule.angle[system.bus_index(line.from_bus)][t] -
                               schedule.angle[system.bus_index(line.to_bus)][t]);
            if (std::abs(f - expected) > tol) {
                flag("flow definition: " + line.id + " t=" + std::to_string(t));
            }
            if (std::abs(f) > line.rating_normal + tol) {
                flag("flow limit: " + line.id + " t=" + std::to_string(t));
            }
        }

        if (std::abs(schedule.angle[system.reference_index()][t]) > tol) {
            flag("reference angle not zero at t=" + std::to_string(t));
        }

        for (int b = 0; b < N; ++b) {
            double balance = -system.buses[b].demand[t];
            for (int g = 0; g < G; ++g) {
                if (system.bus_index(system.generators[g].bus) == b) {
                    balance += schedule.p[g][t];
                }
            }
            for (int w = 0; w < W; ++w) {
                if (system.bus_index(system.vres_units[w].bus) == b) {
                    balance += schedule.vres_p[w][t];
                }
            }
            for (int l = 0; l < L; ++l) {
                int i = system.bus_index(system.lines[l].from_bus);
                int j = system.bus_index(system.lines[l].to_bus);
                if (j == b) balance += schedule.flow[l][t];
                if (i == b) balance -= schedule.flow[l][t];
            }
            if (std::abs(balance) > tol) {
                flag("nodal balance at bus " + system.buses[b].id +
                     " t=" + std::to_string(t) + " residual=" + std::to_string(balance));
            }
        }

        double offered = 0.0, spinning = 0.0;
        for (int g = 0; g < G; ++g) {
            offered += schedule.r_spin[g][t] + schedule.r_nonspin[g][t];
            spinning += schedule.r_spin[g][t];
        }
        double r_tot = schedule.r_total[t];
        if (r_tot > offered + tol) flag("reserve exceeds offered at t=" + std::to_string(t));
        if (r_tot < policy.demand_fraction * system.total_demand(t) - tol) {
            flag("reserve demand floor at t=" + std::to_string(t));
        }
        for (int g = 0; g < G; ++g) {
            if (r_tot < schedule.p[g][t] + schedule.r_spin[g][t] - tol) {
                flag("largest-contingency coverage: " + system.generators[g].id +
                     " t=" + std::to_string(t));
            }
        }
        if (spinning < policy.spinning_fraction * r_tot - tol) {
            flag("spinning share at t=" + std::to_string(t));
        }
    }

    return violations;
}

} // namespace resa
