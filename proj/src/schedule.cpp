#include "resa/schedule.hpp"

#include "resa/errors.hpp"

#include <nlohmann/json.hpp>

namespace resa {

using nlohmann::json;

std::string Schedule::to_json() const {
    json j;
    j["u"] = u;
    j["v"] = v;
    j["w"] = w;
    j["p"] = p;
    j["r_spin"] = r_spin;
    j["r_nonspin"] = r_nonspin;
    j["vres_p"] = vres_p;
    j["flow"] = flow;
    j["angle"] = angle;
    j["r_total"] = r_total;
    j["objective"] = objective;
    j["stats"] = {{"backend", stats.backend},
                  {"status", stats.status},
                  {"objective", stats.objective},
                  {"best_bound", stats.best_bound},
                  {"gap", stats.gap},
                  {"nodes", stats.nodes},
                  {"iterations", stats.iterations},
                  {"wall_seconds", stats.wall_seconds}};
    return j.dump(2);
}

Schedule Schedule::from_json(const std::string& text) {
    Schedule s;
    try {
        json j = json::parse(text);
        s.u = j.at("u").get<std::vector<std::vector<int>>>();
        s.v = j.at("v").get<std::vector<std::vector<double>>>();
        s.w = j.at("w").get<std::vector<std::vector<double>>>();
        s.p = j.at("p").get<std::vector<std::vector<double>>>();
        s.r_spin = j.at("r_spin").get<std::vector<std::vector<double>>>();
        s.r_nonspin = j.at("r_nonspin").get<std::vector<std::vector<double>>>();
        s.vres_p = j.at("vres_p").get<std::vector<std::vector<double>>>();
        s.flow = j.at("flow").get<std::vector<std::vector<double>>>();
        s.angle = j.at("angle").get<std::vector<std::vector<double>>>();
        s.r_total = j.at("r_total").get<std::vector<double>>();
        s.objective = j.at("objective").get<double>();
        if (j.contains("stats")) {
            const auto& st = j["stats"];
            s.stats.backend = st.value("backend", "");
            s.stats.status = st.value("status", "");
            s.stats.objective = st.value("objective", 0.0);
            s.stats.best_bound = st.value("best_bound", 0.0);
            s.stats.gap = st.value("gap", 0.0);
            s.stats.nodes = st.value("nodes", 0L);
            s.stats.iterations = st.value("iterations", 0L);
            s.stats.wall_seconds = st.value("wall_seconds", 0.0);
        }
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed schedule JSON: ") + e.what());
    }
    return s;
}

} // namespace resa
