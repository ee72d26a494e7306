#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pdptw/bounds.hpp"
#include "pdptw/config.hpp"
#include "pdptw/dynamic.hpp"
#include "pdptw/errors.hpp"
#include "pdptw/instance.hpp"
#include "pdptw/lilim.hpp"
#include "pdptw/pareto.hpp"
#include "pdptw/schedule.hpp"

namespace pdptw {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Solution <-> JSON: {"0": [0, ..., 0], "1": [...], ...}

inline Json solution_to_json(const Solution& sol) {
    Json j = Json::object();
    for (std::size_t k = 0; k < sol.routes.size(); ++k) j[std::to_string(k)] = sol.routes[k];
    return j;
}

inline Solution solution_from_json(const Json& j) {
    if (!j.is_object()) throw std::runtime_error("solution must be a JSON object");
    std::vector<std::pair<int, Route>> items;
    for (const auto& [key, val] : j.items()) items.emplace_back(std::stoi(key), val.get<Route>());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Solution sol;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i].first != static_cast<int>(i)) throw std::runtime_error("solution vehicle keys must be 0..K-1");
        sol.routes.push_back(std::move(items[i].second));
    }
    return sol;
}

// ---------------------------------------------------------------------------
// Dynamic event files

/// `t_d, px, py, pq, pe, pl, ps, dx, dy, dq, de, dl, ds`, one event per line. A leading header
/// line is skipped.
inline std::vector<DynamicEvent> parse_events_csv(std::istream& in) {
    std::vector<DynamicEvent> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::trim(line).empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, ',');) fields.push_back(detail::trim(f));
        double first = 0;
        if (out.empty() && lineno == 1 && !detail::parse_field(fields[0], first)) continue;
        if (fields.size() != 13) throw ParseError(lineno, "event row needs 13 fields, got " + std::to_string(fields.size()));
        DynamicEvent ev;
        bool ok = detail::parse_field(fields[0], ev.t_d);
        auto node = [&](std::size_t at, Node& n) {
            ok = ok && detail::parse_field(fields[at], n.x) && detail::parse_field(fields[at + 1], n.y) &&
                 detail::parse_field(fields[at + 2], n.q) && detail::parse_field(fields[at + 3], n.e) &&
                 detail::parse_field(fields[at + 4], n.l) && detail::parse_field(fields[at + 5], n.s);
        };
        node(1, ev.pickup);
        node(7, ev.delivery);
        if (!ok) throw ParseError(lineno, "malformed event row");
        if (ev.pickup.q <= 0) throw ParseError(lineno, "event pickup quantity must be positive");
        if (ev.delivery.q != -ev.pickup.q) throw ParseError(lineno, "event delivery quantity must equal -pickup quantity");
        if (ev.t_d < 0) throw ParseError(lineno, "event time must be non-negative");
        if (ev.pickup.e > ev.pickup.l || ev.delivery.e > ev.delivery.l) throw ParseError(lineno, "inverted time window");
        out.push_back(ev);
    }
    return out;
}

inline std::string serialize_events_csv(const std::vector<DynamicEvent>& events) {
    std::ostringstream os;
    os << "t_d,px,py,pq,pe,pl,ps,dx,dy,dq,de,dl,ds\n";
    auto num = detail::format_number;
    for (const auto& ev : events) {
        os << num(ev.t_d);
        for (const Node* n : {&ev.pickup, &ev.delivery})
            os << ',' << num(n->x) << ',' << num(n->y) << ',' << n->q << ',' << num(n->e) << ',' << num(n->l) << ','
               << num(n->s);
        os << '\n';
    }
    return os.str();
}

struct DerivedScenario {
    Instance instance;
    std::vector<DynamicEvent> events;
    std::vector<int> removed_couples;  ///< indices into the original couple list
};

/// Removes ceil(fraction * couples) random couples and replays them as events at
/// release * horizon. Deterministic per seed.
inline DerivedScenario derive_events(const Instance& inst, double fraction, double release, std::uint64_t seed) {
    const std::size_t c = inst.couples().size();
    if (!(fraction > 0 && fraction < 1)) throw ContractViolation("event fraction must lie in (0, 1)");
    if (release < 0) throw ContractViolation("release rule must be non-negative");
    const auto m = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(c) - 1e-9));
    if (m >= c) throw ContractViolation("event fraction would remove every couple");

    std::vector<int> idx(c);
    std::iota(idx.begin(), idx.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<int> removed(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(m));
    std::vector<int> kept(idx.begin() + static_cast<std::ptrdiff_t>(m), idx.end());
    std::sort(removed.begin(), removed.end());
    std::sort(kept.begin(), kept.end());

    DerivedScenario out{restrict_to_couples(inst, kept), {}, removed};
    const double t_d = release * inst.horizon();
    for (int r : removed) {
        const Couple& cp = inst.couples()[static_cast<std::size_t>(r)];
        out.events.push_back({t_d, inst.node(cp.pickup), inst.node(cp.delivery)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Run reports

struct ReportRow {
    int n_k = 0;
    double f1 = 0;
    double f2 = 0;
    double F = 0;
    Solution solution;
};

struct EventReport {
    double t_d = 0;
    bool served = false;
    std::string message;
    Couple couple{-1, -1};
    std::vector<Route> committed;
};

struct RunReport {
    std::string instance;
    std::string method;  ///< "static", "m1" or "m2"
    std::uint64_t seed = 0;
    GaConfig config;
    BoundsReport bounds;
    std::vector<ReportRow> rows;  ///< sorted by f1
    std::vector<EventReport> events;
    std::optional<double> wall_time_s;
    std::optional<std::vector<ObjectiveVector>> oracle_front;

    std::size_t n_sol() const { return rows.size(); }

    std::optional<std::size_t> min_f1_row() const { return argmin([](const ReportRow& r) { return std::pair(r.f1, r.f2); }); }
    std::optional<std::size_t> min_f2_row() const { return argmin([](const ReportRow& r) { return std::pair(r.f2, r.f1); }); }

private:
    template <typename Key>
    std::optional<std::size_t> argmin(Key key) const {
        if (rows.empty()) return std::nullopt;
        std::size_t best = 0;
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (key(rows[i]) < key(rows[best])) best = i;
        return best;
    }
};

inline RunReport make_report(std::string instance, std::string method, const GaConfig& cfg, const BoundsReport& b,
                             const Weights& w, const ParetoArchive& archive) {
    RunReport rep;
    rep.instance = std::move(instance);
    rep.method = std::move(method);
    rep.seed = cfg.seed;
    rep.config = cfg;
    rep.bounds = b;
    for (const auto& e : archive.sorted())
        rep.rows.push_back({used_vehicles(e.solution), e.obj.f1, e.obj.f2, aggregate_fitness(e.obj, w), e.solution});
    return rep;
}

inline RunReport make_report(std::string instance, std::string method, const GaConfig& cfg, const DynamicResult& dyn) {
    RunReport rep = make_report(std::move(instance), std::move(method), cfg, dyn.bounds, dyn.weights, dyn.archive);
    for (const auto& oc : dyn.events) rep.events.push_back({oc.t_d, oc.served, oc.message, oc.couple, oc.committed});
    return rep;
}

inline const char* kCsvHeader = "instance,method,N_sol,N_k,f1,f2,F,seed";

inline std::string report_csv_rows(const RunReport& rep) {
    std::ostringstream os;
    auto num = detail::format_number;
    for (const auto& r : rep.rows)
        os << rep.instance << ',' << rep.method << ',' << rep.n_sol() << ',' << r.n_k << ',' << num(r.f1) << ','
           << num(r.f2) << ',' << num(r.F) << ',' << rep.seed << '\n';
    return os.str();
}

inline std::string report_to_csv(const RunReport& rep) { return std::string(kCsvHeader) + "\n" + report_csv_rows(rep); }

inline Json config_to_json(const GaConfig& c) {
    return Json{{"population_size", c.population_size}, {"generations", c.generations},
                {"crossover_rate", c.crossover_rate},   {"mutation_rate", c.mutation_rate},
                {"copy_rate", c.copy_rate},             {"lambda1", c.lambda1},
                {"lambda2", c.lambda2},                 {"split_samples", c.split_samples},
                {"seed", c.seed},                       {"archive_capacity", c.archive_capacity}};
}

inline GaConfig config_from_json(const Json& j) {
    GaConfig c;
    c.population_size = j.at("population_size").get<int>();
    c.generations = j.at("generations").get<int>();
    c.crossover_rate = j.at("crossover_rate").get<double>();
    c.mutation_rate = j.at("mutation_rate").get<double>();
    c.copy_rate = j.at("copy_rate").get<double>();
    c.lambda1 = j.at("lambda1").get<double>();
    c.lambda2 = j.at("lambda2").get<double>();
    c.split_samples = j.at("split_samples").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.archive_capacity = j.at("archive_capacity").get<int>();
    return c;
}

inline Json report_to_json(const RunReport& rep) {
    Json j;
    j["instance"] = rep.instance;
    j["method"] = rep.method;
    j["seed"] = rep.seed;
    j["N_sol"] = rep.n_sol();
    j["config"] = config_to_json(rep.config);
    j["bounds"] = Json{{"f1b", rep.bounds.f1b}, {"f2b_raw", rep.bounds.f2b_raw}, {"f2b", rep.bounds.f2b},
                       {"c1", rep.bounds.c1},   {"c2", rep.bounds.c2}};
    Json rows = Json::array();
    for (const auto& r : rep.rows)
        rows.push_back(Json{{"N_k", r.n_k}, {"f1", r.f1}, {"f2", r.f2}, {"F", r.F}, {"routes", solution_to_json(r.solution)}});
    j["rows"] = std::move(rows);
    Json summary = Json::object();
    if (auto i = rep.min_f1_row()) summary["min_f1"] = *i;
    if (auto i = rep.min_f2_row()) summary["min_f2"] = *i;
    j["summary"] = std::move(summary);
    Json events = Json::array();
    for (const auto& e : rep.events) {
        Json committed = Json::object();
        for (std::size_t k = 0; k < e.committed.size(); ++k) committed[std::to_string(k)] = e.committed[k];
        events.push_back(Json{{"t_d", e.t_d},
                              {"served", e.served},
                              {"message", e.message},
                              {"pickup", e.couple.pickup},
                              {"delivery", e.couple.delivery},
                              {"committed", std::move(committed)}});
    }
    j["events"] = std::move(events);
    if (rep.wall_time_s) j["wall_time_s"] = *rep.wall_time_s;
    if (rep.oracle_front) {
        Json front = Json::array();
        for (const auto& o : *rep.oracle_front) front.push_back(Json{{"f1", o.f1}, {"f2", o.f2}});
        j["oracle_front"] = std::move(front);
    }
    return j;
}

inline RunReport report_from_json(const Json& j) {
    RunReport rep;
    rep.instance = j.at("instance").get<std::string>();
    rep.method = j.at("method").get<std::string>();
    rep.seed = j.at("seed").get<std::uint64_t>();
    rep.config = config_from_json(j.at("config"));
    const Json& b = j.at("bounds");
    rep.bounds = {b.at("f1b").get<double>(), b.at("f2b_raw").get<double>(), b.at("f2b").get<double>(),
                  b.at("c1").get<double>(), b.at("c2").get<double>()};
    for (const auto& r : j.at("rows"))
        rep.rows.push_back({r.at("N_k").get<int>(), r.at("f1").get<double>(), r.at("f2").get<double>(),
                            r.at("F").get<double>(), solution_from_json(r.at("routes"))});
    for (const auto& e : j.at("events")) {
        EventReport ev;
        ev.t_d = e.at("t_d").get<double>();
        ev.served = e.at("served").get<bool>();
        ev.message = e.at("message").get<std::string>();
        ev.couple = {e.at("pickup").get<NodeId>(), e.at("delivery").get<NodeId>()};
        ev.committed = solution_from_json(e.at("committed")).routes;
        rep.events.push_back(std::move(ev));
    }
    if (j.contains("wall_time_s")) rep.wall_time_s = j.at("wall_time_s").get<double>();
    if (j.contains("oracle_front")) {
        std::vector<ObjectiveVector> front;
        for (const auto& o : j.at("oracle_front")) front.push_back({o.at("f1").get<double>(), o.at("f2").get<double>()});
        rep.oracle_front = std::move(front);
    }
    return rep;
}

} // namespace pdptw
