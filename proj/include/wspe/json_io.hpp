#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "wspe/fixpoint.hpp"
#include "wspe/game.hpp"
#include "wspe/reductions.hpp"
#include "wspe/strategy.hpp"
#include "wspe/witness.hpp"

// JSON forms of games, tables, traces, witnesses, profiles and reports.
// nlohmann::json objects keep keys sorted, so dumps are canonical.

namespace wspe {

using Json = nlohmann::json;

namespace detail {

[[noreturn]] inline void bad_json(const std::string& why) { throw Error(ErrorKind::MalformedInput, why); }

inline const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad_json(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

inline int as_int(const Json& j, const std::string& what) {
    if (!j.is_number_integer()) bad_json(what + " must be an integer");
    return j.get<int>();
}

inline VertexSet set_from_json(const Json& j, const std::string& what) {
    if (!j.is_array()) bad_json(what + " must be a list of integers");
    VertexSet s;
    for (const auto& x : j) {
        int v = as_int(x, what);
        if (v < 0) throw Error(ErrorKind::UnknownVertex, what + " mentions vertex " + std::to_string(v));
        s.insert(v);
    }
    return s;
}

inline Json set_to_json(const VertexSet& s) { return Json(s.elements()); }

inline std::vector<int> coloring_from_json(const Json& j, std::size_t n, const std::string& what) {
    if (!j.is_object()) bad_json(what + ": colors must map vertex ids to colors");
    std::vector<int> color(n, 0);
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::size_t idx = 0;
        int v = -1;
        try {
            v = std::stoi(it.key(), &idx);
        } catch (const std::exception&) {
            bad_json(what + ": bad vertex id \"" + it.key() + "\"");
        }
        if (idx != it.key().size()) bad_json(what + ": bad vertex id \"" + it.key() + "\"");
        if (v < 0 || static_cast<std::size_t>(v) >= n)
            throw Error(ErrorKind::UnknownVertex, what + " colors vertex " + std::to_string(v));
        color[static_cast<std::size_t>(v)] = as_int(it.value(), what);
    }
    return color;
}

inline Json coloring_to_json(const std::vector<int>& color) {
    Json j = Json::object();
    for (std::size_t v = 0; v < color.size(); ++v) j[std::to_string(v)] = color[v];
    return j;
}

inline std::vector<VertexSet> family_from_json(const Json& j, const std::string& what) {
    if (!j.is_array()) bad_json(what + ": family must be a list of lists");
    std::vector<VertexSet> out;
    for (const auto& s : j) out.push_back(set_from_json(s, what));
    return out;
}

inline Json family_to_json(const std::vector<VertexSet>& f) {
    Json j = Json::array();
    for (const auto& s : f) j.push_back(set_to_json(s));
    return j;
}

inline std::vector<AcceptancePair> pairs_from_json(const Json& j, const std::string& what) {
    if (!j.is_array()) bad_json(what + ": pairs must be a list");
    std::vector<AcceptancePair> out;
    for (const auto& p : j) out.push_back({set_from_json(field(p, "G"), what), set_from_json(field(p, "R"), what)});
    return out;
}

inline Json pairs_to_json(const std::vector<AcceptancePair>& ps) {
    Json j = Json::array();
    for (const auto& p : ps) j.push_back({{"G", set_to_json(p.good)}, {"R", set_to_json(p.bad)}});
    return j;
}

} // namespace detail

inline Json objective_to_json(const ObjectiveSpec& obj) {
    Json j;
    j["type"] = std::string(to_string(kind_of(obj)));
    std::visit(
        [&](const auto& o) {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, Parity>) {
                j["colors"] = detail::coloring_to_json(o.color);
            } else if constexpr (std::is_same_v<T, ExplicitMuller>) {
                j["family"] = detail::family_to_json(o.family);
            } else if constexpr (std::is_same_v<T, Muller>) {
                j["colors"] = detail::coloring_to_json(o.color);
                j["family"] = detail::family_to_json(o.family);
            } else if constexpr (std::is_same_v<T, Rabin> || std::is_same_v<T, Streett>) {
                j["pairs"] = detail::pairs_to_json(o.pairs);
            } else {
                j["F"] = detail::set_to_json(o.target);
            }
        },
        obj);
    return j;
}

inline ObjectiveSpec objective_from_json(const Json& j, std::size_t n, Player i) {
    const std::string what = "objective of player " + std::to_string(i);
    const auto& type = detail::field(j, "type");
    if (!type.is_string()) detail::bad_json(what + ": type must be a string");
    auto kind = objective_kind_from(type.get<std::string>());
    if (!kind) detail::bad_json(what + ": unknown type \"" + type.get<std::string>() + "\"");
    switch (*kind) {
    case ObjectiveKind::Reachability: return Reachability{detail::set_from_json(detail::field(j, "F"), what)};
    case ObjectiveKind::Safety: return Safety{detail::set_from_json(detail::field(j, "F"), what)};
    case ObjectiveKind::Buchi: return Buchi{detail::set_from_json(detail::field(j, "F"), what)};
    case ObjectiveKind::CoBuchi: return CoBuchi{detail::set_from_json(detail::field(j, "F"), what)};
    case ObjectiveKind::Parity: return Parity{detail::coloring_from_json(detail::field(j, "colors"), n, what)};
    case ObjectiveKind::ExplicitMuller:
        return ExplicitMuller{detail::family_from_json(detail::field(j, "family"), what)};
    case ObjectiveKind::Muller:
        return Muller{detail::coloring_from_json(detail::field(j, "colors"), n, what),
                      detail::family_from_json(detail::field(j, "family"), what)};
    case ObjectiveKind::Rabin: return Rabin{detail::pairs_from_json(detail::field(j, "pairs"), what)};
    case ObjectiveKind::Streett: return Streett{detail::pairs_from_json(detail::field(j, "pairs"), what)};
    }
    detail::bad_json(what + ": unknown type");
}

inline Json game_to_json(const Game& g) {
    Json j;
    j["players"] = g.num_players();
    Json vs = Json::array();
    Json es = Json::array();
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        vs.push_back({{"id", v}, {"owner", g.owner(static_cast<Vertex>(v))}});
        for (Vertex w : g.successors(static_cast<Vertex>(v))) es.push_back({v, w});
    }
    j["vertices"] = vs;
    j["edges"] = es;
    if (g.initial()) j["initial"] = *g.initial();
    Json objs = Json::array();
    for (const auto& o : g.objectives()) objs.push_back(objective_to_json(o));
    j["objectives"] = objs;
    return j;
}

inline Game game_from_json(const Json& j) {
    RawGame raw;
    raw.num_players = detail::as_int(detail::field(j, "players"), "players");
    const auto& vs = detail::field(j, "vertices");
    if (!vs.is_array()) detail::bad_json("vertices must be a list");
    raw.owner.assign(vs.size(), 0);
    std::vector<char> seen(vs.size(), 0);
    for (const auto& v : vs) {
        int id = detail::as_int(detail::field(v, "id"), "vertex id");
        if (id < 0 || static_cast<std::size_t>(id) >= vs.size() || seen[static_cast<std::size_t>(id)])
            detail::bad_json("vertex ids must be exactly 0..|V|-1");
        seen[static_cast<std::size_t>(id)] = 1;
        raw.owner[static_cast<std::size_t>(id)] = detail::as_int(detail::field(v, "owner"), "owner");
    }
    const auto& es = detail::field(j, "edges");
    if (!es.is_array()) detail::bad_json("edges must be a list");
    for (const auto& e : es) {
        if (!e.is_array() || e.size() != 2) detail::bad_json("every edge must be a pair");
        raw.edges.emplace_back(detail::as_int(e[0], "edge"), detail::as_int(e[1], "edge"));
    }
    if (j.contains("initial") && !j.at("initial").is_null()) raw.initial = detail::as_int(j.at("initial"), "initial");
    const auto& objs = detail::field(j, "objectives");
    if (!objs.is_array()) detail::bad_json("objectives must be a list");
    Player i = 1;
    for (const auto& o : objs) raw.objectives.push_back(objective_from_json(o, raw.owner.size(), i++));
    return validate_game(std::move(raw));
}

inline Game parse_game(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::MalformedInput, std::string("not valid JSON: ") + e.what());
    }
    return game_from_json(j);
}

// ---------------------------------------------------------------------------

inline Json table_to_json(const LabelingTable& t) {
    Json j = Json::object();
    for (const auto& [v, ps] : t.labels) {
        Json a = Json::array();
        for (const auto& p : ps) a.push_back(p.to_string());
        j[std::to_string(v)] = a;
    }
    return j;
}

inline Json trace_to_json(const FixpointTrace& t) {
    Json a = Json::array();
    for (const auto& e : t.removals)
        a.push_back({{"k", e.k}, {"vertex", e.vertex}, {"payoff", e.payoff.to_string()}, {"cause", to_string(e.cause)}});
    return a;
}

inline Json fixpoint_to_json(const LabelingTable& t, const FixpointTrace& tr) {
    return {{"fixpoint", table_to_json(t)}, {"trace", trace_to_json(tr)}, {"rounds", tr.rounds}, {"step", t.step}};
}

inline Json product_to_json(const ProductGame& pg) {
    Json states = Json::array();
    for (std::size_t v = 0; v < pg.states.size(); ++v) {
        Json sat = Json::array();
        for (int i = 0; i < 64; ++i)
            if ((pg.states[v].satisfied >> i) & 1U) sat.push_back(i + 1);
        states.push_back({{"id", v}, {"base", pg.states[v].base}, {"satisfied", sat}});
    }
    return {{"base_objective", std::string(to_string(pg.base_kind))},
            {"base_vertices", pg.base_vertex_count},
            {"initial", pg.initial},
            {"states", states}};
}

// ---------------------------------------------------------------------------

inline std::string slot_key(const Slot& s) { return std::to_string(s.first) + "," + std::to_string(s.second); }

inline Slot slot_from_key(const std::string& key) {
    auto comma = key.find(',');
    if (comma == std::string::npos) detail::bad_json("bad slot key \"" + key + "\"");
    try {
        return {std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1))};
    } catch (const std::exception&) {
        detail::bad_json("bad slot key \"" + key + "\"");
    }
}

inline Json lasso_to_json(const Lasso& l) { return {{"stem", l.stem}, {"cycle", l.cycle}}; }

inline Lasso lasso_from_json(const Json& j) {
    Lasso l;
    for (const auto& x : detail::field(j, "stem")) l.stem.push_back(detail::as_int(x, "stem"));
    for (const auto& x : detail::field(j, "cycle")) l.cycle.push_back(detail::as_int(x, "cycle"));
    if (l.cycle.empty()) detail::bad_json("a lasso needs a nonempty cycle");
    return l;
}

inline Json lassoes_to_json(const SymbolicWitness& w, const Game& g) {
    Json j = Json::object();
    for (const auto& [slot, l] : w.lassoes) {
        Json e = lasso_to_json(l);
        e["payoff"] = payoff_of(g, l).to_string();
        j[slot_key(slot)] = e;
    }
    return j;
}

inline Json witness_to_json(const SymbolicWitness& w, const Game& g) {
    Json idx = Json::array();
    for (const auto& [i, v] : w.index.entries) idx.push_back({i, v});
    return {{"index", idx}, {"lassoes", lassoes_to_json(w, g)}, {"initial", w.initial}};
}

inline SymbolicWitness witness_from_json(const Json& j) {
    SymbolicWitness w;
    for (const auto& e : detail::field(j, "index")) {
        if (!e.is_array() || e.size() != 2) detail::bad_json("index entries must be [i, v] pairs");
        w.index.entries.insert({detail::as_int(e[0], "slot"), detail::as_int(e[1], "slot")});
    }
    const auto& ls = detail::field(j, "lassoes");
    if (!ls.is_object()) detail::bad_json("lassoes must be an object");
    for (auto it = ls.begin(); it != ls.end(); ++it) w.lassoes.emplace(slot_from_key(it.key()), lasso_from_json(it.value()));
    if (j.contains("initial")) {
        const auto& init = j.at("initial");
        // Profiles write [0, v0]; witnesses write v0.
        w.initial = init.is_array() ? detail::as_int(init.at(1), "initial") : detail::as_int(init, "initial");
    } else {
        detail::bad_json("missing field \"initial\"");
    }
    return w;
}

inline Json profile_to_json(const MooreProfile& p, const Game& g) {
    Json slots = Json::array();
    for (const auto& [s, l] : p.witness().lassoes) slots.push_back({s.first, s.second});
    return {{"slots", slots},
            {"lassoes", lassoes_to_json(p.witness(), g)},
            {"initial", {0, p.witness().initial}},
            {"memory_states", p.size()}};
}

inline MooreProfile profile_from_json(const Json& j, const Game& g) {
    SymbolicWitness w;
    for (const auto& e : detail::field(j, "slots")) {
        if (!e.is_array() || e.size() != 2) detail::bad_json("slots must be [i, v] pairs");
        w.index.entries.insert({detail::as_int(e[0], "slot"), detail::as_int(e[1], "slot")});
    }
    const auto& ls = detail::field(j, "lassoes");
    if (!ls.is_object()) detail::bad_json("lassoes must be an object");
    for (auto it = ls.begin(); it != ls.end(); ++it) w.lassoes.emplace(slot_from_key(it.key()), lasso_from_json(it.value()));
    const auto& init = detail::field(j, "initial");
    if (!init.is_array() || init.size() != 2) detail::bad_json("initial must be [0, v0]");
    w.initial = detail::as_int(init[1], "initial");
    for (const auto& [slot, l] : w.lassoes)
        if (slot.second < 0 || static_cast<std::size_t>(slot.second) >= g.num_vertices())
            throw Error(ErrorKind::UnknownVertex, "slot vertex " + std::to_string(slot.second) + " is not in the game");
    return MooreProfile(std::move(w), g);
}

inline Json goodness_to_json(const GoodnessReport& r) {
    Json v = Json::array();
    for (const auto& x : r.violations)
        v.push_back({{"slot", {x.slot.first, x.slot.second}}, {"vertex", x.vertex}, {"player", x.player},
                     {"successor", x.successor}});
    return {{"good", r.good}, {"violations", v}};
}

inline Json report_to_json(const VerifyReport& r) {
    Json j = {{"is_weak_spe", r.is_weak_spe}, {"configurations", r.configurations}, {"counterexample", nullptr}};
    if (r.counterexample) {
        const auto& c = *r.counterexample;
        j["counterexample"] = {{"config",
                                {{"slot", {c.config.memory.slot.first, c.config.memory.slot.second}},
                                 {"position", c.config.memory.position},
                                 {"vertex", c.config.vertex}}},
                               {"deviator", c.deviator},
                               {"alternative", c.alternative},
                               {"gain_before", c.gain_before ? 1 : 0},
                               {"gain_after", c.gain_after ? 1 : 0}};
    }
    return j;
}

inline Json qbf_constraint_to_json(const QbfInstance& q) {
    return {{"initial", q.initial}, {"lower", q.lower.to_string()}, {"upper", q.upper.to_string()}};
}

} // namespace wspe
