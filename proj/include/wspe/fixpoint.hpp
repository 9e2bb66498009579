#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "wspe/game.hpp"
#include "wspe/path_oracle.hpp"
#include "wspe/reductions.hpp"

// Remove-Adjust labeling of payoffs on the vertices reachable from v_0.

namespace wspe {

struct LabelingTable {
    std::map<Vertex, std::set<Payoff>> labels; ///< only vertices of Succ*(v_0)
    int step = 0;

    const std::set<Payoff>& at(Vertex v) const { return labels.at(v); }
    bool has(Vertex v, const Payoff& p) const {
        auto it = labels.find(v);
        return it != labels.end() && it->second.count(p) != 0;
    }
    /// {w : p in labels(w)}
    VertexSet region(const Payoff& p) const {
        VertexSet out;
        for (const auto& [v, ps] : labels)
            if (ps.count(p)) out.insert(v);
        return out;
    }
    std::size_t total() const {
        std::size_t n = 0;
        for (const auto& [v, ps] : labels) n += ps.size();
        return n;
    }
    bool same_labels(const LabelingTable& o) const { return labels == o.labels; }
    bool operator==(const LabelingTable&) const = default;
};

enum class Cause { Remove, Adjust };

inline const char* to_string(Cause c) { return c == Cause::Remove ? "remove" : "adjust"; }

struct TraceEntry {
    int k = 0;
    Vertex vertex = 0;
    Payoff payoff;
    Cause cause = Cause::Remove;
    bool operator==(const TraceEntry&) const = default;
};

struct FixpointTrace {
    std::vector<TraceEntry> removals;
    int rounds = 0; ///< Remove-Adjust iterations, including the last one that removed nothing
    bool operator==(const FixpointTrace&) const = default;
};

/// The removed label and the successor that justified it.
struct Removal {
    Vertex vertex = 0;
    Payoff payoff;
    Vertex successor = 0;
    bool operator==(const Removal&) const = default;
};

/// Which candidate remove_step picks when several qualify.
struct RemovalOrder {
    enum class Kind {
        Canonical, ///< smallest vertex, then smallest payoff, then smallest successor
        Reverse,   ///< largest vertex, then largest payoff, then largest successor
        Seeded,    ///< uniformly among candidates, from seed and step
    };
    Kind kind = Kind::Canonical;
    std::uint64_t seed = 0;
};

inline LabelingTable init_labels(const Game& g, Vertex v0, BcStrategy strategy = BcStrategy::Auto) {
    if (v0 < 0 || static_cast<std::size_t>(v0) >= g.num_vertices())
        throw Error(ErrorKind::UnknownVertex, "initial vertex " + std::to_string(v0) + " is not in the game");
    if (!prefix_independent(g.kind()))
        throw Error(ErrorKind::UnsupportedObjective, "labeling needs prefix-independent objectives");
    if (g.num_players() > 20) throw Error(ErrorKind::BudgetExceeded, "too many players to enumerate payoffs");
    const VertexSet allowed = reachable_set(g, v0);
    const auto n = static_cast<std::size_t>(g.num_players());
    LabelingTable t;
    for (Vertex v : allowed.elements()) {
        auto& ps = t.labels[v];
        for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
            Payoff p = Payoff::nth(n, k);
            if (payoff_path(g, allowed, p, v, strategy)) ps.insert(std::move(p));
        }
    }
    return t;
}

namespace detail {

/// p_i < p'_i for every p' labeling v' (vacuous when the label is empty).
inline bool dominated(const Payoff& p, Player i, const std::set<Payoff>& succ_labels) {
    if (p.gain(i)) return false;
    for (const auto& q : succ_labels)
        if (!q.gain(i)) return false;
    return true;
}

inline std::vector<Removal> removal_candidates(const LabelingTable& t, const Game& g) {
    std::vector<Removal> out;
    for (const auto& [v, ps] : t.labels) {
        const Player i = g.owner(v);
        for (const auto& p : ps)
            for (Vertex w : g.successors(v)) {
                auto it = t.labels.find(w);
                if (it != t.labels.end() && dominated(p, i, it->second)) out.push_back({v, p, w});
            }
    }
    return out;
}

} // namespace detail

/// One Remove operation.  The table is unchanged (same step) when nothing
/// qualifies.
inline std::pair<LabelingTable, std::optional<Removal>> remove_step(const LabelingTable& t, const Game& g,
                                                                    const RemovalOrder& order = {}) {
    std::optional<Removal> chosen;
    switch (order.kind) {
    case RemovalOrder::Kind::Canonical:
        // Candidates come out in (vertex, payoff, successor) order; the first one is enough.
        for (const auto& [v, ps] : t.labels) {
            const Player i = g.owner(v);
            for (const auto& p : ps) {
                for (Vertex w : g.successors(v)) {
                    auto it = t.labels.find(w);
                    if (it != t.labels.end() && detail::dominated(p, i, it->second)) {
                        chosen = Removal{v, p, w};
                        break;
                    }
                }
                if (chosen) break;
            }
            if (chosen) break;
        }
        break;
    case RemovalOrder::Kind::Reverse: {
        auto all = detail::removal_candidates(t, g);
        if (!all.empty()) chosen = all.back();
        break;
    }
    case RemovalOrder::Kind::Seeded: {
        auto all = detail::removal_candidates(t, g);
        if (!all.empty()) {
            std::mt19937_64 rng(order.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(t.step + 1)));
            chosen = all[rng() % all.size()];
        }
        break;
    }
    }
    if (!chosen) return {t, std::nullopt};
    LabelingTable next = t;
    next.labels[chosen->vertex].erase(chosen->payoff);
    next.step = t.step + 1;
    return {std::move(next), chosen};
}

/// One Adjust operation following a Remove.  Also returns the labels it drops.
inline std::pair<LabelingTable, std::vector<Vertex>> adjust_step_detailed(const LabelingTable& t, const Game& g,
                                                                          const std::optional<Removal>& removed,
                                                                          BcStrategy strategy = BcStrategy::Auto) {
    if (!removed) return {t, {}};
    const Payoff& p = removed->payoff;
    const VertexSet region = t.region(p);
    LabelingTable next = t;
    next.step = t.step + 1;
    std::vector<Vertex> dropped;
    for (Vertex u : region.elements())
        if (!payoff_path(g, region, p, u, strategy)) {
            next.labels[u].erase(p);
            dropped.push_back(u);
        }
    return {std::move(next), std::move(dropped)};
}

inline LabelingTable adjust_step(const LabelingTable& t, const Game& g, const std::optional<Removal>& removed,
                                 BcStrategy strategy = BcStrategy::Auto) {
    return adjust_step_detailed(t, g, removed, strategy).first;
}

struct FixpointResult {
    LabelingTable initial; ///< P_0
    LabelingTable table;   ///< P_{k*}
    FixpointTrace trace;
};

inline FixpointResult run_fixpoint(const Game& g, Vertex v0, const RemovalOrder& order = {},
                                   BcStrategy strategy = BcStrategy::Auto) {
    FixpointResult r;
    r.initial = init_labels(g, v0, strategy);
    r.table = r.initial;
    for (;;) {
        ++r.trace.rounds;
        auto [after_remove, removed] = remove_step(r.table, g, order);
        if (!removed) break;
        r.trace.removals.push_back({after_remove.step, removed->vertex, removed->payoff, Cause::Remove});
        auto [after_adjust, dropped] = adjust_step_detailed(after_remove, g, removed, strategy);
        for (Vertex u : dropped) r.trace.removals.push_back({after_adjust.step, u, removed->payoff, Cause::Adjust});
        r.table = std::move(after_adjust);
    }
    return r;
}

/// P_k rebuilt from P_0 and the trace.
inline LabelingTable replay(const LabelingTable& initial, const FixpointTrace& trace, int k) {
    LabelingTable t = initial;
    for (const auto& e : trace.removals)
        if (e.k <= k) t.labels[e.vertex].erase(e.payoff);
    t.step = k;
    return t;
}

struct Decision {
    bool exists = false;
    std::optional<Payoff> payoff;
    LabelingTable table;
    FixpointTrace trace;
    LabelingTable initial_table;
    /// Set for Reachability/Safety games; table and trace then refer to its vertices.
    std::optional<ProductGame> product;
    Vertex table_initial = 0; ///< v_0, or its product vertex

    /// The game the table is about.
    const Game& solved_game(const Game& original) const { return product ? product->game : original; }
};

inline Decision decide_constraint(const Game& g, Vertex v0, const Payoff& x, const Payoff& y,
                                  const RemovalOrder& order = {}) {
    const auto n = static_cast<std::size_t>(g.num_players());
    if (x.size() != n || y.size() != n)
        throw Error(ErrorKind::ArityMismatch, "constraint bounds must have one bit per player");
    Decision d;
    if (!componentwise_leq(x, y)) return d;
    const Game* solved = &g;
    if (!prefix_independent(g.kind())) {
        d.product = reach_safety_product(g, v0);
        solved = &d.product->game;
        d.table_initial = d.product->initial;
    } else {
        d.table_initial = v0;
    }
    auto r = run_fixpoint(*solved, d.table_initial, order);
    d.table = std::move(r.table);
    d.trace = std::move(r.trace);
    d.initial_table = std::move(r.initial);
    for (const auto& [v, ps] : d.table.labels)
        if (ps.empty()) return d;
    for (const auto& p : d.table.at(d.table_initial))
        if (componentwise_leq(x, p) && componentwise_leq(p, y)) {
            d.exists = true;
            d.payoff = p;
            break;
        }
    return d;
}

} // namespace wspe
