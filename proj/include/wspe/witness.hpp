#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "wspe/fixpoint.hpp"
#include "wspe/game.hpp"
#include "wspe/path_oracle.hpp"
#include "wspe/reductions.hpp"

namespace wspe {

/// (i, v): i = 0 for the initial slot, otherwise the player who moved into v.
using Slot = std::pair<Player, Vertex>;

struct WitnessIndex {
    std::set<Slot> entries;
    bool contains(const Slot& s) const { return entries.count(s) != 0; }
    bool operator==(const WitnessIndex&) const = default;
};

struct SymbolicWitness {
    WitnessIndex index;
    std::map<Slot, Lasso> lassoes;
    Vertex initial = 0;

    const Lasso& at(const Slot& s) const {
        auto it = lassoes.find(s);
        if (it == lassoes.end())
            throw Error(ErrorKind::MissingLasso,
                        "no lasso for slot (" + std::to_string(s.first) + "," + std::to_string(s.second) + ")");
        return it->second;
    }
    std::size_t max_length() const {
        std::size_t m = 0;
        for (const auto& [s, l] : lassoes) m = std::max(m, l.length());
        return m;
    }
    bool operator==(const SymbolicWitness&) const = default;
};

inline WitnessIndex witness_index(const Game& g, Vertex v0) {
    WitnessIndex idx;
    idx.entries.insert({0, v0});
    for (Vertex v : reachable_set(g, v0).elements())
        for (Vertex w : g.successors(v)) idx.entries.insert({g.owner(v), w});
    return idx;
}

/// Chronological loop erasure, cut at the first vertex of `stop`.
inline std::vector<Vertex> loop_erase(const std::vector<Vertex>& path, const VertexSet& stop) {
    std::vector<Vertex> out;
    for (Vertex v : path) {
        auto it = std::find(out.begin(), out.end(), v);
        if (it != out.end())
            out.erase(it + 1, out.end());
        else
            out.push_back(v);
        if (stop.contains(v)) break;
    }
    return out;
}

/// Simple stem, closed walk over the witness's Inf set.
inline Lasso compact_to_lasso(const PathWitness& w, const Game& g) {
    return to_lasso(g, PathWitness{loop_erase(w.stem, w.inf_set), w.inf_set});
}

/// Product games: every I-level is visited along one simple segment and the
/// last level closes into a simple cycle inside the Inf set, so the lasso has
/// at most (|Π|+1)·|V| vertices.  The Inf set may shrink, which keeps the
/// Büchi/co-Büchi payoff since it only depends on the final I.
inline Lasso compact_product_lasso(const PathWitness& w, const ProductGame& pg) {
    const Game& g = pg.game;
    auto stem = loop_erase(w.stem, w.inf_set);
    const Vertex s = stem.back();
    const auto level = pg.state(s).satisfied;
    std::size_t seg = stem.size() - 1;
    while (seg > 0 && pg.state(stem[seg - 1]).satisfied == level) --seg;
    auto cyc = *shortest_cycle_through(g, w.inf_set, s);
    std::vector<Vertex> walk(stem.begin() + static_cast<std::ptrdiff_t>(seg), stem.end());
    walk.insert(walk.end(), cyc.begin() + 1, cyc.end());
    walk.push_back(s);
    // First repetition in the final level closes the lasso.
    std::size_t i = 0, j = 0;
    for (j = 1; j < walk.size(); ++j) {
        auto it = std::find(walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(j), walk[j]);
        if (it != walk.begin() + static_cast<std::ptrdiff_t>(j)) {
            i = static_cast<std::size_t>(it - walk.begin());
            break;
        }
    }
    Lasso l;
    l.stem.assign(stem.begin(), stem.begin() + static_cast<std::ptrdiff_t>(seg));
    l.stem.insert(l.stem.end(), walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(i));
    l.cycle.assign(walk.begin() + static_cast<std::ptrdiff_t>(i), walk.begin() + static_cast<std::ptrdiff_t>(j));
    return l;
}

namespace detail {

inline SymbolicWitness build_witness_with(const Game& g, const LabelingTable& table, Vertex v0, const Payoff& p0,
                                          const std::function<Lasso(const PathWitness&)>& compact) {
    if (!table.has(v0, p0)) throw Error(ErrorKind::PayoffAbsent, "payoff " + p0.to_string() + " is not labeling v_0");
    for (const auto& [v, ps] : table.labels)
        if (ps.empty()) throw Error(ErrorKind::EmptyLabel, "vertex " + std::to_string(v) + " has an empty label");
    SymbolicWitness w;
    w.index = witness_index(g, v0);
    w.initial = v0;
    for (const auto& slot : w.index.entries) {
        const auto [i, v] = slot;
        Payoff p = p0;
        if (i != 0) {
            const auto& ps = table.at(v);
            // Smallest i-th component, then lexicographically smallest.
            p = *std::min_element(ps.begin(), ps.end(), [i = i](const Payoff& a, const Payoff& b) {
                if (a.gain(i) != b.gain(i)) return !a.gain(i);
                return a < b;
            });
        }
        auto path = payoff_path(g, table.region(p), p, v);
        if (!path)
            throw Error(ErrorKind::NotRealizable, "table is not a fixpoint: no labeled play for slot (" +
                                                      std::to_string(i) + "," + std::to_string(v) + ")");
        w.lassoes.emplace(slot, compact(*path));
    }
    return w;
}

} // namespace detail

inline SymbolicWitness build_witness(const Game& g, const LabelingTable& table, Vertex v0, const Payoff& p0) {
    return detail::build_witness_with(g, table, v0, p0, [&](const PathWitness& pw) { return compact_to_lasso(pw, g); });
}

/// Witness over the product game, with product compaction.
inline SymbolicWitness build_witness(const ProductGame& pg, const LabelingTable& table, const Payoff& p0) {
    return detail::build_witness_with(pg.game, table, pg.initial, p0,
                                      [&](const PathWitness& pw) { return compact_product_lasso(pw, pg); });
}

/// A lasso ρ_{j,u} visiting v ∈ V_i whose player i would gain more by
/// switching to ρ_{i,v'} for a successor v'.
struct Violation {
    Slot slot;
    Vertex vertex = 0;
    Player player = 0;
    Vertex successor = 0;
    bool operator==(const Violation&) const = default;
};

struct GoodnessReport {
    bool good = true;
    std::vector<Violation> violations;
};

inline GoodnessReport check_goodness(const SymbolicWitness& w, const Game& g) {
    for (const auto& [slot, l] : w.lassoes)
        if (!lasso_in_game(g, l) || l.first() != slot.second)
            throw Error(ErrorKind::MalformedInput, "lasso for slot (" + std::to_string(slot.first) + "," +
                                                       std::to_string(slot.second) + ") is not a play from its vertex");
    for (const auto& slot : w.index.entries) w.at(slot);

    std::map<Slot, Payoff> gains;
    for (const auto& [slot, l] : w.lassoes) gains.emplace(slot, payoff_of(g, l));
    GoodnessReport r;
    for (const auto& [slot, l] : w.lassoes) {
        const Payoff& mine = gains.at(slot);
        for (Vertex v : occ_inf(l).occ.elements()) {
            const Player i = g.owner(v);
            for (Vertex v2 : g.successors(v)) {
                Slot target{i, v2};
                if (!w.index.contains(target)) continue;
                if (mine.gain(i) < gains.at(target).gain(i)) r.violations.push_back({slot, v, i, v2});
            }
        }
    }
    r.good = r.violations.empty();
    return r;
}

// ---------------------------------------------------------------------------
// Exhaustive search
// ---------------------------------------------------------------------------

namespace detail {

/// Shortest closed walk from s that stays in S and visits all of S.
inline std::optional<std::vector<Vertex>> shortest_covering_walk_from(const Game& g, const VertexSet& s, Vertex start) {
    auto verts = s.elements();
    if (verts.size() > 20) throw Error(ErrorKind::BudgetExceeded, "set too large for exhaustive lasso search");
    auto bit = [&](Vertex v) {
        return std::uint32_t{1} << static_cast<std::uint32_t>(std::find(verts.begin(), verts.end(), v) - verts.begin());
    };
    const std::uint32_t full = (std::uint32_t{1} << verts.size()) - 1;
    using State = std::pair<Vertex, std::uint32_t>;
    std::map<State, State> parent;
    std::deque<State> queue;
    State init{start, bit(start)};
    parent.emplace(init, init);
    queue.push_back(init);
    while (!queue.empty()) {
        auto [u, mask] = queue.front();
        queue.pop_front();
        for (Vertex w : g.successors(u)) {
            if (!s.contains(w)) continue;
            if (w == start && mask == full) {
                std::vector<Vertex> walk;
                for (State c{u, mask};; c = parent.at(c)) {
                    walk.push_back(c.first);
                    if (c == init) break;
                }
                std::reverse(walk.begin(), walk.end());
                return walk;
            }
            State next{w, mask | bit(w)};
            if (parent.emplace(next, State{u, mask}).second) queue.push_back(next);
        }
    }
    return std::nullopt;
}

/// Shortest path from v to s whose vertices (s excluded) lie in O and, together
/// with S, cover O.  Returned without s.
inline std::optional<std::vector<Vertex>> shortest_covering_stem(const Game& g, const VertexSet& occ, const VertexSet& inf,
                                                                 Vertex v, Vertex s) {
    auto verts = occ.elements();
    auto bit = [&](Vertex x) {
        return std::uint32_t{1} << static_cast<std::uint32_t>(std::find(verts.begin(), verts.end(), x) - verts.begin());
    };
    std::uint32_t need = 0;
    for (Vertex x : (occ - inf).elements()) need |= bit(x);
    if (v == s) {
        if (need == 0) return std::vector<Vertex>{};
    }
    using State = std::pair<Vertex, std::uint32_t>;
    std::map<State, State> parent;
    std::deque<State> queue;
    State init{v, bit(v)};
    parent.emplace(init, init);
    queue.push_back(init);
    while (!queue.empty()) {
        auto [u, mask] = queue.front();
        queue.pop_front();
        for (Vertex w : g.successors(u)) {
            if (!occ.contains(w)) continue;
            if (w == s && (mask & need) == need) {
                std::vector<Vertex> stem;
                for (State c{u, mask};; c = parent.at(c)) {
                    stem.push_back(c.first);
                    if (c == init) break;
                }
                std::reverse(stem.begin(), stem.end());
                return stem;
            }
            State next{w, mask | bit(w)};
            if (parent.emplace(next, State{u, mask}).second) queue.push_back(next);
        }
    }
    return std::nullopt;
}

struct Candidate {
    Lasso lasso;
    VertexSet occ;
    Payoff payoff;
};

/// One shortest lasso per (Occ, Inf) class of plays from v, kept when its
/// length fits and its (Occ, payoff) is new.
inline std::vector<Candidate> slot_candidates(const Game& g, Vertex v, std::size_t max_len) {
    const VertexSet reach = reachable_set(g, v);
    const auto rv = reach.elements();
    if (rv.size() > 16) throw Error(ErrorKind::BudgetExceeded, "game too large for exhaustive lasso search");
    auto subset = [&](std::uint32_t mask) {
        VertexSet s;
        for (std::size_t k = 0; k < rv.size(); ++k)
            if ((mask >> k) & 1U) s.insert(rv[k]);
        return s;
    };
    std::vector<Candidate> out;
    std::set<std::pair<VertexSet, Payoff>> seen;
    const std::uint32_t all = (std::uint32_t{1} << rv.size()) - 1;
    for (std::uint32_t occ_mask = 1; occ_mask <= all; ++occ_mask) {
        const VertexSet occ = subset(occ_mask);
        if (!occ.contains(v)) continue;
        // Inf ranges over the nonempty submasks of Occ.
        for (std::uint32_t inf_mask = occ_mask; inf_mask; inf_mask = (inf_mask - 1) & occ_mask) {
            const VertexSet inf = subset(inf_mask);
            if (!realizable_inf(g, inf, inf)) continue;
            const Payoff p = payoff_of(g, occ, inf);
            if (seen.count({occ, p})) continue;
            std::optional<Lasso> best;
            for (Vertex s : inf.elements()) {
                auto stem = shortest_covering_stem(g, occ, inf, v, s);
                if (!stem) continue;
                auto cyc = shortest_covering_walk_from(g, inf, s);
                if (!cyc) continue;
                Lasso l{*stem, *cyc};
                if (!best || l.length() < best->length()) best = std::move(l);
            }
            if (best && best->length() <= max_len) {
                seen.insert({occ, p});
                out.push_back({std::move(*best), occ, p});
            }
        }
    }
    return out;
}

} // namespace detail

/// Exhaustive search for a good witness whose initial payoff lies in [x, y]
/// and whose lassoes have at most max_len vertices.
inline std::optional<SymbolicWitness> brute_force_witness_search(const Game& g, Vertex v0, const Payoff& x,
                                                                 const Payoff& y, std::size_t max_len,
                                                                 std::uint64_t node_budget = 50'000'000) {
    if (!componentwise_leq(x, y)) return std::nullopt;
    const WitnessIndex idx = witness_index(g, v0);
    const std::vector<Slot> slots(idx.entries.begin(), idx.entries.end());
    std::vector<std::vector<detail::Candidate>> cands;
    std::map<Slot, std::size_t> pos;
    for (std::size_t k = 0; k < slots.size(); ++k) {
        pos.emplace(slots[k], k);
        auto c = detail::slot_candidates(g, slots[k].second, max_len);
        if (slots[k].first == 0)
            c.erase(std::remove_if(c.begin(), c.end(),
                                   [&](const detail::Candidate& d) {
                                       return !componentwise_leq(x, d.payoff) || !componentwise_leq(d.payoff, y);
                                   }),
                    c.end());
        if (c.empty()) return std::nullopt;
        cands.push_back(std::move(c));
    }

    // Constraints between slots: for slot a's candidate, every owned vertex v
    // on it and successor v2 give (a needs gain_i >= gain_i of slot (i, v2)).
    std::vector<int> choice(slots.size(), -1);
    std::uint64_t nodes = 0;
    auto consistent = [&](std::size_t a) {
        const auto& ca = cands[a][static_cast<std::size_t>(choice[a])];
        for (Vertex v : ca.occ.elements()) {
            const Player i = g.owner(v);
            for (Vertex v2 : g.successors(v)) {
                std::size_t b = pos.at({i, v2});
                if (choice[b] < 0) continue;
                if (ca.payoff.gain(i) < cands[b][static_cast<std::size_t>(choice[b])].payoff.gain(i)) return false;
            }
        }
        // Earlier slots whose constraints point at a.
        for (std::size_t b = 0; b < slots.size(); ++b) {
            if (choice[b] < 0 || b == a) continue;
            const auto& cb = cands[b][static_cast<std::size_t>(choice[b])];
            const Player i = slots[a].first;
            if (i == 0) continue;
            for (Vertex v : cb.occ.elements())
                if (g.owner(v) == i && g.has_edge(v, slots[a].second) && cb.payoff.gain(i) < ca.payoff.gain(i))
                    return false;
        }
        return true;
    };
    std::function<bool(std::size_t)> search = [&](std::size_t a) {
        if (a == slots.size()) return true;
        for (std::size_t c = 0; c < cands[a].size(); ++c) {
            if (++nodes > node_budget) throw Error(ErrorKind::BudgetExceeded, "witness search exceeded its node budget");
            choice[a] = static_cast<int>(c);
            if (consistent(a) && search(a + 1)) return true;
        }
        choice[a] = -1;
        return false;
    };
    if (!search(0)) return std::nullopt;
    SymbolicWitness w;
    w.index = idx;
    w.initial = v0;
    for (std::size_t k = 0; k < slots.size(); ++k)
        w.lassoes.emplace(slots[k], cands[k][static_cast<std::size_t>(choice[k])].lasso);
    return w;
}

} // namespace wspe
