#pragma once

#include <optional>
#include <set>
#include <vector>

#include "wspe/formula.hpp"
#include "wspe/game.hpp"
#include "wspe/graph.hpp"

// One-player path existence: does some infinite path from v, using only
// vertices of `allowed`, realize a given Inf-based condition?  Every positive
// answer comes with a constructive witness (stem + Inf set).

namespace wspe {

struct PathWitness {
    /// Path from the query vertex to the first vertex reached in `inf_set`
    /// (both included).
    std::vector<Vertex> stem;
    /// Nonempty, strongly connected with an internal edge.
    VertexSet inf_set;

    bool operator==(const PathWitness&) const = default;
};

/// True iff a play inside `allowed` can have Inf exactly S.
inline bool realizable_inf(const Game& g, const VertexSet& allowed, const VertexSet& s) {
    if (s.empty()) throw Error(ErrorKind::EmptySet, "realizable_inf needs a nonempty set");
    if (!s.subset_of(allowed)) return false;
    auto comps = scc_decompose(g, s);
    return comps.size() == 1 && is_nontrivial(g, comps.front());
}

/// Closed walk inside S starting at min(S) and visiting all of S, returned
/// without the repeated final vertex.  Built by concatenating shortest paths
/// to the smallest not-yet-visited vertex, so its length is below |S|^2.
inline std::vector<Vertex> closed_walk_covering(const Game& g, const VertexSet& s) {
    if (s.empty() || !realizable_inf(g, s, s))
        throw Error(ErrorKind::NotRealizable, "no closed walk covers the given set");
    const Vertex start = s.min();
    if (s.size() == 1) return {start};
    std::vector<Vertex> walk{start};
    VertexSet visited{start};
    Vertex cur = start;
    for (Vertex target : s.elements()) {
        if (visited.contains(target)) continue;
        auto path = *shortest_path(g, s, cur, VertexSet{target});
        for (std::size_t k = 1; k < path.size(); ++k) {
            walk.push_back(path[k]);
            visited.insert(path[k]);
        }
        cur = target;
    }
    auto back = *shortest_path(g, s, cur, VertexSet{start});
    walk.insert(walk.end(), back.begin() + 1, back.end() - 1);
    return walk;
}

/// Lasso for the play stem . (closed walk over S)^omega, with the walk
/// rotated to begin at the stem's last vertex.
inline Lasso to_lasso(const Game& g, const PathWitness& w) {
    auto walk = closed_walk_covering(g, w.inf_set);
    const Vertex entry = w.stem.back();
    auto it = std::find(walk.begin(), walk.end(), entry);
    std::rotate(walk.begin(), it, walk.end());
    Lasso l;
    l.stem.assign(w.stem.begin(), w.stem.end() - 1);
    l.cycle = std::move(walk);
    return l;
}

namespace detail {

inline std::optional<PathWitness> witness_for(const Game& g, const VertexSet& allowed, Vertex v, VertexSet inf) {
    auto stem = shortest_path(g, allowed, v, inf);
    if (!stem) return std::nullopt;
    return PathWitness{std::move(*stem), std::move(inf)};
}

/// Vertices of a closed walk in `comp` through every representative.
inline VertexSet shrink_to_representatives(const Game& g, const VertexSet& comp, const std::vector<Vertex>& reps) {
    VertexSet out;
    if (reps.size() == 1) {
        auto cyc = *shortest_cycle_through(g, comp, reps.front());
        return VertexSet::from(cyc);
    }
    for (std::size_t k = 0; k < reps.size(); ++k) {
        auto path = *shortest_path(g, comp, reps[k], VertexSet{reps[(k + 1) % reps.size()]});
        for (Vertex u : path) out.insert(u);
    }
    return out;
}

} // namespace detail

/// Path whose Inf set meets every set of `must_hit` and avoids `must_avoid`
/// (generalized Büchi and co-Büchi).  The stem may cross `must_avoid`; only
/// the Inf set is constrained.
inline std::optional<PathWitness> gen_buchi_cobuchi_path(const Game& g, const VertexSet& allowed,
                                                         const std::vector<VertexSet>& must_hit,
                                                         const VertexSet& must_avoid, Vertex v) {
    const VertexSet reach = reachable_within(g, allowed, v);
    for (const auto& comp : scc_decompose(g, reach - must_avoid)) {
        if (!is_nontrivial(g, comp)) continue;
        std::vector<Vertex> reps;
        bool ok = true;
        for (const auto& b : must_hit) {
            Vertex r = (comp & b).min();
            if (r < 0) {
                ok = false;
                break;
            }
            reps.push_back(r);
        }
        if (!ok) continue;
        if (reps.empty()) reps.push_back(comp.min());
        std::sort(reps.begin(), reps.end());
        reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
        return detail::witness_for(g, allowed, v, detail::shrink_to_representatives(g, comp, reps));
    }
    return std::nullopt;
}

namespace detail {

inline std::optional<VertexSet> streett_search(const Game& g, const VertexSet& region,
                                               const std::vector<AcceptancePair>& pairs) {
    for (const auto& comp : scc_decompose(g, region)) {
        if (!is_nontrivial(g, comp)) continue;
        VertexSet remove;
        for (const auto& p : pairs)
            if (comp.intersects(p.good) && !comp.intersects(p.bad)) remove |= p.good;
        if (remove.empty()) return comp;
        if (auto found = streett_search(g, comp - remove, pairs)) return found;
    }
    return std::nullopt;
}

} // namespace detail

/// Path whose Inf set satisfies every Streett pair: for all j, Inf misses
/// G_j or meets R_j.  Emerson-Lei style SCC refinement.
inline std::optional<PathWitness> streett_path(const Game& g, const VertexSet& allowed,
                                               const std::vector<AcceptancePair>& pairs, Vertex v) {
    auto found = detail::streett_search(g, reachable_within(g, allowed, v), pairs);
    if (!found) return std::nullopt;
    return detail::witness_for(g, allowed, v, std::move(*found));
}

enum class BcStrategy {
    Auto,      ///< DNF terms when fewer than satisfying assignments
    Enumerate, ///< all 2^l assignments in increasing order
    Dnf,       ///< DNF terms, falling back to enumeration if the DNF is too large
};

/// Path satisfying a Boolean combination of Büchi conditions: the
/// assignment f_i = [Inf meets base_sets[i-1]] must satisfy `formula`.
inline std::optional<PathWitness> bc_buchi_path(const Game& g, const VertexSet& allowed,
                                                const std::vector<VertexSet>& base_sets, const Formula& formula,
                                                Vertex v, BcStrategy strategy = BcStrategy::Auto) {
    const auto vars = base_sets.size();
    if (static_cast<std::size_t>(formula.max_var()) > vars)
        throw Error(ErrorKind::MalformedFormula, "formula mentions a variable without a base set");
    if (vars > 24) throw Error(ErrorKind::BudgetExceeded, "too many Büchi variables to enumerate");

    auto query = [&](std::uint64_t pos, std::uint64_t neg) {
        std::vector<VertexSet> hit;
        VertexSet avoid;
        for (std::size_t i = 0; i < vars; ++i) {
            if ((pos >> i) & 1U) hit.push_back(base_sets[i]);
            if ((neg >> i) & 1U) avoid |= base_sets[i];
        }
        return gen_buchi_cobuchi_path(g, allowed, hit, avoid, v);
    };
    const std::uint64_t total = std::uint64_t{1} << vars;
    const std::uint64_t all_bits = total - 1;

    std::optional<std::vector<Formula::Term>> terms;
    if (strategy != BcStrategy::Enumerate) {
        std::size_t limit = 4096;
        if (strategy == BcStrategy::Auto) {
            std::uint64_t sat = 0;
            for (std::uint64_t a = 0; a < total; ++a) sat += formula.evaluate(a) ? 1 : 0;
            if (sat == 0) return std::nullopt;
            limit = static_cast<std::size_t>(sat > 0 ? sat - 1 : 0);
        }
        terms = formula.to_dnf(limit);
    }
    if (terms) {
        for (const auto& t : *terms)
            if (auto w = query(t.pos, t.neg)) return w;
        return std::nullopt;
    }
    for (std::uint64_t a = 0; a < total; ++a) {
        if (!formula.evaluate(a)) continue;
        if (auto w = query(a, all_bits & ~a)) return w;
    }
    return std::nullopt;
}

enum class MullerMode {
    In,    ///< Inf must be one of the candidate sets
    Avoid, ///< Inf must be none of the candidate sets
};

namespace detail {

inline std::optional<VertexSet> muller_avoid_search(const Game& g, const VertexSet& region,
                                                    const std::vector<VertexSet>& family, std::set<VertexSet>& seen) {
    for (const auto& comp : scc_decompose(g, region)) {
        if (!is_nontrivial(g, comp)) continue;
        if (!std::binary_search(family.begin(), family.end(), comp)) return comp;
        if (!seen.insert(comp).second) continue;
        for (Vertex u : comp.elements()) {
            VertexSet smaller = comp;
            smaller.erase(u);
            if (auto found = muller_avoid_search(g, smaller, family, seen)) return found;
        }
    }
    return std::nullopt;
}

} // namespace detail

/// Explicit Muller path existence.  `candidate_family` need not be sorted.
inline std::optional<PathWitness> explicit_muller_path(const Game& g, const VertexSet& allowed,
                                                       std::vector<VertexSet> candidate_family, MullerMode mode,
                                                       Vertex v) {
    std::sort(candidate_family.begin(), candidate_family.end());
    candidate_family.erase(std::unique(candidate_family.begin(), candidate_family.end()), candidate_family.end());
    const VertexSet reach = reachable_within(g, allowed, v);
    if (mode == MullerMode::In) {
        for (const auto& f : candidate_family) {
            if (f.empty() || !f.subset_of(reach) || !realizable_inf(g, allowed, f)) continue;
            return detail::witness_for(g, allowed, v, f);
        }
        return std::nullopt;
    }
    std::set<VertexSet> seen;
    auto found = detail::muller_avoid_search(g, reach, candidate_family, seen);
    if (!found) return std::nullopt;
    return detail::witness_for(g, allowed, v, std::move(*found));
}

// ---------------------------------------------------------------------------
// Payoff queries
// ---------------------------------------------------------------------------

namespace detail {

inline int max_color(const std::vector<int>& color) {
    return color.empty() ? 0 : *std::max_element(color.begin(), color.end());
}

/// Streett pairs for "max color of Inf has parity `want_even`".
inline void parity_as_streett(const std::vector<int>& color, bool want_even, std::vector<AcceptancePair>& out) {
    const int d = max_color(color);
    for (int c = 1; c <= d; ++c) {
        if ((c % 2 == 0) == want_even) continue;
        AcceptancePair p;
        for (std::size_t v = 0; v < color.size(); ++v) {
            if (color[v] == c) p.good.insert(static_cast<Vertex>(v));
            if (color[v] > c) p.bad.insert(static_cast<Vertex>(v));
        }
        if (!p.good.empty()) out.push_back(std::move(p));
    }
}

struct BcQuery {
    std::vector<VertexSet> base_sets;
    Formula formula = Formula::truth();
};

/// Rabin/Streett payoff as a Boolean combination of Büchi conditions; one
/// g- and one r-variable per pair.
inline BcQuery pairs_query(const Game& g, const Payoff& p) {
    BcQuery q;
    std::vector<Formula> conj;
    const bool rabin = g.kind() == ObjectiveKind::Rabin;
    for (Player i = 1; i <= g.num_players(); ++i) {
        const auto& pairs = rabin ? std::get<Rabin>(g.objective(i)).pairs : std::get<Streett>(g.objective(i)).pairs;
        std::vector<Formula> rabin_terms;   // g & !r
        std::vector<Formula> streett_terms; // !g | r
        for (const auto& pr : pairs) {
            q.base_sets.push_back(pr.good);
            auto gv = Formula::var(static_cast<int>(q.base_sets.size()));
            q.base_sets.push_back(pr.bad);
            auto rv = Formula::var(static_cast<int>(q.base_sets.size()));
            rabin_terms.push_back(Formula::all_of({gv, Formula::negate(rv)}));
            streett_terms.push_back(Formula::any_of({Formula::negate(gv), rv}));
        }
        // A Rabin win is a disjunction of g & !r, a Streett win the conjunction
        // of !g | r; losing is the dual.
        const bool wants_rabin_form = rabin == p.gain(i);
        conj.push_back(wants_rabin_form ? Formula::any_of(std::move(rabin_terms))
                                        : Formula::all_of(std::move(streett_terms)));
    }
    q.formula = Formula::all_of(std::move(conj));
    return q;
}

/// Muller payoff: one variable per (player, color).
inline BcQuery muller_query(const Game& g, const Payoff& p) {
    BcQuery q;
    std::vector<Formula> conj;
    for (Player i = 1; i <= g.num_players(); ++i) {
        const auto& m = std::get<Muller>(g.objective(i));
        const int d = max_color(m.color);
        const int first = static_cast<int>(q.base_sets.size()) + 1;
        for (int c = 1; c <= d; ++c) {
            VertexSet s;
            for (std::size_t v = 0; v < m.color.size(); ++v)
                if (m.color[v] == c) s.insert(static_cast<Vertex>(v));
            q.base_sets.push_back(std::move(s));
        }
        auto f = [&](int c) { return Formula::var(first + c - 1); };
        std::vector<Formula> per_set;
        for (const auto& fam : m.family) {
            std::vector<Formula> lits;
            for (int c = 1; c <= d; ++c) {
                bool in = fam.contains(c);
                if (p.gain(i))
                    lits.push_back(in ? f(c) : Formula::negate(f(c)));
                else
                    lits.push_back(in ? Formula::negate(f(c)) : f(c));
            }
            per_set.push_back(p.gain(i) ? Formula::all_of(std::move(lits)) : Formula::any_of(std::move(lits)));
        }
        conj.push_back(p.gain(i) ? Formula::any_of(std::move(per_set)) : Formula::all_of(std::move(per_set)));
    }
    q.formula = Formula::all_of(std::move(conj));
    return q;
}

} // namespace detail

/// Is there a play from v, inside `allowed`, with payoff exactly p?
/// Prefix-independent objectives only; Reachability/Safety games go through
/// the product construction first.
inline std::optional<PathWitness> payoff_path(const Game& g, const VertexSet& allowed, const Payoff& p, Vertex v,
                                              BcStrategy strategy = BcStrategy::Auto) {
    if (p.size() != static_cast<std::size_t>(g.num_players()))
        throw Error(ErrorKind::ArityMismatch, "payoff length differs from the number of players");
    if (!allowed.contains(v)) return std::nullopt;
    switch (g.kind()) {
    case ObjectiveKind::Reachability:
    case ObjectiveKind::Safety:
        throw Error(ErrorKind::UnsupportedObjective, "payoff_path needs prefix-independent objectives");
    case ObjectiveKind::Buchi:
    case ObjectiveKind::CoBuchi: {
        const bool buchi = g.kind() == ObjectiveKind::Buchi;
        std::vector<VertexSet> hit;
        VertexSet avoid;
        for (Player i = 1; i <= g.num_players(); ++i) {
            const auto& f = buchi ? std::get<Buchi>(g.objective(i)).target : std::get<CoBuchi>(g.objective(i)).target;
            if (p.gain(i) == buchi)
                hit.push_back(f);
            else
                avoid |= f;
        }
        return gen_buchi_cobuchi_path(g, allowed, hit, avoid, v);
    }
    case ObjectiveKind::Parity: {
        std::vector<AcceptancePair> pairs;
        for (Player i = 1; i <= g.num_players(); ++i)
            detail::parity_as_streett(std::get<Parity>(g.objective(i)).color, p.gain(i), pairs);
        return streett_path(g, allowed, pairs, v);
    }
    case ObjectiveKind::Rabin:
    case ObjectiveKind::Streett: {
        auto q = detail::pairs_query(g, p);
        return bc_buchi_path(g, allowed, q.base_sets, q.formula, v, strategy);
    }
    case ObjectiveKind::Muller: {
        auto q = detail::muller_query(g, p);
        return bc_buchi_path(g, allowed, q.base_sets, q.formula, v, strategy);
    }
    case ObjectiveKind::ExplicitMuller: {
        std::vector<VertexSet> all;
        for (Player i = 1; i <= g.num_players(); ++i) {
            const auto& fam = std::get<ExplicitMuller>(g.objective(i)).family;
            all.insert(all.end(), fam.begin(), fam.end());
        }
        if (p.is_zero()) return explicit_muller_path(g, allowed, std::move(all), MullerMode::Avoid, v);
        std::vector<VertexSet> matching;
        for (const auto& f : all) {
            bool same = true;
            for (Player i = 1; i <= g.num_players() && same; ++i) {
                const auto& fam = std::get<ExplicitMuller>(g.objective(i)).family;
                same = std::binary_search(fam.begin(), fam.end(), f) == p.gain(i);
            }
            if (same) matching.push_back(f);
        }
        return explicit_muller_path(g, allowed, std::move(matching), MullerMode::In, v);
    }
    }
    return std::nullopt;
}

} // namespace wspe
