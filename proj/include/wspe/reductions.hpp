#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wspe/game.hpp"
#include "wspe/graph.hpp"

namespace wspe {

// ---------------------------------------------------------------------------
// Reachability / Safety product
// ---------------------------------------------------------------------------

/// (v, I): base vertex plus the set of players whose target set was visited.
/// Player i is bit i-1 of `satisfied`.
struct ProductState {
    Vertex base = 0;
    std::uint64_t satisfied = 0;

    auto operator<=>(const ProductState&) const = default;
};

struct ProductGame {
    Game game;          ///< Büchi (from Reachability) or co-Büchi (from Safety)
    Vertex initial = 0; ///< always 0: states are numbered in BFS order
    std::vector<ProductState> states;
    std::size_t base_vertex_count = 0;
    ObjectiveKind base_kind = ObjectiveKind::Reachability;

    const ProductState& state(Vertex v) const { return states.at(static_cast<std::size_t>(v)); }

    /// Base play of a product lasso.
    Lasso project(const Lasso& l) const {
        Lasso out;
        for (Vertex v : l.stem) out.stem.push_back(state(v).base);
        for (Vertex v : l.cycle) out.cycle.push_back(state(v).base);
        return out;
    }
};

namespace detail {

inline const VertexSet& reach_or_safety_target(const ObjectiveSpec& o) {
    if (auto* r = std::get_if<Reachability>(&o)) return r->target;
    return std::get<Safety>(o).target;
}

inline std::uint64_t satisfied_at(const Game& g, Vertex v) {
    std::uint64_t mask = 0;
    for (Player i = 1; i <= g.num_players(); ++i)
        if (reach_or_safety_target(g.objective(i)).contains(v)) mask |= std::uint64_t{1} << (i - 1);
    return mask;
}

} // namespace detail

/// Lazily built product over the (v, I) pairs reachable from (v_0, I_0).
inline ProductGame reach_safety_product(const Game& g, Vertex v0) {
    const auto kind = g.kind();
    if (kind != ObjectiveKind::Reachability && kind != ObjectiveKind::Safety)
        throw Error(ErrorKind::UnsupportedObjective, "the product needs Reachability or Safety objectives");
    if (g.num_players() > 63) throw Error(ErrorKind::UnsupportedObjective, "too many players for the product");
    if (v0 < 0 || static_cast<std::size_t>(v0) >= g.num_vertices())
        throw Error(ErrorKind::UnknownVertex, "initial vertex " + std::to_string(v0) + " is not in the game");

    std::vector<ProductState> states;
    std::map<ProductState, Vertex> id;
    std::deque<Vertex> queue;
    auto intern = [&](ProductState s) {
        auto [it, fresh] = id.emplace(s, static_cast<Vertex>(states.size()));
        if (fresh) {
            states.push_back(s);
            queue.push_back(it->second);
        }
        return it->second;
    };
    intern({v0, detail::satisfied_at(g, v0)});

    RawGame raw;
    raw.num_players = g.num_players();
    while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop_front();
        const ProductState s = states[static_cast<std::size_t>(u)];
        for (Vertex w : g.successors(s.base)) {
            Vertex target = intern({w, s.satisfied | detail::satisfied_at(g, w)});
            raw.edges.emplace_back(u, target);
        }
    }
    for (const auto& s : states) raw.owner.push_back(g.owner(s.base));
    for (Player i = 1; i <= g.num_players(); ++i) {
        VertexSet f;
        for (std::size_t v = 0; v < states.size(); ++v)
            if ((states[v].satisfied >> (i - 1)) & 1U) f.insert(static_cast<Vertex>(v));
        if (kind == ObjectiveKind::Reachability)
            raw.objectives.emplace_back(Buchi{f});
        else
            raw.objectives.emplace_back(CoBuchi{f});
    }
    raw.initial = 0;
    return ProductGame{validate_game(std::move(raw)), 0, std::move(states), g.num_vertices(), kind};
}

/// Lift a base lasso starting at the product's initial base vertex.
inline Lasso lift_to_product(const ProductGame& pg, const Game& base, const Lasso& l) {
    if (l.first() != pg.state(pg.initial).base)
        throw Error(ErrorKind::MalformedInput, "lasso does not start at the product's initial vertex");
    std::map<ProductState, Vertex> id;
    for (std::size_t v = 0; v < pg.states.size(); ++v) id.emplace(pg.states[v], static_cast<Vertex>(v));
    // Walk stem then cycle repeatedly until (cycle position, I) repeats.
    std::vector<Vertex> seq;
    std::map<std::pair<std::size_t, std::uint64_t>, std::size_t> seen;
    std::uint64_t mask = 0;
    for (std::size_t k = 0;; ++k) {
        Vertex v = l.at(k);
        mask |= detail::satisfied_at(base, v);
        if (k >= l.stem.size()) {
            auto key = std::make_pair((k - l.stem.size()) % l.cycle.size(), mask);
            auto [it, fresh] = seen.emplace(key, seq.size());
            if (!fresh) {
                Lasso out;
                out.stem.assign(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(it->second));
                out.cycle.assign(seq.begin() + static_cast<std::ptrdiff_t>(it->second), seq.end());
                return out;
            }
        }
        seq.push_back(id.at(ProductState{v, mask}));
    }
}

// ---------------------------------------------------------------------------
// QBF
// ---------------------------------------------------------------------------

/// Q_1 x_1 ... Q_m x_m (C_1 & ... & C_n) with Q_1 existential and strict
/// alternation.  Literals are +k / -k.
struct QbfFormula {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;

    bool operator==(const QbfFormula&) const = default;
};

enum class QbfVariant { Reach, Safety };

inline void validate_qbf(const QbfFormula& f) {
    if (f.num_vars < 1) throw Error(ErrorKind::MalformedFormula, "a formula needs at least one variable");
    if (f.clauses.empty()) throw Error(ErrorKind::MalformedFormula, "a formula needs at least one clause");
    for (const auto& c : f.clauses) {
        if (c.empty()) throw Error(ErrorKind::MalformedFormula, "empty clause");
        for (int lit : c)
            if (lit == 0 || std::abs(lit) > f.num_vars)
                throw Error(ErrorKind::MalformedFormula, "literal " + std::to_string(lit) + " out of range");
    }
}

/// QDIMACS subset: "p qbf m n" (or "p cnf"), one quantifier line per
/// variable in order ("e k 0" / "a k 0", alternating from e), then n clause
/// lines terminated by 0.  Lines starting with 'c' are comments.
inline QbfFormula parse_qdimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    QbfFormula f;
    int expected_clauses = -1;
    int next_var = 1;
    auto fail = [](const std::string& why) { throw Error(ErrorKind::MalformedFormula, why); };
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == 'c') continue;
        if (head == "p") {
            std::string fmt;
            if (!(ls >> fmt >> f.num_vars >> expected_clauses) || (fmt != "qbf" && fmt != "cnf"))
                fail("bad header: " + line);
            continue;
        }
        if (expected_clauses < 0) fail("missing header");
        if (head == "e" || head == "a") {
            if (!f.clauses.empty()) fail("quantifier after clauses");
            std::vector<int> vars;
            int x;
            while (ls >> x && x != 0) vars.push_back(x);
            for (int v : vars) {
                const bool existential = next_var % 2 == 1;
                if (v != next_var || (head == "e") != existential)
                    fail("quantifier prefix must alternate e/a starting with e, one variable per block");
                ++next_var;
            }
            if (vars.size() != 1) fail("quantifier prefix must alternate e/a starting with e, one variable per block");
            continue;
        }
        std::vector<int> clause;
        ls.clear();
        ls.str(line);
        int lit;
        bool terminated = false;
        while (ls >> lit) {
            if (lit == 0) {
                terminated = true;
                break;
            }
            clause.push_back(lit);
        }
        if (!terminated) fail("clause line not terminated by 0: " + line);
        f.clauses.push_back(std::move(clause));
    }
    if (expected_clauses < 0) fail("missing header");
    if (next_var - 1 != f.num_vars) fail("every variable needs exactly one quantifier");
    if (static_cast<int>(f.clauses.size()) != expected_clauses) fail("clause count differs from header");
    validate_qbf(f);
    return f;
}

inline std::string to_qdimacs(const QbfFormula& f) {
    std::ostringstream out;
    out << "p qbf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (int k = 1; k <= f.num_vars; ++k) out << (k % 2 ? "e " : "a ") << k << " 0\n";
    for (const auto& c : f.clauses) {
        for (int lit : c) out << lit << ' ';
        out << "0\n";
    }
    return out.str();
}

struct QbfInstance {
    Game game;
    Vertex initial = 0;
    Payoff lower;
    Payoff upper;
};

/// Vertex numbering of the QBF game.
struct QbfLayout {
    int m = 0;
    int n = 0;
    Vertex q(int k) const { return 3 * (k - 1); }
    Vertex lit(int k, bool positive) const { return 3 * (k - 1) + (positive ? 1 : 2); }
    Vertex c(int k) const { return 3 * m + 2 * (k - 1); }
    Vertex t(int k) const { return k <= n ? 3 * m + 2 * (k - 1) + 1 : 3 * m + 2 * n; }
    std::size_t size() const { return static_cast<std::size_t>(3 * m + 2 * n + 1); }
};

inline QbfInstance qbf_to_game(const QbfFormula& f, QbfVariant variant) {
    validate_qbf(f);
    const QbfLayout L{f.num_vars, static_cast<int>(f.clauses.size())};
    const int m = L.m, n = L.n;
    RawGame raw;
    raw.num_players = n + 2;
    raw.owner.assign(L.size(), 1);
    for (int k = 1; k <= m; ++k) {
        raw.owner[static_cast<std::size_t>(L.q(k))] = k % 2 ? n + 1 : n + 2;
        raw.edges.emplace_back(L.q(k), L.lit(k, true));
        raw.edges.emplace_back(L.q(k), L.lit(k, false));
        Vertex next = k < m ? L.q(k + 1) : L.c(1);
        raw.edges.emplace_back(L.lit(k, true), next);
        raw.edges.emplace_back(L.lit(k, false), next);
    }
    for (int k = 1; k <= n; ++k) {
        raw.owner[static_cast<std::size_t>(L.c(k))] = k;
        raw.edges.emplace_back(L.c(k), L.t(k));
        raw.edges.emplace_back(L.c(k), k < n ? L.c(k + 1) : L.t(n + 1));
    }
    for (int k = 1; k <= n + 1; ++k) raw.edges.emplace_back(L.t(k), L.t(k));

    std::vector<VertexSet> targets(static_cast<std::size_t>(n + 2));
    for (int i = 1; i <= n; ++i) {
        for (int lit : f.clauses[static_cast<std::size_t>(i - 1)])
            targets[static_cast<std::size_t>(i - 1)].insert(L.lit(std::abs(lit), lit > 0));
        targets[static_cast<std::size_t>(i - 1)].insert(variant == QbfVariant::Reach ? L.t(i) : L.t(n + 1));
    }
    VertexSet clause_sinks;
    for (int i = 1; i <= n; ++i) clause_sinks.insert(L.t(i));
    if (variant == QbfVariant::Reach) {
        targets[static_cast<std::size_t>(n)] = VertexSet{L.t(n + 1)};
        targets[static_cast<std::size_t>(n + 1)] = clause_sinks;
    } else {
        targets[static_cast<std::size_t>(n)] = clause_sinks;
        targets[static_cast<std::size_t>(n + 1)] = VertexSet{L.t(n + 1)};
    }
    for (auto& t : targets) {
        if (variant == QbfVariant::Reach)
            raw.objectives.emplace_back(Reachability{t});
        else
            raw.objectives.emplace_back(Safety{t});
    }
    raw.initial = L.q(1);

    QbfInstance out{validate_game(std::move(raw)), L.q(1), Payoff(static_cast<std::size_t>(n + 2)),
                    Payoff(static_cast<std::size_t>(n + 2), true)};
    out.lower.set(n + 1, true);
    return out;
}

// ---------------------------------------------------------------------------
// Random games
// ---------------------------------------------------------------------------

struct RandomGameParams {
    int num_vertices = 4;
    int num_players = 2;
    ObjectiveKind objective_class = ObjectiveKind::Buchi;
    double edge_density = 0.5;
    std::uint64_t seed = 0;
    int max_color = 4;     ///< Parity / Muller
    int max_family = 3;    ///< Muller / Explicit Muller family size
    int max_pairs = 2;     ///< Rabin / Streett
};

namespace detail {

/// Draws without relying on distribution implementations, so that the same
/// seed gives the same game with every standard library.
class Draw {
public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}
    int below(int k) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(k)); }
    bool chance(double p) { return static_cast<double>(rng_() % 1000000) < p * 1000000.0; }

    VertexSet nonempty_subset(int n) {
        VertexSet s;
        for (int v = 0; v < n; ++v)
            if (chance(0.5)) s.insert(v);
        if (s.empty()) s.insert(below(n));
        return s;
    }
    VertexSet subset(int n) {
        VertexSet s;
        for (int v = 0; v < n; ++v)
            if (chance(0.3)) s.insert(v);
        return s;
    }

private:
    std::mt19937_64 rng_;
};

/// Vertex set of the cycle closed by a random walk; always realizable.
inline VertexSet random_cycle(const Game& g, Draw& d) {
    Vertex v = d.below(static_cast<int>(g.num_vertices()));
    std::vector<Vertex> walk;
    std::vector<int> pos(g.num_vertices(), -1);
    while (pos[static_cast<std::size_t>(v)] < 0) {
        pos[static_cast<std::size_t>(v)] = static_cast<int>(walk.size());
        walk.push_back(v);
        auto succ = g.successors(v);
        v = succ[static_cast<std::size_t>(d.below(static_cast<int>(succ.size())))];
    }
    return VertexSet::from(std::vector<Vertex>(walk.begin() + pos[static_cast<std::size_t>(v)], walk.end()));
}

} // namespace detail

inline Game random_game(const RandomGameParams& p) {
    if (p.num_vertices < 1 || p.num_players < 1 || p.edge_density <= 0.0 || p.edge_density > 1.0 || p.max_color < 1 ||
        p.max_family < 1 || p.max_pairs < 1)
        throw Error(ErrorKind::MalformedInput, "random game parameters out of range");
    detail::Draw d(p.seed);
    const int n = p.num_vertices;
    RawGame raw;
    raw.num_players = p.num_players;
    for (int v = 0; v < n; ++v) raw.owner.push_back(1 + d.below(p.num_players));
    for (int v = 0; v < n; ++v) {
        bool any = false;
        for (int w = 0; w < n; ++w)
            if (d.chance(p.edge_density)) {
                raw.edges.emplace_back(v, w);
                any = true;
            }
        if (!any) raw.edges.emplace_back(v, d.below(n));
    }
    raw.initial = 0;

    // Arena only, to sample realizable sets for Explicit Muller.
    RawGame arena = raw;
    arena.num_players = 1;
    arena.owner.assign(static_cast<std::size_t>(n), 1);
    arena.objectives = {Buchi{VertexSet{0}}};
    const Game shape = validate_game(arena);

    auto coloring = [&] {
        std::vector<int> color;
        for (int v = 0; v < n; ++v) color.push_back(1 + d.below(p.max_color));
        return color;
    };
    for (Player i = 1; i <= p.num_players; ++i) {
        switch (p.objective_class) {
        case ObjectiveKind::Reachability: raw.objectives.emplace_back(Reachability{d.nonempty_subset(n)}); break;
        case ObjectiveKind::Safety: raw.objectives.emplace_back(Safety{d.nonempty_subset(n)}); break;
        case ObjectiveKind::Buchi: raw.objectives.emplace_back(Buchi{d.nonempty_subset(n)}); break;
        case ObjectiveKind::CoBuchi: raw.objectives.emplace_back(CoBuchi{d.nonempty_subset(n)}); break;
        case ObjectiveKind::Parity: raw.objectives.emplace_back(Parity{coloring()}); break;
        case ObjectiveKind::ExplicitMuller: {
            ExplicitMuller o;
            int k = 1 + d.below(p.max_family);
            for (int j = 0; j < k; ++j)
                o.family.push_back(d.chance(0.5) ? detail::random_cycle(shape, d) : d.nonempty_subset(n));
            raw.objectives.emplace_back(std::move(o));
            break;
        }
        case ObjectiveKind::Muller: {
            Muller o;
            o.color = coloring();
            ColorSet used = ColorSet::from(o.color);
            auto palette = used.elements();
            int k = 1 + d.below(p.max_family);
            for (int j = 0; j < k; ++j) {
                ColorSet s;
                for (int c : palette)
                    if (d.chance(0.5)) s.insert(c);
                if (s.empty()) s.insert(palette[static_cast<std::size_t>(d.below(static_cast<int>(palette.size())))]);
                o.family.push_back(std::move(s));
            }
            raw.objectives.emplace_back(std::move(o));
            break;
        }
        case ObjectiveKind::Rabin:
        case ObjectiveKind::Streett: {
            std::vector<AcceptancePair> pairs;
            int k = 1 + d.below(p.max_pairs);
            for (int j = 0; j < k; ++j) pairs.push_back({d.nonempty_subset(n), d.subset(n)});
            if (p.objective_class == ObjectiveKind::Rabin)
                raw.objectives.emplace_back(Rabin{std::move(pairs)});
            else
                raw.objectives.emplace_back(Streett{std::move(pairs)});
            break;
        }
        }
    }
    return validate_game(std::move(raw));
}

} // namespace wspe
