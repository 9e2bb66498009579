#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "wspe/error.hpp"
#include "wspe/vertex_set.hpp"

namespace wspe {

// ---------------------------------------------------------------------------
// Objectives
// ---------------------------------------------------------------------------

enum class ObjectiveKind { Reachability, Safety, Buchi, CoBuchi, Parity, ExplicitMuller, Muller, Rabin, Streett };

inline std::string_view to_string(ObjectiveKind k) {
    switch (k) {
    case ObjectiveKind::Reachability: return "reachability";
    case ObjectiveKind::Safety: return "safety";
    case ObjectiveKind::Buchi: return "buchi";
    case ObjectiveKind::CoBuchi: return "cobuchi";
    case ObjectiveKind::Parity: return "parity";
    case ObjectiveKind::ExplicitMuller: return "explicit_muller";
    case ObjectiveKind::Muller: return "muller";
    case ObjectiveKind::Rabin: return "rabin";
    case ObjectiveKind::Streett: return "streett";
    }
    return "?";
}

inline std::optional<ObjectiveKind> objective_kind_from(std::string_view s) {
    for (auto k : {ObjectiveKind::Reachability, ObjectiveKind::Safety, ObjectiveKind::Buchi,
                   ObjectiveKind::CoBuchi, ObjectiveKind::Parity, ObjectiveKind::ExplicitMuller,
                   ObjectiveKind::Muller, ObjectiveKind::Rabin, ObjectiveKind::Streett})
        if (to_string(k) == s) return k;
    return std::nullopt;
}

/// Everything except Reachability and Safety.
inline bool prefix_independent(ObjectiveKind k) {
    return k != ObjectiveKind::Reachability && k != ObjectiveKind::Safety;
}

/// Colors and color sets reuse the bitset; colors run over 1..d.
using ColorSet = VertexSet;

struct Reachability {
    VertexSet target;
    bool operator==(const Reachability&) const = default;
};
struct Safety {
    VertexSet target;
    bool operator==(const Safety&) const = default;
};
struct Buchi {
    VertexSet target;
    bool operator==(const Buchi&) const = default;
};
struct CoBuchi {
    VertexSet target;
    bool operator==(const CoBuchi&) const = default;
};
struct Parity {
    std::vector<int> color; ///< indexed by vertex, values in 1..d
    bool operator==(const Parity&) const = default;
};
struct ExplicitMuller {
    std::vector<VertexSet> family; ///< sorted, deduplicated
    bool operator==(const ExplicitMuller&) const = default;
};
struct Muller {
    std::vector<int> color;
    std::vector<ColorSet> family; ///< sets of colors, sorted, deduplicated
    bool operator==(const Muller&) const = default;
};
/// (G_j, R_j)
struct AcceptancePair {
    VertexSet good;
    VertexSet bad;
    bool operator==(const AcceptancePair&) const = default;
};
struct Rabin {
    std::vector<AcceptancePair> pairs;
    bool operator==(const Rabin&) const = default;
};
struct Streett {
    std::vector<AcceptancePair> pairs;
    bool operator==(const Streett&) const = default;
};

using ObjectiveSpec =
    std::variant<Reachability, Safety, Buchi, CoBuchi, Parity, ExplicitMuller, Muller, Rabin, Streett>;

inline ObjectiveKind kind_of(const ObjectiveSpec& o) {
    return static_cast<ObjectiveKind>(o.index());
}

// ---------------------------------------------------------------------------
// Payoff
// ---------------------------------------------------------------------------

/// Gain vector, one bit per player. Player i (1-based) is bit i-1; the
/// printed form puts player 1 first, so "01" means p_1 = 0, p_2 = 1.
/// Ordering is lexicographic on that printed form.
class Payoff {
public:
    Payoff() = default;
    explicit Payoff(std::size_t num_players, bool value = false) : bits_(num_players, value ? 1 : 0) {}

    static Payoff parse(std::string_view bits) {
        Payoff p(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] != '0' && bits[i] != '1')
                throw Error(ErrorKind::MalformedInput, "payoff must be a bitstring: " + std::string(bits));
            p.bits_[i] = bits[i] == '1';
        }
        return p;
    }

    /// The `index`-th payoff of {0,1}^n in lexicographic order.
    static Payoff nth(std::size_t num_players, std::uint64_t index) {
        Payoff p(num_players);
        for (std::size_t i = 0; i < num_players; ++i)
            p.bits_[i] = (index >> (num_players - 1 - i)) & 1U;
        return p;
    }

    std::size_t size() const { return bits_.size(); }
    bool gain(Player i) const { return bits_.at(static_cast<std::size_t>(i - 1)) != 0; }
    void set(Player i, bool value) { bits_.at(static_cast<std::size_t>(i - 1)) = value ? 1 : 0; }

    bool is_zero() const {
        return std::all_of(bits_.begin(), bits_.end(), [](auto b) { return b == 0; });
    }

    std::string to_string() const {
        std::string s;
        for (auto b : bits_) s.push_back(b ? '1' : '0');
        return s;
    }

    /// Componentwise order.
    friend bool componentwise_leq(const Payoff& a, const Payoff& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a.bits_[i] > b.bits_[i]) return false;
        return true;
    }

    auto operator<=>(const Payoff&) const = default;
    bool operator==(const Payoff&) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

// ---------------------------------------------------------------------------
// Lasso
// ---------------------------------------------------------------------------

/// The play stem . cycle^omega.  An empty stem means the play starts on the
/// cycle.  Length counts the vertices of stem and cycle.
struct Lasso {
    std::vector<Vertex> stem;
    std::vector<Vertex> cycle;

    Vertex first() const { return stem.empty() ? cycle.front() : stem.front(); }
    std::size_t length() const { return stem.size() + cycle.size(); }

    /// Vertex at position k of stem ++ cycle, wrapping inside the cycle.
    Vertex at(std::size_t k) const {
        if (k < stem.size()) return stem[k];
        return cycle[(k - stem.size()) % cycle.size()];
    }

    bool operator==(const Lasso&) const = default;
};

// ---------------------------------------------------------------------------
// Game
// ---------------------------------------------------------------------------

/// Unchecked game description, as read from a file or built by a generator.
struct RawGame {
    int num_players = 0;
    std::vector<Player> owner; ///< one entry per vertex; |V| = owner.size()
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::vector<ObjectiveSpec> objectives;
    std::optional<Vertex> initial;
};

class Game;
Game validate_game(RawGame raw);

/// Validated arena.  Only `validate_game` constructs one, so every instance
/// is non-blocking, has a total owner map and in-range objectives.
class Game {
public:
    int num_players() const { return num_players_; }
    std::size_t num_vertices() const { return owner_.size(); }
    std::size_t num_edges() const {
        std::size_t n = 0;
        for (auto& s : succ_) n += s.size();
        return n;
    }
    Player owner(Vertex v) const { return owner_.at(static_cast<std::size_t>(v)); }
    /// Sorted, duplicate-free.
    std::span<const Vertex> successors(Vertex v) const { return succ_.at(static_cast<std::size_t>(v)); }
    bool has_edge(Vertex a, Vertex b) const {
        auto s = successors(a);
        return std::binary_search(s.begin(), s.end(), b);
    }
    const ObjectiveSpec& objective(Player i) const { return objectives_.at(static_cast<std::size_t>(i - 1)); }
    const std::vector<ObjectiveSpec>& objectives() const { return objectives_; }
    ObjectiveKind kind() const { return kind_of(objectives_.front()); }
    std::optional<Vertex> initial() const { return initial_; }
    VertexSet all_vertices() const { return VertexSet::full(num_vertices()); }

    bool operator==(const Game&) const = default;

private:
    friend Game validate_game(RawGame raw);
    Game() = default;

    int num_players_ = 0;
    std::vector<Player> owner_;
    std::vector<std::vector<Vertex>> succ_;
    std::vector<ObjectiveSpec> objectives_;
    std::optional<Vertex> initial_;
};

namespace detail {

inline void check_vertices(const VertexSet& s, std::size_t n, const std::string& what) {
    for (Vertex v : s.elements())
        if (static_cast<std::size_t>(v) >= n)
            throw Error(ErrorKind::UnknownVertex, what + " mentions vertex " + std::to_string(v));
}

inline void check_coloring(const std::vector<int>& color, std::size_t n, const std::string& what) {
    if (color.size() != n)
        throw Error(ErrorKind::InvalidObjective, what + ": coloring must assign a color to every vertex");
    for (int c : color)
        if (c < 1) throw Error(ErrorKind::InvalidObjective, what + ": colors start at 1");
}

template <typename T>
void sort_unique(std::vector<T>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

inline void normalize_objective(ObjectiveSpec& obj, std::size_t n, Player i) {
    const std::string what = "objective of player " + std::to_string(i);
    std::visit(
        [&](auto& o) {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, Parity>) {
                check_coloring(o.color, n, what);
            } else if constexpr (std::is_same_v<T, ExplicitMuller>) {
                for (auto& f : o.family) check_vertices(f, n, what);
                sort_unique(o.family);
            } else if constexpr (std::is_same_v<T, Muller>) {
                check_coloring(o.color, n, what);
                ColorSet used = ColorSet::from(o.color);
                for (auto& f : o.family)
                    if (!f.subset_of(used))
                        throw Error(ErrorKind::InvalidObjective, what + ": family mentions a color not used by any vertex");
                sort_unique(o.family);
            } else if constexpr (std::is_same_v<T, Rabin> || std::is_same_v<T, Streett>) {
                if (o.pairs.empty()) throw Error(ErrorKind::InvalidObjective, what + ": needs at least one pair");
                for (auto& p : o.pairs) {
                    check_vertices(p.good, n, what);
                    check_vertices(p.bad, n, what);
                }
            } else {
                check_vertices(o.target, n, what);
            }
        },
        obj);
}

} // namespace detail

inline Game validate_game(RawGame raw) {
    const std::size_t n = raw.owner.size();
    if (raw.num_players < 1) throw Error(ErrorKind::ArityMismatch, "a game needs at least one player");
    if (n == 0) throw Error(ErrorKind::MalformedInput, "a game needs at least one vertex");
    if (raw.objectives.size() != static_cast<std::size_t>(raw.num_players))
        throw Error(ErrorKind::ArityMismatch, std::to_string(raw.objectives.size()) + " objectives for " +
                                                  std::to_string(raw.num_players) + " players");
    for (std::size_t v = 0; v < n; ++v)
        if (raw.owner[v] < 1 || raw.owner[v] > raw.num_players)
            throw Error(ErrorKind::MalformedInput, "vertex " + std::to_string(v) + " has no valid owner");

    Game g;
    g.num_players_ = raw.num_players;
    g.owner_ = std::move(raw.owner);
    g.succ_.assign(n, {});
    for (auto [a, b] : raw.edges) {
        if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n)
            throw Error(ErrorKind::UnknownVertex,
                        "edge (" + std::to_string(a) + "," + std::to_string(b) + ") leaves the vertex set");
        g.succ_[static_cast<std::size_t>(a)].push_back(b);
    }
    for (std::size_t v = 0; v < n; ++v) {
        detail::sort_unique(g.succ_[v]);
        if (g.succ_[v].empty()) throw Error(ErrorKind::DeadEndVertex, "vertex " + std::to_string(v) + " has no successor");
    }

    const auto kind = kind_of(raw.objectives.front());
    for (std::size_t i = 0; i < raw.objectives.size(); ++i) {
        if (kind_of(raw.objectives[i]) != kind)
            throw Error(ErrorKind::MixedObjectives, "all players must share one objective type");
        detail::normalize_objective(raw.objectives[i], n, static_cast<Player>(i + 1));
    }
    g.objectives_ = std::move(raw.objectives);

    if (raw.initial && (*raw.initial < 0 || static_cast<std::size_t>(*raw.initial) >= n))
        throw Error(ErrorKind::UnknownVertex, "initial vertex " + std::to_string(*raw.initial) + " is not in the game");
    g.initial_ = raw.initial;
    return g;
}

/// Inverse of validate_game (up to edge order).
inline RawGame to_raw(const Game& g) {
    RawGame raw;
    raw.num_players = g.num_players();
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        raw.owner.push_back(g.owner(static_cast<Vertex>(v)));
        for (Vertex w : g.successors(static_cast<Vertex>(v))) raw.edges.emplace_back(static_cast<Vertex>(v), w);
    }
    raw.objectives = g.objectives();
    raw.initial = g.initial();
    return raw;
}

// ---------------------------------------------------------------------------
// Plays and gains
// ---------------------------------------------------------------------------

/// True iff every step of the lasso (including the wrap-around) is an edge.
inline bool lasso_in_game(const Game& g, const Lasso& l) {
    if (l.cycle.empty()) return false;
    std::vector<Vertex> seq = l.stem;
    seq.insert(seq.end(), l.cycle.begin(), l.cycle.end());
    for (Vertex v : seq)
        if (v < 0 || static_cast<std::size_t>(v) >= g.num_vertices()) return false;
    for (std::size_t k = 0; k + 1 < seq.size(); ++k)
        if (!g.has_edge(seq[k], seq[k + 1])) return false;
    return g.has_edge(l.cycle.back(), l.cycle.front());
}

struct OccInf {
    VertexSet occ;
    VertexSet inf;
};

inline OccInf occ_inf(const Lasso& l) {
    OccInf r;
    r.inf = VertexSet::from(l.cycle);
    r.occ = VertexSet::from(l.stem) | r.inf;
    return r;
}

inline ColorSet colors_of(const std::vector<int>& color, const VertexSet& s) {
    ColorSet out;
    for (Vertex v : s.elements()) out.insert(color[static_cast<std::size_t>(v)]);
    return out;
}

/// Membership of a play with the given Occ/Inf sets in the objective.
inline bool evaluate_gain(const ObjectiveSpec& obj, const VertexSet& occ, const VertexSet& inf) {
    return std::visit(
        [&](const auto& o) -> bool {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, Reachability>) {
                return occ.intersects(o.target);
            } else if constexpr (std::is_same_v<T, Safety>) {
                return !occ.intersects(o.target);
            } else if constexpr (std::is_same_v<T, Buchi>) {
                return inf.intersects(o.target);
            } else if constexpr (std::is_same_v<T, CoBuchi>) {
                return !inf.intersects(o.target);
            } else if constexpr (std::is_same_v<T, Parity>) {
                int top = 0;
                for (Vertex v : inf.elements()) top = std::max(top, o.color[static_cast<std::size_t>(v)]);
                return top % 2 == 0;
            } else if constexpr (std::is_same_v<T, ExplicitMuller>) {
                return std::binary_search(o.family.begin(), o.family.end(), inf);
            } else if constexpr (std::is_same_v<T, Muller>) {
                return std::binary_search(o.family.begin(), o.family.end(), colors_of(o.color, inf));
            } else if constexpr (std::is_same_v<T, Rabin>) {
                return std::any_of(o.pairs.begin(), o.pairs.end(), [&](const AcceptancePair& p) {
                    return inf.intersects(p.good) && !inf.intersects(p.bad);
                });
            } else {
                return std::all_of(o.pairs.begin(), o.pairs.end(), [&](const AcceptancePair& p) {
                    return !inf.intersects(p.good) || inf.intersects(p.bad);
                });
            }
        },
        obj);
}

inline bool evaluate_gain(const ObjectiveSpec& obj, const Lasso& l) {
    auto [occ, inf] = occ_inf(l);
    return evaluate_gain(obj, occ, inf);
}

inline Payoff payoff_of(const Game& g, const VertexSet& occ, const VertexSet& inf) {
    Payoff p(static_cast<std::size_t>(g.num_players()));
    for (Player i = 1; i <= g.num_players(); ++i) p.set(i, evaluate_gain(g.objective(i), occ, inf));
    return p;
}

inline Payoff payoff_of(const Game& g, const Lasso& l) {
    auto [occ, inf] = occ_inf(l);
    return payoff_of(g, occ, inf);
}

/// Vertices reachable from v (v included) using only vertices of `allowed`.
/// Returns the empty set when v itself is not allowed.
inline VertexSet reachable_within(const Game& g, const VertexSet& allowed, Vertex v) {
    VertexSet seen;
    if (!allowed.contains(v)) return seen;
    std::vector<Vertex> stack{v};
    seen.insert(v);
    while (!stack.empty()) {
        Vertex u = stack.back();
        stack.pop_back();
        for (Vertex w : g.successors(u))
            if (allowed.contains(w) && !seen.contains(w)) {
                seen.insert(w);
                stack.push_back(w);
            }
    }
    return seen;
}

/// Succ*(v).
inline VertexSet reachable_set(const Game& g, Vertex v) {
    return reachable_within(g, g.all_vertices(), v);
}

} // namespace wspe
