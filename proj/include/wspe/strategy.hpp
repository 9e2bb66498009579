#pragma once

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "wspe/game.hpp"
#include "wspe/witness.hpp"

// Finite-memory profile read off a symbolic witness.  All players share one
// memory: the slot (j, u) of the last deviation and a position on ρ_{j,u}.

namespace wspe {

struct ProfileMemory {
    Slot slot{0, 0};
    std::size_t position = 0;
    auto operator<=>(const ProfileMemory&) const = default;
};

struct ProfileConfiguration {
    ProfileMemory memory;
    Vertex vertex = 0;
    auto operator<=>(const ProfileConfiguration&) const = default;
};

class MooreProfile {
public:
    MooreProfile() = default;
    MooreProfile(SymbolicWitness w, const Game& g) : witness_(std::move(w)) {
        for (const auto& [slot, l] : witness_.lassoes) {
            if (l.cycle.empty() || l.first() != slot.second || !lasso_in_game(g, l))
                throw Error(ErrorKind::MalformedInput, "lasso for slot (" + std::to_string(slot.first) + "," +
                                                           std::to_string(slot.second) + ") is not a play from its vertex");
            if (slot.first < 0 || slot.first > g.num_players())
                throw Error(ErrorKind::MalformedInput, "slot player out of range");
        }
        witness_.at({0, witness_.initial});
        owner_.reserve(g.num_vertices());
        for (std::size_t v = 0; v < g.num_vertices(); ++v) owner_.push_back(g.owner(static_cast<Vertex>(v)));
    }

    const SymbolicWitness& witness() const { return witness_; }

    ProfileMemory initial_memory() const { return {{0, witness_.initial}, 0}; }
    ProfileConfiguration initial_configuration() const { return {initial_memory(), witness_.initial}; }

    /// Memory states: one per (slot, position).
    std::size_t size() const {
        std::size_t n = 0;
        for (const auto& [s, l] : witness_.lassoes) n += l.length();
        return n;
    }

    /// α_n: the vertex the current lasso moves to next.
    Vertex next_action(const ProfileMemory& m) const { return witness_.at(m.slot).at(advance(m).position); }

    /// α_u after the play moved from `from` to `to`.
    ProfileMemory update(const ProfileMemory& m, Vertex from, Vertex to) const {
        ProfileMemory next = advance(m);
        if (witness_.at(m.slot).at(next.position) == to) return next;
        ProfileMemory dev{{owner_.at(static_cast<std::size_t>(from)), to}, 0};
        witness_.at(dev.slot);
        return dev;
    }

    ProfileConfiguration step(const ProfileConfiguration& c, Vertex to) const {
        return {update(c.memory, c.vertex, to), to};
    }

private:
    ProfileMemory advance(const ProfileMemory& m) const {
        const Lasso& l = witness_.at(m.slot);
        ProfileMemory n = m;
        n.position = m.position + 1 < l.length() ? m.position + 1 : l.stem.size();
        return n;
    }

    SymbolicWitness witness_;
    std::vector<Player> owner_;
};

inline MooreProfile synthesize_profile(const SymbolicWitness& w, const Game& g) {
    // Every deviation the profile can observe must have a lasso to switch to.
    for (const auto& slot : w.index.entries) w.at(slot);
    return MooreProfile(w, g);
}

/// Play produced from `c` by following the profile until a configuration repeats.
inline Lasso outcome_from(const MooreProfile& profile, const Game& g, const ProfileConfiguration& c) {
    std::map<ProfileConfiguration, std::size_t> seen;
    std::vector<Vertex> seq;
    ProfileConfiguration cur = c;
    for (;;) {
        auto [it, fresh] = seen.emplace(cur, seq.size());
        if (!fresh) {
            Lasso l;
            l.stem.assign(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(it->second));
            l.cycle.assign(seq.begin() + static_cast<std::ptrdiff_t>(it->second), seq.end());
            return l;
        }
        seq.push_back(cur.vertex);
        Vertex to = profile.next_action(cur.memory);
        if (!g.has_edge(cur.vertex, to))
            throw Error(ErrorKind::MalformedInput, "profile moves along a missing edge");
        cur = profile.step(cur, to);
    }
}

struct Counterexample {
    ProfileConfiguration config;
    Player deviator = 0;
    Vertex alternative = 0;
    bool gain_before = false;
    bool gain_after = false;
};

struct VerifyReport {
    bool is_weak_spe = true;
    std::optional<Counterexample> counterexample;
    std::size_t configurations = 0;
};

/// One-shot deviation check over every configuration reachable under any
/// moves.  Exact for prefix-independent objectives.
inline VerifyReport verify_weak_spe(const MooreProfile& profile, const Game& g) {
    if (!prefix_independent(g.kind()))
        throw Error(ErrorKind::UnsupportedObjective, "verify Reachability/Safety games on their product");
    VerifyReport r;
    std::map<ProfileConfiguration, Payoff> gain_cache;
    auto gain_from = [&](const ProfileConfiguration& c) -> const Payoff& {
        auto it = gain_cache.find(c);
        if (it == gain_cache.end()) it = gain_cache.emplace(c, payoff_of(g, outcome_from(profile, g, c))).first;
        return it->second;
    };
    std::set<ProfileConfiguration> seen{profile.initial_configuration()};
    std::deque<ProfileConfiguration> queue{profile.initial_configuration()};
    while (!queue.empty()) {
        ProfileConfiguration c = queue.front();
        queue.pop_front();
        ++r.configurations;
        const Vertex v = c.vertex;
        const Player i = g.owner(v);
        const Vertex chosen = profile.next_action(c.memory);
        for (Vertex w : g.successors(v)) {
            ProfileConfiguration next = profile.step(c, w);
            if (seen.insert(next).second) queue.push_back(next);
            if (w == chosen || r.counterexample) continue;
            const bool before = gain_from(c).gain(i);
            const bool after = gain_from(next).gain(i);
            if (after && !before) r.counterexample = Counterexample{c, i, w, before, after};
        }
    }
    r.is_weak_spe = !r.counterexample;
    return r;
}

} // namespace wspe
