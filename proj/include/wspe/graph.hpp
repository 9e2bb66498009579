#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "wspe/game.hpp"

// Graph primitives on vertex-restricted subgraphs of a game arena.  All
// traversals visit successors in increasing index order so results are
// reproducible.

namespace wspe {

/// Strongly connected components of the subgraph induced by `within`,
/// sorted by their minimum vertex.
inline std::vector<VertexSet> scc_decompose(const Game& g, const VertexSet& within) {
    const auto n = g.num_vertices();
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<Vertex> stack;
    std::vector<VertexSet> out;
    int counter = 0;

    struct Frame {
        Vertex v;
        std::size_t next;
    };
    for (Vertex root : within.elements()) {
        if (index[static_cast<std::size_t>(root)] != -1) continue;
        std::vector<Frame> call{{root, 0}};
        index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = counter++;
        stack.push_back(root);
        on_stack[static_cast<std::size_t>(root)] = 1;
        while (!call.empty()) {
            auto& f = call.back();
            auto vi = static_cast<std::size_t>(f.v);
            auto succ = g.successors(f.v);
            if (f.next < succ.size()) {
                Vertex w = succ[f.next++];
                auto wi = static_cast<std::size_t>(w);
                if (!within.contains(w)) continue;
                if (index[wi] == -1) {
                    index[wi] = low[wi] = counter++;
                    stack.push_back(w);
                    on_stack[wi] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[wi]) {
                    low[vi] = std::min(low[vi], index[wi]);
                }
                continue;
            }
            if (low[vi] == index[vi]) {
                VertexSet comp;
                Vertex w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[static_cast<std::size_t>(w)] = 0;
                    comp.insert(w);
                } while (w != f.v);
                out.push_back(std::move(comp));
            }
            Vertex done = f.v;
            call.pop_back();
            if (!call.empty()) {
                auto pi = static_cast<std::size_t>(call.back().v);
                low[pi] = std::min(low[pi], low[static_cast<std::size_t>(done)]);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const VertexSet& a, const VertexSet& b) { return a.min() < b.min(); });
    return out;
}

/// An SCC can carry an infinite play iff it has an internal edge.
inline bool is_nontrivial(const Game& g, const VertexSet& scc) {
    if (scc.size() > 1) return true;
    Vertex v = scc.min();
    return v >= 0 && g.has_edge(v, v);
}

/// Shortest path from `from` to the nearest vertex of `targets`, staying in
/// `within`.  Among equally near targets the smallest index wins.  The path
/// includes both endpoints; a single vertex when `from` is itself a target.
inline std::optional<std::vector<Vertex>> shortest_path(const Game& g, const VertexSet& within, Vertex from,
                                                        const VertexSet& targets) {
    if (!within.contains(from)) return std::nullopt;
    if (targets.contains(from)) return std::vector<Vertex>{from};
    const auto n = g.num_vertices();
    std::vector<Vertex> parent(n, -1);
    std::vector<int> dist(n, -1);
    std::deque<Vertex> queue{from};
    dist[static_cast<std::size_t>(from)] = 0;
    Vertex best = -1;
    while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop_front();
        int du = dist[static_cast<std::size_t>(u)];
        if (best != -1 && du >= dist[static_cast<std::size_t>(best)]) break;
        for (Vertex w : g.successors(u)) {
            auto wi = static_cast<std::size_t>(w);
            if (!within.contains(w) || dist[wi] != -1) continue;
            dist[wi] = du + 1;
            parent[wi] = u;
            if (targets.contains(w)) {
                if (best == -1 || w < best) best = w;
            } else {
                queue.push_back(w);
            }
        }
    }
    if (best == -1) return std::nullopt;
    std::vector<Vertex> path;
    for (Vertex v = best; v != -1; v = parent[static_cast<std::size_t>(v)]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

/// Shortest closed walk from v back to v (at least one edge) inside `within`.
/// Returned without the repeated final vertex.
inline std::optional<std::vector<Vertex>> shortest_cycle_through(const Game& g, const VertexSet& within, Vertex v) {
    if (!within.contains(v)) return std::nullopt;
    if (g.has_edge(v, v)) return std::vector<Vertex>{v};
    std::optional<std::vector<Vertex>> best;
    for (Vertex w : g.successors(v)) {
        if (!within.contains(w)) continue;
        auto back = shortest_path(g, within, w, VertexSet{v});
        if (back && (!best || back->size() < best->size())) best = back;
    }
    if (!best) return std::nullopt;
    best->pop_back();
    best->insert(best->begin(), v);
    return best;
}

} // namespace wspe
