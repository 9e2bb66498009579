#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace wspe {

using Vertex = int;
using Player = int;

/// Growable bitset over dense vertex indices.
///
/// Equality and ordering ignore capacity: two sets are equal iff they hold the
/// same vertices, and ordering is lexicographic on the sorted element lists.
class VertexSet {
public:
    VertexSet() = default;
    VertexSet(std::initializer_list<Vertex> vs) {
        for (Vertex v : vs) insert(v);
    }
    template <typename Range>
    static VertexSet from(const Range& range) {
        VertexSet s;
        for (auto v : range) s.insert(static_cast<Vertex>(v));
        return s;
    }
    /// {0, ..., n-1}
    static VertexSet full(std::size_t n) {
        VertexSet s;
        for (std::size_t v = 0; v < n; ++v) s.insert(static_cast<Vertex>(v));
        return s;
    }

    bool contains(Vertex v) const {
        auto w = static_cast<std::size_t>(v) / 64;
        return v >= 0 && w < words_.size() && ((words_[w] >> (v % 64)) & 1U);
    }
    void insert(Vertex v) {
        auto w = static_cast<std::size_t>(v) / 64;
        if (w >= words_.size()) words_.resize(w + 1, 0);
        words_[w] |= std::uint64_t{1} << (v % 64);
    }
    void erase(Vertex v) {
        auto w = static_cast<std::size_t>(v) / 64;
        if (v >= 0 && w < words_.size()) words_[w] &= ~(std::uint64_t{1} << (v % 64));
    }

    std::size_t size() const {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }
    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    /// Smallest element, or -1 when empty.
    Vertex min() const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return static_cast<Vertex>(i * 64 + std::countr_zero(words_[i]));
        return -1;
    }

    bool intersects(const VertexSet& o) const {
        auto n = std::min(words_.size(), o.words_.size());
        for (std::size_t i = 0; i < n; ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }
    bool subset_of(const VertexSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            auto other = i < o.words_.size() ? o.words_[i] : 0;
            if (words_[i] & ~other) return false;
        }
        return true;
    }

    VertexSet& operator|=(const VertexSet& o) {
        if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
        for (std::size_t i = 0; i < o.words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    VertexSet& operator&=(const VertexSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= i < o.words_.size() ? o.words_[i] : 0;
        return *this;
    }
    /// Set difference.
    VertexSet& operator-=(const VertexSet& o) {
        auto n = std::min(words_.size(), o.words_.size());
        for (std::size_t i = 0; i < n; ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

    /// Elements in increasing order.
    std::vector<Vertex> elements() const {
        std::vector<Vertex> out;
        for (std::size_t i = 0; i < words_.size(); ++i) {
            auto w = words_[i];
            while (w) {
                out.push_back(static_cast<Vertex>(i * 64 + std::countr_zero(w)));
                w &= w - 1;
            }
        }
        return out;
    }

    friend bool operator==(const VertexSet& a, const VertexSet& b) {
        auto n = std::max(a.words_.size(), b.words_.size());
        for (std::size_t i = 0; i < n; ++i)
            if (a.word(i) != b.word(i)) return false;
        return true;
    }
    friend std::strong_ordering operator<=>(const VertexSet& a, const VertexSet& b) {
        auto ea = a.elements();
        auto eb = b.elements();
        return std::lexicographical_compare_three_way(ea.begin(), ea.end(), eb.begin(), eb.end());
    }

private:
    std::uint64_t word(std::size_t i) const { return i < words_.size() ? words_[i] : 0; }

    std::vector<std::uint64_t> words_;
};

} // namespace wspe
