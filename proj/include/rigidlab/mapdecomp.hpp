#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rigidlab/hypergraph.hpp"

namespace rigidlab {

// Orientation of a multi-hypergraph: one tail vertex per copy, taken from the
// copy's edge.
struct Orientation {
    std::vector<int> tail; // indexed by copy
};

// Partition of the copies into k maps with a tail assignment; within each map
// the tails are a bijection onto V.
struct MapDecomposition {
    std::vector<int> map_of; // copy -> map index in 0..k-1
    std::vector<int> tail;   // copy -> tail vertex

    friend bool operator==(const MapDecomposition&, const MapDecomposition&) = default;
};

struct PebbleGameResult {
    bool accepted = false;               // all copies inserted, i.e. (k,0)-sparse
    bool tight = false;                  // accepted and every pebble consumed
    std::optional<Orientation> orientation; // present when accepted
    std::optional<int> blocked_copy;     // first copy that could not be inserted
};

namespace detail {

// Live state of a (k,0)-pebble game. Each vertex starts with k pebbles;
// inserting a copy consumes one pebble from its vertex set, gathered if
// necessary by reversing already-inserted copies along a depth-first search.
class PebbleGame {
public:
    PebbleGame(const MultiHypergraph& mh, int k)
        : mh_(&mh),
          k_(k),
          pebbles_(static_cast<std::size_t>(mh.base.n_vertices()), k),
          tail_(static_cast<std::size_t>(mh.n_copies()), -1),
          out_(static_cast<std::size_t>(mh.base.n_vertices())) {}

    bool insert(int copy) {
        const std::vector<int>& verts = sorted_vertices(copy);
        for (int v : verts) {
            if (pebbles_[static_cast<std::size_t>(v)] > 0) return take(copy, v);
        }
        std::vector<char> visited(pebbles_.size(), 0);
        for (int v : verts) visited[static_cast<std::size_t>(v)] = 1;
        for (int v : verts) {
            if (pull_pebble(v, visited)) return take(copy, v);
        }
        return false;
    }

    int free_pebbles() const { return std::accumulate(pebbles_.begin(), pebbles_.end(), 0); }
    const std::vector<int>& tails() const { return tail_; }

    // Snapshot/restore lets generators try an edge and roll back on failure.
    struct Snapshot {
        std::vector<int> pebbles, tail;
        std::vector<std::vector<int>> out;
    };
    Snapshot snapshot() const { return Snapshot{pebbles_, tail_, out_}; }
    void restore(Snapshot s) {
        pebbles_ = std::move(s.pebbles);
        tail_ = std::move(s.tail);
        out_ = std::move(s.out);
    }

private:
    std::vector<int> sorted_vertices(int copy) const {
        std::vector<int> verts = mh_->copy_vertices(copy);
        std::sort(verts.begin(), verts.end());
        return verts;
    }

    bool take(int copy, int v) {
        --pebbles_[static_cast<std::size_t>(v)];
        tail_[static_cast<std::size_t>(copy)] = v;
        out_[static_cast<std::size_t>(v)].push_back(copy);
        return true;
    }

    // Depth-first pebble search along oriented copies, lowest vertex first.
    // On success vertex v has gained a pebble.
    bool pull_pebble(int v, std::vector<char>& visited) {
        // iterate over a copy of the out-list; retailing mutates it
        std::vector<int> out_copies = out_[static_cast<std::size_t>(v)];
        std::sort(out_copies.begin(), out_copies.end());
        for (int c : out_copies) {
            for (int z : sorted_vertices(c)) {
                if (visited[static_cast<std::size_t>(z)]) continue;
                visited[static_cast<std::size_t>(z)] = 1;
                if (pebbles_[static_cast<std::size_t>(z)] > 0 || pull_pebble(z, visited)) {
                    --pebbles_[static_cast<std::size_t>(z)];
                    ++pebbles_[static_cast<std::size_t>(v)];
                    retail(c, v, z);
                    return true;
                }
            }
        }
        return false;
    }

    void retail(int copy, int from, int to) {
        auto& from_list = out_[static_cast<std::size_t>(from)];
        from_list.erase(std::find(from_list.begin(), from_list.end(), copy));
        out_[static_cast<std::size_t>(to)].push_back(copy);
        tail_[static_cast<std::size_t>(copy)] = to;
    }

    const MultiHypergraph* mh_;
    int k_;
    std::vector<int> pebbles_;
    std::vector<int> tail_;
    std::vector<std::vector<int>> out_;
};

} // namespace detail

// Runs the (k,0)-pebble game over the copies in the given insertion order
// (defaults to natural order). Acceptance is order-independent; the
// orientation is not.
inline PebbleGameResult pebble_game(const MultiHypergraph& mh, int k,
                                    const std::vector<int>* order = nullptr) {
    if (k < 1) throw std::invalid_argument("pebble_game: k must be >= 1");
    detail::PebbleGame game(mh, k);
    PebbleGameResult result;
    for (int i = 0; i < mh.n_copies(); ++i) {
        int copy = order ? (*order)[static_cast<std::size_t>(i)] : i;
        if (!game.insert(copy)) {
            result.blocked_copy = copy;
            return result;
        }
    }
    result.accepted = true;
    result.tight = game.free_pebbles() == 0;
    result.orientation = Orientation{game.tails()};
    return result;
}

// Splits a k-regular orientation into k maps: each vertex's out-copies are
// dealt to maps 1..k in enumeration order, which makes every map's tail
// function a bijection onto V.
inline MapDecomposition split_into_maps(const MultiHypergraph& mh, const Orientation& orientation,
                                        int k) {
    const int n = mh.base.n_vertices();
    std::vector<int> out_degree(static_cast<std::size_t>(n), 0);
    for (int c = 0; c < mh.n_copies(); ++c) {
        int v = orientation.tail[static_cast<std::size_t>(c)];
        if (v < 0 || v >= n ||
            std::find(mh.copy_vertices(c).begin(), mh.copy_vertices(c).end(), v) ==
                mh.copy_vertices(c).end())
            throw std::invalid_argument("split_into_maps: tail outside its edge");
        ++out_degree[static_cast<std::size_t>(v)];
    }
    for (int v = 0; v < n; ++v)
        if (out_degree[static_cast<std::size_t>(v)] != k)
            throw std::invalid_argument("split_into_maps: orientation is not k-regular");

    MapDecomposition dec;
    dec.tail = orientation.tail;
    dec.map_of.assign(static_cast<std::size_t>(mh.n_copies()), -1);
    std::vector<int> next_map(static_cast<std::size_t>(n), 0);
    for (int c = 0; c < mh.n_copies(); ++c) {
        int v = orientation.tail[static_cast<std::size_t>(c)];
        dec.map_of[static_cast<std::size_t>(c)] = next_map[static_cast<std::size_t>(v)]++;
    }
    return dec;
}

inline bool decomposition_is_valid(const MultiHypergraph& mh, const MapDecomposition& dec, int k) {
    const int n = mh.base.n_vertices();
    if (static_cast<int>(dec.map_of.size()) != mh.n_copies() ||
        static_cast<int>(dec.tail.size()) != mh.n_copies())
        return false;
    // per map, tails must hit every vertex exactly once
    std::vector<std::vector<char>> used(static_cast<std::size_t>(k),
                                        std::vector<char>(static_cast<std::size_t>(n), 0));
    std::vector<int> count(static_cast<std::size_t>(k), 0);
    for (int c = 0; c < mh.n_copies(); ++c) {
        int j = dec.map_of[static_cast<std::size_t>(c)];
        int v = dec.tail[static_cast<std::size_t>(c)];
        if (j < 0 || j >= k || v < 0 || v >= n) return false;
        const auto& verts = mh.copy_vertices(c);
        if (std::find(verts.begin(), verts.end(), v) == verts.end()) return false;
        if (used[static_cast<std::size_t>(j)][static_cast<std::size_t>(v)]) return false;
        used[static_cast<std::size_t>(j)][static_cast<std::size_t>(v)] = 1;
        ++count[static_cast<std::size_t>(j)];
    }
    return std::all_of(count.begin(), count.end(), [&](int c) { return c == n; });
}

// Enumerates every decomposition of a tight multi-hypergraph into k maps:
// all orientations with out-degree exactly k, crossed with all assignments of
// each vertex's out-copies to distinct maps. Stops after `limit` yields or
// when the visitor returns false. Intended for desk-scale oracles.
inline void enumerate_decompositions(const MultiHypergraph& mh, int k, std::size_t limit,
                                     const std::function<bool(const MapDecomposition&)>& visit) {
    const int n = mh.base.n_vertices();
    const int nc = mh.n_copies();
    if (nc != k * n) return; // not tight: no decomposition exists
    std::vector<int> tail(static_cast<std::size_t>(nc), -1);
    std::vector<int> out_degree(static_cast<std::size_t>(n), 0);
    std::size_t yielded = 0;
    bool stop = false;

    std::vector<std::vector<int>> out_copies(static_cast<std::size_t>(n));
    std::vector<int> map_of(static_cast<std::size_t>(nc), -1);

    // second stage: deal each vertex's k out-copies to maps, all k! ways each
    auto color = [&](auto&& self, int v) -> void {
        if (stop) return;
        if (v == n) {
            MapDecomposition dec{map_of, tail};
            ++yielded;
            if (!visit(dec) || yielded >= limit) stop = true;
            return;
        }
        std::vector<int>& mine = out_copies[static_cast<std::size_t>(v)];
        std::vector<int> perm(static_cast<std::size_t>(k));
        std::iota(perm.begin(), perm.end(), 0);
        do {
            for (int i = 0; i < k; ++i)
                map_of[static_cast<std::size_t>(mine[static_cast<std::size_t>(i)])] =
                    perm[static_cast<std::size_t>(i)];
            self(self, v + 1);
            if (stop) return;
        } while (std::next_permutation(perm.begin(), perm.end()));
    };

    auto orient = [&](auto&& self, int c) -> void {
        if (stop) return;
        if (c == nc) {
            for (auto& list : out_copies) list.clear();
            for (int i = 0; i < nc; ++i)
                out_copies[static_cast<std::size_t>(tail[static_cast<std::size_t>(i)])].push_back(i);
            color(color, 0);
            return;
        }
        std::vector<int> verts = mh.copy_vertices(c);
        std::sort(verts.begin(), verts.end());
        for (int v : verts) {
            if (out_degree[static_cast<std::size_t>(v)] == k) continue;
            tail[static_cast<std::size_t>(c)] = v;
            ++out_degree[static_cast<std::size_t>(v)];
            self(self, c + 1);
            --out_degree[static_cast<std::size_t>(v)];
            tail[static_cast<std::size_t>(c)] = -1;
            if (stop) return;
        }
    };
    orient(orient, 0);
}

inline std::vector<MapDecomposition> enumerate_decompositions(const MultiHypergraph& mh, int k,
                                                              std::size_t limit = 1000000) {
    std::vector<MapDecomposition> out;
    enumerate_decompositions(mh, k, limit, [&](const MapDecomposition& dec) {
        out.push_back(dec);
        return true;
    });
    return out;
}

struct CountCheck {
    int total = 0;
    int capacity = 0;
    bool tight = false;
    bool sparse = false;
    std::vector<SubgraphViolation> violating_subgraphs; // populated in brute-force range
};

// Counting conditions: total vs capacity plus the induced-subgraph
// inequality. Subgraphs are audited by brute force up to `brute_bound`
// vertices and by the pebble game beyond that.
inline CountCheck count_check(const WeightedHypergraph& h, int brute_bound = 12) {
    if (!validate(h).valid()) throw std::invalid_argument("count_check: invalid hypergraph");
    CountCheck cc;
    cc.total = h.total_copies();
    cc.capacity = h.capacity();
    if (h.n_vertices() <= brute_bound) {
        cc.violating_subgraphs = subgraph_violations_brute(h);
        cc.sparse = cc.violating_subgraphs.empty();
    } else {
        cc.sparse = pebble_game(expand(h), h.dim - 1).accepted;
    }
    cc.tight = cc.sparse && cc.total == cc.capacity;
    return cc;
}

} // namespace rigidlab
