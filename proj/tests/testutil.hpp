#pragma once

// Shared fixtures and independent oracles for the test suite. The oracles
// here intentionally avoid the library's decision paths: sparsity by subset
// enumeration, certificate existence by decomposition enumeration plus
// per-edge label assignment.

#include <algorithm>
#include <numeric>
#include <vector>

#include "rigidlab/rigidlab.hpp"

namespace testutil {

using namespace rigidlab;

// d=3, 4 vertices, 5 edges, pin dimensions (1,1,1,1,2); minimally rigid.
inline WeightedHypergraph fig2() {
    return make_hypergraph(3, 4, {{{0}, 1}, {{1}, 1}, {{0, 2}, 1}, {{1, 3}, 1}, {{2, 3}, 2}});
}

// d=4, 6 vertices, edge sizes (3,3,2,2,1), pin dimensions (2,3,2,1,1);
// under-counted (14 rows vs capacity 18).
inline WeightedHypergraph fig1() {
    return make_hypergraph(
        4, 6, {{{0, 1, 2}, 2}, {{2, 3, 4}, 3}, {{4, 5}, 2}, {{0, 5}, 1}, {{1}, 1}});
}

// d=4, 4 vertices, 5 edges, pin dimensions (1,1,1,1,2); tight and admits a
// certificate, but {v1,v2,v4} carries pin sum 4 > 3, which makes the rigidity
// determinant vanish identically.
inline WeightedHypergraph example2() {
    return make_hypergraph(4, 4,
                           {{{0, 1, 3}, 1}, {{2}, 1}, {{2, 3}, 1}, {{1, 3}, 1}, {{0, 1}, 2}});
}

// Brute-force (k,0)-sparsity of a multi-hypergraph: every vertex subset V'
// must contain at most k|V'| copies.
inline bool brute_sparse(const MultiHypergraph& mh, int k) {
    const int n = mh.base.n_vertices();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        int inside = 0;
        for (int c = 0; c < mh.n_copies(); ++c) {
            bool all_in = true;
            for (int v : mh.copy_vertices(c))
                if (!(mask >> v & 1)) {
                    all_in = false;
                    break;
                }
            if (all_in) ++inside;
        }
        if (inside > k * __builtin_popcount(mask)) return false;
    }
    return true;
}

// Certificate-existence oracle: enumerate every decomposition (maps bound to
// column groups by index), then try to assign labels edge by edge. All
// constraints couple copies of one edge only, so per-edge assignment by
// permutation search is complete.
inline bool edge_labels_feasible(const WeightedHypergraph& h, const MultiHypergraph& mh,
                                 const MapDecomposition& dec, int edge) {
    const HyperEdge& e = h.edges[static_cast<std::size_t>(edge)];
    std::vector<int> copies;
    for (int c = 0; c < mh.n_copies(); ++c)
        if (mh.copies[static_cast<std::size_t>(c)].edge == edge) copies.push_back(c);
    std::vector<std::pair<int, int>> labels;
    for (int t = 1; t <= h.dim - e.size(); ++t)
        for (int l = 1; l <= e.pin_dim; ++l) labels.emplace_back(t, l);

    std::vector<std::size_t> perm(labels.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (std::size_t i = 0; i < copies.size() && ok; ++i) {
            int group = dec.map_of[static_cast<std::size_t>(copies[i])] + 1;
            if (!group_compatible(e.size(), labels[perm[i]].first, group)) ok = false;
        }
        for (std::size_t i = 0; i < copies.size() && ok; ++i) {
            for (std::size_t j = i + 1; j < copies.size() && ok; ++j) {
                bool same_map = dec.map_of[static_cast<std::size_t>(copies[i])] ==
                                dec.map_of[static_cast<std::size_t>(copies[j])];
                bool same_tail = dec.tail[static_cast<std::size_t>(copies[i])] ==
                                 dec.tail[static_cast<std::size_t>(copies[j])];
                if (labels[perm[i]].second == labels[perm[j]].second && same_map) ok = false;
                if (labels[perm[i]].first == labels[perm[j]].first && same_tail) ok = false;
            }
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

inline bool brute_certificate_exists(const WeightedHypergraph& h) {
    if (!count_check(h).tight) return false;
    const MultiHypergraph mh = expand(h);
    bool found = false;
    enumerate_decompositions(mh, h.dim - 1, 1000000, [&](const MapDecomposition& dec) {
        bool ok = true;
        for (int k = 0; k < h.n_edges() && ok; ++k)
            ok = edge_labels_feasible(h, mh, dec, k);
        if (ok) found = true;
        return !found;
    });
    return found;
}

// Relabels vertices and reorders edges with a seeded permutation.
inline WeightedHypergraph permuted(const WeightedHypergraph& h, std::uint64_t seed) {
    Prng rng(seed);
    std::vector<int> vperm(static_cast<std::size_t>(h.n_vertices()));
    std::iota(vperm.begin(), vperm.end(), 0);
    rng.shuffle(vperm);
    WeightedHypergraph out;
    out.dim = h.dim;
    out.vertex_ids.resize(h.vertex_ids.size());
    for (int v = 0; v < h.n_vertices(); ++v)
        out.vertex_ids[static_cast<std::size_t>(vperm[static_cast<std::size_t>(v)])] =
            h.vertex_ids[static_cast<std::size_t>(v)];
    std::vector<int> eorder(static_cast<std::size_t>(h.n_edges()));
    std::iota(eorder.begin(), eorder.end(), 0);
    rng.shuffle(eorder);
    for (int k : eorder) {
        HyperEdge e = h.edges[static_cast<std::size_t>(k)];
        for (int& v : e.vertices) v = vperm[static_cast<std::size_t>(v)];
        out.edges.push_back(std::move(e));
    }
    return out;
}

} // namespace testutil
