#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "rigidlab/certificate.hpp"
#include "rigidlab/hypergraph.hpp"
#include "rigidlab/prng.hpp"
#include "rigidlab/rigidmatrix.hpp"
#include "rigidlab/scalar.hpp"

namespace rigidlab {

struct CrossValBounds {
    int max_vertices = 4;
    int max_dim = 4;
    int max_pin_dim = 3;
    int max_total = 10; // cap on the constraint row count
};

// Draws a random valid weighted hypergraph within the bounds. Edge count and
// shapes are sampled until the row budget is hit; every instance is valid by
// construction (s_k < d, 1 <= m_k <= s_k, no duplicate vertex in an edge).
inline WeightedHypergraph sample_hypergraph(const CrossValBounds& bounds, Prng& rng) {
    const int d = static_cast<int>(rng.next_in(2, bounds.max_dim));
    const int nv = static_cast<int>(rng.next_in(1, bounds.max_vertices));
    WeightedHypergraph h = make_hypergraph(d, nv, {});
    const int target = static_cast<int>(rng.next_in(1, bounds.max_total));
    int total = 0;
    for (int guard = 0; guard < 64 && total < target; ++guard) {
        const int max_s = std::min(d - 1, nv);
        int s = static_cast<int>(rng.next_in(1, max_s));
        if (total + (d - s) > bounds.max_total) continue;
        int max_m = std::min({s, bounds.max_pin_dim, (bounds.max_total - total) / (d - s)});
        if (max_m < 1) continue;
        int m = static_cast<int>(rng.next_in(1, max_m));
        std::vector<int> verts(static_cast<std::size_t>(nv));
        std::iota(verts.begin(), verts.end(), 0);
        rng.shuffle(verts);
        verts.resize(static_cast<std::size_t>(s));
        std::sort(verts.begin(), verts.end());
        h.edges.push_back(HyperEdge{verts, m});
        total += m * (d - s);
    }
    if (h.edges.empty()) h.edges.push_back(HyperEdge{{0}, 1});
    return h;
}

struct Disagreement {
    WeightedHypergraph hypergraph;
    RigidityStatus combinatorial;
    RankReport numeric;
};

struct CrossValReport {
    int checked = 0;
    int rigid_both = 0;
    int flexible_both = 0;
    std::vector<Disagreement> disagreements;

    bool all_agree() const { return disagreements.empty(); }
};

// Compares the screened combinatorial verdict with the generic-rank verdict
// on seeded random instances. Minimal rigidity numerically means a square
// rigidity matrix of full rank.
template <typename T = Zp>
CrossValReport cross_validate(const CrossValBounds& bounds, int count, std::uint64_t seed,
                              int trials = 3) {
    CrossValReport report;
    Prng rng(derive_seed(seed, 0x634f55ull));
    for (int i = 0; i < count; ++i) {
        WeightedHypergraph h = sample_hypergraph(bounds, rng);
        RigidityVerdict verdict = find_certificate(h);
        RankReport rank = generic_rank<T>(h, trials, derive_seed(seed, static_cast<std::uint64_t>(i)));
        const bool comb = verdict.status == RigidityStatus::MinimallyRigid;
        const bool numeric = rank.full_rank && rank.rows == rank.cols;
        ++report.checked;
        if (comb == numeric) {
            if (comb)
                ++report.rigid_both;
            else
                ++report.flexible_both;
        } else {
            report.disagreements.push_back(Disagreement{h, verdict.status, rank});
        }
    }
    return report;
}

} // namespace rigidlab
