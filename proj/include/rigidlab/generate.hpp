#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "rigidlab/hypergraph.hpp"
#include "rigidlab/mapdecomp.hpp"
#include "rigidlab/prng.hpp"

namespace rigidlab {

struct GenerateOptions {
    int dim = 3;
    int n_vertices = 4;
    std::uint64_t seed = 0;
    int max_edge_attempts = 400; // consecutive rejections before a restart
    int max_restarts = 64;
};

// Random tight instance: repeatedly draws candidate edges with random size
// and pin dimension, keeps the ones the pebble game accepts, and stops when
// the row count hits the capacity. Dead ends restart from scratch with a
// derived seed.
inline WeightedHypergraph generate_tight(const GenerateOptions& opts) {
    if (opts.dim < 2 || opts.n_vertices < 1)
        throw std::invalid_argument("generate_tight: need d >= 2 and nv >= 1");
    const int capacity = (opts.dim - 1) * opts.n_vertices;

    for (int restart = 0; restart < opts.max_restarts; ++restart) {
        Prng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(restart)));
        WeightedHypergraph h = make_hypergraph(opts.dim, opts.n_vertices, {});
        int total = 0;
        int attempts = 0;
        while (total < capacity && attempts < opts.max_edge_attempts) {
            ++attempts;
            const int remaining = capacity - total;
            const int max_s = std::min(opts.dim - 1, opts.n_vertices);
            int s = static_cast<int>(rng.next_in(1, max_s));
            if (opts.dim - s > remaining) continue; // even m=1 would overshoot
            int max_m = std::min(s, remaining / (opts.dim - s));
            if (max_m < 1) continue;
            int m = static_cast<int>(rng.next_in(1, max_m));

            std::vector<int> verts(static_cast<std::size_t>(opts.n_vertices));
            std::iota(verts.begin(), verts.end(), 0);
            rng.shuffle(verts);
            verts.resize(static_cast<std::size_t>(s));
            std::sort(verts.begin(), verts.end());

            h.edges.push_back(HyperEdge{verts, m});
            if (pebble_game(expand(h), opts.dim - 1).accepted) {
                total += m * (opts.dim - s);
                attempts = 0;
            } else {
                h.edges.pop_back();
            }
        }
        if (total == capacity) return h;
    }
    throw std::runtime_error("generate_tight: restart budget exhausted");
}

} // namespace rigidlab
