#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rigidlab {

// A hyperedge together with the dimension count of its pin: the pin is
// spanned by `pin_dim` points, i.e. it is a (pin_dim - 1)-dimensional
// projective subspace attached to this edge.
struct HyperEdge {
    std::vector<int> vertices; // indices into WeightedHypergraph::vertex_ids
    int pin_dim = 1;

    int size() const { return static_cast<int>(vertices.size()); }
};

// Weighted hypergraph over an ambient dimension d. Vertex ids are opaque
// strings; indices are assigned by first appearance. Duplicate hyperedges
// (same vertex set, separate pins) are allowed and kept distinct.
struct WeightedHypergraph {
    int dim = 0; // ambient dimension d
    std::vector<std::string> vertex_ids;
    std::vector<HyperEdge> edges;

    int n_vertices() const { return static_cast<int>(vertex_ids.size()); }
    int n_edges() const { return static_cast<int>(edges.size()); }

    // Constraint rows contributed by edge k: m_k * (d - s_k).
    int copies_of_edge(int k) const {
        const HyperEdge& e = edges[static_cast<std::size_t>(k)];
        return e.pin_dim * (dim - e.size());
    }

    int total_copies() const {
        int total = 0;
        for (int k = 0; k < n_edges(); ++k) total += copies_of_edge(k);
        return total;
    }

    int capacity() const { return (dim - 1) * n_vertices(); }

    int vertex_index(const std::string& id) const {
        for (int i = 0; i < n_vertices(); ++i)
            if (vertex_ids[static_cast<std::size_t>(i)] == id) return i;
        throw std::out_of_range("unknown vertex id: " + id);
    }
};

// Convenience builder with generated ids v1..vn; edges given as
// {vertex indices, pin_dim}.
inline WeightedHypergraph make_hypergraph(
    int dim, int n_vertices,
    const std::vector<std::pair<std::vector<int>, int>>& edges) {
    WeightedHypergraph h;
    h.dim = dim;
    for (int i = 0; i < n_vertices; ++i) h.vertex_ids.push_back("v" + std::to_string(i + 1));
    for (const auto& [verts, m] : edges) h.edges.push_back(HyperEdge{verts, m});
    return h;
}

struct Violation {
    enum class Kind {
        RankTooLarge,      // s_k >= d
        PinDimExceedsSize, // m_k > s_k
        PinDimNonPositive, // m_k < 1
        DuplicateVertex,   // repeated vertex inside one edge
        EmptyEdge,
        BadVertexIndex,
        BadDimension, // d < 2
    };
    Kind kind;
    int edge = -1;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool valid() const { return violations.empty(); }
};

inline ValidationReport validate(const WeightedHypergraph& h) {
    ValidationReport report;
    auto add = [&](Violation::Kind kind, int edge, std::string msg) {
        report.violations.push_back(Violation{kind, edge, std::move(msg)});
    };
    if (h.dim < 2) add(Violation::Kind::BadDimension, -1, "ambient dimension must be >= 2");
    for (int k = 0; k < h.n_edges(); ++k) {
        const HyperEdge& e = h.edges[static_cast<std::size_t>(k)];
        const std::string tag = "edge " + std::to_string(k + 1);
        if (e.vertices.empty()) {
            add(Violation::Kind::EmptyEdge, k, tag + " has no vertices");
            continue;
        }
        for (int v : e.vertices)
            if (v < 0 || v >= h.n_vertices())
                add(Violation::Kind::BadVertexIndex, k, tag + " references unknown vertex");
        std::set<int> uniq(e.vertices.begin(), e.vertices.end());
        if (static_cast<int>(uniq.size()) != e.size())
            add(Violation::Kind::DuplicateVertex, k, tag + " repeats a vertex");
        if (e.size() >= h.dim)
            add(Violation::Kind::RankTooLarge, k,
                tag + " has rank " + std::to_string(e.size()) + " >= d");
        if (e.pin_dim < 1)
            add(Violation::Kind::PinDimNonPositive, k, tag + " has pin dimension < 1");
        else if (e.pin_dim > e.size())
            add(Violation::Kind::PinDimExceedsSize, k,
                tag + " has pin dimension " + std::to_string(e.pin_dim) +
                    " > edge size " + std::to_string(e.size()));
    }
    return report;
}

// One constraint row of the expanded multi-hypergraph: copy (t, l) of edge k.
// Indices t in 1..d-s_k, l in 1..m_k.
struct EdgeCopy {
    int edge = 0;
    int t = 1;
    int l = 1;

    friend bool operator==(const EdgeCopy&, const EdgeCopy&) = default;
};

// Expansion of a weighted hypergraph: each edge k replaced by its
// m_k(d - s_k) copies, in lexicographic (k, t, l) order. The (t, l) indices
// here are provisional; certificate search reassigns them.
struct MultiHypergraph {
    WeightedHypergraph base;
    std::vector<EdgeCopy> copies;

    int n_copies() const { return static_cast<int>(copies.size()); }
    const std::vector<int>& copy_vertices(int c) const {
        return base.edges[static_cast<std::size_t>(copies[static_cast<std::size_t>(c)].edge)].vertices;
    }
};

inline MultiHypergraph expand(const WeightedHypergraph& h) {
    MultiHypergraph mh;
    mh.base = h;
    for (int k = 0; k < h.n_edges(); ++k) {
        const HyperEdge& e = h.edges[static_cast<std::size_t>(k)];
        for (int t = 1; t <= h.dim - e.size(); ++t)
            for (int l = 1; l <= e.pin_dim; ++l) mh.copies.push_back(EdgeCopy{k, t, l});
    }
    return mh;
}

namespace detail {

// Visits all subsets of {0..n-1} with size in [min_size, max_size].
template <typename Fn>
void for_each_subset(int n, int min_size, int max_size, Fn&& fn) {
    std::vector<int> subset;
    auto rec = [&](auto&& self, int next) -> void {
        int sz = static_cast<int>(subset.size());
        if (sz >= min_size) fn(const_cast<const std::vector<int>&>(subset));
        if (sz == max_size) return;
        for (int v = next; v < n; ++v) {
            subset.push_back(v);
            self(self, v + 1);
            subset.pop_back();
        }
    };
    rec(rec, 0);
}

} // namespace detail

struct SubgraphViolation {
    std::vector<int> vertices; // the violating V'
    int copies = 0;            // sum of m_k(d - s_k) over edges inside V'
    int capacity = 0;          // (d-1)|V'|
};

// Brute-force sparsity audit: every vertex-induced subgraph must satisfy
// sum m_k(d - s_k) <= (d-1)|V'|. Exponential in |V|; callers cap it and fall
// back to the pebble game beyond the cap.
inline std::vector<SubgraphViolation> subgraph_violations_brute(const WeightedHypergraph& h) {
    std::vector<SubgraphViolation> out;
    const int n = h.n_vertices();
    detail::for_each_subset(n, 1, n, [&](const std::vector<int>& subset) {
        std::vector<char> in(static_cast<std::size_t>(n), 0);
        for (int v : subset) in[static_cast<std::size_t>(v)] = 1;
        int copies = 0;
        for (int k = 0; k < h.n_edges(); ++k) {
            const HyperEdge& e = h.edges[static_cast<std::size_t>(k)];
            bool inside = std::all_of(e.vertices.begin(), e.vertices.end(),
                                      [&](int v) { return in[static_cast<std::size_t>(v)]; });
            if (inside) copies += h.copies_of_edge(k);
        }
        int cap = (h.dim - 1) * static_cast<int>(subset.size());
        if (copies > cap) out.push_back(SubgraphViolation{subset, copies, cap});
    });
    return out;
}

// Overpinned-subgraph screen: subsets V' with |V'| < d whose fully contained
// edges carry more pin points than |V'|. Any hit makes the generic rigidity
// matrix rank-deficient regardless of the counting conditions.
inline std::vector<std::vector<int>> overpinned_screen(const WeightedHypergraph& h) {
    std::vector<std::vector<int>> flagged;
    const int n = h.n_vertices();
    detail::for_each_subset(n, 1, std::min(n, h.dim - 1), [&](const std::vector<int>& subset) {
        std::vector<char> in(static_cast<std::size_t>(n), 0);
        for (int v : subset) in[static_cast<std::size_t>(v)] = 1;
        int pin_sum = 0;
        for (const HyperEdge& e : h.edges) {
            bool inside = std::all_of(e.vertices.begin(), e.vertices.end(),
                                      [&](int v) { return in[static_cast<std::size_t>(v)]; });
            if (inside) pin_sum += e.pin_dim;
        }
        if (pin_sum > static_cast<int>(subset.size())) flagged.push_back(subset);
    });
    return flagged;
}

} // namespace rigidlab
