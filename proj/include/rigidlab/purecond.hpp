#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "rigidlab/framework.hpp"
#include "rigidlab/mapdecomp.hpp"
#include "rigidlab/matrix.hpp"
#include "rigidlab/rigidmatrix.hpp"

namespace rigidlab {

namespace detail {

// Parity of the permutation given by concatenating the blocks of a row
// partition in ascending order within each block.
inline int partition_sign(const std::vector<std::vector<std::size_t>>& blocks) {
    std::vector<std::size_t> seq;
    for (const auto& b : blocks) seq.insert(seq.end(), b.begin(), b.end());
    int inversions = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j)
            if (seq[i] > seq[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

// Does the block admit a tail bijection onto the vertices, i.e. is it a
// spanning map-graph? Bipartite matching by augmenting paths.
template <typename T>
bool block_is_map(const RigidityMatrix<T>& rm, const std::vector<std::size_t>& rows) {
    const int n = rm.h.n_vertices();
    if (static_cast<int>(rows.size()) != n) return false;
    std::vector<int> match_vertex(static_cast<std::size_t>(n), -1);
    auto augment = [&](auto&& self, std::size_t r, std::vector<char>& seen) -> bool {
        const EdgeCopy& copy = rm.row_index[rows[r]];
        for (int v : rm.h.edges[static_cast<std::size_t>(copy.edge)].vertices) {
            if (seen[static_cast<std::size_t>(v)]) continue;
            seen[static_cast<std::size_t>(v)] = 1;
            if (match_vertex[static_cast<std::size_t>(v)] == -1 ||
                self(self, static_cast<std::size_t>(match_vertex[static_cast<std::size_t>(v)]),
                     seen)) {
                match_vertex[static_cast<std::size_t>(v)] = static_cast<int>(r);
                return true;
            }
        }
        return false;
    };
    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        if (!augment(augment, r, seen)) return false;
    }
    return true;
}

} // namespace detail

template <typename T>
struct LaplaceReport {
    T determinant = T(0);   // by elimination
    T partition_sum = T(0); // by full ordered-partition enumeration
    bool equal = false;
    std::uint64_t partitions = 0;
    std::uint64_t map_partitions = 0;  // partitions whose blocks are all maps
    bool nonmap_terms_zero = true;     // every non-map partition term vanished
};

// Verifies the Laplace expansion of det(M) over all ordered partitions of the
// rows into d-1 blocks of |V| rows, block j paired with column group j.
// Exact arithmetic; the partition count is multinomial in the row count, so
// M must have at most `limit_rows` rows.
template <typename T>
LaplaceReport<T> laplace_verify(const RigidityMatrix<T>& rm, int limit_rows = 10) {
    static_assert(is_exact_field_v<T>);
    const std::size_t n = rm.mat.rows();
    if (n != rm.mat.cols()) throw std::invalid_argument("laplace_verify: matrix not square");
    if (static_cast<int>(n) > limit_rows)
        throw std::invalid_argument("laplace_verify: row count exceeds limit");
    const int groups = rm.n_groups();
    const int block_size = rm.n_vertices();

    LaplaceReport<T> report;
    report.determinant = gauss_det(rm.mat);

    std::vector<std::vector<std::size_t>> blocks(static_cast<std::size_t>(groups));
    auto rec = [&](auto&& self, std::size_t row) -> void {
        if (row == n) {
            ++report.partitions;
            T term = T(detail::partition_sign(blocks));
            for (int j = 1; j <= groups; ++j) {
                const auto& rows = blocks[static_cast<std::size_t>(j - 1)];
                std::vector<std::size_t> cols = rm.group_columns(j);
                term = term * gauss_det(rm.mat.submatrix(rows, cols));
                if (scalar_is_zero(term)) break;
            }
            report.partition_sum += term;
            bool all_maps = true;
            for (const auto& rows : blocks)
                if (!detail::block_is_map(rm, rows)) {
                    all_maps = false;
                    break;
                }
            if (all_maps)
                ++report.map_partitions;
            else if (!scalar_is_zero(term))
                report.nonmap_terms_zero = false;
            return;
        }
        for (int j = 0; j < groups; ++j) {
            if (static_cast<int>(blocks[static_cast<std::size_t>(j)].size()) == block_size) continue;
            blocks[static_cast<std::size_t>(j)].push_back(row);
            self(self, row + 1);
            blocks[static_cast<std::size_t>(j)].pop_back();
        }
    };
    rec(rec, 0);
    report.equal = report.determinant == report.partition_sum;
    return report;
}

// Evaluates the map-decomposition-restricted Laplace sum: over each distinct
// row partition arising from a decomposition into maps, the term factors into
// the product of determinant coefficients of its rows and the determinant of
// the barycentric-pattern submatrix. Exactly det(M) when the decomposition
// stream is complete, since every other partition term vanishes.
template <typename T>
T map_partition_sum(const Framework<T>& f, const std::vector<MapDecomposition>& decomps) {
    static_assert(is_exact_field_v<T>);
    const WeightedHypergraph& h = f.h;
    const int n = h.n_vertices();
    const int groups = h.dim - 1;
    const std::vector<ConstraintIndex> order = constraint_order(h);
    const std::size_t rows = order.size();
    if (static_cast<int>(rows) != groups * n)
        throw std::invalid_argument("map_partition_sum: system is not square");

    std::vector<EdgeDeterminants<T>> dets;
    for (int k = 0; k < h.n_edges(); ++k) dets.push_back(edge_determinants(f, k));

    std::set<std::vector<int>> seen;
    T total = T(0);
    for (const MapDecomposition& dec : decomps) {
        if (!seen.insert(dec.map_of).second) continue; // same row partition
        std::vector<std::vector<std::size_t>> blocks(static_cast<std::size_t>(groups));
        for (std::size_t r = 0; r < rows; ++r)
            blocks[static_cast<std::size_t>(dec.map_of[r])].push_back(r);
        T term = T(detail::partition_sign(blocks));
        for (int j = 1; j <= groups && !scalar_is_zero(term); ++j) {
            const auto& block = blocks[static_cast<std::size_t>(j - 1)];
            // factored coefficients of the block's rows in this column group
            for (std::size_t r : block)
                term = term * dets[static_cast<std::size_t>(order[r].edge)].coeff
                           [static_cast<std::size_t>(order[r].t - 1)][static_cast<std::size_t>(j - 1)];
            if (scalar_is_zero(term)) break;
            Matrix<T> pattern(block.size(), static_cast<std::size_t>(n));
            for (std::size_t i = 0; i < block.size(); ++i) {
                const ConstraintIndex& ci = order[block[i]];
                const HyperEdge& e = h.edges[static_cast<std::size_t>(ci.edge)];
                const auto& b = f.pin_coeffs[static_cast<std::size_t>(ci.edge)]
                                            [static_cast<std::size_t>(ci.l - 1)];
                for (int v = 0; v < e.size(); ++v)
                    pattern(i, static_cast<std::size_t>(e.vertices[static_cast<std::size_t>(v)])) =
                        b[static_cast<std::size_t>(v)];
            }
            term = term * gauss_det(pattern);
        }
        total += term;
    }
    return total;
}

// det(M) at one framework; the pure condition evaluated at a point.
template <typename T>
T pure_condition_value(const Framework<T>& f) {
    static_assert(is_exact_field_v<T>);
    RigidityMatrix<T> rm = assemble(f);
    if (rm.mat.rows() != rm.mat.cols())
        throw std::invalid_argument("pure_condition_value: system is not square");
    if constexpr (std::is_same_v<T, Rational>) {
        return bareiss_det(rm.mat);
    } else {
        return gauss_det(rm.mat);
    }
}

template <typename T>
struct VanishingReport {
    bool always_zero = false;
    int samples = 0;
    std::vector<int> nonzero_samples; // indices of witnesses against vanishing
    double per_sample_error_bound = 0.0;
};

// Evaluates the pure condition at independently sampled generic frameworks.
// All-zero across samples is strong (Schwartz-Zippel bounded) evidence that
// the polynomial vanishes identically.
template <typename T>
VanishingReport<T> vanishing_probe(const WeightedHypergraph& h, int samples,
                                   std::uint64_t seed = 0) {
    static_assert(is_exact_field_v<T>);
    if (h.total_copies() != h.capacity())
        throw std::invalid_argument("vanishing_probe: system is not square");
    VanishingReport<T> report;
    report.samples = samples;
    double field_size = std::is_same_v<T, Zp> ? static_cast<double>(Zp::modulus)
                                              : static_cast<double>((1 << 21) + 1);
    report.per_sample_error_bound = detail::schwartz_zippel_bound(h, field_size);
    for (int i = 0; i < samples; ++i) {
        Framework<T> f = sample_generic<T>(h, derive_seed(seed, static_cast<std::uint64_t>(i)));
        if (!scalar_is_zero(pure_condition_value(f))) report.nonzero_samples.push_back(i);
    }
    report.always_zero = report.nonzero_samples.empty();
    return report;
}

} // namespace rigidlab
