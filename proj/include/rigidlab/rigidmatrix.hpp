#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rigidlab/framework.hpp"
#include "rigidlab/hypergraph.hpp"
#include "rigidlab/matrix.hpp"

namespace rigidlab {

// Rigidity matrix of a framework. Rows follow the canonical (k, t, l) order;
// columns are grouped by coordinate: group j (1-based) holds the j-th
// coordinate column of every vertex, so column = (j-1)*|V| + vertex.
template <typename T>
struct RigidityMatrix {
    Matrix<T> mat;
    std::vector<EdgeCopy> row_index; // row -> (k, t, l)
    WeightedHypergraph h;

    int n_vertices() const { return h.n_vertices(); }
    int n_groups() const { return h.dim - 1; }
    std::size_t column(int group, int vertex) const {
        return static_cast<std::size_t>((group - 1) * h.n_vertices() + vertex);
    }
    // columns of group j, in vertex order
    std::vector<std::size_t> group_columns(int group) const {
        std::vector<std::size_t> cols;
        for (int v = 0; v < h.n_vertices(); ++v) cols.push_back(column(group, v));
        return cols;
    }
};

// Assembles the simplified rigidity matrix: row (k,t,l) carries the entry
// D^k_{t,j} * b^{k,l}_i in the column of vertex v^k_i and coordinate j, and
// zero elsewhere. Degenerate realizations (vanishing determinant
// coefficients) still assemble; they simply produce structurally deficient
// rows. Generic sampling rejects them upstream.
template <typename T>
RigidityMatrix<T> assemble(const Framework<T>& f) {
    const WeightedHypergraph& h = f.h;
    RigidityMatrix<T> rm;
    rm.h = h;
    const int n = h.n_vertices();
    rm.mat = Matrix<T>(static_cast<std::size_t>(h.total_copies()),
                       static_cast<std::size_t>((h.dim - 1) * n));
    std::size_t row = 0;
    for (int k = 0; k < h.n_edges(); ++k) {
        const HyperEdge& e = h.edges[static_cast<std::size_t>(k)];
        const EdgeDeterminants<T> dets = edge_determinants(f, k);
        for (int t = 1; t <= h.dim - e.size(); ++t) {
            for (int l = 1; l <= e.pin_dim; ++l) {
                const auto& b =
                    f.pin_coeffs[static_cast<std::size_t>(k)][static_cast<std::size_t>(l - 1)];
                for (int i = 0; i < e.size(); ++i) {
                    int v = e.vertices[static_cast<std::size_t>(i)];
                    for (int j : column_set(e.size(), t))
                        rm.mat(row, rm.column(j, v)) = dets.at(t, j) * b[static_cast<std::size_t>(i)];
                }
                rm.row_index.push_back(EdgeCopy{k, t, l});
                ++row;
            }
        }
    }
    return rm;
}

// The unsimplified Jacobian of the incidence constraints with respect to the
// point coordinates, by cofactor differentiation of each determinant. Same
// row order and column layout as assemble(); computed from pins as raw
// coordinates, so it applies both to sampled frameworks and to shells at an
// arbitrary evaluation point.
template <typename T>
Matrix<T> incidence_jacobian(const WeightedHypergraph& h,
                             const std::vector<std::vector<T>>& points,
                             const std::vector<std::vector<std::vector<T>>>& pins) {
    const int n = h.n_vertices();
    Matrix<T> jac(static_cast<std::size_t>(h.total_copies()),
                  static_cast<std::size_t>((h.dim - 1) * n));
    std::size_t row = 0;
    for (const ConstraintIndex& ci : constraint_order(h)) {
        const HyperEdge& e = h.edges[static_cast<std::size_t>(ci.edge)];
        const int s = e.size();
        const auto& x = pins[static_cast<std::size_t>(ci.edge)][static_cast<std::size_t>(ci.l - 1)];
        const std::vector<int> cols = column_set(s, ci.t);
        Matrix<T> em(static_cast<std::size_t>(s), static_cast<std::size_t>(s));
        for (int i = 0; i < s; ++i) {
            const auto& p = points[static_cast<std::size_t>(e.vertices[static_cast<std::size_t>(i)])];
            for (int c = 0; c < s; ++c) {
                int coord = cols[static_cast<std::size_t>(c)];
                em(static_cast<std::size_t>(i), static_cast<std::size_t>(c)) =
                    p[static_cast<std::size_t>(coord - 1)] - x[static_cast<std::size_t>(coord - 1)];
            }
        }
        // d det / d p_{i,coord} = cofactor at (i, position of coord in C(t))
        for (int i = 0; i < s; ++i) {
            for (int c = 0; c < s; ++c) {
                Matrix<T> minor(static_cast<std::size_t>(s - 1), static_cast<std::size_t>(s - 1));
                for (int a = 0, ma = 0; a < s; ++a) {
                    if (a == i) continue;
                    for (int bcol = 0, mb = 0; bcol < s; ++bcol) {
                        if (bcol == c) continue;
                        minor(static_cast<std::size_t>(ma), static_cast<std::size_t>(mb)) =
                            em(static_cast<std::size_t>(a), static_cast<std::size_t>(bcol));
                        ++mb;
                    }
                    ++ma;
                }
                T cof = gauss_det(minor);
                if ((i + c) % 2 != 0) cof = -cof;
                int coord = cols[static_cast<std::size_t>(c)];
                int v = e.vertices[static_cast<std::size_t>(i)];
                jac(row, static_cast<std::size_t>((coord - 1) * n + v)) = cof;
            }
        }
        ++row;
    }
    return jac;
}

template <typename T>
Matrix<T> direct_jacobian(const Framework<T>& f) {
    return incidence_jacobian(f.h, f.points, f.pin_points());
}

template <typename T>
Matrix<T> shell_jacobian(const PinnedShell<T>& shell, const std::vector<std::vector<T>>& points) {
    return incidence_jacobian(shell.h, points, shell.pins);
}

struct RankReport {
    int rank = 0;
    int rows = 0;
    int cols = 0;
    bool full_rank = false; // rank == min(rows, cols)
    int flex_dim = 0;       // cols - rank, the dimension of infinitesimal motions
    int trials = 0;
    double per_trial_error_bound = 0.0; // Schwartz-Zippel underestimate probability
};

namespace detail {

template <typename T>
std::size_t exact_rank(const Matrix<T>& m) {
    if constexpr (std::is_same_v<T, Rational>) {
        return bareiss_rank(m);
    } else {
        return gauss_rank(m);
    }
}

inline double schwartz_zippel_bound(const WeightedHypergraph& h, double field_size) {
    // entry (k,t,l) has total degree <= s_k in the points plus 1 in the
    // barycentric coefficients; a maximal minor multiplies one entry per row
    double degree = 0;
    for (int k = 0; k < h.n_edges(); ++k)
        degree += static_cast<double>(h.copies_of_edge(k)) *
                  static_cast<double>(h.edges[static_cast<std::size_t>(k)].size() + 1);
    return degree / field_size;
}

} // namespace detail

// Generic rank of the rigidity matrix: the maximum rank over `trials`
// independently sampled frameworks, computed by exact elimination. The rank
// at a random sample can only underestimate the generic value; the report
// carries the per-trial Schwartz-Zippel bound on that event.
template <typename T>
RankReport generic_rank(const WeightedHypergraph& h, int trials = 3, std::uint64_t seed = 0) {
    if (trials < 1) throw std::invalid_argument("generic_rank: trials must be >= 1");
    RankReport report;
    report.rows = h.total_copies();
    report.cols = h.capacity();
    report.trials = trials;
    double field_size = std::is_same_v<T, Zp> ? static_cast<double>(Zp::modulus)
                                              : static_cast<double>((1 << 21) + 1);
    report.per_trial_error_bound = detail::schwartz_zippel_bound(h, field_size);
    for (int trial = 0; trial < trials; ++trial) {
        Framework<T> f = sample_generic<T>(h, derive_seed(seed, static_cast<std::uint64_t>(trial)));
        RigidityMatrix<T> rm = assemble(f);
        report.rank = std::max(report.rank, static_cast<int>(detail::exact_rank(rm.mat)));
    }
    report.full_rank = report.rank == std::min(report.rows, report.cols);
    report.flex_dim = report.cols - report.rank;
    return report;
}

// Verifies the block pattern of an assembled matrix: in column group
// j >= s_k a row (k,t,l) must vanish unless j = s_k - 1 + t; in groups
// j <= s_k - 1 and in the matching group the entries at the edge's vertices
// must be non-zero; all off-edge entries must vanish.
template <typename T>
bool row_pattern_check(const RigidityMatrix<T>& rm) {
    const WeightedHypergraph& h = rm.h;
    for (std::size_t r = 0; r < rm.mat.rows(); ++r) {
        const EdgeCopy& copy = rm.row_index[r];
        const HyperEdge& e = h.edges[static_cast<std::size_t>(copy.edge)];
        const int s = e.size();
        std::vector<char> on_edge(static_cast<std::size_t>(h.n_vertices()), 0);
        for (int v : e.vertices) on_edge[static_cast<std::size_t>(v)] = 1;
        for (int j = 1; j <= h.dim - 1; ++j) {
            const bool live_group = j <= s - 1 || j == s - 1 + copy.t;
            for (int v = 0; v < h.n_vertices(); ++v) {
                const T& entry = rm.mat(r, rm.column(j, v));
                if (!on_edge[static_cast<std::size_t>(v)] || !live_group) {
                    if (!scalar_is_zero(entry)) return false;
                } else if (scalar_is_zero(entry)) {
                    return false;
                }
            }
        }
    }
    return true;
}

} // namespace rigidlab
