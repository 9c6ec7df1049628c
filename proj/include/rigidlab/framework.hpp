#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rigidlab/hypergraph.hpp"
#include "rigidlab/matrix.hpp"
#include "rigidlab/prng.hpp"
#include "rigidlab/scalar.hpp"

namespace rigidlab {

// Index of one scalar constraint: equation t of pin point l on edge k.
// Constraint rows are ordered lexicographically by (k, t, l) everywhere.
struct ConstraintIndex {
    int edge = 0;
    int t = 1;
    int l = 1;
};

inline std::vector<ConstraintIndex> constraint_order(const WeightedHypergraph& h) {
    std::vector<ConstraintIndex> order;
    for (int k = 0; k < h.n_edges(); ++k) {
        const HyperEdge& e = h.edges[static_cast<std::size_t>(k)];
        for (int t = 1; t <= h.dim - e.size(); ++t)
            for (int l = 1; l <= e.pin_dim; ++l) order.push_back(ConstraintIndex{k, t, l});
    }
    return order;
}

// Column coordinate set C(t) of an edge of size s: the first s-1 coordinates
// together with coordinate s-1+t (all 1-based).
inline std::vector<int> column_set(int edge_size, int t) {
    std::vector<int> cols;
    for (int j = 1; j < edge_size; ++j) cols.push_back(j);
    cols.push_back(edge_size - 1 + t);
    return cols;
}

// A realized framework: points p with d-1 coordinates per vertex, and pins
// stored as barycentric coefficient vectors b over their edge's points, one
// vector per pin point (coefficients sum to one). Pin points are derived, so
// incidence holds exactly by construction.
template <typename T>
struct Framework {
    WeightedHypergraph h;
    std::vector<std::vector<T>> points;                  // vertex -> d-1 coords
    std::vector<std::vector<std::vector<T>>> pin_coeffs; // edge -> l -> s_k coeffs

    std::vector<T> pin_point(int k, int l) const {
        const HyperEdge& e = h.edges[static_cast<std::size_t>(k)];
        const auto& b = pin_coeffs[static_cast<std::size_t>(k)][static_cast<std::size_t>(l - 1)];
        std::vector<T> x(static_cast<std::size_t>(h.dim - 1), T(0));
        for (int i = 0; i < e.size(); ++i) {
            const auto& p = points[static_cast<std::size_t>(e.vertices[static_cast<std::size_t>(i)])];
            for (int c = 0; c < h.dim - 1; ++c)
                x[static_cast<std::size_t>(c)] += b[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(c)];
        }
        return x;
    }

    // All pin points, edge by edge; the raw-coordinate view of the pins.
    std::vector<std::vector<std::vector<T>>> pin_points() const {
        std::vector<std::vector<std::vector<T>>> out;
        for (int k = 0; k < h.n_edges(); ++k) {
            std::vector<std::vector<T>> pts;
            for (int l = 1; l <= h.edges[static_cast<std::size_t>(k)].pin_dim; ++l)
                pts.push_back(pin_point(k, l));
            out.push_back(std::move(pts));
        }
        return out;
    }
};

// Determinant coefficients of one edge's realization: for each equation index
// t and coordinate j in C(t), the determinant of the point-coordinate matrix
// restricted to C(t) with the coordinate-j column replaced by all ones.
// Coordinates outside C(t) carry a structural zero. The entry at j = s-1+t is
// the same for every t; common_det() exposes it.
template <typename T>
struct EdgeDeterminants {
    std::vector<std::vector<T>> coeff; // [t-1][j-1], structurally zero off C(t)
    int edge_size = 0;

    const T& at(int t, int j) const {
        return coeff[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(j - 1)];
    }
    T common_det() const { return at(1, edge_size); }
};

template <typename T>
EdgeDeterminants<T> edge_determinants(const WeightedHypergraph& h,
                                      const std::vector<std::vector<T>>& points, int k) {
    const HyperEdge& e = h.edges[static_cast<std::size_t>(k)];
    const int s = e.size();
    const int d = h.dim;
    EdgeDeterminants<T> out;
    out.edge_size = s;
    out.coeff.assign(static_cast<std::size_t>(d - s),
                     std::vector<T>(static_cast<std::size_t>(d - 1), T(0)));
    for (int t = 1; t <= d - s; ++t) {
        const std::vector<int> cols = column_set(s, t);
        for (int j : cols) {
            Matrix<T> m(static_cast<std::size_t>(s), static_cast<std::size_t>(s));
            for (int i = 0; i < s; ++i) {
                const auto& p =
                    points[static_cast<std::size_t>(e.vertices[static_cast<std::size_t>(i)])];
                for (int c = 0; c < s; ++c) {
                    int coord = cols[static_cast<std::size_t>(c)];
                    m(static_cast<std::size_t>(i), static_cast<std::size_t>(c)) =
                        coord == j ? T(1) : p[static_cast<std::size_t>(coord - 1)];
                }
            }
            out.coeff[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(j - 1)] =
                gauss_det(m);
        }
    }
    return out;
}

template <typename T>
EdgeDeterminants<T> edge_determinants(const Framework<T>& f, int k) {
    return edge_determinants(f.h, f.points, k);
}

// A framework is a regular sample when every determinant coefficient on its
// column set and every barycentric coefficient is non-zero. Samples violating
// this lie on the degenerate locus and are rejected by sample_generic.
template <typename T>
bool is_regular_sample(const Framework<T>& f) {
    for (int k = 0; k < f.h.n_edges(); ++k) {
        const HyperEdge& e = f.h.edges[static_cast<std::size_t>(k)];
        EdgeDeterminants<T> dets = edge_determinants(f, k);
        for (int t = 1; t <= f.h.dim - e.size(); ++t)
            for (int j : column_set(e.size(), t))
                if (scalar_is_zero(dets.at(t, j))) return false;
        for (const auto& b : f.pin_coeffs[static_cast<std::size_t>(k)])
            for (const T& bi : b)
                if (scalar_is_zero(bi)) return false;
    }
    return true;
}

// Samples a generic framework: point coordinates uniform over a large set of
// the field, barycentric coefficients with s_k - 1 free entries and the last
// one forced by the sum-to-one condition. Deterministic given the seed.
// Degenerate draws are rejected and resampled from a derived stream, up to 8
// attempts.
template <typename T>
Framework<T> sample_generic(const WeightedHypergraph& h, std::uint64_t seed) {
    if (!validate(h).valid()) throw std::invalid_argument("sample_generic: invalid hypergraph");
    for (int attempt = 0; attempt < 8; ++attempt) {
        Prng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
        Framework<T> f;
        f.h = h;
        for (int v = 0; v < h.n_vertices(); ++v) {
            std::vector<T> p;
            for (int c = 0; c < h.dim - 1; ++c) p.push_back(sample_scalar<T>(rng));
            f.points.push_back(std::move(p));
        }
        for (int k = 0; k < h.n_edges(); ++k) {
            const HyperEdge& e = h.edges[static_cast<std::size_t>(k)];
            std::vector<std::vector<T>> coeffs;
            for (int l = 0; l < e.pin_dim; ++l) {
                std::vector<T> b(static_cast<std::size_t>(e.size()));
                T sum = T(0);
                for (int i = 0; i + 1 < e.size(); ++i) {
                    b[static_cast<std::size_t>(i)] = sample_scalar<T>(rng);
                    sum += b[static_cast<std::size_t>(i)];
                }
                b[static_cast<std::size_t>(e.size() - 1)] = T(1) - sum;
                coeffs.push_back(std::move(b));
            }
            f.pin_coeffs.push_back(std::move(coeffs));
        }
        if (is_regular_sample(f)) return f;
    }
    throw std::runtime_error("sample_generic: degenerate samples after 8 attempts");
}

template <typename T>
struct Residual {
    ConstraintIndex index;
    T value;
};

// Residuals of the incidence constraints at the given points and pin points:
// det(E[., C(t)]) with E the matrix of rows p_i - x_l, one value per (k,t,l)
// in canonical order.
template <typename T>
std::vector<Residual<T>> incidence_residuals(
    const WeightedHypergraph& h, const std::vector<std::vector<T>>& points,
    const std::vector<std::vector<std::vector<T>>>& pins) {
    std::vector<Residual<T>> out;
    for (const ConstraintIndex& ci : constraint_order(h)) {
        const HyperEdge& e = h.edges[static_cast<std::size_t>(ci.edge)];
        const int s = e.size();
        const auto& x = pins[static_cast<std::size_t>(ci.edge)][static_cast<std::size_t>(ci.l - 1)];
        const std::vector<int> cols = column_set(s, ci.t);
        Matrix<T> m(static_cast<std::size_t>(s), static_cast<std::size_t>(s));
        for (int i = 0; i < s; ++i) {
            const auto& p = points[static_cast<std::size_t>(e.vertices[static_cast<std::size_t>(i)])];
            for (int c = 0; c < s; ++c) {
                int coord = cols[static_cast<std::size_t>(c)];
                m(static_cast<std::size_t>(i), static_cast<std::size_t>(c)) =
                    p[static_cast<std::size_t>(coord - 1)] - x[static_cast<std::size_t>(coord - 1)];
            }
        }
        out.push_back(Residual<T>{ci, gauss_det(m)});
    }
    return out;
}

template <typename T>
std::vector<Residual<T>> evaluate(const Framework<T>& f) {
    return incidence_residuals(f.h, f.points, f.pin_points());
}

// Constraint-system shell: pins given as raw coordinates, points unknown.
// The input form for the numerical realizer.
template <typename T>
struct PinnedShell {
    WeightedHypergraph h;
    std::vector<std::vector<std::vector<T>>> pins; // edge -> l -> d-1 coords
    std::vector<std::string> warnings;             // degeneracy notes, per edge

    int n_equations() const { return h.total_copies(); }
    int n_unknowns() const { return h.capacity(); }
};

// Wraps externally supplied pin points. Each edge must supply exactly m_k
// spanning points with d-1 coordinates. Linearly dependent spanning points
// (checked on homogeneous lifts) degrade the pin dimension below m_k - 1 and
// are reported as warnings, not errors.
template <typename T>
PinnedShell<T> import_pins(const WeightedHypergraph& h,
                           const std::vector<std::vector<std::vector<T>>>& pin_points) {
    if (!validate(h).valid()) throw std::invalid_argument("import_pins: invalid hypergraph");
    if (static_cast<int>(pin_points.size()) != h.n_edges())
        throw std::invalid_argument("import_pins: pin list count != edge count");
    PinnedShell<T> shell;
    shell.h = h;
    shell.pins = pin_points;
    for (int k = 0; k < h.n_edges(); ++k) {
        const HyperEdge& e = h.edges[static_cast<std::size_t>(k)];
        const auto& pts = pin_points[static_cast<std::size_t>(k)];
        if (static_cast<int>(pts.size()) != e.pin_dim)
            throw std::invalid_argument("import_pins: edge " + std::to_string(k + 1) +
                                        " expects " + std::to_string(e.pin_dim) + " pin points");
        for (const auto& pt : pts)
            if (static_cast<int>(pt.size()) != h.dim - 1)
                throw std::invalid_argument("import_pins: pin point of edge " +
                                            std::to_string(k + 1) + " has wrong length");
        // homogeneous lift [1 | x]; dependent rows mean a degenerate pin
        Matrix<T> lift(pts.size(), static_cast<std::size_t>(h.dim));
        for (std::size_t l = 0; l < pts.size(); ++l) {
            lift(l, 0) = T(1);
            for (int c = 0; c < h.dim - 1; ++c)
                lift(l, static_cast<std::size_t>(c + 1)) = pts[l][static_cast<std::size_t>(c)];
        }
        if (gauss_rank(lift, 1e-9) < pts.size())
            shell.warnings.push_back("edge " + std::to_string(k + 1) +
                                     ": pin points are linearly dependent; pin dimension "
                                     "degenerates below " +
                                     std::to_string(e.pin_dim - 1));
    }
    return shell;
}

template <typename T>
std::vector<Residual<T>> shell_residuals(const PinnedShell<T>& shell,
                                         const std::vector<std::vector<T>>& points) {
    return incidence_residuals(shell.h, points, shell.pins);
}

template <typename T>
PinnedShell<T> extract_shell(const Framework<T>& f) {
    return import_pins(f.h, f.pin_points());
}

} // namespace rigidlab
