#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "rigidlab/framework.hpp"
#include "rigidlab/prng.hpp"
#include "rigidlab/rigidmatrix.hpp"

namespace rigidlab {

struct SolveConfig {
    int max_iters = 200;
    double tolerance = 1e-10;    // residual 2-norm for convergence
    double damping = 0.5;        // backtracking factor for the line search
    int restarts = 20;
    double step_bound = 1e6;     // reject steps larger than this (blow-up guard)
    double rank_threshold = 1e-8; // relative pivot threshold for rank at the solution
};

enum class SolveStatus { Converged, Diverged, SingularJacobian };

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Converged: return "Converged";
        case SolveStatus::Diverged: return "Diverged";
        case SolveStatus::SingularJacobian: return "SingularJacobian";
    }
    return "?";
}

struct SolveResult {
    SolveStatus status = SolveStatus::Diverged;
    std::vector<std::vector<double>> points; // best realization found
    double residual_norm = 0.0;
    int jacobian_rank = 0; // numerical rank of the Jacobian at the result
    bool locally_unique = false;
    int restart_index = -1; // which restart converged
    int iterations = 0;
};

namespace detail {

inline Eigen::VectorXd flatten(const std::vector<std::vector<double>>& points) {
    std::size_t n = 0;
    for (const auto& p : points) n += p.size();
    Eigen::VectorXd x(static_cast<Eigen::Index>(n));
    Eigen::Index i = 0;
    for (const auto& p : points)
        for (double c : p) x[i++] = c;
    return x;
}

inline std::vector<std::vector<double>> unflatten(const Eigen::VectorXd& x, int n_vertices,
                                                  int coords) {
    std::vector<std::vector<double>> points(static_cast<std::size_t>(n_vertices),
                                            std::vector<double>(static_cast<std::size_t>(coords)));
    for (int v = 0; v < n_vertices; ++v)
        for (int c = 0; c < coords; ++c)
            points[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)] =
                x[v * coords + c];
    return points;
}

inline Eigen::VectorXd residual_vector(const PinnedShell<double>& shell,
                                       const std::vector<std::vector<double>>& points) {
    std::vector<Residual<double>> res = shell_residuals(shell, points);
    Eigen::VectorXd r(static_cast<Eigen::Index>(res.size()));
    for (std::size_t i = 0; i < res.size(); ++i) r[static_cast<Eigen::Index>(i)] = res[i].value;
    return r;
}

inline Eigen::MatrixXd jacobian_eigen(const PinnedShell<double>& shell,
                                      const std::vector<std::vector<double>>& points) {
    Matrix<double> jac = shell_jacobian(shell, points);
    // reorder columns from group-major to vertex-major to match the flattened
    // unknown vector
    const int n = shell.h.n_vertices();
    const int coords = shell.h.dim - 1;
    Eigen::MatrixXd out(static_cast<Eigen::Index>(jac.rows()),
                        static_cast<Eigen::Index>(jac.cols()));
    for (std::size_t r = 0; r < jac.rows(); ++r)
        for (int v = 0; v < n; ++v)
            for (int c = 0; c < coords; ++c)
                out(static_cast<Eigen::Index>(r), v * coords + c) =
                    jac(r, static_cast<std::size_t>(c * n + v));
    return out;
}

inline double pin_scale(const PinnedShell<double>& shell) {
    double scale = 1.0;
    for (const auto& edge_pins : shell.pins)
        for (const auto& pt : edge_pins)
            for (double c : pt) scale = std::max(scale, std::abs(c));
    return scale;
}

} // namespace detail

// Numerical rank of the constraint Jacobian at a realization, by elimination
// with a relative pivot threshold.
inline int jacobian_rank_at(const PinnedShell<double>& shell,
                            const std::vector<std::vector<double>>& points,
                            double rel_threshold = 1e-8) {
    return static_cast<int>(gauss_rank(shell_jacobian(shell, points), rel_threshold));
}

// Damped Newton with least-squares steps and seeded multi-start. Restart 0
// uses the caller's initial realization when given; later restarts draw
// random starts scaled to the pin coordinates. The first restart to converge
// wins, so results are deterministic given the seed.
inline SolveResult solve(const PinnedShell<double>& shell, const SolveConfig& cfg = {},
                         std::uint64_t seed = 0,
                         const std::optional<std::vector<std::vector<double>>>& initial = {}) {
    const int n = shell.h.n_vertices();
    const int coords = shell.h.dim - 1;
    const double scale = detail::pin_scale(shell);

    SolveResult best;
    best.residual_norm = std::numeric_limits<double>::infinity();
    int singular_restarts = 0;

    for (int restart = 0; restart < cfg.restarts; ++restart) {
        Eigen::VectorXd x;
        if (restart == 0 && initial) {
            x = detail::flatten(*initial);
        } else {
            Prng rng(derive_seed(seed, static_cast<std::uint64_t>(restart)));
            x.resize(n * coords);
            for (int i = 0; i < n * coords; ++i)
                x[i] = (rng.next_double() * 2.0 - 1.0) * 2.0 * scale;
        }

        auto points = detail::unflatten(x, n, coords);
        Eigen::VectorXd r = detail::residual_vector(shell, points);
        bool singular = false;
        int iter = 0;
        for (; iter < cfg.max_iters && r.norm() >= cfg.tolerance; ++iter) {
            Eigen::MatrixXd jac = detail::jacobian_eigen(shell, points);
            Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(jac);
            Eigen::VectorXd step = cod.solve(-r);
            if (!step.allFinite() || step.norm() > cfg.step_bound || cod.rank() == 0) {
                singular = true;
                break;
            }
            // backtracking line search on the residual norm
            double alpha = 1.0;
            bool improved = false;
            for (int half = 0; half < 40; ++half) {
                auto trial_points = detail::unflatten(x + alpha * step, n, coords);
                Eigen::VectorXd trial_r = detail::residual_vector(shell, trial_points);
                if (trial_r.norm() <= (1.0 - 1e-4 * alpha) * r.norm()) {
                    x += alpha * step;
                    points = std::move(trial_points);
                    r = std::move(trial_r);
                    improved = true;
                    break;
                }
                alpha *= cfg.damping;
            }
            if (!improved) break; // stalled; next restart
        }

        if (singular) ++singular_restarts;
        if (r.norm() < best.residual_norm) {
            best.residual_norm = r.norm();
            best.points = points;
            best.iterations = iter;
            best.restart_index = restart;
        }
        if (r.norm() < cfg.tolerance) {
            best.status = SolveStatus::Converged;
            best.jacobian_rank = jacobian_rank_at(shell, points, cfg.rank_threshold);
            best.locally_unique = best.jacobian_rank == n * coords;
            return best;
        }
    }
    best.status = singular_restarts == cfg.restarts ? SolveStatus::SingularJacobian
                                                    : SolveStatus::Diverged;
    if (!best.points.empty())
        best.jacobian_rank = jacobian_rank_at(shell, best.points, cfg.rank_threshold);
    return best;
}

// A converged realization is locally unique exactly when the Jacobian there
// has full column rank: no infinitesimal motion remains.
inline bool local_uniqueness(const SolveResult& result, const PinnedShell<double>& shell,
                             double rel_threshold = 1e-8) {
    if (result.status != SolveStatus::Converged) return false;
    return jacobian_rank_at(shell, result.points, rel_threshold) ==
           shell.h.n_vertices() * (shell.h.dim - 1);
}

} // namespace rigidlab
