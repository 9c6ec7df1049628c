#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "testutil.hpp"

using namespace rigidlab;

namespace {

double distance(const std::vector<std::vector<double>>& a,
                const std::vector<std::vector<double>>& b) {
    double sum = 0;
    for (std::size_t v = 0; v < a.size(); ++v)
        for (std::size_t c = 0; c < a[v].size(); ++c)
            sum += (a[v][c] - b[v][c]) * (a[v][c] - b[v][c]);
    return std::sqrt(sum);
}

std::vector<std::vector<double>> perturbed(const std::vector<std::vector<double>>& p,
                                           std::uint64_t seed, double norm) {
    Prng rng(seed);
    std::vector<std::vector<double>> out = p;
    double total = 0;
    std::vector<double> noise;
    for (const auto& point : p)
        for (std::size_t c = 0; c < point.size(); ++c) {
            double x = rng.next_double() * 2 - 1;
            noise.push_back(x);
            total += x * x;
        }
    double scale = norm / std::sqrt(total);
    std::size_t i = 0;
    for (auto& point : out)
        for (auto& c : point) c += scale * noise[i++];
    return out;
}

} // namespace

TEST_CASE("pure point pins solve to the pins themselves") {
    WeightedHypergraph h = make_hypergraph(3, 2, {{{0}, 1}, {{1}, 1}});
    std::vector<std::vector<std::vector<double>>> pins = {{{0.25, -1.5}}, {{2.0, 0.75}}};
    auto shell = import_pins(h, pins);
    auto result = solve(shell, {}, 0);
    REQUIRE(result.status == SolveStatus::Converged);
    CHECK(result.residual_norm < 1e-10);
    CHECK(std::abs(result.points[0][0] - 0.25) < 1e-8);
    CHECK(std::abs(result.points[1][1] - 0.75) < 1e-8);
    CHECK(result.locally_unique);
    CHECK(local_uniqueness(result, shell));
}

TEST_CASE("round trip from exported pins recovers the sampled realization") {
    auto h = testutil::fig2();
    auto f = sample_generic<double>(h, 41);
    auto shell = extract_shell(f);
    auto start = perturbed(f.points, 99, 1e-2);
    auto result = solve(shell, {}, 7, start);
    REQUIRE(result.status == SolveStatus::Converged);
    CHECK(result.restart_index == 0);
    CHECK(distance(result.points, f.points) < 1e-6);
    CHECK(result.locally_unique);
}

TEST_CASE("inconsistent pins diverge") {
    // one vertex forced to two different points
    WeightedHypergraph h = make_hypergraph(3, 1, {{{0}, 1}, {{0}, 1}});
    std::vector<std::vector<std::vector<double>>> pins = {{{0.0, 0.0}}, {{1.0, 0.0}}};
    auto shell = import_pins(h, pins);
    SolveConfig cfg;
    cfg.restarts = 5;
    auto result = solve(shell, cfg, 0);
    CHECK(result.status != SolveStatus::Converged);
    CHECK(result.residual_norm > cfg.tolerance);
}

TEST_CASE("an under-constrained system converges without local uniqueness") {
    auto h = testutil::fig1();
    auto f = sample_generic<double>(h, 55);
    auto shell = extract_shell(f);
    auto result = solve(shell, {}, 3, perturbed(f.points, 4, 1e-3));
    REQUIRE(result.status == SolveStatus::Converged);
    CHECK(result.jacobian_rank <= 14);
    CHECK(!result.locally_unique);
    CHECK(!local_uniqueness(result, shell));
}

TEST_CASE("solutions are stable under equation reordering") {
    auto h = testutil::fig2();
    auto f = sample_generic<double>(h, 61);
    auto shell = extract_shell(f);
    auto start = perturbed(f.points, 5, 1e-2);
    auto base = solve(shell, {}, 1, start);
    REQUIRE(base.status == SolveStatus::Converged);

    // reverse the edge order; equations permute accordingly
    WeightedHypergraph rev = h;
    std::reverse(rev.edges.begin(), rev.edges.end());
    auto pins = f.pin_points();
    std::reverse(pins.begin(), pins.end());
    auto shell_rev = import_pins(rev, pins);
    auto result = solve(shell_rev, {}, 1, start);
    REQUIRE(result.status == SolveStatus::Converged);
    CHECK(distance(result.points, base.points) < 1e-7);
}

TEST_CASE("converged results satisfy the tolerance contract") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        auto f = sample_generic<double>(testutil::fig2(), 100 + seed);
        auto result = solve(extract_shell(f), {}, seed, perturbed(f.points, seed, 1e-2));
        if (result.status == SolveStatus::Converged) CHECK(result.residual_norm < 1e-10);
    }
}
