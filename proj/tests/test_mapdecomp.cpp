#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "testutil.hpp"

using namespace rigidlab;

TEST_CASE("pebble game accepts the tight figure") {
    MultiHypergraph mh = expand(testutil::fig2());
    auto result = pebble_game(mh, 2);
    REQUIRE(result.accepted);
    CHECK(result.tight);
    REQUIRE(result.orientation);
    std::vector<int> out_degree(4, 0);
    for (int tail : result.orientation->tail) ++out_degree[static_cast<std::size_t>(tail)];
    CHECK(out_degree == std::vector<int>{2, 2, 2, 2});
}

TEST_CASE("pebble game trivial cases") {
    // single vertex with one pin of dimension 1 in d=3: two copies, both tail v
    MultiHypergraph mh = expand(make_hypergraph(3, 1, {{{0}, 1}}));
    auto result = pebble_game(mh, 2);
    REQUIRE(result.accepted);
    CHECK(result.tight);
    CHECK(result.orientation->tail == std::vector<int>{0, 0});

    // three copies on one vertex exceed k=2: the third insertion blocks
    MultiHypergraph three = expand(make_hypergraph(4, 1, {{{0}, 1}}));
    REQUIRE(three.n_copies() == 3);
    auto blocked = pebble_game(three, 2);
    CHECK(!blocked.accepted);
    REQUIRE(blocked.blocked_copy);
    CHECK(*blocked.blocked_copy == 2);
}

TEST_CASE("split into maps produces per-map bijections") {
    MultiHypergraph mh = expand(testutil::fig2());
    auto game = pebble_game(mh, 2);
    REQUIRE(game.accepted);
    MapDecomposition dec = split_into_maps(mh, *game.orientation, 2);
    CHECK(decomposition_is_valid(mh, dec, 2));

    // out-star copies get maps in enumeration order
    std::vector<int> seen(4, 0);
    for (int c = 0; c < mh.n_copies(); ++c) {
        int v = dec.tail[static_cast<std::size_t>(c)];
        CHECK(dec.map_of[static_cast<std::size_t>(c)] == seen[static_cast<std::size_t>(v)]);
        ++seen[static_cast<std::size_t>(v)];
    }

    Orientation bad{std::vector<int>(static_cast<std::size_t>(mh.n_copies()), 0)};
    CHECK_THROWS_AS(split_into_maps(mh, bad, 2), std::invalid_argument);
}

TEST_CASE("k=1 tight multi-hypergraph splits into the identity map") {
    // d=2 path: each vertex pinned once
    MultiHypergraph mh = expand(make_hypergraph(2, 2, {{{0}, 1}, {{1}, 1}}));
    auto game = pebble_game(mh, 1);
    REQUIRE(game.accepted);
    MapDecomposition dec = split_into_maps(mh, *game.orientation, 1);
    CHECK(dec.map_of == std::vector<int>{0, 0});
}

TEST_CASE("decomposition enumeration") {
    MultiHypergraph fig2 = expand(testutil::fig2());
    auto decs = enumerate_decompositions(fig2, 2);
    CHECK(!decs.empty());
    for (const auto& dec : decs) CHECK(decomposition_is_valid(fig2, dec, 2));

    // the matrix-(4) decomposition: green = {e1_{1,1}, e2_{1,1}, e3, e5_{1,1}},
    // orange = {e1_{2,1}, e2_{2,1}, e4, e5_{1,2}}, tails v1 v2 v3 v4 / v1 v2 v4 v3
    MapDecomposition figure;
    figure.map_of = {0, 1, 0, 1, 0, 1, 0, 1};
    figure.tail = {0, 0, 1, 1, 2, 3, 3, 2};
    REQUIRE(decomposition_is_valid(fig2, figure, 2));
    CHECK(std::find(decs.begin(), decs.end(), figure) != decs.end());

    // non-tight expansion has no decomposition
    CHECK(enumerate_decompositions(expand(testutil::fig1()), 3).empty());

    // two copies on a single vertex, k=2: exactly the two map swaps
    auto swaps = enumerate_decompositions(expand(make_hypergraph(3, 1, {{{0}, 1}})), 2);
    CHECK(swaps.size() == 2);

    // limit caps the stream
    CHECK(enumerate_decompositions(fig2, 2, 3).size() == 3);
}

TEST_CASE("pebble game agrees with brute-force sparsity on random instances") {
    Prng rng(2024);
    CrossValBounds bounds;
    bounds.max_vertices = 6;
    bounds.max_total = 14;
    for (int i = 0; i < 120; ++i) {
        WeightedHypergraph h = sample_hypergraph(bounds, rng);
        MultiHypergraph mh = expand(h);
        int k = h.dim - 1;
        CHECK(pebble_game(mh, k).accepted == testutil::brute_sparse(mh, k));
    }
}

TEST_CASE("pebble acceptance is independent of insertion order") {
    MultiHypergraph mh = expand(testutil::example2());
    bool base = pebble_game(mh, 3).accepted;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        std::vector<int> order(static_cast<std::size_t>(mh.n_copies()));
        std::iota(order.begin(), order.end(), 0);
        Prng rng(seed);
        rng.shuffle(order);
        CHECK(pebble_game(mh, 3, &order).accepted == base);
    }
}

TEST_CASE("count check falls back to the pebble game beyond the brute bound") {
    WeightedHypergraph h = testutil::fig2();
    auto brute = count_check(h, 12);
    auto pebble = count_check(h, 1); // force the pebble path
    CHECK(brute.sparse == pebble.sparse);
    CHECK(brute.tight == pebble.tight);
}
