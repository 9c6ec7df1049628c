#include <catch2/catch_amalgamated.hpp>

#include "testutil.hpp"

using namespace rigidlab;

TEST_CASE("validate accepts the figure hypergraphs") {
    CHECK(validate(testutil::fig1()).valid());
    CHECK(validate(testutil::fig2()).valid());
    CHECK(validate(testutil::example2()).valid());
}

TEST_CASE("validate reports rank, pin-dimension and duplicate violations") {
    WeightedHypergraph h = make_hypergraph(3, 3, {{{0, 1, 2}, 1}});
    auto report = validate(h);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].kind == Violation::Kind::RankTooLarge);

    h = make_hypergraph(3, 1, {{{0}, 2}});
    report = validate(h);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].kind == Violation::Kind::PinDimExceedsSize);

    h = make_hypergraph(3, 2, {{{0, 0}, 1}});
    report = validate(h);
    REQUIRE(!report.valid());
    CHECK(report.violations[0].kind == Violation::Kind::DuplicateVertex);
}

TEST_CASE("count check on the figures") {
    auto cc2 = count_check(testutil::fig2());
    CHECK(cc2.total == 8);
    CHECK(cc2.capacity == 8);
    CHECK(cc2.tight);
    CHECK(cc2.sparse);

    auto cc1 = count_check(testutil::fig1());
    CHECK(cc1.total == 14);
    CHECK(cc1.capacity == 18);
    CHECK(!cc1.tight);

    auto cc0 = count_check(make_hypergraph(3, 0, {}));
    CHECK(cc0.total == 0);
    CHECK(cc0.capacity == 0);
    CHECK(cc0.tight);
}

TEST_CASE("count check lists violating subgraphs") {
    // two single-vertex pins on one vertex in d=3: {v1} holds 4 copies > 2
    WeightedHypergraph h = make_hypergraph(3, 2, {{{0}, 1}, {{0}, 1}});
    auto cc = count_check(h);
    CHECK(!cc.sparse);
    REQUIRE(!cc.violating_subgraphs.empty());
    CHECK(cc.violating_subgraphs[0].vertices == std::vector<int>{0});
    CHECK(cc.violating_subgraphs[0].copies == 4);
    CHECK(cc.violating_subgraphs[0].capacity == 2);
}

TEST_CASE("overpinned screen") {
    auto flagged = overpinned_screen(testutil::example2());
    REQUIRE(flagged.size() == 1);
    CHECK(flagged[0] == std::vector<int>{0, 1, 3}); // {v1, v2, v4}

    CHECK(overpinned_screen(testutil::fig2()).empty());
    CHECK(overpinned_screen(make_hypergraph(4, 1, {{{0}, 1}})).empty());
}

TEST_CASE("expansion copy counts") {
    MultiHypergraph mh = expand(testutil::fig2());
    CHECK(mh.n_copies() == 8);
    // e5 (s=2, m=2, d=3): two copies, both t=1
    std::vector<EdgeCopy> e5;
    for (const auto& c : mh.copies)
        if (c.edge == 4) e5.push_back(c);
    REQUIRE(e5.size() == 2);
    CHECK(e5[0] == EdgeCopy{4, 1, 1});
    CHECK(e5[1] == EdgeCopy{4, 1, 2});
    // e1 (s=1, m=1, d=3): copies t=1 and t=2
    CHECK(mh.copies[0] == EdgeCopy{0, 1, 1});
    CHECK(mh.copies[1] == EdgeCopy{0, 2, 1});

    // s = d-1, m = 1: exactly one copy
    MultiHypergraph single = expand(make_hypergraph(4, 3, {{{0, 1, 2}, 1}}));
    CHECK(single.n_copies() == 1);
}

TEST_CASE("expansion size matches the counting formula on random instances") {
    Prng rng(99);
    CrossValBounds bounds;
    for (int i = 0; i < 50; ++i) {
        WeightedHypergraph h = sample_hypergraph(bounds, rng);
        REQUIRE(validate(h).valid());
        CHECK(expand(h).n_copies() == h.total_copies());
    }
}

TEST_CASE("count check is invariant under relabeling") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        for (const auto& h : {testutil::fig1(), testutil::fig2(), testutil::example2()}) {
            auto a = count_check(h);
            auto b = count_check(testutil::permuted(h, seed));
            CHECK(a.total == b.total);
            CHECK(a.capacity == b.capacity);
            CHECK(a.tight == b.tight);
            CHECK(a.sparse == b.sparse);
        }
    }
}
