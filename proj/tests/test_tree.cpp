#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "branchlab/tree.hpp"

#include <algorithm>
#include <vector>

using namespace branchlab;

TEST_CASE("degree sequence validation") {
    CHECK_THROWS(DegreeSequence({}));
    CHECK_THROWS(DegreeSequence({1}));
    CHECK_THROWS(DegreeSequence({2, 1, 2}));
    CHECK_THROWS(DegreeSequence({0}));

    DegreeSequence seq({2, 3, 2});
    CHECK(seq.depth() == 3);
    CHECK(seq.degree(0) == 2);
    CHECK(seq.degree(1) == 3);
    CHECK(seq.degree(2) == 2);
    CHECK_THROWS(seq.degree(3));

    DegreeSequence cube = DegreeSequence::constant(2, 5);
    CHECK(cube.depth() == 5);
    for (int i = 0; i < 5; ++i) CHECK(cube.degree(i) == 2);
}

TEST_CASE("level sizes multiply out") {
    DegreeSequence seq({2, 3, 2});
    CHECK(seq.level_size(0) == 1);
    CHECK(seq.level_size(1) == 2);
    CHECK(seq.level_size(2) == 6);
    CHECK(seq.level_size(3) == 12);
    CHECK_THROWS(seq.level_size(4));

    // |V_{n+1}| = |V_n| * d_n for every admissible level.
    for (int n = 0; n + 1 <= seq.depth(); ++n)
        CHECK(seq.level_size(n + 1) == seq.level_size(n) * seq.degree(n));
}

TEST_CASE("vertex basics") {
    Vertex root{};
    CHECK(root.is_root());
    CHECK(root.level() == 0);

    Vertex v{{1, 0}};
    CHECK_FALSE(v.is_root());
    CHECK(v.level() == 2);

    DegreeSequence seq({2, 2});
    CHECK_NOTHROW(check_vertex(seq, v));
    CHECK_THROWS(check_vertex(seq, Vertex{{2}}));        // letter out of range
    CHECK_THROWS(check_vertex(seq, Vertex{{0, 0, 0}}));  // deeper than the tree
    CHECK_THROWS(check_vertex(seq, Vertex{{-1}}));
}

TEST_CASE("children of a vertex") {
    DegreeSequence binary({2, 2});
    auto kids = children(binary, Vertex{});
    REQUIRE(kids.size() == 2);
    CHECK(kids[0] == Vertex{{0}});
    CHECK(kids[1] == Vertex{{1}});

    DegreeSequence mixed({3, 2});
    auto under2 = children(mixed, Vertex{{2}});
    REQUIRE(under2.size() == 2);
    CHECK(under2[0] == Vertex{{2, 0}});
    CHECK(under2[1] == Vertex{{2, 1}});

    DegreeSequence line({2});
    CHECK_THROWS(children(line, Vertex{{1}}));  // leaves have no children
}

TEST_CASE("level vertices in lexicographic order") {
    DegreeSequence binary({2, 2});
    auto level2 = level_vertices(binary, 2);
    REQUIRE(level2.size() == 4);
    CHECK(level2[0] == Vertex{{0, 0}});
    CHECK(level2[1] == Vertex{{0, 1}});
    CHECK(level2[2] == Vertex{{1, 0}});
    CHECK(level2[3] == Vertex{{1, 1}});

    DegreeSequence mixed({2, 3});
    CHECK(level_vertices(mixed, 2).size() == 6);

    auto top = level_vertices(mixed, 0);
    REQUIRE(top.size() == 1);
    CHECK(top[0].is_root());

    CHECK_THROWS(level_vertices(mixed, 3));

    // Sorted ascending in word order at every level of a mixed tree.
    DegreeSequence seq({3, 2, 2});
    for (int n = 0; n <= seq.depth(); ++n) {
        auto vs = level_vertices(seq, n);
        CHECK(std::is_sorted(vs.begin(), vs.end(),
                             [](const Vertex& a, const Vertex& b) { return a.word < b.word; }));
        CHECK((int)vs.size() == seq.level_size(n));
    }
}

TEST_CASE("prefix order between vertices") {
    CHECK(is_below(Vertex{}, Vertex{{1, 0}}));
    CHECK_FALSE(is_below(Vertex{{0}}, Vertex{{1, 0}}));
    CHECK(is_below(Vertex{{1}}, Vertex{{1}}));

    // Partial-order laws over every pair of vertices in a small tree.
    DegreeSequence t({2, 3});
    std::vector<Vertex> all;
    for (int n = 0; n <= t.depth(); ++n)
        for (const auto& v : level_vertices(t, n)) all.push_back(v);
    for (const auto& a : all) {
        CHECK(is_below(a, a));
        for (const auto& b : all) {
            if (is_below(a, b) && is_below(b, a)) CHECK(a == b);
            for (const auto& c : all)
                if (is_below(a, b) && is_below(b, c)) CHECK(is_below(a, c));
        }
    }
}

TEST_CASE("rightmost branch") {
    DegreeSequence binary({2, 2});
    auto branch = rightmost_branch(binary);
    REQUIRE(branch.size() == 3);
    CHECK(branch[0].is_root());
    CHECK(branch[1] == Vertex{{1}});
    CHECK(branch[2] == Vertex{{1, 1}});

    DegreeSequence flat({3});
    auto b2 = rightmost_branch(flat);
    REQUIRE(b2.size() == 2);
    CHECK(b2[1] == Vertex{{2}});

    DegreeSequence mixed({2, 3, 2});
    auto b3 = rightmost_branch(mixed);
    CHECK(b3.back() == Vertex{{1, 2, 1}});

    // Each entry is the maximum of its level.
    for (int n = 0; n <= mixed.depth(); ++n) {
        auto vs = level_vertices(mixed, n);
        CHECK(b3[n] == vs.back());
    }
}

TEST_CASE("rank and unrank round-trip") {
    DegreeSequence seq({2, 3, 2});
    for (int n = 0; n <= seq.depth(); ++n) {
        auto vs = level_vertices(seq, n);
        for (int r = 0; r < (int)vs.size(); ++r) {
            CHECK(vertex_rank(seq, vs[r]) == r);
            CHECK(vertex_at_rank(seq, n, r) == vs[r]);
        }
        CHECK_THROWS(vertex_at_rank(seq, n, (int)vs.size()));
    }
    CHECK_THROWS(vertex_at_rank(seq, seq.depth() + 1, 0));
}

TEST_CASE("ranks of a subtree form a contiguous block") {
    DegreeSequence seq({3, 2, 2});
    // For any vertex v and level n >= level(v), the descendants of v at level n
    // occupy consecutive ranks.
    for (int m = 0; m <= seq.depth(); ++m) {
        for (const auto& v : level_vertices(seq, m)) {
            for (int n = m; n <= seq.depth(); ++n) {
                std::vector<int> ranks;
                for (const auto& w : level_vertices(seq, n))
                    if (is_below(v, w)) ranks.push_back(vertex_rank(seq, w));
                REQUIRE_FALSE(ranks.empty());
                for (std::size_t i = 1; i < ranks.size(); ++i)
                    CHECK(ranks[i] == ranks[i - 1] + 1);
            }
        }
    }
}

TEST_CASE("degrees below a vertex") {
    DegreeSequence seq({2, 3, 2});
    auto below1 = subtree_degrees(seq, 1);
    CHECK(below1.degrees() == std::vector<int>({3, 2}));
    auto below2 = subtree_degrees(seq, 2);
    CHECK(below2.degrees() == std::vector<int>({2}));
    CHECK_THROWS(subtree_degrees(seq, 3));  // leaf: empty sequence
}
