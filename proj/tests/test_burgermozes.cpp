#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "branchlab/burgermozes.hpp"

#include <algorithm>
#include <set>
#include <vector>

using namespace branchlab;

namespace {

// Composition of ball automorphisms as vertex maps: (g . h)(v) = g(h(v)).
BallAutomorphism compose_auts(const BallAutomorphism& g, const BallAutomorphism& h) {
    BallAutomorphism out;
    out.image.resize(h.image.size());
    for (std::size_t v = 0; v < h.image.size(); ++v)
        out.image[v] = g.image[(std::size_t)h.image[v]];
    return out;
}

BallAutomorphism invert_aut(const BallAutomorphism& g) {
    BallAutomorphism out;
    out.image.resize(g.image.size());
    for (std::size_t v = 0; v < g.image.size(); ++v)
        out.image[(std::size_t)g.image[v]] = (int)v;
    return out;
}

BallAutomorphism from_perm(const Perm& p) {
    return BallAutomorphism{p.images()};
}

}  // namespace

TEST_CASE("canonical legal coloring") {
    CHECK_THROWS(make_legal_coloring(2, 1));  // degree must be at least 3
    CHECK_THROWS(make_legal_coloring(3, 0));

    ColoredBall star = make_legal_coloring(3, 1);
    CHECK(star.d == 3);
    CHECK(star.vertex_count() == 4);
    CHECK(star.shell_start == std::vector<int>({0, 1, 4}));
    CHECK(star.parent == std::vector<int>({-1, 0, 0, 0}));
    CHECK(star.parent_color == std::vector<int>({-1, 0, 1, 2}));
    CHECK(star.is_internal(0));
    CHECK_FALSE(star.is_internal(1));
    CHECK_NOTHROW(check_colored_ball(star));

    ColoredBall b2 = make_legal_coloring(3, 2);
    CHECK(b2.vertex_count() == 10);  // 1 + 3 + 6
    CHECK(b2.shell_start == std::vector<int>({0, 1, 4, 10}));
    CHECK_NOTHROW(check_colored_ball(b2));
    // Every internal vertex sees each color exactly once.
    for (int v = 0; v < b2.vertex_count(); ++v) {
        if (!b2.is_internal(v)) continue;
        std::set<int> seen;
        if (v != 0) seen.insert(b2.parent_color[(std::size_t)v]);
        for (int c : b2.children[(std::size_t)v]) seen.insert(b2.parent_color[(std::size_t)c]);
        CHECK((int)seen.size() == b2.d);
    }

    ColoredBall big = make_legal_coloring(4, 3);
    CHECK(big.vertex_count() == 1 + 4 + 12 + 36);
    CHECK_NOTHROW(check_colored_ball(big));

    // Corrupting a color is caught.
    ColoredBall broken = make_legal_coloring(3, 2);
    broken.parent_color[2] = broken.parent_color[1];
    CHECK_THROWS_AS(check_colored_ball(broken), std::invalid_argument);
}

TEST_CASE("neighbor tables invert the coloring") {
    ColoredBall ball = make_legal_coloring(3, 2);
    auto nbr = neighbor_tables(ball);
    REQUIRE((int)nbr.size() == ball.vertex_count());
    for (int v = 0; v < ball.vertex_count(); ++v) {
        for (int c = 0; c < ball.d; ++c) {
            int u = nbr[(std::size_t)v][(std::size_t)c];
            if (u < 0) continue;
            // The edge is symmetric and carries the color from both ends.
            CHECK(nbr[(std::size_t)u][(std::size_t)c] == v);
        }
        if (ball.is_internal(v)) {
            for (int c = 0; c < ball.d; ++c) CHECK(nbr[(std::size_t)v][(std::size_t)c] >= 0);
        } else {
            // Boundary vertices carry exactly the edge toward the center.
            int present = 0;
            for (int c = 0; c < ball.d; ++c) present += nbr[(std::size_t)v][(std::size_t)c] >= 0;
            CHECK(present == 1);
        }
    }
}

TEST_CASE("local actions of ball automorphisms") {
    ColoredBall star = make_legal_coloring(3, 1);

    BallAutomorphism id{{0, 1, 2, 3}};
    CHECK_NOTHROW(check_ball_automorphism(star, id));
    CHECK(local_action(star, id, 0) == Perm(3));
    CHECK_THROWS_AS((void)local_action(star, id, 1), std::invalid_argument);

    // Swapping the leaves with colors 0 and 1 reads as the transposition (0 1).
    BallAutomorphism swap01{{0, 2, 1, 3}};
    CHECK_NOTHROW(check_ball_automorphism(star, swap01));
    CHECK(local_action(star, swap01, 0) == Perm({1, 0, 2}));

    // A vertex map that breaks adjacency is rejected.
    ColoredBall b2 = make_legal_coloring(3, 2);
    BallAutomorphism bad{{0, 1, 2, 3, 6, 5, 4, 7, 8, 9}};  // tears 4 away from its parent
    CHECK_THROWS_AS(check_ball_automorphism(b2, bad), std::invalid_argument);
    BallAutomorphism not_bijective{{0, 1, 2, 3, 4, 4, 6, 7, 8, 9}};
    CHECK_THROWS_AS(check_ball_automorphism(b2, not_bijective), std::invalid_argument);
}

TEST_CASE("legality under the local group") {
    ColoredBall star = make_legal_coloring(3, 1);
    PermGroup s3 = named_group("Sym(3)");
    PermGroup trivial(3, {});

    BallAutomorphism id{{0, 1, 2, 3}};
    BallAutomorphism swap01{{0, 2, 1, 3}};
    CHECK(is_legal(star, id, s3));
    CHECK(is_legal(star, id, trivial));
    CHECK(is_legal(star, swap01, s3));
    CHECK_FALSE(is_legal(star, swap01, trivial));
    CHECK_FALSE(is_legal(star, swap01, PermGroup(3, {Perm({1, 2, 0})})));

    // Legal elements compose and invert to legal elements.
    ColoredBall b2 = make_legal_coloring(3, 2);
    PermGroup legal = enumerate_stabilizer(b2, s3);
    auto els = elements(legal);
    for (std::size_t i = 0; i < els.size(); i += 7) {
        for (std::size_t j = 0; j < els.size(); j += 11) {
            BallAutomorphism g = from_perm(els[i]), h = from_perm(els[j]);
            CHECK(is_legal(b2, compose_auts(g, h), s3));
        }
        CHECK(is_legal(b2, invert_aut(from_perm(els[i])), s3));
    }

    // Legality is monotone in the local group.
    PermGroup c3(3, {Perm({1, 2, 0})});
    PermGroup small = enumerate_stabilizer(b2, c3);
    for (const auto& e : elements(small)) CHECK(is_legal(b2, from_perm(e), s3));
}

TEST_CASE("stabilizer size formula and enumeration") {
    ColoredBall b2 = make_legal_coloring(3, 2);
    PermGroup s3 = named_group("Sym(3)");

    CHECK(stabilizer_count_formula(b2, s3) == 48);  // 6 * 2^3
    PermGroup stab = enumerate_stabilizer(b2, s3);
    CHECK(order(stab) == 48);
    // Everything enumerated is legal and fixes the center.
    for (const auto& e : elements(stab)) {
        CHECK(e(0) == 0);
        CHECK(is_legal(b2, from_perm(e), s3));
    }

    PermGroup trivial(3, {});
    CHECK(stabilizer_count_formula(b2, trivial) == 1);
    CHECK(order(enumerate_stabilizer(b2, trivial)) == 1);

    // Formula matches enumeration across local groups and radii.
    for (int radius = 1; radius <= 2; ++radius) {
        ColoredBall ball = make_legal_coloring(3, radius);
        for (const char* name : {"Sym(3)", "Alt(3)", "Cyclic(3)"}) {
            PermGroup f = named_group(name);
            CHECK(stabilizer_count_formula(ball, f) ==
                  order(enumerate_stabilizer(ball, f)));
        }
    }

    // Degree-4 sanity: |S4| * |Stab|^4 at radius 2, stabilizer order 6.
    ColoredBall d4 = make_legal_coloring(4, 2);
    CHECK(stabilizer_count_formula(d4, named_group("Sym(4)")) ==
          (u128)24 * 6 * 6 * 6 * 6);

    // The budget cuts off hopeless enumerations.
    CHECK_THROWS_AS(
        (void)enumerate_stabilizer(make_legal_coloring(3, 2), s3, Budget(10)),
        BudgetError);
}

TEST_CASE("theorem hypotheses on local groups") {
    HypothesisReport a6 = check_theorem_hypotheses(named_group("Alt(6)"));
    CHECK(a6.degree == 6);
    CHECK(a6.perfect);
    CHECK(a6.two_transitive);
    CHECK(a6.generated_by_point_stabilizers);
    CHECK(a6.point_stabilizer_perfect);
    CHECK(a6.degree_at_least_six);
    CHECK(a6.all_group_hypotheses());

    // Alt(5) satisfies everything except the degree flag and the perfect
    // point stabilizer: the stabilizer is Alt(4), which has a normal V4.
    HypothesisReport a5 = check_theorem_hypotheses(named_group("Alt(5)"));
    CHECK(a5.perfect);
    CHECK(a5.two_transitive);
    CHECK(a5.generated_by_point_stabilizers);
    CHECK_FALSE(a5.point_stabilizer_perfect);
    CHECK_FALSE(a5.degree_at_least_six);
    CHECK_FALSE(a5.all_group_hypotheses());

    HypothesisReport s3 = check_theorem_hypotheses(named_group("Sym(3)"));
    CHECK_FALSE(s3.perfect);
    CHECK(s3.two_transitive);
    CHECK_FALSE(s3.all_group_hypotheses());

    HypothesisReport a7 = check_theorem_hypotheses(named_group("Alt(7)"));
    CHECK(a7.all_group_hypotheses());
    CHECK(a7.degree_at_least_six);
}

TEST_CASE("matching the stabilizer against its tower") {
    PermGroup s3 = named_group("Sym(3)");
    TowerSpec spec = bm_tower_spec(s3, 2);
    REQUIRE(spec.depth() == 2);
    CHECK(spec.factors[0].degree == 3);
    CHECK(order(spec.factors[0]) == 6);
    CHECK(spec.factors[1].degree == 2);
    CHECK(order(spec.factors[1]) == 2);
    CHECK(tower_order(spec) == 48);

    CHECK(tower_match(s3, 1));
    CHECK(tower_match(s3, 2));
    CHECK(tower_match(named_group("Cyclic(3)"), 1));
    CHECK(tower_match(named_group("Cyclic(3)"), 2));
    CHECK(tower_match(named_group("Sym(4)"), 2));
    CHECK(tower_match(named_group("Alt(6)"), 1));

    // Deeper factors of the Alt(6) tower are the point stabilizer of order 60.
    TowerSpec alt = bm_tower_spec(named_group("Alt(6)"), 3);
    CHECK(order(alt.factors[1]) == 60);
    CHECK(alt.factors[1].degree == 5);
    CHECK(order(alt.factors[2]) == 60);
}

TEST_CASE("recoloring maps conjugate legality") {
    ColoredBall b1 = make_legal_coloring(3, 2);

    // A second legal coloring: swap the colors of the two edges below vertex 1.
    ColoredBall b2 = b1;
    REQUIRE(b2.children[1].size() == 2);
    std::swap(b2.parent_color[(std::size_t)b2.children[1][0]],
              b2.parent_color[(std::size_t)b2.children[1][1]]);
    CHECK_NOTHROW(check_colored_ball(b2));
    CHECK(b2.parent_color != b1.parent_color);

    BallAutomorphism phi = recoloring_map(b1, b2);
    CHECK_NOTHROW(check_ball_automorphism(b1, phi));

    // The identity recoloring is the identity map.
    BallAutomorphism same = recoloring_map(b1, b1);
    for (int v = 0; v < b1.vertex_count(); ++v) CHECK(same.image[(std::size_t)v] == v);

    // Conjugation by phi carries the b1-legal stabilizer onto the b2-legal one.
    PermGroup s3 = named_group("Sym(3)");
    PermGroup stab1 = enumerate_stabilizer(b1, s3);
    PermGroup stab2 = enumerate_stabilizer(b2, s3);
    CHECK(order(stab1) == order(stab2));

    BallAutomorphism phi_inv = invert_aut(phi);
    std::set<Perm> conjugated;
    for (const auto& e : elements(stab1)) {
        BallAutomorphism conj = compose_auts(phi, compose_auts(from_perm(e), phi_inv));
        CHECK(is_legal(b2, conj, s3));
        conjugated.insert(Perm(conj.image));
    }
    auto e2 = elements(stab2);
    CHECK(conjugated == std::set<Perm>(e2.begin(), e2.end()));
}
