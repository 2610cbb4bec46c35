#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "branchlab/permgroup.hpp"
#include "branchlab/selfsimilar.hpp"

#include <random>
#include <set>
#include <string>
#include <vector>

using namespace branchlab;

namespace {

Word random_word(std::mt19937_64& rng, int len) {
    static const std::vector<std::string> names{"a", "b", "c", "d"};
    Word w;
    for (int i = 0; i < len; ++i)
        w.letters.push_back({names[rng() % 4], (rng() % 2) ? 1 : -1});
    return w;
}

}  // namespace

TEST_CASE("word parsing") {
    std::set<std::string> names{"a", "b", "c", "d"};
    Word w = parse_word("a b^-1 c", names);
    REQUIRE(w.letters.size() == 3);
    CHECK(w.letters[0] == WordLetter{"a", 1});
    CHECK(w.letters[1] == WordLetter{"b", -1});
    CHECK(w.letters[2] == WordLetter{"c", 1});

    Word compact = parse_word("abab", names);
    REQUIRE(compact.letters.size() == 4);
    CHECK(compact.letters[0].name == "a");
    CHECK(compact.letters[3].name == "b");

    CHECK(parse_word("", names).letters.empty());
    CHECK(parse_word("  ", names).letters.empty());
    CHECK_THROWS(parse_word("a z", names));
    CHECK_THROWS(parse_word("az", names));
    CHECK_THROWS(parse_word("a^x", names));

    // Multi-letter generator names survive when declared.
    std::set<std::string> longnames{"ab", "c"};
    Word lw = parse_word("ab c ab^2", longnames);
    REQUIRE(lw.letters.size() == 3);
    CHECK(lw.letters[0] == WordLetter{"ab", 1});
    CHECK(lw.letters[2] == WordLetter{"ab", 2});
}

TEST_CASE("recursion table shape") {
    RecursionTable t = grigorchuk_table();
    CHECK(t.degree() == 2);
    CHECK(t.names() == std::set<std::string>({"a", "b", "c", "d"}));

    const auto& a = t.rule("a");
    CHECK(a.root == Perm({1, 0}));
    CHECK(a.sections[0].letters.empty());
    CHECK(a.sections[1].letters.empty());

    const auto& b = t.rule("b");
    CHECK(b.root.is_identity());
    REQUIRE(b.sections.size() == 2);
    CHECK(b.sections[0] == Word{{{"a", 1}}});
    CHECK(b.sections[1] == Word{{{"c", 1}}});

    const auto& d = t.rule("d");
    CHECK(d.sections[0].letters.empty());
    CHECK(d.sections[1] == Word{{{"b", 1}}});

    CHECK_THROWS(t.rule("z"));

    // Malformed tables are rejected: wrong section count, undefined name,
    // wrong root degree.
    CHECK_THROWS(RecursionTable(2, {{"g", {Perm(2), {Word{}}}}}));
    CHECK_THROWS(RecursionTable(2, {{"g", {Perm(2), {Word{{{"h", 1}}}, Word{}}}}}));
    CHECK_THROWS(RecursionTable(2, {{"g", {Perm(3), {Word{}, Word{}}}}}));
}

TEST_CASE("evaluation basics") {
    RecursionTable t = grigorchuk_table();
    CHECK(evaluate(t, "", 3) == Portrait(DegreeSequence::constant(2, 3)));
    CHECK(evaluate(t, "aa", 4) == Portrait(DegreeSequence::constant(2, 4)));
    CHECK_THROWS(evaluate(t, "a", 0));

    // Involutions and the b c d relations, at several depths.
    for (int depth = 1; depth <= 5; ++depth) {
        Portrait id(DegreeSequence::constant(2, depth));
        for (const char* g : {"a", "b", "c", "d"}) CHECK(evaluate(t, std::string(g) + g, depth) == id);
        CHECK(evaluate(t, "bc", depth) == evaluate(t, "d", depth));
        CHECK(evaluate(t, "cd", depth) == evaluate(t, "b", depth));
        CHECK(evaluate(t, "bd", depth) == evaluate(t, "c", depth));
        // Negative exponents invert: each generator is an involution.
        CHECK(evaluate(t, "b^-1", depth) == evaluate(t, "b", depth));
    }
}

TEST_CASE("evaluation is a homomorphism") {
    RecursionTable t = grigorchuk_table();
    std::mt19937_64 rng(97);
    for (int trial = 0; trial < 40; ++trial) {
        int depth = 1 + (int)(rng() % 5);
        Word w1 = random_word(rng, 1 + (int)(rng() % 6));
        Word w2 = random_word(rng, 1 + (int)(rng() % 6));
        Word cat{w1.letters};
        cat.letters.insert(cat.letters.end(), w2.letters.begin(), w2.letters.end());
        CHECK(evaluate(t, cat, depth) ==
              compose(evaluate(t, w1, depth), evaluate(t, w2, depth)));
    }
}

TEST_CASE("truncation commutes with evaluation") {
    RecursionTable t = grigorchuk_table();
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 30; ++trial) {
        Word w = random_word(rng, 1 + (int)(rng() % 8));
        Portrait deep = evaluate(t, w, 5);
        for (int m = 1; m < 5; ++m) CHECK(truncate(deep, m) == evaluate(t, w, m));
    }
}

TEST_CASE("ab has order sixteen at depth five") {
    RecursionTable t = grigorchuk_table();
    CHECK(perm_order(leaf_action(evaluate(t, "ab", 5))) == 16);
    // Shallower truncations have smaller orders (they are quotients).
    CHECK(perm_order(leaf_action(evaluate(t, "ab", 1))) == 2);
    CHECK(perm_order(leaf_action(evaluate(t, "ab", 2))) == 4);
    CHECK(perm_order(leaf_action(evaluate(t, "ab", 3))) == 8);
    CHECK(perm_order(leaf_action(evaluate(t, "ab", 4))) == 8);
}

TEST_CASE("finite quotient orders") {
    RecursionTable t = grigorchuk_table();
    CHECK(order(quotient_group(t, 1)) == 2);
    CHECK(order(quotient_group(t, 2)) == 8);
    CHECK(order(quotient_group(t, 3)) == 128);
    CHECK(order(quotient_group(t, 4)) == 4096);
    CHECK(order(quotient_group(t, 5)) == (u128)1 << 22);

    // Depth 3 again by plain closure, independent of stabilizer chains.
    PortraitGroup gens = quotient_portraits(t, 3);
    std::set<Perm> closure;
    std::vector<Perm> frontier{Perm(8)};
    closure.insert(Perm(8));
    while (!frontier.empty()) {
        std::vector<Perm> next;
        for (const auto& f : frontier)
            for (const auto& g : gens.gens) {
                Perm prod = leaf_action(g) * f;
                if (closure.insert(prod).second) next.push_back(prod);
            }
        frontier = std::move(next);
    }
    CHECK(closure.size() == 128);

    // Every quotient is a 2-group.
    for (int depth = 1; depth <= 6; ++depth) {
        auto exps = order_exponents(quotient_group(t, depth));
        REQUIRE(exps.size() == 1);
        CHECK(exps.begin()->first == 2);
    }
}

TEST_CASE("quotient portraits come in name order") {
    RecursionTable t = grigorchuk_table();
    PortraitGroup q = quotient_portraits(t, 3);
    REQUIRE(q.gens.size() == 4);
    CHECK(q.gens[0] == evaluate(t, "a", 3));
    CHECK(q.gens[1] == evaluate(t, "b", 3));
    CHECK(q.gens[2] == evaluate(t, "c", 3));
    CHECK(q.gens[3] == evaluate(t, "d", 3));
}

TEST_CASE("the element x") {
    RecursionTable t = grigorchuk_table();
    Portrait x2 = element_x(2);
    CHECK(is_derangement_of_level(x2, 2));
    CHECK(support_level(x2, 1).empty());  // trivial root permutation

    Portrait x5 = element_x(5);
    CHECK(section(x5, Vertex{{0}}) == evaluate(t, "ca", 4));
    CHECK(section(x5, Vertex{{1}}) == evaluate(t, "ac", 4));
    CHECK(truncate(x5, 2) == x2);

    // x is the evaluation of the conjugated word (abab)... check against the
    // quotient: x's leaf action lies in the depth-5 quotient group.
    StabilizerChain chain(32, [&] {
        std::vector<Perm> gs;
        for (const auto& g : quotient_portraits(t, 5).gens) gs.push_back(leaf_action(g));
        return gs;
    }());
    CHECK(chain.contains(leaf_action(x5)));
    // At depth one both sections die, leaving the identity.
    CHECK(element_x(1) == Portrait(DegreeSequence::constant(2, 1)));
    CHECK_THROWS(element_x(0));
}

TEST_CASE("K generators embed and nest") {
    RecursionTable t = grigorchuk_table();
    auto kg = k_generators(4);
    REQUIRE(kg.size() == 3);
    CHECK(kg[0] == element_x(4));
    // (x, 1) and (1, x): supported in one subtree each.
    DegreeSequence seq = DegreeSequence::constant(2, 4);
    CHECK(kg[1] == embed(element_x(3), Vertex{{0}}, seq));
    CHECK(kg[2] == embed(element_x(3), Vertex{{1}}, seq));

    // K1 = K x K: six generators, each inside K's leaf-action group.
    auto k1 = k1_generators(4);
    REQUIRE(k1.size() == 6);
    std::vector<Perm> kperms;
    for (const auto& p : kg) kperms.push_back(leaf_action(p));
    StabilizerChain kchain(16, kperms);
    for (const auto& p : k1) CHECK(kchain.contains(leaf_action(p)));

    // And K lies in the ambient quotient.
    std::vector<Perm> gperms;
    for (const auto& g : quotient_portraits(t, 4).gens) gperms.push_back(leaf_action(g));
    StabilizerChain gchain(16, gperms);
    for (const auto& p : kg) CHECK(gchain.contains(leaf_action(p)));
}

TEST_CASE("index sweep stabilizes at 4 and 16") {
    GrigIndexReport report = k_subgroup_indices(6, /*stop_when_stable=*/false);
    REQUIRE(report.rows.size() == 5);  // depths 2..6
    CHECK(report.rows[0].depth == 2);
    CHECK(report.rows[0].index_k_over_k1 == 2);
    CHECK(report.rows[0].index_g_over_k == 4);
    CHECK(report.rows[1].index_k_over_k1 == 2);
    CHECK(report.rows[1].index_g_over_k == 16);
    CHECK(report.rows[2].index_k_over_k1 == 4);
    CHECK(report.rows[2].index_g_over_k == 16);
    CHECK(report.rows[3].index_k_over_k1 == 4);
    CHECK(report.rows[3].index_g_over_k == 16);

    CHECK(report.index_k_over_k1 == 4);
    CHECK(report.index_g_over_k == 16);
    REQUIRE(report.stabilized_k_over_k1.has_value());
    REQUIRE(report.stabilized_g_over_k.has_value());
    CHECK(*report.stabilized_k_over_k1 == 4);
    CHECK(*report.stabilized_g_over_k == 3);
    CHECK(report.k_mod_k1_cyclic_by_y);

    // Early stop returns the same final values.
    GrigIndexReport early = k_subgroup_indices(8);
    CHECK(early.index_k_over_k1 == 4);
    CHECK(early.index_g_over_k == 16);
    CHECK(early.rows.back().depth == 5);
    CHECK(early.rows.back().y_has_coset_order_four);
}

TEST_CASE("self-replication at shallow vertices") {
    CHECK(check_self_replicating(5, Vertex{}));
    CHECK(check_self_replicating(5, Vertex{{0}}));
    CHECK(check_self_replicating(6, Vertex{{1, 1}}));
    CHECK_THROWS(check_self_replicating(2, Vertex{{0}}));  // too deep for the depth
}
