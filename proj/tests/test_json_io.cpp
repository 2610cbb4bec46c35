#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "branchlab/json_io.hpp"
#include "branchlab/selfsimilar.hpp"
#include "branchlab/verifier.hpp"
#include "branchlab/wreathtower.hpp"

#include <string>

using namespace branchlab;

TEST_CASE("vertex round-trip") {
    Vertex v{{1, 0, 2}};
    json j = to_json(v);
    CHECK(j == json::array({1, 0, 2}));
    CHECK(vertex_from_json(j) == v);
    CHECK(vertex_from_json(json::array()) == Vertex{});
    CHECK_THROWS(vertex_from_json(json{{"not", "a vertex"}}));
}

TEST_CASE("degree sequence round-trip") {
    DegreeSequence s({2, 3, 2});
    json j = to_json(s);
    CHECK(j == json::array({2, 3, 2}));
    CHECK(degrees_from_json(j) == s);
    CHECK_THROWS(degrees_from_json(json::array()));
    CHECK_THROWS(degrees_from_json(json::array({2, 1})));
}

TEST_CASE("perm round-trip") {
    Perm p({1, 0, 2});
    json j = to_json(p);
    CHECK(j == json::array({1, 0, 2}));
    CHECK(perm_from_json(j) == p);
    CHECK_THROWS(perm_from_json(json::array({0, 0, 1})));  // not a bijection
}

TEST_CASE("group round-trip and named sources") {
    PermGroup g(4, {Perm({1, 0, 2, 3}), Perm({1, 2, 3, 0})});
    json j = to_json(g);
    CHECK(j.at("n") == 4);
    REQUIRE(j.at("gens").size() == 2);
    PermGroup back = group_from_json(j);
    CHECK(back.degree == 4);
    CHECK(back.gens == g.gens);

    CHECK(order(parse_group_source("Sym(3)")) == 6);
    CHECK(order(parse_group_source("  Alt(5) ")) == 60);
    CHECK(order(parse_group_source("Cyclic(6)")) == 6);
    PermGroup inline_group =
        parse_group_source(R"({"n": 3, "gens": [[1, 2, 0]]})");
    CHECK(inline_group.degree == 3);
    CHECK(order(inline_group) == 3);
    CHECK_THROWS(parse_group_source("Frobenius(20)"));
    CHECK_THROWS(parse_group_source("{broken json"));
}

TEST_CASE("portrait serialization omits identity perms") {
    RecursionTable t = grigorchuk_table();
    Portrait b = evaluate(t, "b", 3);
    json j = to_json(b);
    CHECK(j.at("degrees") == json::array({2, 2, 2}));
    const auto& perms = j.at("perms");
    // b has identity at the root, acts as a below (0): swap sits at (0).
    CHECK_FALSE(perms.contains(""));
    CHECK(perms.contains("0"));
    CHECK(perms.at("0") == json::array({1, 0}));
    CHECK(portrait_from_json(j) == b);

    // The identity portrait has an empty perm table.
    json id = to_json(Portrait(DegreeSequence({2, 2})));
    CHECK(id.at("perms").empty());

    // Keys are comma-joined words; deeper entries round-trip too.
    Portrait a = evaluate(t, "a", 2);
    Portrait x = element_x(3);
    for (const Portrait& p : {a, x, evaluate(t, "abab", 4)})
        CHECK(portrait_from_json(to_json(p)) == p);

    Portrait rebuilt = portrait_from_json(
        json::parse(R"({"degrees": [2, 2], "perms": {"": [1, 0]}})"));
    CHECK(rebuilt.perm_at(Vertex{}) == Perm({1, 0}));
    CHECK(act(rebuilt, Vertex{{0}}) == Vertex{{1}});

    CHECK_THROWS(portrait_from_json(
        json::parse(R"({"degrees": [2, 2], "perms": {"0,0": [1, 0]}})")));  // leaf key
    CHECK_THROWS(portrait_from_json(
        json::parse(R"({"degrees": [2, 2], "perms": {"": [1, 2, 0]}})")));  // wrong degree
}

TEST_CASE("recursion table round-trip") {
    RecursionTable t = grigorchuk_table();
    json j = to_json(t);
    CHECK(j.at("degree") == 2);
    const auto& rules = j.at("rules");
    REQUIRE(rules.contains("a"));
    CHECK(rules.at("a").at("root") == json::array({1, 0}));
    CHECK(rules.at("a").at("sections") == json::array({"", ""}));
    CHECK(rules.at("b").at("sections") == json::array({"a", "c"}));
    CHECK(rules.at("d").at("sections") == json::array({"", "b"}));

    RecursionTable back = table_from_json(j);
    CHECK(back.degree() == 2);
    CHECK(back.names() == t.names());
    for (const char* w : {"a", "b", "ab", "abab", "bcd"})
        CHECK(evaluate(back, w, 4) == evaluate(t, w, 4));

    CHECK_THROWS(table_from_json(json::parse(
        R"({"degree": 2, "rules": {"g": {"root": [0, 1], "sections": ["h", ""]}}})")));
}

TEST_CASE("word text round-trips through the parser") {
    std::set<std::string> names{"a", "b"};
    Word w{{{"a", 1}, {"b", -1}, {"a", 3}}};
    CHECK(word_text(w) == "a b^-1 a^3");
    CHECK(parse_word(word_text(w), names) == w);
    CHECK(word_text(Word{}) == "");
}

TEST_CASE("tower spec JSON accepts names and explicit groups") {
    TowerSpec spec = tower_spec_from_json(json::parse(
        R"json({"factors": ["Alt(5)", {"n": 5, "gens": [[1, 2, 3, 4, 0]]}]})json"));
    REQUIRE(spec.depth() == 2);
    CHECK(spec.factors[0].degree == 5);
    CHECK(order(spec.factors[0]) == 60);
    CHECK(order(spec.factors[1]) == 5);

    json j = to_json(spec);
    REQUIRE(j.at("factors").size() == 2);
    TowerSpec back = tower_spec_from_json(j);
    CHECK(back.degrees() == spec.degrees());
    CHECK(order(back.factors[0]) == 60);
    CHECK(order(back.factors[1]) == 5);

    CHECK_THROWS(tower_spec_from_json(json::parse(R"({"factors": []})")));
}

TEST_CASE("colored ball round-trip insists on breadth-first order") {
    ColoredBall ball = make_legal_coloring(3, 2);
    json j = to_json(ball);
    CHECK(j.at("d") == 3);
    CHECK(j.at("radius") == 2);
    ColoredBall back = ball_from_json(j);
    CHECK(back.parent == ball.parent);
    CHECK(back.parent_color == ball.parent_color);
    CHECK(back.children == ball.children);
    CHECK(back.shell_start == ball.shell_start);
    CHECK_NOTHROW(check_colored_ball(back));

    // A parent list that is not breadth-first is refused.
    json scrambled = j;
    scrambled["parent"][4] = 3;  // vertex 4 reparented forward
    CHECK_THROWS(ball_from_json(scrambled));

    json too_shallow = j;
    too_shallow["radius"] = 3;  // deepest shell must reach the radius
    CHECK_THROWS(ball_from_json(too_shallow));
}

TEST_CASE("report serializers expose the verified facts") {
    // Commutator witness: four conjugates and the replayed target.
    DegreeSequence seq = DegreeSequence::constant(2, 2);
    Portrait tau(seq);
    tau.set_perm(Vertex{}, Perm({1, 0}));
    CommutatorWitness w = commutator_trick(tau, Portrait(seq), Portrait(seq), 2);
    json jw = to_json(w);
    CHECK(jw.at("conjugators").size() == 4);
    CHECK(jw.at("conjugators")[0].at("exponent") == 1);
    CHECK(jw.at("conjugators")[1].at("exponent") == -1);
    CHECK(jw.at("target").at("perms").empty());

    // Grigorchuk index report: orders as decimal strings.
    GrigIndexReport rep = k_subgroup_indices(5);
    json jr = to_json(rep);
    CHECK(jr.at("index_k_over_k1") == "4");
    CHECK(jr.at("index_g_over_k") == "16");
    CHECK(jr.at("k_mod_k1_cyclic_by_y") == true);
    REQUIRE(jr.at("rows").size() >= 3);
    CHECK(jr.at("rows")[0].at("depth") == 2);
    CHECK(jr.at("rows")[0].at("index_k_over_k1") == "2");

    // Hypothesis report mirrors the boolean flags.
    json jh = to_json(check_theorem_hypotheses(named_group("Alt(5)")));
    CHECK(jh.at("degree") == 5);
    CHECK(jh.at("perfect") == true);
    CHECK(jh.at("point_stabilizer_perfect") == false);
    CHECK(jh.at("all_group_hypotheses") == false);
}
