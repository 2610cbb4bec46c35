#include "branchlab/json_io.hpp"

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace branchlab {

namespace {

std::string vertex_key(const Vertex& v) {
  std::string out;
  for (std::size_t i = 0; i < v.word.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v.word[i]);
  }
  return out;
}

Vertex vertex_from_key(const std::string& key) {
  std::vector<int> word;
  if (!key.empty()) {
    std::istringstream ss(key);
    std::string tok;
    while (std::getline(ss, tok, ',')) word.push_back(std::stoi(tok));
  }
  return Vertex(std::move(word));
}

json optional_perm(const std::optional<Perm>& p) {
  return p ? to_json(*p) : json(nullptr);
}

json optional_int(const std::optional<int>& n) {
  return n ? json(*n) : json(nullptr);
}

}  // namespace

json to_json(const Vertex& v) { return json(v.word); }

Vertex vertex_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("vertex: expected an array");
  return Vertex(j.get<std::vector<int>>());
}

json to_json(const DegreeSequence& s) { return json(s.degrees()); }

DegreeSequence degrees_from_json(const json& j) {
  if (!j.is_array())
    throw std::invalid_argument("degree sequence: expected an array");
  return DegreeSequence(j.get<std::vector<int>>());
}

json to_json(const Perm& p) { return json(p.images()); }

Perm perm_from_json(const json& j) {
  if (!j.is_array())
    throw std::invalid_argument("permutation: expected an image array");
  return Perm(j.get<std::vector<int>>());
}

json to_json(const PermGroup& g) {
  json gens = json::array();
  for (const Perm& p : g.gens) gens.push_back(to_json(p));
  return json{{"n", g.degree}, {"gens", std::move(gens)}};
}

PermGroup group_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("gens"))
    throw std::invalid_argument("group: expected {\"n\": ..., \"gens\": ...}");
  const int n = j.at("n").get<int>();
  std::vector<Perm> gens;
  for (const json& g : j.at("gens")) gens.push_back(perm_from_json(g));
  return PermGroup(n, std::move(gens));
}

PermGroup parse_group_source(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos)
    throw std::invalid_argument("group source: empty");
  if (text[first] == '{') return group_from_json(json::parse(text));
  const auto last = text.find_last_not_of(" \t\r\n");
  return named_group(text.substr(first, last - first + 1));
}

json to_json(const Portrait& p) {
  json perms = json::object();
  for (int level = 0; level < p.depth(); ++level) {
    const std::uint64_t count = p.seq().level_size(level);
    for (std::uint64_t rank = 0; rank < count; ++rank) {
      const Perm& q = p.perm_at(level, rank);
      if (q.is_identity()) continue;
      perms[vertex_key(vertex_at_rank(p.seq(), level, rank))] = to_json(q);
    }
  }
  return json{{"degrees", to_json(p.seq())}, {"perms", std::move(perms)}};
}

Portrait portrait_from_json(const json& j) {
  if (!j.is_object() || !j.contains("degrees"))
    throw std::invalid_argument(
        "portrait: expected {\"degrees\": ..., \"perms\": ...}");
  Portrait p(degrees_from_json(j.at("degrees")));
  if (j.contains("perms")) {
    for (const auto& [key, val] : j.at("perms").items()) {
      const Vertex v = vertex_from_key(key);
      check_vertex(p.seq(), v);
      p.set_perm(v, perm_from_json(val));
    }
  }
  return p;
}

std::string word_text(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) out += ' ';
    out += w.letters[i].name;
    if (w.letters[i].exponent != 1)
      out += '^' + std::to_string(w.letters[i].exponent);
  }
  return out;
}

json to_json(const RecursionTable& t) {
  json rules = json::object();
  for (const auto& [name, rule] : t.rules()) {
    json sections = json::array();
    for (const Word& w : rule.sections) sections.push_back(word_text(w));
    rules[name] = json{{"root", to_json(rule.root)},
                       {"sections", std::move(sections)}};
  }
  return json{{"degree", t.degree()}, {"rules", std::move(rules)}};
}

RecursionTable table_from_json(const json& j) {
  if (!j.is_object() || !j.contains("degree") || !j.contains("rules"))
    throw std::invalid_argument(
        "recursion table: expected {\"degree\": ..., \"rules\": ...}");
  const int degree = j.at("degree").get<int>();
  std::set<std::string> names;
  for (const auto& [name, _] : j.at("rules").items()) names.insert(name);
  std::map<std::string, RecursionRule> rules;
  for (const auto& [name, body] : j.at("rules").items()) {
    RecursionRule rule;
    rule.root = perm_from_json(body.at("root"));
    for (const json& s : body.at("sections"))
      rule.sections.push_back(parse_word(s.get<std::string>(), names));
    rules.emplace(name, std::move(rule));
  }
  return RecursionTable(degree, std::move(rules));
}

json to_json(const TowerSpec& s) {
  json factors = json::array();
  for (const PermGroup& f : s.factors) factors.push_back(to_json(f));
  return json{{"factors", std::move(factors)}};
}

TowerSpec tower_spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("factors"))
    throw std::invalid_argument("tower spec: expected {\"factors\": [...]}");
  std::vector<PermGroup> factors;
  for (const json& f : j.at("factors")) {
    if (f.is_string())
      factors.push_back(named_group(f.get<std::string>()));
    else
      factors.push_back(group_from_json(f));
  }
  return TowerSpec(std::move(factors));
}

json to_json(const ColoredBall& b) {
  return json{{"d", b.d},
              {"radius", b.radius},
              {"parent", b.parent},
              {"parent_color", b.parent_color}};
}

ColoredBall ball_from_json(const json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("radius") ||
      !j.contains("parent") || !j.contains("parent_color"))
    throw std::invalid_argument(
        "ball: expected {\"d\", \"radius\", \"parent\", \"parent_color\"}");
  ColoredBall ball;
  ball.d = j.at("d").get<int>();
  ball.radius = j.at("radius").get<int>();
  ball.parent = j.at("parent").get<std::vector<int>>();
  ball.parent_color = j.at("parent_color").get<std::vector<int>>();
  const int n = static_cast<int>(ball.parent.size());
  if (n == 0 || ball.parent[0] != -1)
    throw std::invalid_argument("ball: vertex 0 must be the center");
  // Rebuild the derived structure.  Vertices must come in BFS order (parents
  // precede children, distances never decrease) so shells are contiguous.
  std::vector<int> dist(static_cast<std::size_t>(n), 0);
  ball.children.assign(static_cast<std::size_t>(n), {});
  for (int v = 1; v < n; ++v) {
    const int p = ball.parent[static_cast<std::size_t>(v)];
    if (p < 0 || p >= v)
      throw std::invalid_argument("ball: vertices must be in BFS order");
    dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(p)] + 1;
    if (dist[static_cast<std::size_t>(v)] <
        dist[static_cast<std::size_t>(v - 1)])
      throw std::invalid_argument("ball: vertices must be in BFS order");
    ball.children[static_cast<std::size_t>(p)].push_back(v);
  }
  ball.shell_start.assign(static_cast<std::size_t>(ball.radius) + 2, n);
  for (int v = n - 1; v >= 0; --v)
    for (int k = dist[static_cast<std::size_t>(v)]; k >= 0; --k)
      ball.shell_start[static_cast<std::size_t>(k)] = v;
  if (dist[static_cast<std::size_t>(n - 1)] != ball.radius)
    throw std::invalid_argument("ball: deepest shell must reach the radius");
  check_colored_ball(ball);
  return ball;
}

json to_json(const SuiteReport& r) {
  json checks = json::array();
  for (const SuiteCheck& c : r.checks)
    checks.push_back(
        json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  json out{{"suite", r.suite},
           {"checks", std::move(checks)},
           {"passed", r.all_passed()}};
  if (r.randomized) out["seed"] = r.seed;
  return out;
}

json to_json(const CommutatorWitness& w) {
  json conjugators = json::array();
  for (const ConjugatorPair& c : w.conjugators)
    conjugators.push_back(json{{"conjugator", to_json(c.conjugator)},
                               {"exponent", c.exponent}});
  return json{{"conjugators", std::move(conjugators)},
              {"target", to_json(w.target)}};
}

json to_json(const FullnessCertificate& c) {
  json sections = json::array();
  for (const Perm& p : c.rist_sections) sections.push_back(to_json(p));
  return json{{"vertex", to_json(c.v)},
              {"full", c.full},
              {"rist_sections", std::move(sections)},
              {"matched_in", c.matched_in},
              {"refutation", optional_perm(c.refutation)}};
}

json to_json(const DiagonalResult& r) {
  return json{{"index", r.index},
              {"vertex", to_json(r.vertex)},
              {"certificate", to_json(r.certificate)}};
}

json to_json(const ContainmentReport& r) {
  return json{{"vertex", to_json(r.w)},
              {"x_index", r.x_index},
              {"width", r.width},
              {"exponent_bound", r.exponent_bound},
              {"verified", r.verified}};
}

json to_json(const HypothesisReport& r) {
  return json{{"degree", r.degree},
              {"perfect", r.perfect},
              {"two_transitive", r.two_transitive},
              {"generated_by_point_stabilizers",
               r.generated_by_point_stabilizers},
              {"point_stabilizer_perfect", r.point_stabilizer_perfect},
              {"degree_at_least_six", r.degree_at_least_six},
              {"all_group_hypotheses", r.all_group_hypotheses()}};
}

json to_json(const GrigIndexReport& r) {
  json rows = json::array();
  for (const GrigIndexRow& row : r.rows)
    rows.push_back(json{{"depth", row.depth},
                        {"index_k_over_k1", to_string(row.index_k_over_k1)},
                        {"index_g_over_k", to_string(row.index_g_over_k)},
                        {"y_has_coset_order_four",
                         row.y_has_coset_order_four}});
  return json{{"rows", std::move(rows)},
              {"stabilized_k_over_k1", optional_int(r.stabilized_k_over_k1)},
              {"stabilized_g_over_k", optional_int(r.stabilized_g_over_k)},
              {"index_k_over_k1", to_string(r.index_k_over_k1)},
              {"index_g_over_k", to_string(r.index_g_over_k)},
              {"k_mod_k1_cyclic_by_y", r.k_mod_k1_cyclic_by_y}};
}

}  // namespace branchlab
