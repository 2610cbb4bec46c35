#include "branchlab/selfsimilar.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace branchlab {

Word parse_word(const std::string& text, const std::set<std::string>& names) {
  Word out;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    int exponent = 1;
    std::string name = token;
    if (const auto caret = token.find('^'); caret != std::string::npos) {
      name = token.substr(0, caret);
      const std::string e = token.substr(caret + 1);
      try {
        exponent = std::stoi(e);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad exponent in word token: " + token);
      }
    }
    if (name.empty())
      throw std::invalid_argument("empty generator name in word: " + text);
    if (names.count(name)) {
      out.letters.push_back({name, exponent});
    } else {
      // Compact form: every character must be a single-letter generator.
      for (char c : name) {
        const std::string letter(1, c);
        if (!names.count(letter))
          throw std::invalid_argument("unknown generator '" + name +
                                      "' in word: " + text);
        out.letters.push_back({letter, 1});
      }
      if (exponent != 1) {
        if (name.size() != 1)
          throw std::invalid_argument(
              "exponent on a compact multi-letter token: " + token);
        out.letters.back().exponent = exponent;
      }
    }
  }
  return out;
}

RecursionTable::RecursionTable(int degree,
                               std::map<std::string, RecursionRule> rules)
    : degree_(degree), rules_(std::move(rules)) {
  if (degree_ < 2) throw std::invalid_argument("recursion degree must be >= 2");
  const std::set<std::string> declared = names();
  for (const auto& [name, rule] : rules_) {
    if (rule.root.degree() != degree_)
      throw std::invalid_argument("root permutation of '" + name +
                                  "' has wrong degree");
    if (rule.sections.size() != static_cast<std::size_t>(degree_))
      throw std::invalid_argument("rule '" + name +
                                  "' must have one section per child");
    for (const Word& w : rule.sections)
      for (const WordLetter& l : w.letters)
        if (!declared.count(l.name))
          throw std::invalid_argument("section of '" + name +
                                      "' uses undeclared generator '" +
                                      l.name + "'");
  }
}

const RecursionRule& RecursionTable::rule(const std::string& name) const {
  const auto it = rules_.find(name);
  if (it == rules_.end())
    throw std::invalid_argument("unknown generator: " + name);
  return it->second;
}

std::set<std::string> RecursionTable::names() const {
  std::set<std::string> out;
  for (const auto& [name, rule] : rules_) out.insert(name);
  return out;
}

RecursionTable grigorchuk_table() {
  const Perm id2(2);
  const Perm swap(std::vector<int>{1, 0});
  const std::set<std::string> names{"a", "b", "c", "d"};
  auto w = [&names](const std::string& s) { return parse_word(s, names); };
  std::map<std::string, RecursionRule> rules;
  rules["a"] = RecursionRule{swap, {w(""), w("")}};
  rules["b"] = RecursionRule{id2, {w("a"), w("c")}};
  rules["c"] = RecursionRule{id2, {w("a"), w("d")}};
  rules["d"] = RecursionRule{id2, {w(""), w("b")}};
  return RecursionTable(2, std::move(rules));
}

namespace {

/// Memoized depth-truncated evaluation.  The recursion bottoms out at depth 1
/// where only the root permutation survives.
class Evaluator {
 public:
  explicit Evaluator(const RecursionTable& table) : table_(table) {}

  Portrait word(const Word& w, int depth) {
    Portrait acc(DegreeSequence::constant(table_.degree(), depth));
    for (const WordLetter& letter : w.letters) {
      Portrait g = generator(letter.name, depth);
      if (letter.exponent < 0) g = invert(g);
      int reps = letter.exponent < 0 ? -letter.exponent : letter.exponent;
      for (int i = 0; i < reps; ++i) acc = compose(acc, g);
    }
    return acc;
  }

  Portrait generator(const std::string& name, int depth) {
    const auto key = std::make_pair(name, depth);
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
    const RecursionRule& rule = table_.rule(name);
    const DegreeSequence seq = DegreeSequence::constant(table_.degree(), depth);
    std::vector<std::vector<Perm>> tables(static_cast<std::size_t>(depth));
    tables[0] = {rule.root};
    if (depth > 1) {
      std::vector<Portrait> sections;
      sections.reserve(rule.sections.size());
      for (const Word& w : rule.sections) sections.push_back(word(w, depth - 1));
      // Level k of the whole portrait is the child sections' level k-1 tables
      // concatenated in child order (lexicographic blocks).
      for (int k = 1; k < depth; ++k) {
        auto& table = tables[static_cast<std::size_t>(k)];
        table.reserve(seq.level_size(k));
        for (const Portrait& s : sections) {
          const auto sub = s.seq().level_size(k - 1);
          for (std::uint64_t r = 0; r < sub; ++r)
            table.push_back(s.perm_at(k - 1, r));
        }
      }
    }
    Portrait p(seq, std::move(tables));
    memo_.emplace(key, p);
    return p;
  }

 private:
  const RecursionTable& table_;
  std::map<std::pair<std::string, int>, Portrait> memo_;
};

}  // namespace

Portrait evaluate(const RecursionTable& table, const Word& word, int depth) {
  if (depth < 1) throw std::invalid_argument("evaluation depth must be >= 1");
  Evaluator ev(table);
  return ev.word(word, depth);
}

Portrait evaluate(const RecursionTable& table, const std::string& word,
                  int depth) {
  return evaluate(table, parse_word(word, table.names()), depth);
}

PortraitGroup quotient_portraits(const RecursionTable& table, int depth) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  PortraitGroup out{DegreeSequence::constant(table.degree(), depth), {}};
  Evaluator ev(table);
  for (const auto& [name, rule] : table.rules())
    out.gens.push_back(ev.generator(name, depth));
  return out;
}

PermGroup quotient_group(const RecursionTable& table, int depth,
                         const Budget& budget) {
  const PortraitGroup pg = quotient_portraits(table, depth);
  budget.charge(pg.seq.level_size(depth), "quotient domain");
  std::vector<Perm> gens;
  gens.reserve(pg.gens.size());
  for (const Portrait& p : pg.gens) gens.push_back(leaf_action(p));
  return PermGroup(static_cast<int>(pg.seq.level_size(depth)),
                   std::move(gens));
}

Portrait element_x(int depth) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  const RecursionTable grig = grigorchuk_table();
  const DegreeSequence seq = DegreeSequence::constant(2, depth);
  Portrait out(seq);
  if (depth >= 2) {
    out = compose(embed(evaluate(grig, "ca", depth - 1), Vertex({0}), seq),
                  embed(evaluate(grig, "ac", depth - 1), Vertex({1}), seq));
  }
  return out;
}

std::vector<Portrait> k_generators(int depth) {
  if (depth < 2)
    throw std::invalid_argument("K generators need depth >= 2");
  const DegreeSequence seq = DegreeSequence::constant(2, depth);
  std::vector<Portrait> out{element_x(depth)};
  out.push_back(embed(element_x(depth - 1), Vertex({0}), seq));
  out.push_back(embed(element_x(depth - 1), Vertex({1}), seq));
  return out;
}

std::vector<Portrait> k1_generators(int depth) {
  if (depth < 2)
    throw std::invalid_argument("K1 generators need depth >= 2");
  const DegreeSequence seq = DegreeSequence::constant(2, depth);
  std::vector<Portrait> out;
  if (depth >= 3) {
    for (const Portrait& g : k_generators(depth - 1)) {
      out.push_back(embed(g, Vertex({0}), seq));
      out.push_back(embed(g, Vertex({1}), seq));
    }
  }
  return out;
}

namespace {

std::vector<Perm> leaf_perms(const std::vector<Portrait>& ps) {
  std::vector<Perm> out;
  out.reserve(ps.size());
  for (const Portrait& p : ps) out.push_back(leaf_action(p));
  return out;
}

}  // namespace

GrigIndexReport k_subgroup_indices(int max_depth, bool stop_when_stable) {
  if (max_depth < 2)
    throw std::invalid_argument("index sweep needs max_depth >= 2");
  const RecursionTable grig = grigorchuk_table();
  GrigIndexReport report;
  for (int depth = 2; depth <= max_depth; ++depth) {
    const int domain = static_cast<int>(
        DegreeSequence::constant(2, depth).level_size(depth));
    const PermGroup g = quotient_group(grig, depth);
    StabilizerChain g_chain(domain, g.gens);
    StabilizerChain k_chain(domain, leaf_perms(k_generators(depth)));
    StabilizerChain k1_chain(domain, leaf_perms(k1_generators(depth)));

    GrigIndexRow row;
    row.depth = depth;
    row.index_g_over_k = chain_index(g_chain, k_chain);
    row.index_k_over_k1 = chain_index(k_chain, k1_chain);

    const Perm y = leaf_action(evaluate(grig, "abab", depth));
    if (!k_chain.contains(y))
      throw std::logic_error("(ab)^2 failed to sift into K");
    const Perm y2 = y * y;
    row.y_has_coset_order_four = !k1_chain.contains(y) &&
                                 !k1_chain.contains(y2) &&
                                 k1_chain.contains(y2 * y2);

    if (!report.rows.empty()) {
      // A stabilization claim holds only while every later row keeps the
      // value; a change (|K:K1| moves 2 -> 4 between depths 3 and 4) must
      // retract it.
      const GrigIndexRow& prev = report.rows.back();
      if (prev.index_k_over_k1 == row.index_k_over_k1) {
        if (!report.stabilized_k_over_k1)
          report.stabilized_k_over_k1 = prev.depth;
      } else {
        report.stabilized_k_over_k1.reset();
      }
      if (prev.index_g_over_k == row.index_g_over_k) {
        if (!report.stabilized_g_over_k)
          report.stabilized_g_over_k = prev.depth;
      } else {
        report.stabilized_g_over_k.reset();
      }
    }
    report.rows.push_back(row);
    report.index_k_over_k1 = row.index_k_over_k1;
    report.index_g_over_k = row.index_g_over_k;
    report.k_mod_k1_cyclic_by_y =
        row.y_has_coset_order_four && row.index_k_over_k1 == 4;
    if (stop_when_stable && report.stabilized_k_over_k1 &&
        report.stabilized_g_over_k)
      break;
  }
  return report;
}

bool check_self_replicating(int depth, const Vertex& v) {
  const DegreeSequence seq = DegreeSequence::constant(2, depth);
  check_vertex(seq, v);
  if (v.level() + 2 > depth)
    throw std::invalid_argument(
        "self-replication check needs v.level() + 2 <= depth");
  const int domain = static_cast<int>(seq.level_size(depth));
  StabilizerChain k_chain(domain, leaf_perms(k_generators(depth)));
  for (const Portrait& g : k_generators(depth - v.level())) {
    const Portrait embedded = embed(g, v, seq);
    if (!k_chain.contains(leaf_action(embedded))) return false;
  }
  return true;
}

}  // namespace branchlab
