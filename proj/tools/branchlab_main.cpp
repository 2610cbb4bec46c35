// Command-line frontend for the tree-automorphism engines: word evaluation,
// orbit inspection, verification suites, wreath-tower reports, local-action
// ball enumeration, and Cayley-diameter experiments on finite quotients.
//
// Exit codes: 0 success / all verified, 1 verification failure, 2 usage or
// parse error, 3 element budget exceeded.

#include <cstdint>
#include <deque>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "branchlab/budget.hpp"
#include "branchlab/burgermozes.hpp"
#include "branchlab/json_io.hpp"
#include "branchlab/numeric.hpp"
#include "branchlab/perm.hpp"
#include "branchlab/permgroup.hpp"
#include "branchlab/portrait.hpp"
#include "branchlab/selfsimilar.hpp"
#include "branchlab/suites.hpp"
#include "branchlab/tree.hpp"
#include "branchlab/verifier.hpp"
#include "branchlab/wreathtower.hpp"

using namespace branchlab;

namespace {

std::string vertex_text(const Vertex& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.word.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v.word[i]);
  }
  return out + ")";
}

std::string format_exponents(const std::map<std::uint64_t, std::int64_t>& e) {
  if (e.empty()) return "1";
  std::string out;
  for (const auto& [prime, k] : e) {
    if (!out.empty()) out += " * ";
    out += std::to_string(prime);
    if (k != 1) out += "^" + std::to_string(k);
  }
  return out;
}

std::optional<std::string> decimal_of(
    const std::map<std::uint64_t, std::int64_t>& e) {
  try {
    return to_string(from_factorization(e));
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
}

RecursionTable load_table(const std::string& builtin,
                          const std::string& path) {
  if (!builtin.empty()) {
    if (builtin == "grigorchuk") return grigorchuk_table();
    throw std::invalid_argument("unknown builtin table \"" + builtin +
                                "\" (available: grigorchuk)");
  }
  if (path.empty())
    throw std::invalid_argument("need --builtin or --table");
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return table_from_json(json::parse(in));
}

/// Inline JSON when the argument starts with '{' or '[', else a file path.
json load_json_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '['))
    return json::parse(arg);
  std::ifstream in(arg);
  if (!in) throw std::invalid_argument("cannot open " + arg);
  return json::parse(in);
}

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

void print_suite_human(const SuiteReport& rep) {
  std::cout << "suite " << rep.suite;
  if (rep.randomized) std::cout << " (seed " << rep.seed << ")";
  std::cout << "\n";
  for (const SuiteCheck& c : rep.checks)
    std::cout << (c.passed ? "  [ok]   " : "  [FAIL] ") << c.name << ": "
              << c.detail << "\n";
  std::cout << (rep.all_passed() ? "all checks passed" : "FAILED") << "\n";
}

// ---------------------------------------------------------------------------

int cmd_eval(const std::string& builtin, const std::string& table_path,
             const std::string& word, int depth, bool with_order,
             bool as_json) {
  const RecursionTable table = load_table(builtin, table_path);
  const Portrait p = evaluate(table, word, depth);
  if (as_json) {
    json out{{"portrait", to_json(p)}};
    if (with_order)
      out["order"] = std::to_string(perm_order(leaf_action(p)));
    std::cout << out.dump() << "\n";
  } else {
    std::cout << to_json(p).dump(2) << "\n";
    if (with_order)
      std::cout << "order: " << perm_order(leaf_action(p)) << "\n";
  }
  return 0;
}

int cmd_orbit(const std::string& builtin, const std::string& table_path,
              int depth, int level, bool as_json) {
  const RecursionTable table = load_table(builtin, table_path);
  if (level < 0) level = depth;
  if (level < 1 || level > depth)
    throw std::invalid_argument("--level must lie in 1..depth");
  const PortraitGroup pg = quotient_portraits(table, depth);
  std::vector<Perm> acting;
  acting.reserve(pg.gens.size());
  for (const Portrait& g : pg.gens) acting.push_back(level_action(g, level));
  const PermGroup flat(static_cast<int>(pg.seq.level_size(level)),
                       std::move(acting));
  const std::vector<std::vector<int>> parts = orbits(flat);
  if (as_json) {
    json jorbits = json::array();
    for (const std::vector<int>& orb : parts) {
      json one = json::array();
      for (int r : orb)
        one.push_back(to_json(vertex_at_rank(pg.seq, level, r)));
      jorbits.push_back(std::move(one));
    }
    std::cout << json{{"level", level},
                      {"orbit_count", parts.size()},
                      {"orbits", std::move(jorbits)}}
                     .dump()
              << "\n";
  } else {
    std::cout << "level " << level << ": " << parts.size() << " orbit"
              << (parts.size() == 1 ? "" : "s") << "\n";
    for (const std::vector<int>& orb : parts) {
      std::cout << "  size " << orb.size() << ":";
      for (std::size_t i = 0; i < orb.size(); ++i) {
        if (i == 12) {
          std::cout << " ... (" << orb.size() - i << " more)";
          break;
        }
        std::cout << " "
                  << vertex_text(vertex_at_rank(pg.seq, level, orb[i]));
      }
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_verify(const std::string& suite, int samples, int depth, int degree,
               std::uint64_t seed, bool as_json) {
  SuiteReport rep;
  if (suite == "comm-trick")
    rep = run_comm_trick_suite(samples > 0 ? samples : 1000,
                               depth > 0 ? depth : 4, seed);
  else if (suite == "fullness")
    rep = run_fullness_suite(samples > 0 ? samples : 50, seed);
  else if (suite == "diagonal")
    rep = run_diagonal_suite(samples > 0 ? samples : 50, seed);
  else if (suite == "grig-derangement")
    rep = run_grig_derangement_suite();
  else if (suite == "grig-indices")
    rep = run_grig_indices_suite(depth > 0 ? depth : 8);
  else if (suite == "jordan")
    rep = run_jordan_suite(samples > 0 ? samples : 100,
                           degree > 0 ? degree : 10, seed);
  else
    throw std::invalid_argument(
        "unknown suite \"" + suite +
        "\" (suites: comm-trick, fullness, diagonal, grig-derangement, "
        "grig-indices, jordan)");
  if (as_json)
    std::cout << to_json(rep).dump() << "\n";
  else
    print_suite_human(rep);
  return rep.all_passed() ? 0 : 1;
}

int cmd_tower(const std::string& spec_arg, bool with_sji, bool as_json) {
  const TowerSpec spec = tower_spec_from_json(load_json_arg(spec_arg));
  const TowerGroup G = build_tower(spec);
  const auto exps = tower_order_exponents(spec);
  const std::optional<std::string> decimal = decimal_of(exps);
  const bool transitive = is_spherically_transitive(G);

  json jfactors = json::array();
  for (int i = 0; i < spec.depth(); ++i)
    jfactors.push_back(
        json{{"degree", spec.factors[static_cast<std::size_t>(i)].degree},
             {"order", to_string(G.factor_orders[static_cast<std::size_t>(i)])},
             {"transitive",
              static_cast<bool>(G.factor_transitive[static_cast<std::size_t>(i)])}});

  json jlevels = json::array();
  for (int n = 1; n < spec.depth(); ++n) {
    const CertifiedSubgroup st = level_stabilizer(G, n);
    const CertifiedSubgroup rist_v =
        rigid_stabilizer(G, vertex_at_rank(G.degrees, n, 0));
    json row{{"level", n},
             {"stabilizer_order_factored", format_exponents(st.order_exponents)},
             {"rist_vertex_order_factored",
              format_exponents(rist_v.order_exponents)}};
    if (const auto dec = decimal_of(st.order_exponents))
      row["stabilizer_order"] = *dec;
    if (with_sji) {
      try {
        row["perfect_rigid_stabilizer"] = check_sji_criterion(G, n);
      } catch (const BudgetError&) {
        row["perfect_rigid_stabilizer"] = nullptr;
      }
    }
    try {
      row["derangement_witness_level"] =
          locally_has_derangements_witness(G, n - 1).level;
    } catch (const std::exception&) {
      row["derangement_witness_level"] = nullptr;
    }
    jlevels.push_back(std::move(row));
  }

  if (as_json) {
    json out{{"depth", spec.depth()},
             {"degrees", to_json(G.degrees)},
             {"order", decimal ? json(*decimal) : json(nullptr)},
             {"order_factored", format_exponents(exps)},
             {"factors", std::move(jfactors)},
             {"levels", std::move(jlevels)},
             {"spherically_transitive", transitive}};
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "wreath tower, depth " << spec.depth() << ", degrees";
    for (int d : G.degrees.degrees()) std::cout << " " << d;
    std::cout << "\norder: " << (decimal ? *decimal : "(beyond 128 bits)")
              << " = " << format_exponents(exps) << "\n";
    for (int i = 0; i < spec.depth(); ++i)
      std::cout << "factor " << i << ": degree "
                << spec.factors[static_cast<std::size_t>(i)].degree
                << ", order "
                << to_string(G.factor_orders[static_cast<std::size_t>(i)])
                << (G.factor_transitive[static_cast<std::size_t>(i)]
                        ? ", transitive"
                        : ", NOT transitive")
                << "\n";
    for (const json& row : jlevels) {
      std::cout << "level " << row["level"] << ": |st| = |rist| = "
                << row["stabilizer_order_factored"].get<std::string>()
                << ", |rist(v)| = "
                << row["rist_vertex_order_factored"].get<std::string>();
      if (row.contains("perfect_rigid_stabilizer")) {
        const json& p = row["perfect_rigid_stabilizer"];
        std::cout << ", perfect rist: "
                  << (p.is_null() ? "skipped (budget)"
                                  : (p.get<bool>() ? "yes" : "no"));
      }
      const json& w = row["derangement_witness_level"];
      if (w.is_null())
        std::cout << ", derangement witness: none (intransitive factor)";
      else
        std::cout << ", derangement witness on level " << w;
      std::cout << "\n";
    }
    std::cout << "spherically transitive: " << (transitive ? "yes" : "no")
              << "\n";
  }
  return 0;
}

int cmd_bm(const std::string& f_source, int radius, bool do_match,
           bool as_json) {
  const PermGroup F = parse_group_source(f_source);
  if (F.degree < 3)
    throw std::invalid_argument("local group degree must be at least 3");
  if (radius < 1) throw std::invalid_argument("--radius must be >= 1");
  const ColoredBall ball = make_legal_coloring(F.degree, radius);
  const HypothesisReport hyp = check_theorem_hypotheses(F);
  const u128 formula = stabilizer_count_formula(ball, F);

  std::optional<std::uint64_t> enumerated;
  std::string budget_note;
  try {
    enumerated = enumerate_stabilizer(ball, F).gens.size();
  } catch (const BudgetError& e) {
    budget_note = e.what();
  }
  std::optional<bool> match;
  if (do_match && budget_note.empty()) {
    try {
      match = tower_match(F, radius);
    } catch (const BudgetError& e) {
      budget_note = e.what();
    }
  }

  if (as_json) {
    json out{{"degree", F.degree},
             {"radius", radius},
             {"hypotheses", to_json(hyp)},
             {"stabilizer_count_formula", to_string(formula)}};
    out["enumerated"] =
        enumerated ? json(*enumerated) : json(nullptr);
    if (do_match) out["tower_match"] = match ? json(*match) : json(nullptr);
    if (!budget_note.empty()) out["budget_exceeded"] = budget_note;
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "local group: degree " << F.degree << "\n";
    std::cout << "  perfect:                        "
              << (hyp.perfect ? "yes" : "no") << "\n";
    std::cout << "  2-transitive:                   "
              << (hyp.two_transitive ? "yes" : "no") << "\n";
    std::cout << "  generated by point stabilizers: "
              << (hyp.generated_by_point_stabilizers ? "yes" : "no") << "\n";
    std::cout << "  point stabilizer perfect:       "
              << (hyp.point_stabilizer_perfect ? "yes" : "no") << "\n";
    std::cout << "  degree at least six:            "
              << (hyp.degree_at_least_six ? "yes" : "no") << "\n";
    std::cout << "  all group hypotheses:           "
              << (hyp.all_group_hypotheses() ? "yes" : "no") << "\n";
    std::cout << "radius-" << radius
              << " center stabilizer count formula: " << to_string(formula)
              << "\n";
    if (enumerated)
      std::cout << "enumerated: " << *enumerated << " legal automorphisms\n";
    if (match)
      std::cout << "tower match (depth " << radius
                << "): " << (*match ? "yes" : "NO") << "\n";
    if (!budget_note.empty())
      std::cout << "enumeration skipped, budget exceeded (" << budget_note
                << "); the count formula above still applies\n";
  }
  if (!budget_note.empty()) return 3;
  if (match && !*match) return 1;
  return 0;
}

struct CayleyRow {
  int depth = -1;  // -1 for plain-group rows
  u128 order = 0;
  std::uint64_t reached = 0;
  bool generates = false;
  int diameter = 0;
  u128 index = 0;  // of the generated subgroup, when it is proper
};

CayleyRow cayley_bfs(const PermGroup& ambient, std::vector<Perm> probe,
                     const Budget& budget) {
  CayleyRow row;
  row.order = StabilizerChain(ambient.degree, ambient.gens).order();
  // Symmetrize the probe set and strip identities: the diameter is read on
  // the Cayley graph for probe ∪ probe^{-1} ∪ {1}.
  std::vector<Perm> sym;
  for (const Perm& p : probe) {
    if (p.is_identity()) continue;
    sym.push_back(p);
    Perm q = p.inverse();
    if (q != p) sym.push_back(std::move(q));
  }
  std::set<Perm> seen{Perm(ambient.degree)};
  std::deque<std::pair<Perm, int>> queue;
  queue.emplace_back(Perm(ambient.degree), 0);
  int diameter = 0;
  while (!queue.empty()) {
    auto [cur, dist] = std::move(queue.front());
    queue.pop_front();
    diameter = std::max(diameter, dist);
    for (const Perm& s : sym) {
      Perm nxt = s * cur;
      if (seen.contains(nxt)) continue;
      budget.charge(static_cast<std::uint64_t>(seen.size()) + 1,
                    "cayley ball");
      seen.insert(nxt);
      queue.emplace_back(std::move(nxt), dist + 1);
    }
  }
  row.reached = seen.size();
  row.generates = u128(row.reached) == row.order;
  if (row.generates)
    row.diameter = diameter;
  else
    row.index = row.order / u128(row.reached);
  return row;
}

void print_cayley_row(const CayleyRow& row, bool as_json) {
  if (as_json) {
    json out{{"order", to_string(row.order)},
             {"reached", row.reached},
             {"generates", row.generates}};
    if (row.depth >= 0) out["depth"] = row.depth;
    if (row.generates)
      out["diameter"] = row.diameter;
    else
      out["subgroup_index"] = to_string(row.index);
    std::cout << out.dump() << "\n";
  } else {
    if (row.depth >= 0) std::cout << "depth " << row.depth << ": ";
    std::cout << "order " << to_string(row.order);
    if (row.generates)
      std::cout << ", diameter " << row.diameter << "\n";
    else
      std::cout << ", does not generate: subgroup of index "
                << to_string(row.index) << " (" << row.reached
                << (row.reached == 1 ? " element" : " elements")
                << " reached)\n";
  }
}

int cmd_cayley(const std::string& group_src, const std::string& gens_arg,
               const std::string& builtin, const std::string& table_path,
               int depth, const std::string& words_arg,
               const std::string& sweep, bool as_json) {
  const Budget budget = default_budget();
  if (!group_src.empty()) {
    const PermGroup ambient = parse_group_source(group_src);
    std::vector<Perm> probe = ambient.gens;
    if (!gens_arg.empty()) {
      probe.clear();
      for (const json& jp : load_json_arg(gens_arg))
        probe.push_back(perm_from_json(jp));
    }
    print_cayley_row(cayley_bfs(ambient, std::move(probe), budget), as_json);
    return 0;
  }

  const RecursionTable table = load_table(builtin, table_path);
  int lo = depth, hi = depth;
  if (!sweep.empty()) {
    const auto dots = sweep.find("..");
    if (dots == std::string::npos)
      throw std::invalid_argument("--sweep-depth wants the form a..b");
    lo = std::stoi(sweep.substr(0, dots));
    hi = std::stoi(sweep.substr(dots + 2));
  }
  if (lo < 1 || hi < lo)
    throw std::invalid_argument("bad depth range");
  std::vector<std::string> words;
  if (words_arg.empty())
    for (const auto& [name, rule] : table.rules()) words.push_back(name);
  else
    words = split_list(words_arg, ',');
  for (int d = lo; d <= hi; ++d) {
    const PermGroup ambient = quotient_group(table, d, budget);
    std::vector<Perm> probe;
    probe.reserve(words.size());
    for (const std::string& w : words)
      probe.push_back(leaf_action(evaluate(table, w, d)));
    CayleyRow row = cayley_bfs(ambient, std::move(probe), budget);
    row.depth = d;
    print_cayley_row(row, as_json);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "branchlab — exact computations with automorphisms of rooted trees:\n"
      "portraits, wreath towers, self-similar recursions, rigid stabilizers,\n"
      "and local-action balls, with machine-verified witnesses."};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "machine output as JSON lines");

  std::string builtin, table_path, word;
  int depth = 3, level = -1;
  bool with_order = false;

  CLI::App* eval = app.add_subcommand("eval", "evaluate a recursion word");
  eval->add_option("word", word, "word over the table's generators");
  eval->add_option("--builtin", builtin, "built-in table (grigorchuk)");
  eval->add_option("--table", table_path, "recursion table JSON file");
  eval->add_option("--depth", depth, "truncation depth")->check(CLI::Range(1, 30));
  eval->add_flag("--order", with_order, "also print the element's order");

  CLI::App* orbit =
      app.add_subcommand("orbit", "orbits of a level under a recursion group");
  orbit->add_option("--builtin", builtin, "built-in table (grigorchuk)");
  orbit->add_option("--table", table_path, "recursion table JSON file");
  orbit->add_option("--depth", depth, "truncation depth")->check(CLI::Range(1, 30));
  orbit->add_option("--level", level, "level to partition (default: depth)");

  std::string suite;
  int samples = -1, vdepth = -1, degree = -1;
  std::uint64_t seed = kDefaultSuiteSeed;
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite,
                     "comm-trick | fullness | diagonal | grig-derangement | "
                     "grig-indices | jordan")
      ->required();
  verify->add_option("--samples,--random", samples, "randomized sample count");
  verify->add_option("--depth", vdepth, "depth bound for the suite");
  verify->add_option("--degree", degree, "degree bound (jordan)");
  verify->add_option("--seed", seed, "random seed (default fixed)");

  std::string spec_arg;
  bool with_sji = false;
  CLI::App* tower = app.add_subcommand("tower", "report on a wreath tower");
  tower->add_option("spec", spec_arg, "tower spec JSON (inline or file)")
      ->required();
  tower->add_flag("--sji", with_sji,
                  "also test level stabilizers for perfectness");

  std::string f_source;
  int radius = 1;
  bool do_match = false;
  CLI::App* bm =
      app.add_subcommand("bm", "local-action ball stabilizer analysis");
  bm->add_option("--F", f_source, "local group (named or JSON)")->required();
  bm->add_option("--radius", radius, "ball radius")->check(CLI::Range(1, 8));
  bm->add_flag("--tower-match", do_match,
               "compare the enumerated stabilizer against its tower");

  std::string group_src, gens_arg, words_arg, sweep;
  CLI::App* cayley = app.add_subcommand(
      "cayley-diameter", "Cayley-graph diameter of a finite quotient");
  cayley->add_option("--group", group_src, "plain group (named or JSON)");
  cayley->add_option("--gens", gens_arg,
                     "generating set as a JSON array of permutations");
  cayley->add_option("--builtin", builtin, "built-in table (grigorchuk)");
  cayley->add_option("--table", table_path, "recursion table JSON file");
  cayley->add_option("--depth", depth, "quotient depth")->check(CLI::Range(1, 30));
  cayley->add_option("--words", words_arg,
                     "comma-separated generating words (default: all "
                     "table generators)");
  cayley->add_option("--sweep-depth", sweep, "depth range a..b, one row each");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval->parsed())
      return cmd_eval(builtin, table_path, word, depth, with_order, as_json);
    if (orbit->parsed())
      return cmd_orbit(builtin, table_path, depth, level, as_json);
    if (verify->parsed())
      return cmd_verify(suite, samples, vdepth, degree, seed, as_json);
    if (tower->parsed()) return cmd_tower(spec_arg, with_sji, as_json);
    if (bm->parsed()) return cmd_bm(f_source, radius, do_match, as_json);
    if (cayley->parsed())
      return cmd_cayley(group_src, gens_arg, builtin, table_path, depth,
                        words_arg, sweep, as_json);
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what()
              << " (raise BRANCHLAB_BUDGET to allow more)\n";
    return 3;
  } catch (const json::exception& e) {
    std::cerr << "JSON error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
