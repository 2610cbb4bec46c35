#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "branchlab/budget.hpp"
#include "branchlab/numeric.hpp"
#include "branchlab/permgroup.hpp"
#include "branchlab/portrait.hpp"

namespace branchlab {

/// One letter of a group word: a generator name and an integer exponent.
struct WordLetter {
  std::string name;
  int exponent = 1;

  friend bool operator==(const WordLetter&, const WordLetter&) = default;
};

/// A word over named generators; the empty word is the identity.
struct Word {
  std::vector<WordLetter> letters;

  friend bool operator==(const Word&, const Word&) = default;
};

/// Parses "a b^-1 c" (whitespace-separated, optional ^exponent) or the
/// compact form "ab" (every character a single-letter generator name).
/// A token that is not itself a declared name is exploded into characters.
Word parse_word(const std::string& text, const std::set<std::string>& names);

/// g = (sections[0], ..., sections[d-1]) root: the root permutation followed
/// by one recursion word per child, so g(i . u) = root(i) . sections[i](u).
struct RecursionRule {
  Perm root;
  std::vector<Word> sections;
};

/// A wreath recursion over a constant-degree tree: finitely many named
/// generators, each defined by a root permutation and section words.
class RecursionTable {
 public:
  RecursionTable(int degree, std::map<std::string, RecursionRule> rules);

  int degree() const { return degree_; }
  const std::map<std::string, RecursionRule>& rules() const { return rules_; }
  const RecursionRule& rule(const std::string& name) const;
  std::set<std::string> names() const;

 private:
  int degree_;
  std::map<std::string, RecursionRule> rules_;
};

/// The four-generator recursion a = (1,1)s, b = (a,c), c = (a,d), d = (1,b)
/// over the binary tree (s the swap): the first Grigorchuk group.
RecursionTable grigorchuk_table();

/// Depth-truncated portrait of a word (depth >= 1).  Evaluation is a
/// homomorphism: words compose left-to-right as functions, matching
/// act(compose(p, q), v) = act(p, act(q, v)).
Portrait evaluate(const RecursionTable& table, const Word& word, int depth);
Portrait evaluate(const RecursionTable& table, const std::string& word,
                  int depth);

/// Generator portraits at the given depth, in name order.
PortraitGroup quotient_portraits(const RecursionTable& table, int depth);

/// The finite quotient acting on the full leaf level.
PermGroup quotient_group(const RecursionTable& table, int depth,
                         const Budget& budget = default_budget());

/// x = (ca, ac) with trivial root permutation: the seed of the small rigid
/// subgroup K = <x, (x,1), (1,x)> of the Grigorchuk group.
Portrait element_x(int depth);

/// Depth-truncated generators of K (depth >= 2) and of K1 = K x K.
std::vector<Portrait> k_generators(int depth);
std::vector<Portrait> k1_generators(int depth);

struct GrigIndexRow {
  int depth = 0;
  u128 index_k_over_k1 = 0;
  u128 index_g_over_k = 0;
  bool y_has_coset_order_four = false;  // y = (ab)^2 modulo K1
};

struct GrigIndexReport {
  std::vector<GrigIndexRow> rows;
  /// First depth whose row repeats the previous row's value (per index).
  std::optional<int> stabilized_k_over_k1;
  std::optional<int> stabilized_g_over_k;
  u128 index_k_over_k1 = 0;  // value at the last computed depth
  u128 index_g_over_k = 0;
  /// K/K1 cyclic of that order with the coset of y generating, at the last
  /// computed depth.
  bool k_mod_k1_cyclic_by_y = false;
};

/// Indices |K_d : (KxK)_d| and |G_d : K_d| for d = 2..max_depth, with the
/// depth at which two consecutive rows agree.  Stops early once both indices
/// have stabilized unless told otherwise.
GrigIndexReport k_subgroup_indices(int max_depth, bool stop_when_stable = true);

/// True iff every generator of K reappears as the section at v of an element
/// of the depth-truncated K supported below v (i.e. the embedded generator is
/// a member).  Requires v.level() + 2 <= depth.
bool check_self_replicating(int depth, const Vertex& v);

}  // namespace branchlab
