#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "branchlab/budget.hpp"
#include "branchlab/numeric.hpp"
#include "branchlab/perm.hpp"

namespace branchlab {

/// A permutation group given by generators on {0, ..., degree-1}.  An empty
/// generator list is the trivial group.
struct PermGroup {
  int degree = 1;
  std::vector<Perm> gens;

  PermGroup() = default;
  PermGroup(int n, std::vector<Perm> g);
};

/// Base-and-strong-generating-set structure.  Orders and membership come from
/// here, so groups far larger than any element budget stay tractable.
///
/// A forced base prefix pins the first base points; the strong generators at
/// level k then generate the pointwise stabilizer of the first k forced
/// points, which is how point and subtree stabilizers are extracted.
class StabilizerChain {
 public:
  StabilizerChain(int degree, const std::vector<Perm>& gens,
                  const std::vector<int>& forced_base = {});

  int degree() const { return degree_; }
  bool contains(const Perm& g) const;
  /// Adds one generator, rebuilding only the affected levels.  Returns true
  /// if the group grew.
  bool extend(const Perm& g);

  u128 order() const;
  /// Order as a prime -> exponent map; exact for groups whose order does not
  /// fit in any machine word.
  std::map<std::uint64_t, std::int64_t> order_exponents() const;

  std::vector<int> base() const;
  /// Generators of the pointwise stabilizer of base()[0..k-1].
  std::vector<Perm> stabilizer_generators(int k) const;

 private:
  struct Level {
    int point = -1;
    std::vector<Perm> gens;
    std::unordered_map<int, Perm> transversal;  // orbit point -> rep u, u(point)=that
    std::vector<int> orbit;                     // discovery order
  };

  int degree_;
  std::vector<Level> levels_;

  // (residue, level index where sifting stopped); residue is the identity on
  // full success.
  std::pair<Perm, int> sift(Perm g, int from) const;
  void insert_gen(const Perm& g, int from_level, int& out_top);
  void rebuild_orbit(int i);
  void complete(int i);
};

/// Exact index |G : H| for H <= G, computed from factored chain orders (never
/// materializes the orders themselves).  The containment is the caller's
/// responsibility.
u128 chain_index(const StabilizerChain& g, const StabilizerChain& h);

/// Every element, sorted, via breadth-first closure of the generators.
std::vector<Perm> elements(const PermGroup& g,
                           const Budget& budget = default_budget());

u128 order(const PermGroup& g);
std::map<std::uint64_t, std::int64_t> order_exponents(const PermGroup& g);

/// Orbit partition of the domain, each orbit ascending, orbits sorted by
/// least point.
std::vector<std::vector<int>> orbits(const PermGroup& g);

bool is_transitive(const PermGroup& g);

/// Transitivity on ordered k-tuples of distinct points, decided by the orbit
/// of (0, ..., k-1) in the induced action.
bool is_k_transitive(const PermGroup& g, int k,
                     const Budget& budget = default_budget());

/// Stab_G(x) from the level-1 strong generators of a chain based at x; the
/// orbit-stabilizer identity |orbit(x)| * |Stab| = |G| is a test oracle.
PermGroup point_stabilizer(const PermGroup& g, int x);

bool is_generated_by_point_stabilizers(const PermGroup& g);

/// Derived subgroup as the normal closure of the generator commutators.
PermGroup derived_subgroup(const PermGroup& g);

bool is_perfect(const PermGroup& g);

/// Least N with every element of the derived subgroup a product of N
/// commutators (0 for abelian groups).  Brute force: materializes the element
/// set and the full commutator set, then grows products layer by layer.
int commutator_width(const PermGroup& g,
                     const Budget& budget = default_budget());

/// First fixed-point-free element found by breadth-first search, or nullopt
/// after exhausting the group.
std::optional<Perm> find_derangement(const PermGroup& g,
                                     const Budget& budget = default_budget());

/// "Sym(d)", "Alt(d)", "Cyclic(d)".
PermGroup named_group(const std::string& name);

}  // namespace branchlab
