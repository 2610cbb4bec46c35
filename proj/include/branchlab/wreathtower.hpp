#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "branchlab/budget.hpp"
#include "branchlab/numeric.hpp"
#include "branchlab/permgroup.hpp"
#include "branchlab/portrait.hpp"
#include "branchlab/tree.hpp"

namespace branchlab {

/// Factors of a finite wreath tower, outermost first: factors[i] permutes the
/// children of every level-i vertex of the tree whose degree sequence is
/// alpha(i) = factors[i].degree.
struct TowerSpec {
  std::vector<PermGroup> factors;

  explicit TowerSpec(std::vector<PermGroup> fs);
  int depth() const { return static_cast<int>(factors.size()); }
  DegreeSequence degrees() const;
};

/// Trailing factors [n:], i.e. the tower seen from a level-n vertex downward.
TowerSpec tail_spec(const TowerSpec& spec, int n);
/// Leading factors [:n], i.e. the depth-n head quotient's tower.
TowerSpec head_spec(const TowerSpec& spec, int n);

/// Where one generator portrait came from: generator gen_index of
/// factors[level], planted at the level-`level` vertex of rank vertex_rank.
struct TowerGenInfo {
  int level = 0;
  std::uint64_t vertex_rank = 0;
  int gen_index = 0;
};

struct TowerGroup {
  TowerSpec spec;
  DegreeSequence degrees;
  std::vector<Portrait> gens;          // one per (level, vertex, factor gen)
  std::vector<TowerGenInfo> gen_info;  // parallel to gens
  std::vector<u128> factor_orders;
  std::vector<bool> factor_transitive;

  int depth() const { return spec.depth(); }
};

/// One wreath step (B,Y) wr (A,X) applied to a point:
///   (f, a).(x, y) = (a.x, f(a.x).y),
/// where f maps each x in X to an element of B.  Every f[x] must share one
/// degree |Y|, and |f| must equal a's degree |X|.
std::pair<int, int> wreath_act(const std::vector<Perm>& f, const Perm& a,
                               std::pair<int, int> point);

/// The same wreath element as a single permutation of X x Y under the rank
/// map (x, y) -> x*|Y| + y, so towers can be nested for associativity checks.
Perm wreath_perm(const std::vector<Perm>& f, const Perm& a);

/// Generator portraits for the tower: every generator of factors[i] planted
/// at every level-i vertex with identity elsewhere.  Charges the budget for
/// the leaf domain and the generator count, never for the group order.
TowerGroup build_tower(const TowerSpec& spec,
                       const Budget& budget = default_budget());

/// prod_i |A_i|^{|V_i|} with 128-bit overflow checking.
u128 tower_order(const TowerSpec& spec);
/// The same order as a prime-exponent map (never overflows).
std::map<std::uint64_t, std::int64_t> tower_order_exponents(
    const TowerSpec& spec);

/// The tower as a permutation group on the leaf level.
PermGroup leaf_group(const TowerGroup& G);

/// A subgroup given by generators plus an order certified by the structural
/// product formula, deferring any element materialization.
struct CertifiedSubgroup {
  DegreeSequence degrees;
  std::vector<Portrait> gens;
  std::map<std::uint64_t, std::int64_t> order_exponents;

  u128 order() const;  // from the exponent map; throws past 128 bits
  PermGroup to_perm_group() const;
};

/// st(n): everything fixing V_n pointwise — the generators at levels >= n.
CertifiedSubgroup level_stabilizer(const TowerGroup& G, int n);

/// rist(v): everything supported below v — the generators planted in the
/// subtree of v.  Isomorphic to the tail tower tail_spec(spec, v.level()).
CertifiedSubgroup rigid_stabilizer(const TowerGroup& G, const Vertex& v);

/// rist(n) = <rist(v) | v in V_n>, order prod_{v in V_n} |rist(v)|.  For full
/// towers this coincides with st(n).
CertifiedSubgroup rigid_level_stabilizer(const TowerGroup& G, int n);

struct DerangementWitness {
  int level = 0;      // N: the level on which the element is fixed-point-free
  Portrait element;   // prod_{v in V_n} x_v, a member of rist(n)
};

/// A derangement of V_{n+1} inside st(n): one fixed-point-free element x_v of
/// factors[n] planted at every level-n vertex.  Errors when factors[n] is
/// intransitive (the derangement guarantee needs transitivity).
DerangementWitness locally_has_derangements_witness(const TowerGroup& G,
                                                    int n);

/// Whether rist(n)'s derived subgroup is all of rist(n) (perfect rigid level
/// stabilizer), computed by Schreier-Sims order comparison.
bool check_sji_criterion(const TowerGroup& G, int n,
                         const Budget& budget = default_budget());

/// Whether the tower acts transitively on every level 1..depth.
bool is_spherically_transitive(const TowerGroup& G);

/// An element of the tower mapping v to w (same level), assembled from one
/// factor element per level.  Errors when some factor cannot make a required
/// move (possible only for intransitive factors).
Portrait vertex_transporter(const TowerGroup& G, const Vertex& v,
                            const Vertex& w);

}  // namespace branchlab
