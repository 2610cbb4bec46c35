#pragma once

#include <cstdint>
#include <vector>

#include "branchlab/budget.hpp"
#include "branchlab/numeric.hpp"
#include "branchlab/permgroup.hpp"
#include "branchlab/wreathtower.hpp"

namespace branchlab {

/// The radius-r ball around a vertex of the d-regular unrooted tree, with a
/// legal edge coloring: every vertex carrying all d of its edges sees each
/// color exactly once.  Vertices are numbered in breadth-first order from the
/// center (vertex 0), shell by shell; each non-center vertex records the
/// color of its edge toward the center.
struct ColoredBall {
  int d = 3;
  int radius = 1;
  std::vector<int> parent;        // parent[0] = -1
  std::vector<int> parent_color;  // parent_color[0] = -1
  std::vector<std::vector<int>> children;
  std::vector<int> shell_start;   // radius+2 entries; shell k = [s[k], s[k+1])

  int vertex_count() const { return static_cast<int>(parent.size()); }
  int shell_of(int v) const;
  /// True when all d edges of v lie inside the ball (distance < radius).
  bool is_internal(int v) const { return shell_of(v) < radius; }
};

/// Structural and coloring invariants; throws std::invalid_argument.
void check_colored_ball(const ColoredBall& ball);

/// The canonical legal coloring: center edges colored 0..d-1 in child order;
/// every deeper vertex hands the colors other than its parent color to its
/// children in ascending order.
ColoredBall make_legal_coloring(int d, int radius);

/// tables[v][color] = the neighbor of v across the color's edge, or -1 when
/// the ball has no such edge (boundary vertices carry only the parent edge).
std::vector<std::vector<int>> neighbor_tables(const ColoredBall& ball);

/// A graph automorphism of the ball, as the vertex image list.
struct BallAutomorphism {
  std::vector<int> image;
};

/// Bijection + adjacency preservation; throws std::invalid_argument.
void check_ball_automorphism(const ColoredBall& ball,
                             const BallAutomorphism& g);

/// The permutation of colors read at v: color of the g-image of the
/// color-gamma edge at v.  Both v and g.v must be internal ("local action
/// undefined" otherwise).
Perm local_action(const ColoredBall& ball, const BallAutomorphism& g, int v);

/// Whether every defined local action of g lies in F.
bool is_legal(const ColoredBall& ball, const BallAutomorphism& g,
              const PermGroup& F);

/// |F| * prod over non-center internal v of |Stab_F(parent color of v)| —
/// the predicted size of the legal center stabilizer.
u128 stabilizer_count_formula(const ColoredBall& ball, const PermGroup& F);

/// All legal automorphisms fixing the center, as a permutation group on the
/// full (boundary-inclusive) vertex set.  Built by choosing an element of F
/// at the center and then, at every deeper internal vertex, an element of the
/// coset sending the forced center-ward color correctly.
PermGroup enumerate_stabilizer(const ColoredBall& ball, const PermGroup& F,
                               const Budget& budget = default_budget());

struct HypothesisReport {
  int degree = 0;
  bool perfect = false;
  bool two_transitive = false;
  bool generated_by_point_stabilizers = false;
  bool point_stabilizer_perfect = false;
  bool degree_at_least_six = false;

  bool all_group_hypotheses() const {
    return perfect && two_transitive && generated_by_point_stabilizers &&
           point_stabilizer_perfect;
  }
};

/// The four group-theoretic hypotheses on a local group F, plus the degree
/// flag: perfect, 2-transitive, generated by point stabilizers, and
/// point-stabilizer perfect.
HypothesisReport check_theorem_hypotheses(const PermGroup& F);

/// The tower the legal center stabilizer should match: factor 0 is F on [d],
/// every deeper factor is the point stabilizer of F acting on the remaining
/// d-1 points.
TowerSpec bm_tower_spec(const PermGroup& F, int depth);

/// Compares enumerate_stabilizer on the radius-`depth` canonical ball with
/// build_tower(bm_tower_spec(F, depth)): equal orders and equal orbit-size
/// multisets shell by shell.
bool tower_match(const PermGroup& F, int depth,
                 const Budget& budget = default_budget());

/// The vertex map sending each color address of b1 to the same color address
/// of b2 — an automorphism of the underlying ball that conjugates b1-legality
/// to b2-legality.
BallAutomorphism recoloring_map(const ColoredBall& b1, const ColoredBall& b2);

}  // namespace branchlab
