#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "branchlab/perm.hpp"
#include "branchlab/tree.hpp"

namespace branchlab {

/// A depth-n tree automorphism stored as one child permutation per internal
/// vertex (levels 0..depth-1, vertices in lexicographic order per level).
///
/// The action threads top-down through the *source* addresses:
///   act(p, i . u) = sigma(i) . act(section_i(p), u)
/// where sigma is the root permutation, so the image of letter k of a word is
/// perm_at(source prefix of length k) applied to that letter.  A portrait is
/// determined by (and faithfully represented as) its permutation of any full
/// leaf level.
class Portrait {
 public:
  /// Identity automorphism.
  explicit Portrait(DegreeSequence seq);
  /// From explicit tables: level_perms[k][r] is the child permutation at the
  /// rank-r vertex of level k and must have degree seq.degree(k).
  Portrait(DegreeSequence seq, std::vector<std::vector<Perm>> level_perms);

  const DegreeSequence& seq() const { return seq_; }
  int depth() const { return seq_.depth(); }

  const Perm& perm_at(const Vertex& v) const;
  const Perm& perm_at(int level, std::uint64_t rank) const;
  void set_perm(const Vertex& v, const Perm& p);

  bool is_identity() const;

  friend bool operator==(const Portrait&, const Portrait&) = default;

 private:
  DegreeSequence seq_;
  std::vector<std::vector<Perm>> perms_;
};

/// Image of a vertex.
Vertex act(const Portrait& p, const Vertex& v);

/// Composition as functions: act(compose(p, q), v) = act(p, act(q, v)).
Portrait compose(const Portrait& p, const Portrait& q);

Portrait invert(const Portrait& p);

/// The automorphism of the subtree below v induced by p; requires that p fix
/// v ("vertex not fixed" otherwise).
Portrait section(const Portrait& p, const Vertex& v);

/// v must be an internal vertex or deeper subtree root: grafts `sub` below v
/// (identity everywhere else).  sub's degrees must match the ambient tail.
Portrait embed(const Portrait& sub, const Vertex& v,
               const DegreeSequence& ambient);

/// Level-n vertices moved by p, ascending.
std::vector<Vertex> support_level(const Portrait& p, int n);

/// True iff p fixes no level-n vertex (n >= 1).
bool is_derangement_of_level(const Portrait& p, int n);

/// Forgets everything below level m; a homomorphism onto the depth-m quotient.
Portrait truncate(const Portrait& p, int m);

/// Permutation induced on the ranks of level-n vertices.
Perm level_action(const Portrait& p, int n);

/// level_action at the full depth — the faithful flat copy of p.
Perm leaf_action(const Portrait& p);

/// Uniformly random portrait (independent uniform child permutations).
Portrait random_portrait(const DegreeSequence& seq, std::mt19937_64& rng);

/// A finitely generated group of depth-truncated tree automorphisms.
struct PortraitGroup {
  DegreeSequence seq;
  std::vector<Portrait> gens;
};

}  // namespace branchlab
