#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "branchlab/budget.hpp"
#include "branchlab/permgroup.hpp"
#include "branchlab/portrait.hpp"
#include "branchlab/tree.hpp"

namespace branchlab {

/// One factor g tau^e g^{-1} of a commutator-trick product.
struct ConjugatorPair {
  Portrait conjugator;
  int exponent = 1;  // +1 or -1, the power of tau being conjugated
};

/// Four conjugates of tau^{+-1} whose product is the commutator [s1, s2];
/// the identity is machine-verified before the witness is returned.
struct CommutatorWitness {
  std::vector<ConjugatorPair> conjugators;
  Portrait target;
};

/// Builds the witness with conjugator pairs (s1,+1), (1,-1), (s2,+1),
/// (s2*s1,-1).  All three inputs are truncated to `level`, and the
/// hypothesis — tau moves the level-`level` support of s1 clear of the
/// supports of s1 and s2 — is checked there; a violation names the offending
/// vertex.  The returned product identity holds bit-exactly.
CommutatorWitness commutator_trick(const Portrait& tau, const Portrait& s1,
                                   const Portrait& s2, int level);

/// Plain-permutation flavor: the domain is read as the single level of a
/// depth-1 tree.
CommutatorWitness commutator_trick(const Perm& tau, const Perm& s1,
                                   const Perm& s2);

/// Answer to "does A realize every rigid-stabilizer section at v?".  The
/// sections live on the leaf block below v (as permutations of that block);
/// matched_in[i] is the index into A of an element fixing v whose behavior
/// below v equals rist_sections[i].  On failure `full` is false and
/// `refutation` holds the first unrealized section.
struct FullnessCertificate {
  Vertex v;
  bool full = false;
  std::vector<Perm> rist_sections;
  std::vector<int> matched_in;
  std::optional<Perm> refutation;
};

/// Decides fullness of A above v inside the ambient depth-truncated group,
/// enumerating rist_ambient(v) through a stabilizer chain based at the leaves
/// outside the subtree of v.
FullnessCertificate is_full_above(const std::vector<Portrait>& A,
                                  const Vertex& v, const PortraitGroup& ambient,
                                  const Budget& budget = default_budget());

struct DiagonalResult {
  int index = 0;   // which member of the family is full
  Vertex vertex;   // ... above this vertex
  FullnessCertificate certificate;
};

/// Replays the diagonal argument: checks that the family exactly covers the
/// ambient group, then walks the rightmost branch below w — candidate n is
/// the least child of w_n different from w_{n+1} — returning the first family
/// member full above its candidate.  Exact covers always yield one when the
/// walk has room for the whole family.
DiagonalResult diagonalization_search(
    const std::vector<std::vector<Portrait>>& family, const Vertex& w,
    const PortraitGroup& ambient, const Budget& budget = default_budget());

struct ContainmentReport {
  Vertex w;                 // the moved vertex below v the argument descends to
  std::size_t x_index = 0;  // index in A of the rigid element x with x.w != w
  int width = 0;            // commutator width k of rist(w)
  int exponent_bound = 0;   // 10k
  bool verified = false;    // D(rist(w)) contained in A^{10k}, by membership
};

/// Certifies D(rist(w)) <= A^{10k} for some w below v: requires A full above
/// v and meeting rist(v) nontrivially, picks the first such x in A and the
/// lexicographically least w it moves, replays the ten-letter identity
/// [g,h] = [g~,[h~,x]] for every pair of rist(w), and then checks the derived
/// subgroup inside the tenfold product set of A (taken symmetric, so letters
/// may be inverses of A elements).
ContainmentReport comm_width_containment(const std::vector<Portrait>& A,
                                         const Vertex& v,
                                         const PortraitGroup& ambient,
                                         const Budget& budget =
                                             default_budget());

/// The rigid-stabilizer derangement of the first Grigorchuk group: one
/// self-replicated copy of x = (ab)^2 below every level-n vertex, fixed-point
/// free on V_{n+2}.  Requires depth >= n+2.
Portrait grigorchuk_derangement(int n, int depth);

}  // namespace branchlab
