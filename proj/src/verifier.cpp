#include "branchlab/verifier.hpp"

#include <algorithm>
#include <climits>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

#include "branchlab/selfsimilar.hpp"

namespace branchlab {

namespace {

std::string vertex_text(const Vertex& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.word.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v.word[i]);
  }
  return s + ")";
}

struct LeafBlock {
  std::uint64_t start = 0;
  std::uint64_t size = 1;
};

// The leaves below v form one contiguous rank block.
LeafBlock leaf_block(const DegreeSequence& seq, const Vertex& v) {
  LeafBlock b;
  for (int j = v.level(); j < seq.depth(); ++j)
    b.size *= static_cast<std::uint64_t>(seq.degree(j));
  b.start = vertex_rank(seq, v) * b.size;
  return b;
}

int checked_leaf_domain(const DegreeSequence& seq) {
  const std::uint64_t leaves = seq.level_size(seq.depth());
  if (leaves > static_cast<std::uint64_t>(INT_MAX))
    throw std::overflow_error("leaf level too large for a permutation domain");
  return static_cast<int>(leaves);
}

// Restriction of a leaf permutation to the block below v, re-based at 0.
// Valid only for permutations mapping the block to itself.
Perm block_restriction(const Perm& lp, const LeafBlock& blk) {
  std::vector<int> img(blk.size);
  for (std::uint64_t t = 0; t < blk.size; ++t)
    img[t] = lp(static_cast<int>(blk.start + t)) - static_cast<int>(blk.start);
  return Perm(std::move(img));
}

// Generators of rist_ambient(v) on the leaf level: strong generators of the
// pointwise stabilizer of every leaf outside the subtree of v.
std::vector<Perm> rist_leaf_generators(const PortraitGroup& ambient,
                                       const Vertex& v) {
  const int leaves = checked_leaf_domain(ambient.seq);
  const LeafBlock blk = leaf_block(ambient.seq, v);
  std::vector<int> forced;
  forced.reserve(static_cast<std::size_t>(leaves) -
                 static_cast<std::size_t>(blk.size));
  for (int p = 0; p < leaves; ++p)
    if (static_cast<std::uint64_t>(p) < blk.start ||
        static_cast<std::uint64_t>(p) >= blk.start + blk.size)
      forced.push_back(p);
  std::vector<Perm> lg;
  lg.reserve(ambient.gens.size());
  for (const Portrait& g : ambient.gens) lg.push_back(leaf_action(g));
  StabilizerChain chain(leaves, lg, forced);
  return chain.stabilizer_generators(static_cast<int>(forced.size()));
}

}  // namespace

CommutatorWitness commutator_trick(const Portrait& tau, const Portrait& s1,
                                   const Portrait& s2, int level) {
  if (!(tau.seq() == s1.seq()) || !(tau.seq() == s2.seq()))
    throw std::invalid_argument("inputs live on different trees");
  if (level < 1 || level > tau.depth())
    throw std::invalid_argument("level must lie within the depth");
  const Portrait t = truncate(tau, level);
  const Portrait a = truncate(s1, level);
  const Portrait b = truncate(s2, level);

  const std::vector<Vertex> S1 = support_level(a, level);
  const std::vector<Vertex> S2 = support_level(b, level);
  const auto within = [](const std::vector<Vertex>& S, const Vertex& u) {
    return std::binary_search(S.begin(), S.end(), u);
  };
  for (const Vertex& u : S1) {
    const Vertex tu = act(t, u);
    if (within(S1, tu) || within(S2, tu))
      throw std::invalid_argument(
          "disjointness hypothesis fails at vertex " + vertex_text(tu));
  }

  CommutatorWitness wit{
      {}, compose(compose(a, b), compose(invert(a), invert(b)))};
  const Portrait id(t.seq());
  wit.conjugators = {{a, +1}, {id, -1}, {b, +1}, {compose(b, a), -1}};

  const Portrait tinv = invert(t);
  Portrait prod(t.seq());
  for (const ConjugatorPair& pair : wit.conjugators) {
    const Portrait factor = compose(
        compose(pair.conjugator, pair.exponent > 0 ? t : tinv),
        invert(pair.conjugator));
    prod = compose(prod, factor);
  }
  if (!(prod == wit.target))
    throw std::logic_error(
        "conjugate product failed to reproduce the commutator");
  return wit;
}

CommutatorWitness commutator_trick(const Perm& tau, const Perm& s1,
                                   const Perm& s2) {
  const int n = tau.degree();
  if (s1.degree() != n || s2.degree() != n)
    throw std::invalid_argument("permutation degrees differ");
  const DegreeSequence seq(std::vector<int>{n});
  const auto lift = [&seq](const Perm& p) {
    Portrait q(seq);
    q.set_perm(Vertex{}, p);
    return q;
  };
  return commutator_trick(lift(tau), lift(s1), lift(s2), 1);
}

FullnessCertificate is_full_above(const std::vector<Portrait>& A,
                                  const Vertex& v, const PortraitGroup& ambient,
                                  const Budget& budget) {
  check_vertex(ambient.seq, v);
  for (const Portrait& a : A)
    if (!(a.seq() == ambient.seq))
      throw std::invalid_argument("tested set lives on a different tree");
  const int leaves = checked_leaf_domain(ambient.seq);
  const LeafBlock blk = leaf_block(ambient.seq, v);

  // Sections below v of the v-fixing elements of A, with the least realizing
  // index; sorted so rist elements can be matched by binary search.
  std::vector<std::pair<Perm, int>> sections;
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (!(act(A[i], v) == v)) continue;
    sections.emplace_back(block_restriction(leaf_action(A[i]), blk),
                          static_cast<int>(i));
  }
  std::sort(sections.begin(), sections.end());
  sections.erase(std::unique(sections.begin(), sections.end(),
                             [](const auto& x, const auto& y) {
                               return x.first == y.first;
                             }),
                 sections.end());

  const std::vector<Perm> rist_elements =
      elements(PermGroup(leaves, rist_leaf_generators(ambient, v)), budget);

  FullnessCertificate cert{v, true, {}, {}, std::nullopt};
  cert.rist_sections.reserve(rist_elements.size());
  cert.matched_in.reserve(rist_elements.size());
  for (const Perm& r : rist_elements) {
    Perm rb = block_restriction(r, blk);
    const auto it = std::lower_bound(
        sections.begin(), sections.end(), rb,
        [](const std::pair<Perm, int>& s, const Perm& p) { return s.first < p; });
    const bool hit = it != sections.end() && it->first == rb;
    cert.matched_in.push_back(hit ? it->second : -1);
    cert.rist_sections.push_back(std::move(rb));
    if (!hit) {
      cert.full = false;
      cert.refutation = cert.rist_sections.back();
      break;
    }
  }
  return cert;
}

DiagonalResult diagonalization_search(
    const std::vector<std::vector<Portrait>>& family, const Vertex& w,
    const PortraitGroup& ambient, const Budget& budget) {
  check_vertex(ambient.seq, w);
  if (family.empty()) throw std::invalid_argument("the family is empty");

  // Exact-cover precondition on the leaf level.
  const int leaves = checked_leaf_domain(ambient.seq);
  std::set<Perm> covered;
  for (const std::vector<Portrait>& part : family)
    for (const Portrait& p : part) {
      if (!(p.seq() == ambient.seq))
        throw std::invalid_argument("family member lives on a different tree");
      covered.insert(leaf_action(p));
    }
  std::vector<Perm> ambient_gens;
  for (const Portrait& g : ambient.gens) ambient_gens.push_back(leaf_action(g));
  const std::vector<Perm> all =
      elements(PermGroup(leaves, std::move(ambient_gens)), budget);
  if (covered != std::set<Perm>(all.begin(), all.end()))
    throw std::invalid_argument("family does not cover the ambient group");

  // Walk the rightmost branch; candidate n is the least child off the branch.
  Vertex wn = w;
  for (int n = 0; n < static_cast<int>(family.size()); ++n) {
    if (wn.level() >= ambient.seq.depth())
      throw std::invalid_argument(
          "family too large for the depth below the start vertex");
    Vertex candidate = wn;
    // Least child off the branch: the branch continues through the rightmost
    // child (index degree-1 >= 1), so child 0 always differs from it.
    candidate.word.push_back(0);
    FullnessCertificate cert =
        is_full_above(family[static_cast<std::size_t>(n)], candidate, ambient,
                      budget);
    if (cert.full)
      return DiagonalResult{n, candidate, std::move(cert)};
    wn.word.push_back(ambient.seq.degree(wn.level()) - 1);
  }
  throw std::logic_error(
      "exact cover exhausted without a full member; the diagonal argument "
      "excludes this");
}

ContainmentReport comm_width_containment(const std::vector<Portrait>& A,
                                         const Vertex& v,
                                         const PortraitGroup& ambient,
                                         const Budget& budget) {
  const FullnessCertificate cert = is_full_above(A, v, ambient, budget);
  if (!cert.full)
    throw std::invalid_argument("the set is not full above the vertex");
  const DegreeSequence& seq = ambient.seq;
  const int leaves = checked_leaf_domain(seq);
  const LeafBlock blk = leaf_block(seq, v);

  // x: first element of A lying in rist(v) nontrivially.
  std::size_t x_idx = A.size();
  for (std::size_t i = 0; i < A.size(); ++i) {
    const Perm lp = leaf_action(A[i]);
    if (lp.is_identity()) continue;
    bool inside = true;
    for (int p = 0; p < leaves && inside; ++p)
      if ((static_cast<std::uint64_t>(p) < blk.start ||
           static_cast<std::uint64_t>(p) >= blk.start + blk.size) &&
          lp(p) != p)
        inside = false;
    if (inside) {
      x_idx = i;
      break;
    }
  }
  if (x_idx == A.size())
    throw std::invalid_argument(
        "the set meets the rigid stabilizer at the vertex trivially");
  const Portrait& x = A[x_idx];

  // w: lexicographically least vertex below v that x moves.
  std::optional<Vertex> w;
  for (int n = v.level() + 1; n <= seq.depth(); ++n)
    for (const Vertex& u : support_level(x, n))
      if (is_below(v, u) && (!w || u < *w)) w = u;
  if (!w) throw std::logic_error("nontrivial rigid element moves no vertex");

  PermGroup R(leaves, rist_leaf_generators(ambient, *w));
  const int k = commutator_width(R, budget);

  // Replay [g,h] = [g~,[h~,x]] for every pair of rist(w), with g~, h~ the
  // certificate's realizations of g, h below v.
  const std::vector<Perm> R_el = elements(R, budget);
  std::unordered_map<Perm, Perm, PermHash> realized;
  for (const Perm& g : R_el) {
    const Perm gb = block_restriction(g, blk);
    const auto it = std::lower_bound(cert.rist_sections.begin(),
                                     cert.rist_sections.end(), gb);
    if (it == cert.rist_sections.end() || !(*it == gb))
      throw std::logic_error(
          "rigid element section missing from the fullness certificate");
    const int idx =
        cert.matched_in[static_cast<std::size_t>(it - cert.rist_sections.begin())];
    realized.emplace(g, leaf_action(A[static_cast<std::size_t>(idx)]));
  }
  const Perm xlp = leaf_action(x);
  for (const Perm& g : R_el) {
    const Perm& gt = realized.at(g);
    for (const Perm& h : R_el) {
      const Perm& ht = realized.at(h);
      if (!(commutator(g, h) == commutator(gt, commutator(ht, xlp))))
        throw std::logic_error("ten-letter identity replay failed");
    }
  }

  // Membership check D(rist(w)) <= A^{10k}, A read symmetrically.
  std::set<Perm> letters;
  for (const Portrait& a : A) {
    Perm p = leaf_action(a);
    letters.insert(p.inverse());
    letters.insert(std::move(p));
  }
  std::set<Perm> tenfold{Perm(leaves)};
  for (int step = 0; step < 10; ++step) {
    std::set<Perm> next;
    for (const Perm& s : tenfold)
      for (const Perm& t : letters) next.insert(s * t);
    budget.charge(next.size(), "letter product set");
    tenfold = std::move(next);
  }
  std::set<Perm> reach{Perm(leaves)};
  for (int i = 0; i < k; ++i) {
    std::set<Perm> next;
    for (const Perm& s : reach)
      for (const Perm& t : tenfold) next.insert(s * t);
    budget.charge(next.size(), "containment power set");
    reach = std::move(next);
  }

  const std::vector<Perm> derived = elements(derived_subgroup(R), budget);
  const bool verified =
      std::all_of(derived.begin(), derived.end(),
                  [&reach](const Perm& d) { return reach.count(d) > 0; });
  return ContainmentReport{*w, x_idx, k, 10 * k, verified};
}

Portrait grigorchuk_derangement(int n, int depth) {
  if (n < 0) throw std::invalid_argument("level must be nonnegative");
  if (depth < n + 2)
    throw std::invalid_argument(
        "depth must reach two levels below the stated level");
  const DegreeSequence seq = DegreeSequence::constant(2, depth);
  Portrait z(seq);
  const Portrait x = element_x(depth - n);
  for (const Vertex& u : level_vertices(seq, n))
    z = compose(z, embed(x, u, seq));
  return z;
}

}  // namespace branchlab
