#include "branchlab/suites.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>

#include "branchlab/numeric.hpp"
#include "branchlab/permgroup.hpp"
#include "branchlab/portrait.hpp"
#include "branchlab/selfsimilar.hpp"
#include "branchlab/tree.hpp"
#include "branchlab/verifier.hpp"
#include "branchlab/wreathtower.hpp"

namespace branchlab {

namespace {

// Inclusive uniform draw via modulo: uniform_int_distribution is not pinned
// across standard libraries, and reproducibility from the seed matters more
// here than the negligible modulo bias.
int rand_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Perm random_perm(std::mt19937_64& rng, int degree) {
  std::vector<int> img(static_cast<std::size_t>(degree));
  std::iota(img.begin(), img.end(), 0);
  std::shuffle(img.begin(), img.end(), rng);
  return Perm(std::move(img));
}

std::string fraction(int ok, int total) {
  return std::to_string(ok) + "/" + std::to_string(total);
}

/// Every element of the generated depth-truncated group, by breadth-first
/// closure, keyed (and deduplicated) by the faithful leaf action.
std::vector<Portrait> portrait_closure(const PortraitGroup& g,
                                       const Budget& budget) {
  std::map<Perm, Portrait> seen;
  std::deque<const Portrait*> queue;
  Portrait id(g.seq);
  auto [root, inserted] = seen.emplace(leaf_action(id), std::move(id));
  queue.push_back(&root->second);
  while (!queue.empty()) {
    const Portrait cur = *queue.front();  // copy: the map may rebalance
    queue.pop_front();
    for (const Portrait& s : g.gens) {
      Portrait nxt = compose(s, cur);
      Perm key = leaf_action(nxt);
      if (seen.contains(key)) continue;
      budget.charge(static_cast<std::uint64_t>(seen.size()) + 1,
                    "portrait closure");
      auto [it, fresh] = seen.emplace(std::move(key), std::move(nxt));
      queue.push_back(&it->second);
    }
  }
  std::vector<Portrait> out;
  out.reserve(seen.size());
  for (auto& [key, p] : seen) out.push_back(std::move(p));
  return out;
}

TowerSpec binary_tower_spec(int depth) {
  std::vector<PermGroup> factors(static_cast<std::size_t>(depth),
                                 named_group("Sym(2)"));
  return TowerSpec(std::move(factors));
}

u128 chain_order_of(const PermGroup& g) {
  return StabilizerChain(g.degree, g.gens).order();
}

}  // namespace

bool SuiteReport::all_passed() const {
  for (const SuiteCheck& c : checks)
    if (!c.passed) return false;
  return true;
}

SuiteReport run_comm_trick_suite(int samples, int max_depth,
                                 std::uint64_t seed, const Budget& budget) {
  (void)budget;
  SuiteReport rep{"comm-trick", true, seed, {}};
  std::mt19937_64 rng(seed);
  const int hi_depth = std::max(2, max_depth);
  int verified = 0;
  std::string first_failure;
  for (int i = 0; i < samples; ++i) {
    const int depth = rand_int(rng, 2, hi_depth);
    std::vector<int> degs(static_cast<std::size_t>(depth));
    degs[0] = rand_int(rng, 3, 4);
    for (int k = 1; k < depth; ++k)
      degs[static_cast<std::size_t>(k)] = rand_int(rng, 2, 3);
    const DegreeSequence seq(degs);
    std::vector<int> slots(static_cast<std::size_t>(degs[0]));
    std::iota(slots.begin(), slots.end(), 0);
    std::shuffle(slots.begin(), slots.end(), rng);
    const Vertex u0(std::vector<int>{slots[0]});
    const Vertex u1(std::vector<int>{slots[1]});
    const Vertex u2(std::vector<int>{slots[2]});
    const DegreeSequence sub = subtree_degrees(seq, 1);
    const Portrait s1 = embed(random_portrait(sub, rng), u0, seq);
    const Portrait s2 =
        embed(random_portrait(sub, rng), rng() % 2 == 0 ? u1 : u0, seq);
    Portrait tau = random_portrait(seq, rng);
    {
      // Root permutation sending the subtree of u0 into the subtree of u2,
      // which neither s1 nor s2 touches.
      std::vector<int> img(static_cast<std::size_t>(degs[0]));
      std::iota(img.begin(), img.end(), 0);
      std::swap(img[static_cast<std::size_t>(slots[0])],
                img[static_cast<std::size_t>(slots[2])]);
      tau.set_perm(Vertex{}, Perm(std::move(img)));
    }
    const int level = rand_int(rng, 1, depth);
    bool ok = false;
    std::string why;
    try {
      const CommutatorWitness w = commutator_trick(tau, s1, s2, level);
      const Portrait tl = truncate(tau, level);
      const Portrait a = truncate(s1, level);
      const Portrait b = truncate(s2, level);
      Portrait prod(tl.seq());
      for (const ConjugatorPair& c : w.conjugators) {
        const Portrait t = c.exponent == 1 ? tl : invert(tl);
        prod = compose(prod,
                       compose(compose(c.conjugator, t), invert(c.conjugator)));
      }
      const Portrait expected =
          compose(compose(a, b), compose(invert(a), invert(b)));
      ok = w.conjugators.size() == 4 && prod == expected &&
           w.target == expected;
      if (!ok) why = "witness product mismatch";
    } catch (const std::exception& e) {
      why = e.what();
    }
    if (ok)
      ++verified;
    else if (first_failure.empty())
      first_failure = "sample " + std::to_string(i) + ": " + why;
  }
  SuiteCheck c;
  c.name = "four-conjugate witnesses replay bit-exactly";
  c.passed = verified == samples;
  c.detail = fraction(verified, samples) + " verified";
  if (!c.passed) c.detail += "; first failure: " + first_failure;
  rep.checks.push_back(std::move(c));
  return rep;
}

SuiteReport run_fullness_suite(int samples, std::uint64_t seed,
                               const Budget& budget) {
  SuiteReport rep{"fullness", true, seed, {}};
  std::mt19937_64 rng(seed);
  const TowerGroup tower = build_tower(binary_tower_spec(3), budget);
  const PortraitGroup ambient{tower.degrees, tower.gens};
  const std::vector<Portrait> all = portrait_closure(ambient, budget);
  int positive = 0;
  int negative = 0;
  int refuted_right = 0;
  for (int i = 0; i < samples; ++i) {
    const int lvl = rand_int(rng, 1, 2);
    const std::uint64_t rank =
        rng() % ambient.seq.level_size(lvl);
    const Vertex v = vertex_at_rank(ambient.seq, lvl, rank);
    const FullnessCertificate whole = is_full_above(all, v, ambient, budget);
    if (whole.full) ++positive;
    if (whole.rist_sections.size() < 2) continue;
    const std::size_t pick =
        1 + rng() % (whole.rist_sections.size() - 1);  // skip the identity
    const Perm dropped = whole.rist_sections[pick];
    std::vector<Portrait> pruned;
    pruned.reserve(all.size());
    for (const Portrait& a : all) {
      if (act(a, v) == v && leaf_action(section(a, v)) == dropped) continue;
      pruned.push_back(a);
    }
    const FullnessCertificate gap = is_full_above(pruned, v, ambient, budget);
    if (!gap.full) ++negative;
    if (gap.refutation && *gap.refutation == dropped) ++refuted_right;
  }
  rep.checks.push_back({"whole group is full above every sampled vertex",
                        positive == samples,
                        fraction(positive, samples) + " full"});
  rep.checks.push_back({"deleting one section's realizers breaks fullness",
                        negative == samples,
                        fraction(negative, samples) + " refuted"});
  rep.checks.push_back({"refutation names the deleted section",
                        refuted_right == samples,
                        fraction(refuted_right, samples) + " exact"});
  return rep;
}

SuiteReport run_diagonal_suite(int samples, std::uint64_t seed,
                               const Budget& budget) {
  SuiteReport rep{"diagonal", true, seed, {}};
  std::mt19937_64 rng(seed);
  const TowerGroup tower = build_tower(binary_tower_spec(3), budget);
  const PortraitGroup ambient{tower.degrees, tower.gens};
  std::vector<Portrait> all = portrait_closure(ambient, budget);
  int ok = 0;
  std::string first_failure;
  for (int i = 0; i < samples; ++i) {
    const int parts = rand_int(rng, 2, 3);
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<std::vector<Portrait>> family(
        static_cast<std::size_t>(parts));
    // Deal the first `parts` elements round-robin so no part is empty, the
    // rest at random: a uniform-ish random partition of the whole group.
    for (std::size_t k = 0; k < all.size(); ++k) {
      const std::size_t part = k < family.size()
                                   ? k
                                   : rng() % family.size();
      family[part].push_back(all[k]);
    }
    std::string why;
    bool good = false;
    try {
      const DiagonalResult res =
          diagonalization_search(family, Vertex{}, ambient, budget);
      const bool in_range =
          res.index >= 0 && res.index < parts;
      const FullnessCertificate again = in_range
          ? is_full_above(family[static_cast<std::size_t>(res.index)],
                          res.vertex, ambient, budget)
          : FullnessCertificate{};
      good = in_range && res.certificate.full && again.full &&
             again.v == res.vertex;
      if (!good) why = "result failed re-verification";
    } catch (const std::exception& e) {
      why = e.what();
    }
    if (good)
      ++ok;
    else if (first_failure.empty())
      first_failure = "sample " + std::to_string(i) + ": " + why;
  }
  SuiteCheck c;
  c.name = "every exact cover yields a re-verified full member";
  c.passed = ok == samples;
  c.detail = fraction(ok, samples) + " verified";
  if (!c.passed) c.detail += "; first failure: " + first_failure;
  rep.checks.push_back(std::move(c));
  return rep;
}

SuiteReport run_grig_derangement_suite() {
  SuiteReport rep{"grig-derangement", false, 0, {}};
  const RecursionTable table = grigorchuk_table();
  for (int n = 0; n <= 2; ++n) {
    const int depth = n + 2;
    const DegreeSequence seq = DegreeSequence::constant(2, depth);
    const Portrait der = grigorchuk_derangement(n, depth);
    const bool trivial_on_vn = support_level(der, n).empty();
    const bool fpf = is_derangement_of_level(der, depth);
    const PermGroup quot = quotient_group(table, depth);
    const StabilizerChain chain(quot.degree, quot.gens);
    const Portrait x = element_x(2);
    bool members = true;
    for (const Vertex& v : level_vertices(seq, n))
      members = members && chain.contains(leaf_action(embed(x, v, seq)));
    SuiteCheck c;
    c.name = "rist(" + std::to_string(n) + ") derangement of V_" +
             std::to_string(depth);
    c.passed = trivial_on_vn && fpf && members;
    c.detail = std::string(fpf ? "fixed-point-free on V_" : "FIXES a point of V_") +
               std::to_string(depth) +
               (trivial_on_vn ? "; trivial on V_" + std::to_string(n)
                              : "; MOVES V_" + std::to_string(n)) +
               (members ? "; every rigid factor lies in the depth-" +
                              std::to_string(depth) + " quotient"
                        : "; a rigid factor escapes the quotient");
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

SuiteReport run_grig_indices_suite(int max_depth) {
  SuiteReport rep{"grig-indices", false, 0, {}};
  const GrigIndexReport r = k_subgroup_indices(max_depth, true);
  std::string rows = "rows:";
  for (const GrigIndexRow& row : r.rows)
    rows += " d" + std::to_string(row.depth) + ":" +
            to_string(row.index_k_over_k1) + "," +
            to_string(row.index_g_over_k);
  {
    SuiteCheck c;
    c.name = "|K : K1| = 4, stabilized";
    c.passed = r.index_k_over_k1 == 4 && r.stabilized_k_over_k1.has_value() &&
               *r.stabilized_k_over_k1 <= max_depth;
    c.detail = "|K : K1| = " + to_string(r.index_k_over_k1) +
               (r.stabilized_k_over_k1
                    ? ", stabilized at depth " +
                          std::to_string(*r.stabilized_k_over_k1)
                    : ", not stabilized") +
               "; " + rows;
    rep.checks.push_back(std::move(c));
  }
  {
    SuiteCheck c;
    c.name = "|G : K| = 16, stabilized";
    c.passed = r.index_g_over_k == 16 && r.stabilized_g_over_k.has_value() &&
               *r.stabilized_g_over_k <= max_depth;
    c.detail = "|G : K| = " + to_string(r.index_g_over_k) +
               (r.stabilized_g_over_k
                    ? ", stabilized at depth " +
                          std::to_string(*r.stabilized_g_over_k)
                    : ", not stabilized");
    rep.checks.push_back(std::move(c));
  }
  {
    SuiteCheck c;
    c.name = "K/K1 cyclic of order four via (ab)^2";
    const bool order_four =
        !r.rows.empty() && r.rows.back().y_has_coset_order_four;
    c.passed = r.k_mod_k1_cyclic_by_y && order_four;
    c.detail = std::string(r.k_mod_k1_cyclic_by_y ? "cyclic" : "NOT cyclic") +
               (order_four ? ", coset order 4" : ", coset order differs");
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

SuiteReport run_jordan_suite(int samples, int max_degree, std::uint64_t seed,
                             const Budget& budget) {
  SuiteReport rep{"jordan", true, seed, {}};
  std::mt19937_64 rng(seed);
  int found = 0;
  std::string first_failure;
  for (int i = 0; i < samples; ++i) {
    PermGroup g;
    for (;;) {
      const int d = rand_int(rng, 2, max_degree);
      std::vector<Perm> gens;
      const int ngens = rand_int(rng, 2, 3);
      for (int k = 0; k < ngens; ++k) gens.push_back(random_perm(rng, d));
      g = PermGroup(d, std::move(gens));
      if (is_transitive(g)) break;
    }
    const std::optional<Perm> der = find_derangement(g, budget);
    const bool good = der.has_value() && is_derangement(*der) &&
                      StabilizerChain(g.degree, g.gens).contains(*der);
    if (good)
      ++found;
    else if (first_failure.empty())
      first_failure = "sample " + std::to_string(i) + " (degree " +
                      std::to_string(g.degree) + ")";
  }
  SuiteCheck c;
  c.name = "every random transitive group has a member derangement";
  c.passed = found == samples;
  c.detail = fraction(found, samples) + " derangements found";
  if (!c.passed) c.detail += "; first failure: " + first_failure;
  rep.checks.push_back(std::move(c));
  return rep;
}

SuiteReport run_axiom_suite(int samples, std::uint64_t seed,
                            const Budget& budget) {
  SuiteReport rep{"axioms", true, seed, {}};
  std::mt19937_64 rng(seed);

  int assoc = 0, ident = 0, inv = 0, hom = 0, nat = 0;
  for (int i = 0; i < samples; ++i) {
    const int depth = rand_int(rng, 1, 3);
    std::vector<int> degs(static_cast<std::size_t>(depth));
    for (int k = 0; k < depth; ++k)
      degs[static_cast<std::size_t>(k)] = rand_int(rng, 2, 3);
    const DegreeSequence seq(degs);
    const Portrait p = random_portrait(seq, rng);
    const Portrait q = random_portrait(seq, rng);
    const Portrait r = random_portrait(seq, rng);
    if (compose(compose(p, q), r) == compose(p, compose(q, r))) ++assoc;
    const Portrait e(seq);
    if (compose(e, p) == p && compose(p, e) == p) ++ident;
    if (compose(p, invert(p)).is_identity() &&
        compose(invert(p), p).is_identity())
      ++inv;
    const int lvl = rand_int(rng, 0, depth);
    const Vertex v =
        vertex_at_rank(seq, lvl, rng() % seq.level_size(lvl));
    if (act(compose(p, q), v) == act(p, act(q, v))) ++hom;
    const int m = rand_int(rng, 1, depth);
    if (truncate(compose(p, q), m) ==
        compose(truncate(p, m), truncate(q, m)))
      ++nat;
  }
  rep.checks.push_back({"composition is associative", assoc == samples,
                        fraction(assoc, samples)});
  rep.checks.push_back({"identity is neutral", ident == samples,
                        fraction(ident, samples)});
  rep.checks.push_back({"inverses cancel", inv == samples,
                        fraction(inv, samples)});
  rep.checks.push_back({"action is a homomorphism", hom == samples,
                        fraction(hom, samples)});
  rep.checks.push_back({"truncation is natural", nat == samples,
                        fraction(nat, samples)});

  int orbstab = 0;
  for (int i = 0; i < samples; ++i) {
    const int d = rand_int(rng, 3, 8);
    std::vector<Perm> gens{random_perm(rng, d), random_perm(rng, d)};
    const PermGroup g(d, std::move(gens));
    const StabilizerChain chain(g.degree, g.gens);
    std::uint64_t orbit_of_0 = 0;
    for (const std::vector<int>& orb : orbits(g))
      if (std::find(orb.begin(), orb.end(), 0) != orb.end())
        orbit_of_0 = orb.size();
    const PermGroup stab = point_stabilizer(g, 0);
    if (checked_mul(u128(orbit_of_0), chain_order_of(stab)) == chain.order())
      ++orbstab;
  }
  rep.checks.push_back({"orbit-stabilizer identity", orbstab == samples,
                        fraction(orbstab, samples)});

  const int tower_samples = std::max(1, samples / 10);
  int decomposed = 0;
  for (int i = 0; i < tower_samples; ++i) {
    const int depth = rand_int(rng, 2, 3);
    std::vector<PermGroup> factors;
    for (int k = 0; k < depth; ++k)
      factors.push_back(named_group("Sym(" + std::to_string(rand_int(rng, 2, 3)) + ")"));
    const TowerGroup G = build_tower(TowerSpec(std::move(factors)), budget);
    bool good = true;
    for (int n = 1; n < depth; ++n) {
      const CertifiedSubgroup whole = rigid_level_stabilizer(G, n);
      std::map<std::uint64_t, std::int64_t> product;
      for (const Vertex& v : level_vertices(G.degrees, n)) {
        for (const auto& [prime, e] : rigid_stabilizer(G, v).order_exponents)
          product[prime] += e;
      }
      std::erase_if(product, [](const auto& kv) { return kv.second == 0; });
      good = good && product == whole.order_exponents;
      // Breadth-first oracle for the product formula at enumerable size.
      if (whole.order() <= 20000) {
        const PermGroup flat = whole.to_perm_group();
        good = good && chain_order_of(flat) == whole.order();
      }
      const CertifiedSubgroup st = level_stabilizer(G, n);
      good = good && st.order_exponents == whole.order_exponents;
    }
    if (good) ++decomposed;
  }
  rep.checks.push_back({"rigid level stabilizers factor over the level",
                        decomposed == tower_samples,
                        fraction(decomposed, tower_samples)});
  return rep;
}

}  // namespace branchlab
