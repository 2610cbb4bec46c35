#include "branchlab/wreathtower.hpp"

#include <climits>
#include <deque>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

namespace branchlab {

TowerSpec::TowerSpec(std::vector<PermGroup> fs) : factors(std::move(fs)) {
  if (factors.empty())
    throw std::invalid_argument("a tower needs at least one factor");
  for (const PermGroup& f : factors)
    if (f.degree < 2)
      throw std::invalid_argument(
          "tower factors must act on at least two points");
}

DegreeSequence TowerSpec::degrees() const {
  std::vector<int> d;
  d.reserve(factors.size());
  for (const PermGroup& f : factors) d.push_back(f.degree);
  return DegreeSequence(std::move(d));
}

TowerSpec tail_spec(const TowerSpec& spec, int n) {
  if (n < 0 || n >= spec.depth())
    throw std::invalid_argument("tail start must name a factor");
  return TowerSpec(std::vector<PermGroup>(spec.factors.begin() + n,
                                          spec.factors.end()));
}

TowerSpec head_spec(const TowerSpec& spec, int n) {
  if (n < 1 || n > spec.depth())
    throw std::invalid_argument("head depth must be between 1 and the depth");
  return TowerSpec(std::vector<PermGroup>(spec.factors.begin(),
                                          spec.factors.begin() + n));
}

namespace {

// Shared validation for the two wreath entry points; returns |Y|.
int check_wreath_element(const std::vector<Perm>& f, const Perm& a) {
  if (static_cast<int>(f.size()) != a.degree())
    throw std::invalid_argument(
        "wreath element needs one fiber entry per top-level point");
  const int ny = f.front().degree();
  for (const Perm& b : f)
    if (b.degree() != ny)
      throw std::invalid_argument(
          "wreath fiber entries must share one degree");
  return ny;
}

}  // namespace

std::pair<int, int> wreath_act(const std::vector<Perm>& f, const Perm& a,
                               std::pair<int, int> point) {
  const int ny = check_wreath_element(f, a);
  const auto [x, y] = point;
  if (x < 0 || x >= a.degree() || y < 0 || y >= ny)
    throw std::invalid_argument("point outside the product domain");
  const int xi = a(x);
  return {xi, f[static_cast<std::size_t>(xi)](y)};
}

Perm wreath_perm(const std::vector<Perm>& f, const Perm& a) {
  const int ny = check_wreath_element(f, a);
  const int nx = a.degree();
  std::vector<int> img(static_cast<std::size_t>(nx) * ny);
  for (int x = 0; x < nx; ++x) {
    const int xi = a(x);
    const Perm& fiber = f[static_cast<std::size_t>(xi)];
    for (int y = 0; y < ny; ++y)
      img[static_cast<std::size_t>(x) * ny + y] = xi * ny + fiber(y);
  }
  return Perm(std::move(img));
}

TowerGroup build_tower(const TowerSpec& spec, const Budget& budget) {
  const DegreeSequence seq = spec.degrees();
  budget.charge(seq.level_size(seq.depth()), "tower leaf domain");
  std::uint64_t gen_count = 0;
  for (int i = 0; i < spec.depth(); ++i) {
    gen_count += seq.level_size(i) * spec.factors[static_cast<std::size_t>(i)]
                                         .gens.size();
    budget.charge(gen_count, "tower generators");
  }

  TowerGroup G{spec, seq, {}, {}, {}, {}};
  G.gens.reserve(gen_count);
  G.gen_info.reserve(gen_count);
  for (int i = 0; i < spec.depth(); ++i) {
    const PermGroup& A = spec.factors[static_cast<std::size_t>(i)];
    G.factor_orders.push_back(order(A));
    G.factor_transitive.push_back(is_transitive(A));
    const std::uint64_t nv = seq.level_size(i);
    for (std::uint64_t r = 0; r < nv; ++r) {
      const Vertex v = vertex_at_rank(seq, i, r);
      for (int j = 0; j < static_cast<int>(A.gens.size()); ++j) {
        Portrait p(seq);
        p.set_perm(v, A.gens[static_cast<std::size_t>(j)]);
        G.gens.push_back(std::move(p));
        G.gen_info.push_back(TowerGenInfo{i, r, j});
      }
    }
  }
  return G;
}

u128 tower_order(const TowerSpec& spec) {
  const DegreeSequence seq = spec.degrees();
  u128 o = 1;
  for (int i = 0; i < spec.depth(); ++i)
    o = checked_mul(
        o, checked_pow(order(spec.factors[static_cast<std::size_t>(i)]),
                       seq.level_size(i)));
  return o;
}

namespace {

// acc += times * order_exponents(factor)
void add_scaled_factor_order(std::map<std::uint64_t, std::int64_t>& acc,
                             const PermGroup& factor, std::uint64_t times) {
  for (const auto& [p, e] : order_exponents(factor)) {
    acc[p] += static_cast<std::int64_t>(times) * e;
    if (acc[p] == 0) acc.erase(p);
  }
}

}  // namespace

std::map<std::uint64_t, std::int64_t> tower_order_exponents(
    const TowerSpec& spec) {
  const DegreeSequence seq = spec.degrees();
  std::map<std::uint64_t, std::int64_t> acc;
  for (int i = 0; i < spec.depth(); ++i)
    add_scaled_factor_order(acc, spec.factors[static_cast<std::size_t>(i)],
                            seq.level_size(i));
  return acc;
}

namespace {

PermGroup leaf_perm_group(const DegreeSequence& seq,
                          const std::vector<Portrait>& gens) {
  const std::uint64_t domain = seq.level_size(seq.depth());
  if (domain > static_cast<std::uint64_t>(INT_MAX))
    throw std::overflow_error("leaf level too large for a permutation domain");
  std::vector<Perm> perms;
  perms.reserve(gens.size());
  for (const Portrait& p : gens) perms.push_back(leaf_action(p));
  return PermGroup(static_cast<int>(domain), std::move(perms));
}

}  // namespace

PermGroup leaf_group(const TowerGroup& G) {
  return leaf_perm_group(G.degrees, G.gens);
}

u128 CertifiedSubgroup::order() const {
  return from_factorization(order_exponents);
}

PermGroup CertifiedSubgroup::to_perm_group() const {
  return leaf_perm_group(degrees, gens);
}

CertifiedSubgroup level_stabilizer(const TowerGroup& G, int n) {
  if (n < 0 || n > G.depth())
    throw std::invalid_argument("level out of range");
  CertifiedSubgroup sub{G.degrees, {}, {}};
  for (std::size_t k = 0; k < G.gens.size(); ++k)
    if (G.gen_info[k].level >= n) sub.gens.push_back(G.gens[k]);
  for (int i = n; i < G.depth(); ++i)
    add_scaled_factor_order(sub.order_exponents,
                            G.spec.factors[static_cast<std::size_t>(i)],
                            G.degrees.level_size(i));
  return sub;
}

CertifiedSubgroup rigid_stabilizer(const TowerGroup& G, const Vertex& v) {
  check_vertex(G.degrees, v);
  const int n = v.level();
  CertifiedSubgroup sub{G.degrees, {}, {}};
  if (n == G.depth()) return sub;  // leaf: only the identity fixes the rest

  // Level-i descendants of v occupy a contiguous rank block of this size.
  std::vector<std::uint64_t> block(static_cast<std::size_t>(G.depth()) + 1, 0);
  block[static_cast<std::size_t>(n)] = 1;
  for (int i = n + 1; i <= G.depth(); ++i)
    block[static_cast<std::size_t>(i)] =
        block[static_cast<std::size_t>(i - 1)] *
        static_cast<std::uint64_t>(G.degrees.degree(i - 1));
  const std::uint64_t v_rank = vertex_rank(G.degrees, v);

  for (std::size_t k = 0; k < G.gens.size(); ++k) {
    const TowerGenInfo& info = G.gen_info[k];
    if (info.level < n) continue;
    const std::uint64_t start =
        v_rank * block[static_cast<std::size_t>(info.level)];
    if (info.vertex_rank >= start &&
        info.vertex_rank < start + block[static_cast<std::size_t>(info.level)])
      sub.gens.push_back(G.gens[k]);
  }
  for (int i = n; i < G.depth(); ++i)
    add_scaled_factor_order(sub.order_exponents,
                            G.spec.factors[static_cast<std::size_t>(i)],
                            block[static_cast<std::size_t>(i)]);
  return sub;
}

CertifiedSubgroup rigid_level_stabilizer(const TowerGroup& G, int n) {
  if (n < 0 || n > G.depth())
    throw std::invalid_argument("level out of range");
  CertifiedSubgroup sub{G.degrees, {}, {}};
  if (n == G.depth()) return sub;
  std::map<std::uint64_t, std::int64_t> per_vertex;
  std::uint64_t block = 1;
  for (int i = n; i < G.depth(); ++i) {
    add_scaled_factor_order(per_vertex,
                            G.spec.factors[static_cast<std::size_t>(i)],
                            block);
    block *= static_cast<std::uint64_t>(G.degrees.degree(i));
  }
  // Internal direct product over V_n: orders multiply across the |V_n|
  // pairwise-disjoint subtrees.
  const std::uint64_t nv = G.degrees.level_size(n);
  for (const auto& [p, e] : per_vertex) {
    sub.order_exponents[p] = static_cast<std::int64_t>(nv) * e;
    if (sub.order_exponents[p] == 0) sub.order_exponents.erase(p);
  }
  for (std::size_t k = 0; k < G.gens.size(); ++k)
    if (G.gen_info[k].level >= n) sub.gens.push_back(G.gens[k]);
  return sub;
}

DerangementWitness locally_has_derangements_witness(const TowerGroup& G,
                                                    int n) {
  if (n < 0 || n >= G.depth())
    throw std::invalid_argument("level must name a factor");
  if (!G.factor_transitive[static_cast<std::size_t>(n)])
    throw std::invalid_argument(
        "factor at level " + std::to_string(n) +
        " is intransitive, so no derangement is guaranteed");
  const std::optional<Perm> d =
      find_derangement(G.spec.factors[static_cast<std::size_t>(n)]);
  if (!d)
    throw std::logic_error(
        "transitive factor unexpectedly has no derangement");
  DerangementWitness w{n + 1, Portrait(G.degrees)};
  for (const Vertex& v : level_vertices(G.degrees, n))
    w.element.set_perm(v, *d);
  return w;
}

bool check_sji_criterion(const TowerGroup& G, int n, const Budget& budget) {
  if (n < 0 || n > G.depth())
    throw std::invalid_argument("level out of range");
  if (n == G.depth()) return true;  // the trivial group is its own commutator
  const CertifiedSubgroup rist = rigid_level_stabilizer(G, n);
  PermGroup P = rist.to_perm_group();
  budget.charge(static_cast<std::uint64_t>(P.degree) + P.gens.size(),
                "rigid stabilizer domain");
  if (order_exponents(P) != rist.order_exponents)
    throw std::logic_error(
        "rigid level stabilizer order disagrees with its product formula");
  return is_perfect(P);
}

bool is_spherically_transitive(const TowerGroup& G) {
  for (int n = 1; n <= G.depth(); ++n) {
    const std::uint64_t ls = G.degrees.level_size(n);
    if (ls > static_cast<std::uint64_t>(INT_MAX))
      throw std::overflow_error("level too large for an orbit computation");
    std::vector<Perm> lp;
    lp.reserve(G.gens.size());
    for (const Portrait& g : G.gens) lp.push_back(level_action(g, n));
    if (!is_transitive(PermGroup(static_cast<int>(ls), std::move(lp))))
      return false;
  }
  return true;
}

Portrait vertex_transporter(const TowerGroup& G, const Vertex& v,
                            const Vertex& w) {
  check_vertex(G.degrees, v);
  check_vertex(G.degrees, w);
  if (v.level() != w.level())
    throw std::invalid_argument("transporter endpoints must share a level");

  Portrait g(G.degrees);
  Vertex cur = v;
  for (int k = 0; k < v.level(); ++k) {
    const int from = cur.word[static_cast<std::size_t>(k)];
    const int to = w.word[static_cast<std::size_t>(k)];
    if (from == to) continue;
    const PermGroup& A = G.spec.factors[static_cast<std::size_t>(k)];
    // Orbit transversal of `from` under A, stopping as soon as `to` appears.
    std::unordered_map<int, Perm> reach;
    std::deque<int> queue{from};
    reach.emplace(from, Perm(A.degree));
    while (!queue.empty() && !reach.count(to)) {
      const int x = queue.front();
      queue.pop_front();
      for (const Perm& s : A.gens) {
        const int y = s(x);
        if (!reach.count(y)) {
          reach.emplace(y, s * reach.at(x));
          queue.push_back(y);
        }
      }
    }
    const auto it = reach.find(to);
    if (it == reach.end())
      throw std::invalid_argument(
          "factor at level " + std::to_string(k) +
          " cannot transport the required point (intransitive factor)");
    Portrait step(G.degrees);
    step.set_perm(
        Vertex(std::vector<int>(w.word.begin(), w.word.begin() + k)),
        it->second);
    g = compose(step, g);
    cur = act(step, cur);
  }
  if (!(cur == w)) throw std::logic_error("transporter failed to reach target");
  return g;
}

}  // namespace branchlab
