#include "branchlab/permgroup.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_set>
#include <utility>

namespace branchlab {

PermGroup::PermGroup(int n, std::vector<Perm> g)
    : degree(n), gens(std::move(g)) {
  if (n < 1) throw std::invalid_argument("domain must have at least one point");
  for (const Perm& p : gens)
    if (p.degree() != n)
      throw std::invalid_argument("generator degree does not match the domain");
}

// ---------------------------------------------------------------------------
// StabilizerChain

StabilizerChain::StabilizerChain(int degree, const std::vector<Perm>& gens,
                                 const std::vector<int>& forced_base)
    : degree_(degree) {
  for (int p : forced_base) {
    if (p < 0 || p >= degree_)
      throw std::invalid_argument("forced base point out of range");
    levels_.push_back(Level{p, {}, {}, {}});
  }
  int top = -1;
  for (const Perm& g : gens) {
    if (g.degree() != degree_)
      throw std::invalid_argument("generator degree does not match the domain");
    if (!g.is_identity()) insert_gen(g, 0, top);
  }
  for (int i = static_cast<int>(levels_.size()) - 1; i >= 0; --i) complete(i);
}

void StabilizerChain::insert_gen(const Perm& g, int from_level, int& out_top) {
  // g fixes base[0..from_level-1]; attach it to every level whose base prefix
  // it fixes, appending a new base point if it fixes them all.
  int j = from_level;
  while (j < static_cast<int>(levels_.size()) &&
         g(levels_[static_cast<std::size_t>(j)].point) ==
             levels_[static_cast<std::size_t>(j)].point)
    ++j;
  if (j == static_cast<int>(levels_.size())) {
    int moved = -1;
    for (int x = 0; x < degree_; ++x)
      if (g(x) != x) {
        moved = x;
        break;
      }
    if (moved < 0) return;  // identity; nothing to do
    levels_.push_back(Level{moved, {}, {}, {}});
  }
  for (int l = from_level; l <= j; ++l)
    levels_[static_cast<std::size_t>(l)].gens.push_back(g);
  out_top = j;
}

void StabilizerChain::rebuild_orbit(int i) {
  Level& lv = levels_[static_cast<std::size_t>(i)];
  lv.transversal.clear();
  lv.orbit.clear();
  lv.transversal.emplace(lv.point, Perm(degree_));
  lv.orbit.push_back(lv.point);
  for (std::size_t head = 0; head < lv.orbit.size(); ++head) {
    const int beta = lv.orbit[head];
    for (const Perm& s : lv.gens) {
      const int gamma = s(beta);
      if (!lv.transversal.count(gamma)) {
        lv.transversal.emplace(gamma, s * lv.transversal.at(beta));
        lv.orbit.push_back(gamma);
      }
    }
  }
}

std::pair<Perm, int> StabilizerChain::sift(Perm g, int from) const {
  for (int i = from; i < static_cast<int>(levels_.size()); ++i) {
    if (g.is_identity()) return {std::move(g), -1};
    const Level& lv = levels_[static_cast<std::size_t>(i)];
    const int beta = g(lv.point);
    auto it = lv.transversal.find(beta);
    if (it == lv.transversal.end()) return {std::move(g), i};
    g = it->second.inverse() * g;
  }
  if (g.is_identity()) return {std::move(g), -1};
  return {std::move(g), static_cast<int>(levels_.size())};
}

void StabilizerChain::complete(int i) {
  rebuild_orbit(i);
  // Scan Schreier generators.  New strong generators land strictly below
  // level i, so level i's gens and orbit never change during the scan — but
  // appending a level can reallocate levels_, so never hold a Level reference
  // across insert_gen or the recursive completes.
  for (std::size_t oi = 0; oi < levels_[static_cast<std::size_t>(i)].orbit.size(); ++oi) {
    for (std::size_t si = 0; si < levels_[static_cast<std::size_t>(i)].gens.size(); ++si) {
      Perm schreier(degree_);
      {
        const Level& lv = levels_[static_cast<std::size_t>(i)];
        const int beta = lv.orbit[oi];
        const Perm& s = lv.gens[si];
        const Perm su = s * lv.transversal.at(beta);
        const Perm& u_img = lv.transversal.at(s(beta));
        if (su == u_img) continue;  // transversal rep was defined via this pair
        schreier = u_img.inverse() * su;
      }
      auto [residue, drop] = sift(std::move(schreier), i + 1);
      if (residue.is_identity()) continue;
      int top = drop;
      if (drop == static_cast<int>(levels_.size())) {
        insert_gen(residue, i + 1, top);
      } else {
        for (int l = i + 1; l <= drop; ++l)
          levels_[static_cast<std::size_t>(l)].gens.push_back(residue);
      }
      for (int l = top; l >= i + 1; --l) complete(l);
    }
  }
}

bool StabilizerChain::contains(const Perm& g) const {
  if (g.degree() != degree_)
    throw std::invalid_argument("degree does not match the chain's domain");
  auto [residue, drop] = sift(g, 0);
  (void)drop;
  return residue.is_identity();
}

bool StabilizerChain::extend(const Perm& g) {
  if (contains(g)) return false;
  int top = -1;
  insert_gen(g, 0, top);
  for (int l = top; l >= 0; --l) complete(l);
  return true;
}

u128 StabilizerChain::order() const {
  u128 o = 1;
  for (const Level& lv : levels_) o = checked_mul(o, lv.orbit.size());
  return o;
}

std::map<std::uint64_t, std::int64_t> StabilizerChain::order_exponents() const {
  std::map<std::uint64_t, std::int64_t> f;
  for (const Level& lv : levels_)
    add_factorization(f, lv.orbit.size(), +1);
  for (auto it = f.begin(); it != f.end();)
    it = (it->second == 0) ? f.erase(it) : std::next(it);
  return f;
}

std::vector<int> StabilizerChain::base() const {
  std::vector<int> b;
  b.reserve(levels_.size());
  for (const Level& lv : levels_) b.push_back(lv.point);
  return b;
}

std::vector<Perm> StabilizerChain::stabilizer_generators(int k) const {
  if (k < 0) throw std::invalid_argument("negative chain level");
  if (k >= static_cast<int>(levels_.size())) return {};
  std::set<Perm> dedup;
  for (const Perm& g : levels_[static_cast<std::size_t>(k)].gens)
    if (!g.is_identity()) dedup.insert(g);
  return {dedup.begin(), dedup.end()};
}

u128 chain_index(const StabilizerChain& g, const StabilizerChain& h) {
  auto f = g.order_exponents();
  for (const auto& [p, e] : h.order_exponents()) f[p] -= e;
  return from_factorization(f);
}

// ---------------------------------------------------------------------------
// Element-level operations

std::vector<Perm> elements(const PermGroup& g, const Budget& budget) {
  std::unordered_set<Perm, PermHash> seen;
  std::deque<Perm> frontier;
  seen.insert(Perm(g.degree));
  frontier.push_back(Perm(g.degree));
  while (!frontier.empty()) {
    Perm cur = std::move(frontier.front());
    frontier.pop_front();
    for (const Perm& s : g.gens) {
      Perm next = cur * s;
      if (seen.insert(next).second) {
        budget.charge(seen.size(), "element closure");
        frontier.push_back(std::move(next));
      }
    }
  }
  std::vector<Perm> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

u128 order(const PermGroup& g) {
  return StabilizerChain(g.degree, g.gens).order();
}

std::map<std::uint64_t, std::int64_t> order_exponents(const PermGroup& g) {
  return StabilizerChain(g.degree, g.gens).order_exponents();
}

std::vector<std::vector<int>> orbits(const PermGroup& g) {
  std::vector<char> seen(static_cast<std::size_t>(g.degree), 0);
  std::vector<std::vector<int>> out;
  for (int start = 0; start < g.degree; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<int> orbit{start};
    seen[static_cast<std::size_t>(start)] = 1;
    for (std::size_t head = 0; head < orbit.size(); ++head)
      for (const Perm& s : g.gens) {
        const int y = s(orbit[head]);
        if (!seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = 1;
          orbit.push_back(y);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

bool is_transitive(const PermGroup& g) { return orbits(g).size() == 1; }

namespace {
struct TupleHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};
}  // namespace

bool is_k_transitive(const PermGroup& g, int k, const Budget& budget) {
  if (k < 1 || k > g.degree)
    throw std::invalid_argument("tuple length out of range");
  std::uint64_t target = 1;
  for (int i = 0; i < k; ++i)
    target *= static_cast<std::uint64_t>(g.degree - i);
  budget.charge(target, "tuple orbit");

  std::vector<int> start(static_cast<std::size_t>(k));
  std::iota(start.begin(), start.end(), 0);
  std::unordered_set<std::vector<int>, TupleHash> seen{start};
  std::deque<std::vector<int>> frontier{start};
  while (!frontier.empty()) {
    std::vector<int> cur = std::move(frontier.front());
    frontier.pop_front();
    for (const Perm& s : g.gens) {
      std::vector<int> next(cur.size());
      for (std::size_t i = 0; i < cur.size(); ++i) next[i] = s(cur[i]);
      if (seen.insert(next).second) frontier.push_back(std::move(next));
    }
  }
  return seen.size() == target;
}

PermGroup point_stabilizer(const PermGroup& g, int x) {
  if (x < 0 || x >= g.degree)
    throw std::invalid_argument("stabilized point out of range");
  StabilizerChain chain(g.degree, g.gens, {x});
  return PermGroup(g.degree, chain.stabilizer_generators(1));
}

bool is_generated_by_point_stabilizers(const PermGroup& g) {
  std::vector<Perm> all;
  for (int x = 0; x < g.degree; ++x) {
    auto part = point_stabilizer(g, x).gens;
    all.insert(all.end(), part.begin(), part.end());
  }
  PermGroup h(g.degree, std::move(all));
  return order_exponents(h) == order_exponents(g);
}

PermGroup derived_subgroup(const PermGroup& g) {
  StabilizerChain chain(g.degree, {});
  std::vector<Perm> closure_gens;
  std::deque<Perm> queue;
  for (std::size_t i = 0; i < g.gens.size(); ++i)
    for (std::size_t j = i + 1; j < g.gens.size(); ++j)
      queue.push_back(commutator(g.gens[i], g.gens[j]));
  while (!queue.empty()) {
    Perm c = std::move(queue.front());
    queue.pop_front();
    if (c.is_identity() || chain.contains(c)) continue;
    chain.extend(c);
    for (const Perm& s : g.gens) queue.push_back(conjugate(s, c));
    closure_gens.push_back(std::move(c));
  }
  return PermGroup(g.degree, std::move(closure_gens));
}

bool is_perfect(const PermGroup& g) {
  return order_exponents(derived_subgroup(g)) == order_exponents(g);
}

int commutator_width(const PermGroup& g, const Budget& budget) {
  const std::vector<Perm> elts = elements(g, budget);
  const auto n = static_cast<std::uint64_t>(elts.size());
  if (static_cast<u128>(n) * n > static_cast<u128>(budget.max_elements) * 20)
    throw BudgetError("commutator set: budget exceeded (" + std::to_string(n) +
                      "^2 pairs)");

  std::vector<Perm> inverses;
  inverses.reserve(elts.size());
  for (const Perm& e : elts) inverses.push_back(e.inverse());

  std::unordered_set<Perm, PermHash> comms;
  for (std::size_t i = 0; i < elts.size(); ++i)
    for (std::size_t j = 0; j < elts.size(); ++j)
      comms.insert(elts[i] * elts[j] * inverses[i] * inverses[j]);
  if (comms.size() == 1) return 0;  // only the identity: abelian

  // Grow products of commutators until the set closes; the first stable layer
  // is the derived subgroup and its index is the width.
  std::unordered_set<Perm, PermHash> layer = comms;
  int width = 1;
  while (true) {
    std::unordered_set<Perm, PermHash> next = layer;
    for (const Perm& a : layer)
      for (const Perm& c : comms) next.insert(a * c);
    budget.charge(next.size(), "commutator products");
    if (next.size() == layer.size()) return width;
    layer = std::move(next);
    ++width;
  }
}

std::optional<Perm> find_derangement(const PermGroup& g, const Budget& budget) {
  std::vector<Perm> sorted_gens = g.gens;
  std::sort(sorted_gens.begin(), sorted_gens.end());
  std::unordered_set<Perm, PermHash> seen;
  std::deque<Perm> frontier;
  seen.insert(Perm(g.degree));
  frontier.push_back(Perm(g.degree));
  while (!frontier.empty()) {
    Perm cur = std::move(frontier.front());
    frontier.pop_front();
    for (const Perm& s : sorted_gens) {
      Perm next = cur * s;
      if (seen.insert(next).second) {
        if (is_derangement(next)) return next;
        budget.charge(seen.size(), "derangement search");
        frontier.push_back(std::move(next));
      }
    }
  }
  return std::nullopt;
}

PermGroup named_group(const std::string& name) {
  const auto open = name.find('(');
  const auto close = name.find(')');
  if (open == std::string::npos || close != name.size() - 1 || close <= open + 1)
    throw std::invalid_argument("unrecognized group name: " + name);
  const std::string kind = name.substr(0, open);
  int d = 0;
  for (std::size_t i = open + 1; i < close; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i])))
      throw std::invalid_argument("unrecognized group name: " + name);
    d = d * 10 + (name[i] - '0');
  }
  if (d < 1) throw std::invalid_argument("group degree must be positive");

  auto cycle = [d](int from, int to) {  // the cycle (from from+1 ... to)
    std::vector<int> img(static_cast<std::size_t>(d));
    std::iota(img.begin(), img.end(), 0);
    for (int x = from; x < to; ++x) img[static_cast<std::size_t>(x)] = x + 1;
    img[static_cast<std::size_t>(to)] = from;
    return Perm(img);
  };

  std::vector<Perm> gens;
  if (kind == "Sym") {
    if (d >= 2) gens.push_back(cycle(0, 1));
    if (d >= 3) gens.push_back(cycle(0, d - 1));
  } else if (kind == "Alt") {
    if (d >= 3) {
      std::vector<int> img(static_cast<std::size_t>(d));
      std::iota(img.begin(), img.end(), 0);
      img[0] = 1; img[1] = 2; img[2] = 0;
      gens.push_back(Perm(img));
      if (d >= 4) gens.push_back(d % 2 == 1 ? cycle(0, d - 1) : cycle(1, d - 1));
    }
  } else if (kind == "Cyclic") {
    if (d >= 2) gens.push_back(cycle(0, d - 1));
  } else {
    throw std::invalid_argument("unrecognized group name: " + name);
  }
  return PermGroup(d, std::move(gens));
}

}  // namespace branchlab
