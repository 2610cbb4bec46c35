#include "branchlab/burgermozes.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace branchlab {

int ColoredBall::shell_of(int v) const {
  if (v < 0 || v >= vertex_count())
    throw std::invalid_argument("vertex out of range");
  for (int k = 0; k + 1 < static_cast<int>(shell_start.size()); ++k)
    if (v < shell_start[static_cast<std::size_t>(k) + 1]) return k;
  throw std::logic_error("shell table does not cover the vertex set");
}

void check_colored_ball(const ColoredBall& ball) {
  if (ball.d < 3)
    throw std::invalid_argument("ball degree must be at least 3");
  if (ball.radius < 1)
    throw std::invalid_argument("ball radius must be at least 1");
  const int n = ball.vertex_count();
  if (n < 1 || static_cast<int>(ball.parent_color.size()) != n ||
      static_cast<int>(ball.children.size()) != n)
    throw std::invalid_argument("ball tables have inconsistent sizes");
  if (static_cast<int>(ball.shell_start.size()) != ball.radius + 2 ||
      ball.shell_start.front() != 0 || ball.shell_start.back() != n)
    throw std::invalid_argument("shell table does not partition the vertices");
  for (std::size_t k = 0; k + 1 < ball.shell_start.size(); ++k)
    if (ball.shell_start[k] >= ball.shell_start[k + 1])
      throw std::invalid_argument("every shell must be nonempty");
  if (ball.parent[0] != -1 || ball.parent_color[0] != -1)
    throw std::invalid_argument("the center carries no parent edge");

  for (int v = 1; v < n; ++v) {
    const int p = ball.parent[static_cast<std::size_t>(v)];
    if (p < 0 || p >= n || ball.shell_of(p) != ball.shell_of(v) - 1)
      throw std::invalid_argument("parents must sit one shell closer");
    const int c = ball.parent_color[static_cast<std::size_t>(v)];
    if (c < 0 || c >= ball.d)
      throw std::invalid_argument("edge color out of range");
    const std::vector<int>& sib = ball.children[static_cast<std::size_t>(p)];
    if (std::find(sib.begin(), sib.end(), v) == sib.end())
      throw std::invalid_argument("child lists disagree with parents");
  }
  for (int v = 0; v < n; ++v) {
    const std::vector<int>& ch = ball.children[static_cast<std::size_t>(v)];
    for (int c : ch)
      if (c < 0 || c >= n || ball.parent[static_cast<std::size_t>(c)] != v)
        throw std::invalid_argument("child lists disagree with parents");
    // Legal coloring: the edges at an internal vertex carry each color once.
    if (ball.is_internal(v)) {
      std::set<int> colors;
      if (v != 0) colors.insert(ball.parent_color[static_cast<std::size_t>(v)]);
      for (int c : ch)
        colors.insert(ball.parent_color[static_cast<std::size_t>(c)]);
      if (static_cast<int>(colors.size()) != ball.d ||
          static_cast<int>(ch.size()) != (v == 0 ? ball.d : ball.d - 1))
        throw std::invalid_argument(
            "colors at vertex " + std::to_string(v) +
            " do not biject onto the color set");
    } else if (!ch.empty()) {
      throw std::invalid_argument("boundary vertices have no children");
    }
  }
}

ColoredBall make_legal_coloring(int d, int radius) {
  if (d < 3) throw std::invalid_argument("ball degree must be at least 3");
  if (radius < 1)
    throw std::invalid_argument("ball radius must be at least 1");
  ColoredBall b;
  b.d = d;
  b.radius = radius;
  b.parent = {-1};
  b.parent_color = {-1};
  b.children = {{}};
  b.shell_start = {0, 1};
  std::vector<int> shell = {0};
  for (int k = 1; k <= radius; ++k) {
    std::vector<int> next;
    for (int v : shell) {
      for (int color = 0; color < d; ++color) {
        if (v != 0 && color == b.parent_color[static_cast<std::size_t>(v)])
          continue;
        const int nv = b.vertex_count();
        b.parent.push_back(v);
        b.parent_color.push_back(color);
        b.children.emplace_back();
        b.children[static_cast<std::size_t>(v)].push_back(nv);
        next.push_back(nv);
      }
    }
    b.shell_start.push_back(b.vertex_count());
    shell = std::move(next);
  }
  check_colored_ball(b);
  return b;
}

std::vector<std::vector<int>> neighbor_tables(const ColoredBall& ball) {
  std::vector<std::vector<int>> t(
      static_cast<std::size_t>(ball.vertex_count()),
      std::vector<int>(static_cast<std::size_t>(ball.d), -1));
  for (int v = 1; v < ball.vertex_count(); ++v) {
    const int c = ball.parent_color[static_cast<std::size_t>(v)];
    const int p = ball.parent[static_cast<std::size_t>(v)];
    t[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)] = p;
    t[static_cast<std::size_t>(p)][static_cast<std::size_t>(c)] = v;
  }
  return t;
}

void check_ball_automorphism(const ColoredBall& ball,
                             const BallAutomorphism& g) {
  const int n = ball.vertex_count();
  if (static_cast<int>(g.image.size()) != n)
    throw std::invalid_argument("image list does not cover the ball");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int x : g.image) {
    if (x < 0 || x >= n || seen[static_cast<std::size_t>(x)])
      throw std::invalid_argument("image list is not a bijection");
    seen[static_cast<std::size_t>(x)] = true;
  }
  for (int v = 1; v < n; ++v) {
    const int a = g.image[static_cast<std::size_t>(v)];
    const int b = g.image[static_cast<std::size_t>(
        ball.parent[static_cast<std::size_t>(v)])];
    if (ball.parent[static_cast<std::size_t>(a)] != b &&
        ball.parent[static_cast<std::size_t>(b)] != a)
      throw std::invalid_argument("images do not preserve adjacency");
  }
}

namespace {

int edge_color_between(const ColoredBall& ball, int a, int b) {
  if (a >= 0 && b >= 0) {
    if (ball.parent[static_cast<std::size_t>(a)] == b)
      return ball.parent_color[static_cast<std::size_t>(a)];
    if (ball.parent[static_cast<std::size_t>(b)] == a)
      return ball.parent_color[static_cast<std::size_t>(b)];
  }
  throw std::invalid_argument("images do not preserve adjacency");
}

Perm local_action_impl(const ColoredBall& ball,
                       const std::vector<std::vector<int>>& tables,
                       const BallAutomorphism& g, int v) {
  if (!ball.is_internal(v) ||
      !ball.is_internal(g.image[static_cast<std::size_t>(v)]))
    throw std::invalid_argument("local action undefined at a boundary vertex");
  const int gv = g.image[static_cast<std::size_t>(v)];
  std::vector<int> img(static_cast<std::size_t>(ball.d));
  for (int color = 0; color < ball.d; ++color) {
    const int u = tables[static_cast<std::size_t>(v)][static_cast<std::size_t>(color)];
    const int gu = g.image[static_cast<std::size_t>(u)];
    img[static_cast<std::size_t>(color)] = edge_color_between(ball, gv, gu);
  }
  return Perm(std::move(img));
}

}  // namespace

Perm local_action(const ColoredBall& ball, const BallAutomorphism& g, int v) {
  if (static_cast<int>(g.image.size()) != ball.vertex_count())
    throw std::invalid_argument("image list does not cover the ball");
  if (v < 0 || v >= ball.vertex_count())
    throw std::invalid_argument("vertex out of range");
  return local_action_impl(ball, neighbor_tables(ball), g, v);
}

bool is_legal(const ColoredBall& ball, const BallAutomorphism& g,
              const PermGroup& F) {
  if (F.degree != ball.d)
    throw std::invalid_argument("local group degree must match the ball");
  check_ball_automorphism(ball, g);
  const std::vector<std::vector<int>> tables = neighbor_tables(ball);
  const StabilizerChain membership(F.degree, F.gens);
  for (int v = 0; v < ball.vertex_count(); ++v) {
    if (!ball.is_internal(v)) continue;
    if (!ball.is_internal(g.image[static_cast<std::size_t>(v)]))
      continue;  // no constraint when the image lost edges to the boundary
    if (!membership.contains(local_action_impl(ball, tables, g, v)))
      return false;
  }
  return true;
}

u128 stabilizer_count_formula(const ColoredBall& ball, const PermGroup& F) {
  if (F.degree != ball.d)
    throw std::invalid_argument("local group degree must match the ball");
  const u128 fo = order(F);
  // |Stab_F(c)| = |F| / |orbit(c)| by orbit-stabilizer.
  std::vector<u128> stab_order(static_cast<std::size_t>(ball.d), 0);
  for (const std::vector<int>& orb : orbits(F))
    for (int c : orb)
      stab_order[static_cast<std::size_t>(c)] =
          fo / static_cast<u128>(orb.size());
  u128 count = fo;
  for (int v = 1; v < ball.vertex_count(); ++v)
    if (ball.is_internal(v))
      count = checked_mul(
          count, stab_order[static_cast<std::size_t>(
                     ball.parent_color[static_cast<std::size_t>(v)])]);
  return count;
}

PermGroup enumerate_stabilizer(const ColoredBall& ball, const PermGroup& F,
                               const Budget& budget) {
  if (F.degree != ball.d)
    throw std::invalid_argument("local group degree must match the ball");
  const u128 predicted = stabilizer_count_formula(ball, F);
  if (predicted > static_cast<u128>(budget.max_elements))
    throw BudgetError("legal stabilizer enumeration: budget exceeded (" +
                      to_string(predicted) + " > " +
                      std::to_string(budget.max_elements) + " elements)");

  const std::vector<Perm> F_el = elements(F, budget);
  const std::vector<std::vector<int>> tables = neighbor_tables(ball);
  const int n = ball.vertex_count();
  const int internal_end = ball.shell_start[static_cast<std::size_t>(ball.radius)];

  std::vector<Perm> out;
  std::vector<int> img(static_cast<std::size_t>(n), -1);
  img[0] = 0;
  const auto descend = [&](const auto& self, int v) -> void {
    if (v == internal_end) {
      out.emplace_back(img);
      return;
    }
    const int gv = img[static_cast<std::size_t>(v)];
    const int forced_from =
        v == 0 ? -1 : ball.parent_color[static_cast<std::size_t>(v)];
    const int forced_to =
        v == 0 ? -1 : ball.parent_color[static_cast<std::size_t>(gv)];
    for (const Perm& s : F_el) {
      if (v != 0 && s(forced_from) != forced_to) continue;
      for (int c : ball.children[static_cast<std::size_t>(v)])
        img[static_cast<std::size_t>(c)] =
            tables[static_cast<std::size_t>(gv)][static_cast<std::size_t>(
                s(ball.parent_color[static_cast<std::size_t>(c)]))];
      self(self, v + 1);
    }
  };
  descend(descend, 0);
  std::sort(out.begin(), out.end());

  if (is_transitive(F) && static_cast<u128>(out.size()) != predicted)
    throw std::logic_error(
        "legal enumeration disagrees with the stabilizer count formula");
  return PermGroup(n, std::move(out));
}

HypothesisReport check_theorem_hypotheses(const PermGroup& F) {
  HypothesisReport r;
  r.degree = F.degree;
  r.perfect = is_perfect(F);
  r.two_transitive = F.degree >= 2 && is_k_transitive(F, 2);
  r.generated_by_point_stabilizers = is_generated_by_point_stabilizers(F);
  r.point_stabilizer_perfect = is_perfect(point_stabilizer(F, 0));
  r.degree_at_least_six = F.degree >= 6;
  return r;
}

TowerSpec bm_tower_spec(const PermGroup& F, int depth) {
  if (depth < 1)
    throw std::invalid_argument("tower depth must be at least 1");
  if (F.degree < 3)
    throw std::invalid_argument("local group degree must be at least 3");
  std::vector<PermGroup> factors{F};
  if (depth > 1) {
    const PermGroup H = point_stabilizer(F, 0);
    std::vector<Perm> relabeled;
    for (const Perm& s : H.gens) {
      std::vector<int> img(static_cast<std::size_t>(F.degree) - 1);
      for (int i = 0; i + 1 < F.degree; ++i)
        img[static_cast<std::size_t>(i)] = s(i + 1) - 1;
      relabeled.emplace_back(std::move(img));
    }
    const PermGroup Hr(F.degree - 1, std::move(relabeled));
    for (int i = 1; i < depth; ++i) factors.push_back(Hr);
  }
  return TowerSpec(std::move(factors));
}

bool tower_match(const PermGroup& F, int depth, const Budget& budget) {
  const ColoredBall ball = make_legal_coloring(F.degree, depth);
  const PermGroup S = enumerate_stabilizer(ball, F, budget);
  const TowerGroup T = build_tower(bm_tower_spec(F, depth), budget);

  if (order(S) != tower_order(T.spec)) return false;

  for (int k = 1; k <= depth; ++k) {
    // Ball side: the action restricted to shell k (automorphisms fixing the
    // center preserve shells).
    const int start = ball.shell_start[static_cast<std::size_t>(k)];
    const int size = ball.shell_start[static_cast<std::size_t>(k) + 1] - start;
    std::vector<Perm> restricted;
    restricted.reserve(S.gens.size());
    for (const Perm& g : S.gens) {
      std::vector<int> img(static_cast<std::size_t>(size));
      for (int i = 0; i < size; ++i)
        img[static_cast<std::size_t>(i)] = g(start + i) - start;
      restricted.emplace_back(std::move(img));
    }
    std::vector<std::size_t> shell_sizes;
    for (const std::vector<int>& orb :
         orbits(PermGroup(size, std::move(restricted))))
      shell_sizes.push_back(orb.size());

    std::vector<Perm> lp;
    lp.reserve(T.gens.size());
    for (const Portrait& g : T.gens) lp.push_back(level_action(g, k));
    std::vector<std::size_t> level_sizes;
    for (const std::vector<int>& orb :
         orbits(PermGroup(static_cast<int>(T.degrees.level_size(k)),
                          std::move(lp))))
      level_sizes.push_back(orb.size());

    std::sort(shell_sizes.begin(), shell_sizes.end());
    std::sort(level_sizes.begin(), level_sizes.end());
    if (shell_sizes != level_sizes) return false;
  }
  return true;
}

BallAutomorphism recoloring_map(const ColoredBall& b1, const ColoredBall& b2) {
  if (b1.d != b2.d || b1.radius != b2.radius ||
      b1.vertex_count() != b2.vertex_count())
    throw std::invalid_argument("balls have different shapes");
  const std::vector<std::vector<int>> t2 = neighbor_tables(b2);
  std::vector<int> img(static_cast<std::size_t>(b1.vertex_count()), -1);
  img[0] = 0;
  // Children in breadth-first order always follow their parents, and the
  // image's parent color equals the source's parent color by induction, so
  // every lookup lands on a child edge of the image.
  for (int v = 0; v < b1.vertex_count(); ++v)
    for (int c : b1.children[static_cast<std::size_t>(v)])
      img[static_cast<std::size_t>(c)] =
          t2[static_cast<std::size_t>(img[static_cast<std::size_t>(v)])]
            [static_cast<std::size_t>(
                b1.parent_color[static_cast<std::size_t>(c)])];
  BallAutomorphism g{std::move(img)};
  check_ball_automorphism(b1, g);
  return g;
}

}  // namespace branchlab
