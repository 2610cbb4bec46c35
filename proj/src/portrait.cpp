#include "branchlab/portrait.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace branchlab {

namespace {

// Rank maps of p's action on every level: out[n][r] = rank of the image of
// the rank-r level-n vertex.  Built top-down in one pass; level 0 is {0}.
std::vector<std::vector<std::uint64_t>> all_level_rank_maps(const Portrait& p) {
  const auto& seq = p.seq();
  std::vector<std::vector<std::uint64_t>> maps(
      static_cast<std::size_t>(seq.depth()) + 1);
  maps[0] = {0};
  for (int n = 0; n < seq.depth(); ++n) {
    const auto d = static_cast<std::uint64_t>(seq.degree(n));
    const std::uint64_t count = seq.level_size(n);
    std::vector<std::uint64_t> next(count * d);
    for (std::uint64_t r = 0; r < count; ++r) {
      const Perm& sigma = p.perm_at(n, r);
      const std::uint64_t image_base = maps[static_cast<std::size_t>(n)][r] * d;
      for (std::uint64_t x = 0; x < d; ++x)
        next[r * d + x] = image_base +
                          static_cast<std::uint64_t>(sigma(static_cast<int>(x)));
    }
    maps[static_cast<std::size_t>(n) + 1] = std::move(next);
  }
  return maps;
}

}  // namespace

Portrait::Portrait(DegreeSequence seq) : seq_(std::move(seq)) {
  perms_.resize(static_cast<std::size_t>(seq_.depth()));
  for (int n = 0; n < seq_.depth(); ++n)
    perms_[static_cast<std::size_t>(n)].assign(seq_.level_size(n),
                                               Perm(seq_.degree(n)));
}

Portrait::Portrait(DegreeSequence seq,
                   std::vector<std::vector<Perm>> level_perms)
    : seq_(std::move(seq)), perms_(std::move(level_perms)) {
  if (perms_.size() != static_cast<std::size_t>(seq_.depth()))
    throw std::invalid_argument("portrait must have one table per level");
  for (int n = 0; n < seq_.depth(); ++n) {
    const auto& table = perms_[static_cast<std::size_t>(n)];
    if (table.size() != seq_.level_size(n))
      throw std::invalid_argument("portrait level table has wrong size");
    for (const Perm& s : table)
      if (s.degree() != seq_.degree(n))
        throw std::invalid_argument("child permutation has wrong degree");
  }
}

const Perm& Portrait::perm_at(const Vertex& v) const {
  if (v.level() >= depth())
    throw std::invalid_argument("no child permutation at a leaf");
  return perms_[static_cast<std::size_t>(v.level())][vertex_rank(seq_, v)];
}

const Perm& Portrait::perm_at(int level, std::uint64_t rank) const {
  if (level < 0 || level >= depth())
    throw std::invalid_argument("no child permutation at that level");
  return perms_[static_cast<std::size_t>(level)][rank];
}

void Portrait::set_perm(const Vertex& v, const Perm& p) {
  if (v.level() >= depth())
    throw std::invalid_argument("no child permutation at a leaf");
  if (p.degree() != seq_.degree(v.level()))
    throw std::invalid_argument("child permutation has wrong degree");
  perms_[static_cast<std::size_t>(v.level())][vertex_rank(seq_, v)] = p;
}

bool Portrait::is_identity() const {
  for (const auto& table : perms_)
    for (const Perm& s : table)
      if (!s.is_identity()) return false;
  return true;
}

Vertex act(const Portrait& p, const Vertex& v) {
  check_vertex(p.seq(), v);
  std::vector<int> image(v.word.size());
  std::uint64_t prefix_rank = 0;  // rank of the source prefix read so far
  for (int i = 0; i < v.level(); ++i) {
    const int letter = v.word[static_cast<std::size_t>(i)];
    image[static_cast<std::size_t>(i)] = p.perm_at(i, prefix_rank)(letter);
    prefix_rank = prefix_rank * static_cast<std::uint64_t>(p.seq().degree(i)) +
                  static_cast<std::uint64_t>(letter);
  }
  return Vertex(std::move(image));
}

Portrait compose(const Portrait& p, const Portrait& q) {
  if (p.seq() != q.seq())
    throw std::invalid_argument("composing portraits over different trees");
  const auto& seq = p.seq();
  // (p o q) has, at source vertex v, the permutation p_{q(v)} * q_v.
  const auto q_maps = all_level_rank_maps(q);
  std::vector<std::vector<Perm>> tables(static_cast<std::size_t>(seq.depth()));
  for (int n = 0; n < seq.depth(); ++n) {
    const std::uint64_t count = seq.level_size(n);
    auto& table = tables[static_cast<std::size_t>(n)];
    table.reserve(count);
    for (std::uint64_t r = 0; r < count; ++r)
      table.push_back(p.perm_at(n, q_maps[static_cast<std::size_t>(n)][r]) *
                      q.perm_at(n, r));
  }
  return Portrait(seq, std::move(tables));
}

Portrait invert(const Portrait& p) {
  const auto& seq = p.seq();
  // p^-1 has, at vertex v, the inverse of p's permutation at p^-1(v).
  const auto maps = all_level_rank_maps(p);
  std::vector<std::vector<Perm>> tables(static_cast<std::size_t>(seq.depth()));
  for (int n = 0; n < seq.depth(); ++n) {
    const std::uint64_t count = seq.level_size(n);
    auto& table = tables[static_cast<std::size_t>(n)];
    table.assign(count, Perm());
    for (std::uint64_t r = 0; r < count; ++r)
      table[maps[static_cast<std::size_t>(n)][r]] =
          p.perm_at(n, r).inverse();
  }
  return Portrait(seq, std::move(tables));
}

Portrait section(const Portrait& p, const Vertex& v) {
  check_vertex(p.seq(), v);
  if (v.is_root()) return p;
  if (v.level() >= p.depth())
    throw std::invalid_argument("no subtree below a leaf");
  if (act(p, v) != v) throw std::invalid_argument("vertex not fixed");
  const DegreeSequence sub = subtree_degrees(p.seq(), v.level());
  const int lv = v.level();
  std::vector<std::vector<Perm>> tables(static_cast<std::size_t>(sub.depth()));
  for (int j = 0; j < sub.depth(); ++j) {
    // Vertices below v occupy a contiguous rank block at each level.
    const std::uint64_t block = sub.level_size(j);
    const std::uint64_t start = vertex_rank(p.seq(), v) * block;
    auto& table = tables[static_cast<std::size_t>(j)];
    table.reserve(block);
    for (std::uint64_t r = 0; r < block; ++r)
      table.push_back(p.perm_at(lv + j, start + r));
  }
  return Portrait(sub, std::move(tables));
}

Portrait embed(const Portrait& sub, const Vertex& v,
               const DegreeSequence& ambient) {
  check_vertex(ambient, v);
  if (v.level() >= ambient.depth())
    throw std::invalid_argument("cannot embed below a leaf");
  if (sub.seq() != subtree_degrees(ambient, v.level()))
    throw std::invalid_argument("subtree degrees do not match the ambient tree");
  Portrait out(ambient);
  const int lv = v.level();
  for (int j = 0; j < sub.depth(); ++j) {
    const std::uint64_t block = sub.seq().level_size(j);
    const std::uint64_t start = vertex_rank(ambient, v) * block;
    for (std::uint64_t r = 0; r < block; ++r) {
      const Perm& s = sub.perm_at(j, r);
      if (!s.is_identity())
        out.set_perm(vertex_at_rank(ambient, lv + j, start + r), s);
    }
  }
  return out;
}

std::vector<Vertex> support_level(const Portrait& p, int n) {
  if (n < 0 || n > p.depth())
    throw std::invalid_argument("level out of range");
  const auto maps = all_level_rank_maps(p);
  std::vector<Vertex> out;
  for (std::uint64_t r = 0; r < p.seq().level_size(n); ++r)
    if (maps[static_cast<std::size_t>(n)][r] != r)
      out.push_back(vertex_at_rank(p.seq(), n, r));
  return out;
}

bool is_derangement_of_level(const Portrait& p, int n) {
  if (n < 1 || n > p.depth())
    throw std::invalid_argument("level out of range");
  const auto maps = all_level_rank_maps(p);
  for (std::uint64_t r = 0; r < p.seq().level_size(n); ++r)
    if (maps[static_cast<std::size_t>(n)][r] == r) return false;
  return true;
}

Portrait truncate(const Portrait& p, int m) {
  if (m < 1 || m > p.depth())
    throw std::invalid_argument("truncation depth out of range");
  DegreeSequence seq(std::vector<int>(p.seq().degrees().begin(),
                                      p.seq().degrees().begin() + m));
  std::vector<std::vector<Perm>> tables;
  tables.reserve(static_cast<std::size_t>(m));
  for (int n = 0; n < m; ++n) {
    std::vector<Perm> table;
    const std::uint64_t count = p.seq().level_size(n);
    table.reserve(count);
    for (std::uint64_t r = 0; r < count; ++r) table.push_back(p.perm_at(n, r));
    tables.push_back(std::move(table));
  }
  return Portrait(std::move(seq), std::move(tables));
}

Perm level_action(const Portrait& p, int n) {
  if (n < 0 || n > p.depth())
    throw std::invalid_argument("level out of range");
  const auto maps = all_level_rank_maps(p);
  std::vector<int> img(maps[static_cast<std::size_t>(n)].size());
  for (std::uint64_t r = 0; r < img.size(); ++r)
    img[r] = static_cast<int>(maps[static_cast<std::size_t>(n)][r]);
  return Perm(std::move(img));
}

Perm leaf_action(const Portrait& p) { return level_action(p, p.depth()); }

Portrait random_portrait(const DegreeSequence& seq, std::mt19937_64& rng) {
  Portrait out(seq);
  for (int n = 0; n < seq.depth(); ++n) {
    std::vector<int> img(static_cast<std::size_t>(seq.degree(n)));
    for (std::uint64_t r = 0; r < seq.level_size(n); ++r) {
      for (std::size_t i = 0; i < img.size(); ++i) img[i] = static_cast<int>(i);
      std::shuffle(img.begin(), img.end(), rng);
      out.set_perm(vertex_at_rank(seq, n, r), Perm(img));
    }
  }
  return out;
}

}  // namespace branchlab
