#include "branchlab/tree.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace branchlab {

DegreeSequence::DegreeSequence(std::vector<int> degrees)
    : degrees_(std::move(degrees)) {
  if (degrees_.empty())
    throw std::invalid_argument("degree sequence must be non-empty");
  for (int d : degrees_)
    if (d < 2)
      throw std::invalid_argument("every degree must be at least 2, got " +
                                  std::to_string(d));
}

DegreeSequence DegreeSequence::constant(int degree, int depth) {
  if (depth < 1) throw std::invalid_argument("depth must be at least 1");
  return DegreeSequence(std::vector<int>(static_cast<std::size_t>(depth),
                                         degree));
}

int DegreeSequence::degree(int level) const {
  if (level < 0 || level >= depth())
    throw std::invalid_argument("level " + std::to_string(level) +
                                " out of range for depth " +
                                std::to_string(depth()));
  return degrees_[static_cast<std::size_t>(level)];
}

std::uint64_t DegreeSequence::level_size(int n) const {
  if (n < 0 || n > depth())
    throw std::invalid_argument("level " + std::to_string(n) +
                                " out of range for depth " +
                                std::to_string(depth()));
  std::uint64_t size = 1;
  for (int i = 0; i < n; ++i) {
    const auto d = static_cast<std::uint64_t>(degrees_[static_cast<std::size_t>(i)]);
    if (size > std::numeric_limits<std::uint64_t>::max() / d)
      throw std::overflow_error("level size exceeds 64 bits");
    size *= d;
  }
  return size;
}

void check_vertex(const DegreeSequence& seq, const Vertex& v) {
  if (v.level() > seq.depth())
    throw std::invalid_argument("vertex deeper than the tree");
  for (int i = 0; i < v.level(); ++i) {
    const int letter = v.word[static_cast<std::size_t>(i)];
    if (letter < 0 || letter >= seq.degree(i))
      throw std::invalid_argument("vertex letter " + std::to_string(letter) +
                                  " out of range at level " +
                                  std::to_string(i));
  }
}

std::vector<Vertex> children(const DegreeSequence& seq, const Vertex& v) {
  check_vertex(seq, v);
  if (v.level() == seq.depth())
    throw std::invalid_argument("leaf vertex has no children");
  const int d = seq.degree(v.level());
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(d));
  for (int x = 0; x < d; ++x) {
    Vertex c = v;
    c.word.push_back(x);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Vertex> level_vertices(const DegreeSequence& seq, int n) {
  const std::uint64_t count = seq.level_size(n);
  std::vector<Vertex> out;
  out.reserve(count);
  Vertex v(std::vector<int>(static_cast<std::size_t>(n), 0));
  for (std::uint64_t i = 0; i < count; ++i) {
    out.push_back(v);
    // Increment the word as a mixed-radix counter.
    for (int pos = n - 1; pos >= 0; --pos) {
      auto& letter = v.word[static_cast<std::size_t>(pos)];
      if (++letter < seq.degree(pos)) break;
      letter = 0;
    }
  }
  return out;
}

bool is_below(const Vertex& v, const Vertex& w) {
  if (v.level() > w.level()) return false;
  for (int i = 0; i < v.level(); ++i)
    if (v.word[static_cast<std::size_t>(i)] !=
        w.word[static_cast<std::size_t>(i)])
      return false;
  return true;
}

std::vector<Vertex> rightmost_branch(const DegreeSequence& seq) {
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(seq.depth()) + 1);
  Vertex v;
  out.push_back(v);
  for (int n = 0; n < seq.depth(); ++n) {
    v.word.push_back(seq.degree(n) - 1);
    out.push_back(v);
  }
  return out;
}

std::uint64_t vertex_rank(const DegreeSequence& seq, const Vertex& v) {
  check_vertex(seq, v);
  std::uint64_t rank = 0;
  for (int i = 0; i < v.level(); ++i)
    rank = rank * static_cast<std::uint64_t>(seq.degree(i)) +
           static_cast<std::uint64_t>(v.word[static_cast<std::size_t>(i)]);
  return rank;
}

Vertex vertex_at_rank(const DegreeSequence& seq, int level,
                      std::uint64_t rank) {
  if (rank >= seq.level_size(level))
    throw std::invalid_argument("vertex rank out of range");
  std::vector<int> word(static_cast<std::size_t>(level));
  for (int i = level - 1; i >= 0; --i) {
    const auto d = static_cast<std::uint64_t>(seq.degree(i));
    word[static_cast<std::size_t>(i)] = static_cast<int>(rank % d);
    rank /= d;
  }
  return Vertex(std::move(word));
}

DegreeSequence subtree_degrees(const DegreeSequence& seq, int n) {
  if (n < 0 || n >= seq.depth())
    throw std::invalid_argument("no subtree below that level");
  return DegreeSequence(std::vector<int>(seq.degrees().begin() + n,
                                         seq.degrees().end()));
}

}  // namespace branchlab
