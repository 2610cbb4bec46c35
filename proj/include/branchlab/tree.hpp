#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace branchlab {

/// Degree profile of a finite spherically homogeneous rooted tree: entry k is
/// the number of children of every level-k vertex.  Depth = number of entries;
/// every entry is at least 2.
class DegreeSequence {
 public:
  explicit DegreeSequence(std::vector<int> degrees);
  static DegreeSequence constant(int degree, int depth);

  int depth() const { return static_cast<int>(degrees_.size()); }
  int degree(int level) const;
  const std::vector<int>& degrees() const { return degrees_; }

  /// Number of level-n vertices (product of degrees above level n).
  std::uint64_t level_size(int n) const;

  friend bool operator==(const DegreeSequence&, const DegreeSequence&) =
      default;

 private:
  std::vector<int> degrees_;
};

/// A vertex is the word of child indices on the path from the root; the root
/// is the empty word.
struct Vertex {
  std::vector<int> word;

  Vertex() = default;
  explicit Vertex(std::vector<int> w) : word(std::move(w)) {}

  int level() const { return static_cast<int>(word.size()); }
  bool is_root() const { return word.empty(); }

  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex& a, const Vertex& b) {
    return a.word <=> b.word;
  }
};

/// Throws std::invalid_argument unless v is a vertex of the tree (letters in
/// range, level <= depth).
void check_vertex(const DegreeSequence& seq, const Vertex& v);

/// Children of v in child-index order; error on leaves (level == depth).
std::vector<Vertex> children(const DegreeSequence& seq, const Vertex& v);

/// All level-n vertices in lexicographic order.
std::vector<Vertex> level_vertices(const DegreeSequence& seq, int n);

/// True iff w lies in the subtree rooted at v (v is a prefix of w; every
/// vertex lies below itself).
bool is_below(const Vertex& v, const Vertex& w);

/// The lexicographically maximal vertex of every level, root included
/// (depth+1 vertices, each the rightmost child of the previous).
std::vector<Vertex> rightmost_branch(const DegreeSequence& seq);

/// Position of v within level_vertices(seq, v.level()) — the mixed-radix
/// value of its word.
std::uint64_t vertex_rank(const DegreeSequence& seq, const Vertex& v);

/// Inverse of vertex_rank.
Vertex vertex_at_rank(const DegreeSequence& seq, int level, std::uint64_t rank);

/// Degrees of the subtree hanging below a level-n vertex.
DegreeSequence subtree_degrees(const DegreeSequence& seq, int n);

}  // namespace branchlab
