#pragma once

#include <compare>
#include <cstddef>
#include <vector>

namespace branchlab {

/// A permutation of {0, ..., n-1} stored as its image table.
/// Composition follows function application: (p * q)(x) = p(q(x)).
class Perm {
 public:
  Perm() = default;
  /// Identity on n points.
  explicit Perm(int n);
  /// From an image table; throws std::invalid_argument unless it is a
  /// bijection of {0, ..., images.size()-1}.
  explicit Perm(std::vector<int> images);

  static Perm identity(int n) { return Perm(n); }

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int x) const { return img_[static_cast<std::size_t>(x)]; }
  const std::vector<int>& images() const { return img_; }

  Perm operator*(const Perm& q) const;
  Perm inverse() const;
  bool is_identity() const;

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm& a, const Perm& b) {
    return a.img_ <=> b.img_;
  }

 private:
  std::vector<int> img_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : p.images()) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

/// Commutator [p, q] = p q p^-1 q^-1.
Perm commutator(const Perm& p, const Perm& q);

/// p q p^-1.
Perm conjugate(const Perm& p, const Perm& q);

/// Cycles of length >= 2, each rotated to start at its least point, sorted by
/// that point.  The identity yields an empty list.
std::vector<std::vector<int>> disjoint_cycles(const Perm& p);

/// Points moved by p, ascending.
std::vector<int> support(const Perm& p);

bool is_derangement(const Perm& p);

/// Multiplicative order (lcm of cycle lengths).
unsigned long long perm_order(const Perm& p);

}  // namespace branchlab
