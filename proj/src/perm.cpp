#include "branchlab/perm.hpp"

#include <numeric>
#include <stdexcept>

namespace branchlab {

Perm::Perm(int n) : img_(static_cast<std::size_t>(n)) {
  if (n < 0) throw std::invalid_argument("negative permutation degree");
  std::iota(img_.begin(), img_.end(), 0);
}

Perm::Perm(std::vector<int> images) : img_(std::move(images)) {
  const int n = degree();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int x : img_) {
    if (x < 0 || x >= n || seen[static_cast<std::size_t>(x)])
      throw std::invalid_argument("image table is not a bijection");
    seen[static_cast<std::size_t>(x)] = 1;
  }
}

Perm Perm::operator*(const Perm& q) const {
  if (degree() != q.degree())
    throw std::invalid_argument("composing permutations of different degrees");
  std::vector<int> r(img_.size());
  for (std::size_t x = 0; x < img_.size(); ++x)
    r[x] = img_[static_cast<std::size_t>(q.img_[x])];
  Perm out;
  out.img_ = std::move(r);
  return out;
}

Perm Perm::inverse() const {
  std::vector<int> r(img_.size());
  for (std::size_t x = 0; x < img_.size(); ++x)
    r[static_cast<std::size_t>(img_[x])] = static_cast<int>(x);
  Perm out;
  out.img_ = std::move(r);
  return out;
}

bool Perm::is_identity() const {
  for (std::size_t x = 0; x < img_.size(); ++x)
    if (img_[x] != static_cast<int>(x)) return false;
  return true;
}

Perm commutator(const Perm& p, const Perm& q) {
  return p * q * p.inverse() * q.inverse();
}

Perm conjugate(const Perm& p, const Perm& q) { return p * q * p.inverse(); }

std::vector<std::vector<int>> disjoint_cycles(const Perm& p) {
  const int n = p.degree();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> cycles;
  for (int start = 0; start < n; ++start) {
    if (seen[static_cast<std::size_t>(start)] || p(start) == start) continue;
    std::vector<int> cyc;
    int x = start;
    do {
      cyc.push_back(x);
      seen[static_cast<std::size_t>(x)] = 1;
      x = p(x);
    } while (x != start);
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

std::vector<int> support(const Perm& p) {
  std::vector<int> s;
  for (int x = 0; x < p.degree(); ++x)
    if (p(x) != x) s.push_back(x);
  return s;
}

bool is_derangement(const Perm& p) {
  if (p.degree() == 0) return false;
  for (int x = 0; x < p.degree(); ++x)
    if (p(x) == x) return false;
  return true;
}

unsigned long long perm_order(const Perm& p) {
  unsigned long long ord = 1;
  for (const auto& cyc : disjoint_cycles(p))
    ord = std::lcm(ord, static_cast<unsigned long long>(cyc.size()));
  return ord;
}

}  // namespace branchlab
