#include "branchlab/numeric.hpp"

#include <limits>
#include <stdexcept>

namespace branchlab {

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return std::string(s.rbegin(), s.rend());
}

u128 checked_mul(u128 a, u128 b) {
  if (a != 0 && b > std::numeric_limits<u128>::max() / a)
    throw std::overflow_error("group order exceeds 128 bits");
  return a * b;
}

u128 checked_pow(u128 base, std::uint64_t exp) {
  u128 r = 1;
  while (exp > 0) {
    if (exp & 1) r = checked_mul(r, base);
    exp >>= 1;
    if (exp) base = checked_mul(base, base);
  }
  return r;
}

void add_factorization(std::map<std::uint64_t, std::int64_t>& acc,
                       std::uint64_t n, std::int64_t sign) {
  if (n == 0) throw std::domain_error("cannot factor zero");
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      acc[p] += sign;
      n /= p;
    }
  }
  if (n > 1) acc[n] += sign;
}

u128 from_factorization(const std::map<std::uint64_t, std::int64_t>& f) {
  u128 r = 1;
  for (const auto& [p, e] : f) {
    if (e < 0) throw std::domain_error("non-integral quotient of orders");
    r = checked_mul(r, checked_pow(p, static_cast<std::uint64_t>(e)));
  }
  return r;
}

}  // namespace branchlab
