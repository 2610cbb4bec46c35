#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace branchlab {

/// Group orders routinely exceed 64 bits (a depth-2 tower of Alt(5) factors
/// already has order 60^6); 128 bits covers everything the engine is asked to
/// report as a single number.  Quantities beyond that are handled in factored
/// form (see factored_index).
using u128 = unsigned __int128;

std::string to_string(u128 v);

/// Multiplication that refuses to overflow silently.
u128 checked_mul(u128 a, u128 b);
u128 checked_pow(u128 base, std::uint64_t exp);

/// Prime exponent map of a small integer (trial division; inputs here are
/// orbit sizes, bounded by the permutation degree).
void add_factorization(std::map<std::uint64_t, std::int64_t>& acc,
                       std::uint64_t n, std::int64_t sign);

/// Rebuild an integer from a prime-exponent map.  Throws std::domain_error if
/// any exponent is negative (i.e. the quotient was not exact) and
/// std::overflow_error if the value does not fit 128 bits.
u128 from_factorization(const std::map<std::uint64_t, std::int64_t>& f);

}  // namespace branchlab
