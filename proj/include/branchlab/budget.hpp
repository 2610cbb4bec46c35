#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace branchlab {

/// Thrown when an operation would materialize more elements (or more work)
/// than the configured budget allows.  Callers that only need orders should
/// prefer the stabilizer-chain paths, which never enumerate elements.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Caps on explicit enumeration.  `max_elements` bounds any materialized
/// element set, coset table, tuple orbit or search frontier.
struct Budget {
  std::uint64_t max_elements = 10'000'000;

  void charge(std::uint64_t count, const char* what) const {
    if (count > max_elements)
      throw BudgetError(std::string(what) + ": budget exceeded (" +
                        std::to_string(count) + " > " +
                        std::to_string(max_elements) + " elements)");
  }
};

/// Default budget; honors the BRANCHLAB_BUDGET environment variable when set
/// to a positive integer.
Budget default_budget();

}  // namespace branchlab
