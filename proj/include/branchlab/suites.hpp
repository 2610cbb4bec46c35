#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "branchlab/budget.hpp"

namespace branchlab {

struct SuiteCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Outcome of one verification suite; `seed` is meaningful only for
/// randomized suites (and is always echoed so runs can be reproduced).
struct SuiteReport {
  std::string suite;
  bool randomized = false;
  std::uint64_t seed = 0;
  std::vector<SuiteCheck> checks;

  bool all_passed() const;
};

/// Default seed for randomized suites; every report prints the seed it used.
inline constexpr std::uint64_t kDefaultSuiteSeed = 577215664901;

/// Random commutator-trick instances on trees of depth 2..max_depth: builds a
/// conjugating element moving one subtree clear of two others, replays the
/// four-conjugate witness, and re-checks the product independently.
SuiteReport run_comm_trick_suite(int samples, int max_depth,
                                 std::uint64_t seed,
                                 const Budget& budget = default_budget());

/// Fullness decisions over the depth-3 binary tower: the whole group is full
/// above every vertex, and deleting all realizers of one section flips the
/// answer with that section reported as the refutation.
SuiteReport run_fullness_suite(int samples, std::uint64_t seed,
                               const Budget& budget = default_budget());

/// Random exact covers of the depth-3 binary tower; every cover must yield a
/// member full above a vertex, re-verified from scratch.
SuiteReport run_diagonal_suite(int samples, std::uint64_t seed,
                               const Budget& budget = default_budget());

/// The rigid-stabilizer derangements of the Grigorchuk quotients for
/// n = 0, 1, 2: fixed-point-free on V_{n+2}, trivial on V_n, and with every
/// rigid factor a member of the depth quotient.
SuiteReport run_grig_derangement_suite();

/// The K-subgroup index sweep: |K : K1| = 4 and |G : K| = 16, stabilized
/// across consecutive depths within max_depth, with K/K1 cyclic of order
/// four generated by the coset of (ab)^2.
SuiteReport run_grig_indices_suite(int max_depth);

/// Random transitive groups of degree <= max_degree each contain a
/// derangement (membership checked).
SuiteReport run_jordan_suite(int samples, int max_degree, std::uint64_t seed,
                             const Budget& budget = default_budget());

/// Group-axiom and oracle properties on randomized inputs: portrait
/// composition axioms, action homomorphism, truncation naturality,
/// orbit-stabilizer identity, and the rigid-stabilizer product decomposition
/// cross-checked against breadth-first enumeration.
SuiteReport run_axiom_suite(int samples, std::uint64_t seed,
                            const Budget& budget = default_budget());

}  // namespace branchlab
