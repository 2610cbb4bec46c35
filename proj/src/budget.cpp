#include "branchlab/budget.hpp"

#include <cstdlib>

namespace branchlab {

Budget default_budget() {
  Budget b;
  if (const char* env = std::getenv("BRANCHLAB_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || (end && *end != '\0'))
      throw std::invalid_argument(
          "BRANCHLAB_BUDGET must be a positive integer");
    if (v > 0) b.max_elements = v;
  }
  return b;
}

}  // namespace branchlab
