#pragma once

// Max-weight assignment on the nu-values of a matrix, with the optimal dual
// potentials kept so that the set of all optimal assignments can be queried
// through the tight-edge graph.

#include <cstddef>
#include <optional>
#include <vector>

#include "tropfact/matrix.hpp"

namespace tropfact::detail {

struct Assignment {
  bool feasible = false;  // some all-finite assignment exists
  Rational weight;        // sum of nu-values on `perm` when feasible
  Permutation perm;
  // tight[i][j]: entry (i, j) is finite and lies on some optimal assignment
  // candidate (its reduced cost under the optimal duals is zero).
  std::vector<std::vector<bool>> tight;
};

Assignment solve_max_assignment(const Matrix& a);

/// True if the tight graph carries a perfect matching other than `perm`.
bool has_alternative_matching(const std::vector<std::vector<bool>>& tight, const Permutation& perm);

/// Lexicographically least perfect matching of the tight graph.
std::optional<Permutation> least_matching(const std::vector<std::vector<bool>>& tight);

}  // namespace tropfact::detail
