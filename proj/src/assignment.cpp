#include "assignment.hpp"

#include <algorithm>
#include <functional>

namespace tropfact::detail {

Assignment solve_max_assignment(const Matrix& a) {
  const std::size_t n = a.size();

  // Minimise cost = -value. Missing (-inf) entries get a penalty larger than
  // the spread of any all-finite assignment, so they are used only when no
  // finite assignment exists.
  Rational max_abs = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a(i, j).is_finite()) max_abs = std::max<Rational>(max_abs, abs(a(i, j).value()));
  const Rational penalty = Rational(2 * (n + 1)) * (max_abs + 1);

  std::vector<std::vector<Rational>> cost(n + 1, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      cost[i + 1][j + 1] = a(i, j).is_finite() ? Rational(-a(i, j).value()) : penalty;

  // Shortest augmenting path Hungarian method, 1-based with column 0 as root.
  std::vector<Rational> u(n + 1), v(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<Rational> minv(n + 1);
    std::vector<bool> minv_set(n + 1, false);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      std::size_t j1 = 0;
      Rational delta;
      bool delta_set = false;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        Rational cur = cost[i0][j] - u[i0] - v[j];
        if (!minv_set[j] || cur < minv[j]) {
          minv[j] = cur;
          minv_set[j] = true;
          way[j] = j0;
        }
        if (!delta_set || minv[j] < delta) {
          delta = minv[j];
          delta_set = true;
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  Assignment out;
  out.perm.assign(n, 0);
  out.feasible = true;
  out.weight = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t i = p[j] - 1;
    out.perm[i] = j - 1;
    if (!a(i, j - 1).is_finite())
      out.feasible = false;
    else
      out.weight += a(i, j - 1).value();
  }
  out.tight.assign(n, std::vector<bool>(n, false));
  if (out.feasible)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out.tight[i][j] = a(i, j).is_finite() && u[i + 1] + v[j + 1] == cost[i + 1][j + 1];
  return out;
}

bool has_alternative_matching(const std::vector<std::vector<bool>>& tight, const Permutation& perm) {
  // Another perfect matching exists iff the digraph i -> owner(j) over tight
  // non-matching edges (i, j) has a cycle.
  const std::size_t n = perm.size();
  std::vector<std::size_t> owner(n);
  for (std::size_t i = 0; i < n; ++i) owner[perm[i]] = i;

  enum class Color { White, Grey, Black };
  std::vector<Color> color(n, Color::White);
  std::function<bool(std::size_t)> visit = [&](std::size_t i) {
    color[i] = Color::Grey;
    for (std::size_t j = 0; j < n; ++j) {
      if (!tight[i][j] || perm[i] == j) continue;
      const std::size_t next = owner[j];
      if (color[next] == Color::Grey) return true;
      if (color[next] == Color::White && visit(next)) return true;
    }
    color[i] = Color::Black;
    return false;
  };
  for (std::size_t i = 0; i < n; ++i)
    if (color[i] == Color::White && visit(i)) return true;
  return false;
}

namespace {

// Kuhn's augmenting-path matching restricted to rows >= first and unused columns.
bool complete_matching(const std::vector<std::vector<bool>>& tight, std::size_t first,
                       const std::vector<bool>& taken) {
  const std::size_t n = tight.size();
  std::vector<std::size_t> match_col(n, n);
  std::function<bool(std::size_t, std::vector<bool>&)> augment = [&](std::size_t i,
                                                                     std::vector<bool>& seen) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!tight[i][j] || taken[j] || seen[j]) continue;
      seen[j] = true;
      if (match_col[j] == n || augment(match_col[j], seen)) {
        match_col[j] = i;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = first; i < n; ++i) {
    std::vector<bool> seen(n, false);
    if (!augment(i, seen)) return false;
  }
  return true;
}

}  // namespace

std::optional<Permutation> least_matching(const std::vector<std::vector<bool>>& tight) {
  const std::size_t n = tight.size();
  std::vector<bool> taken(n, false);
  if (!complete_matching(tight, 0, taken)) return std::nullopt;
  Permutation perm(n);
  for (std::size_t i = 0; i < n; ++i) {
    bool placed = false;
    for (std::size_t j = 0; j < n && !placed; ++j) {
      if (!tight[i][j] || taken[j]) continue;
      taken[j] = true;
      if (complete_matching(tight, i + 1, taken)) {
        perm[i] = j;
        placed = true;
      } else {
        taken[j] = false;
      }
    }
    if (!placed) return std::nullopt;
  }
  return perm;
}

}  // namespace tropfact::detail
