#include "tropfact/factorization.hpp"

#include <algorithm>
#include <numeric>

namespace tropfact {

namespace {

void require_index(std::size_t n, std::size_t i) {
  if (i >= n) throw Error(ErrorCode::InvalidArgument, "row index out of range");
}

void require_tangible(const Scalar& k) {
  if (!k.is_tangible())
    throw Error(ErrorCode::InvalidArgument, "coefficient must be tangible, got " + to_string(k));
}

// Appends E_{target + k*source}. -inf coefficients are the identity and are
// dropped; a ghost coefficient is realised by applying its tangible value twice.
void emit_add(std::vector<ElementaryMatrix>& out, std::size_t n, std::size_t target,
              std::size_t source, const Scalar& k) {
  if (k.is_neg_inf()) return;
  const Scalar t = project_tropical(k);
  out.push_back(ElementaryMatrix::add_multiple(n, target, source, t));
  if (k.is_ghost()) out.push_back(ElementaryMatrix::add_multiple(n, target, source, t));
}

Matrix working_copy(const Matrix& a, Mode mode) {
  return mode == Mode::Tropical ? project_tropical(a) : a;
}

Relation relation_of(const Scalar& lhs, const Scalar& rhs) {
  const auto c = compare_nu(lhs, rhs);
  if (c < 0) return Relation::Less;
  if (c > 0) return Relation::Greater;
  return Relation::Equal;
}

// The third index of {0, 1, 2}.
std::size_t other(std::size_t i, std::size_t j) { return 3 - i - j; }

void require_normal_3x3(const Matrix& abar) {
  if (abar.size() != 3) throw Error(ErrorCode::DimensionMismatch, "expected a 3x3 matrix");
  if (!is_normal_form(abar)) throw Error(ErrorCode::NotNormalForm, "matrix is not in normal form");
}

// Strongest comparison under which the product matches the target.
Equality strongest_equality(const Matrix& product, const Matrix& target, Equality wanted) {
  for (Equality e : {Equality::ExactSupertropical, Equality::NuEquivalent, Equality::ExactTropical})
    if (static_cast<int>(e) >= static_cast<int>(wanted) && equal_under(product, target, e))
      return e;
  throw Error(ErrorCode::NotFactorizable, "construction did not reproduce the target");
}

}  // namespace

ElementaryMatrix::ElementaryMatrix(std::size_t n, Op op) : n_(n), op_(std::move(op)) {
  std::visit(
      [n](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, Swap>) {
          require_index(n, e.i);
          require_index(n, e.j);
          if (e.i == e.j) throw Error(ErrorCode::InvalidArgument, "swap needs distinct rows");
        } else if constexpr (std::is_same_v<T, Scale>) {
          require_index(n, e.row);
          require_tangible(e.k);
        } else {
          require_index(n, e.target);
          require_index(n, e.source);
          if (e.target == e.source)
            throw Error(ErrorCode::InvalidArgument, "addmul needs distinct rows");
          require_tangible(e.k);
        }
      },
      op_);
}

Matrix ElementaryMatrix::expand() const {
  Matrix m = Matrix::identity(n_);
  std::visit(
      [&m](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, Swap>) {
          m(e.i, e.i) = m(e.j, e.j) = Scalar::neg_inf();
          m(e.i, e.j) = m(e.j, e.i) = Scalar::one();
        } else if constexpr (std::is_same_v<T, Scale>) {
          m(e.row, e.row) = e.k;
        } else {
          m(e.target, e.source) = e.k;
        }
      },
      op_);
  return m;
}

Matrix evaluate(std::size_t n, std::span<const ElementaryMatrix> factors) {
  Matrix product = Matrix::identity(n);
  for (const auto& e : factors) {
    if (e.size() != n) throw Error(ErrorCode::DimensionMismatch, "factor dimension differs");
    product = product * e.expand();
  }
  return product;
}

Matrix evaluate(const Factorization& f) { return evaluate(f.n, f.factors); }

bool equal_under(const Matrix& a, const Matrix& b, Equality mode) {
  if (a.size() != b.size()) return false;
  switch (mode) {
    case Equality::ExactSupertropical: return a == b;
    case Equality::NuEquivalent: return nu_equivalent(a, b);
    case Equality::ExactTropical: return project_tropical(a) == project_tropical(b);
  }
  return false;
}

bool verify(const Factorization& f) {
  try {
    return equal_under(evaluate(f), f.target, f.mode);
  } catch (const Error&) {
    return false;
  }
}

std::vector<ElementaryMatrix> push_type3_left(std::span<const ElementaryMatrix> factors) {
  std::vector<ElementaryMatrix> out(factors.begin(), factors.end());
  // Bubble each type-3 factor leftwards past type-1/2 factors:
  //   E1 E2 = E3 E4 with E2, E3 of type 3 and E1, E4 of the same kind.
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t p = 0; p + 1 < out.size(); ++p) {
      if (out[p].is_type3() || !out[p + 1].is_type3()) continue;
      const std::size_t n = out[p].size();
      auto add = std::get<AddMultiple>(out[p + 1].op());
      if (const auto* s = std::get_if<Swap>(&out[p].op())) {
        auto swapped = [s](std::size_t r) { return r == s->i ? s->j : r == s->j ? s->i : r; };
        add.target = swapped(add.target);
        add.source = swapped(add.source);
      } else {
        const auto& sc = std::get<Scale>(out[p].op());
        if (add.target == sc.row)
          add.k = add.k * sc.k;
        else if (add.source == sc.row)
          add.k = add.k * inverse(sc.k);
      }
      out[p + 1] = out[p];
      out[p] = ElementaryMatrix(n, add);
      moved = true;
    }
  }
  return out;
}

bool is_normal_form(const Matrix& a) {
  return a.size() > 0 && a.has_one_diagonal() && compare_nu(determinant(a), Scalar::one()) == 0;
}

NormalForm normal_form(const Matrix& a, Mode mode) {
  const Matrix m = working_copy(a, mode);
  const Scalar det = determinant(m);
  if (det.is_neg_inf()) throw Error(ErrorCode::StrictlySingularInput, "every track is -inf");
  if (mode == Mode::Supertropical && !det.is_tangible())
    throw Error(ErrorCode::NotInvertibleDeterminant, "singular over the supertropical semiring");

  NormalForm nf;
  nf.track = *least_dominant_permutation(m);
  const std::size_t n = m.size();
  nf.p = Matrix(n);
  for (std::size_t i = 0; i < n; ++i) nf.p(i, nf.track[i]) = m(i, nf.track[i]);
  nf.abar = invertible_inverse(nf.p) * m;
  nf.p_factors = factor_invertible(nf.p).factors;
  return nf;
}

Factorization factor_invertible(const Matrix& p) {
  if (!is_invertible_shape(p))
    throw Error(ErrorCode::NotInvertibleShape, "need one tangible entry per row and column");
  const std::size_t n = p.size();
  Factorization f{n, {}, p, Equality::ExactSupertropical};
  // Row swaps S1..Sk carry P to a diagonal D, so P = S1 ... Sk D.
  Matrix work = p;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (work(r, c).is_neg_inf()) ++r;
    if (r == c) continue;
    for (std::size_t j = 0; j < n; ++j) std::swap(work(r, j), work(c, j));
    f.factors.push_back(ElementaryMatrix::swap(n, c, r));
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!work(i, i).is_one()) f.factors.push_back(ElementaryMatrix::scale(n, i, work(i, i)));
  return f;
}

Factorization factor_triangular(const Matrix& a, Mode mode) {
  const Matrix m = working_copy(a, mode);
  const std::size_t n = m.size();
  bool upper = true, lower = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (m(i, j).is_neg_inf()) continue;
      if (i > j) upper = false;
      if (i < j) lower = false;
    }
  if (!upper && !lower) throw Error(ErrorCode::NotTriangular, "matrix is not triangular");
  for (std::size_t i = 0; i < n; ++i)
    if (!m(i, i).is_tangible())
      throw Error(ErrorCode::NonTangibleDiagonal, "diagonal entry " + to_string(m(i, i)));

  Factorization f{n, {}, m, Equality::ExactSupertropical};
  for (std::size_t i = 0; i < n; ++i)
    if (!m(i, i).is_one()) f.factors.push_back(ElementaryMatrix::scale(n, i, m(i, i)));

  // Unit triangular part, row i divided by its diagonal. Each row is built
  // while the rows it reads are still unit vectors: upper rows top-down,
  // lower rows bottom-up. The last operation applied sits leftmost.
  auto unit = [&](std::size_t i, std::size_t j) { return m(i, j) * inverse(m(i, i)); };
  if (upper) {
    for (std::size_t i = n; i-- > 0;)
      for (std::size_t j = n; j-- > i + 1;) emit_add(f.factors, n, i, j, unit(i, j));
  } else {
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) emit_add(f.factors, n, i, j, unit(i, j));
  }
  return f;
}

Factorization factor_2x2(const Matrix& a, Mode mode) {
  if (a.size() != 2) throw Error(ErrorCode::DimensionMismatch, "expected a 2x2 matrix");
  const Matrix m = working_copy(a, mode);
  const NormalForm nf = normal_form(m, mode);
  Factorization f{2, nf.p_factors, m, Equality::ExactSupertropical};
  // P * L * U with L = E_{2 + beta*row 1}, U = E_{1 + alpha*row 2}.
  emit_add(f.factors, 2, 1, 0, nf.abar(1, 0));
  emit_add(f.factors, 2, 0, 1, nf.abar(0, 1));
  const bool exact = mode == Mode::Supertropical && classify(m) == SingularityClass::NonSingular;
  f.mode = strongest_equality(evaluate(f), m,
                              exact ? Equality::ExactSupertropical : Equality::ExactTropical);
  return f;
}

EntryConditions entry_conditions(const Matrix& abar) {
  require_normal_3x3(abar);
  EntryConditions ec{Matrix::identity(3), {}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      ec.relations[i][j] = Relation::Equal;
      if (i == j) continue;
      const std::size_t k = other(i, j);
      const Scalar path = abar(i, k) * abar(k, j);
      ec.values(i, j) = abar(i, j) + path;
      ec.relations[i][j] = relation_of(abar(i, j), path);
    }
  return ec;
}

FactorizabilityVerdict is_factorizable_3x3(const Matrix& abar) {
  const EntryConditions ec = entry_conditions(abar);
  // The two nondiagonal tracks: 1->2->3->1 and 1->3->2->1.
  for (const Permutation& cycle : {Permutation{1, 2, 0}, Permutation{2, 0, 1}}) {
    bool all_less = true;
    for (std::size_t i = 0; i < 3; ++i) all_less = all_less && ec.relations[i][cycle[i]] == Relation::Less;
    if (all_less) {
      NonFactorizabilityWitness w;
      w.kind = NonFactorizabilityWitness::Kind::AllLessTrack;
      w.track = cycle;
      return {false, w};
    }
  }
  return {true, std::nullopt};
}

Factorization factor_3x3(const Matrix& a, Mode mode) {
  if (a.size() != 3) throw Error(ErrorCode::DimensionMismatch, "expected a 3x3 matrix");
  const Matrix m = working_copy(a, mode);
  const NormalForm nf = normal_form(m, mode);
  const FactorizabilityVerdict verdict = is_factorizable_3x3(nf.abar);
  if (!verdict.factorizable)
    throw NotFactorizableError(*verdict.witness, to_string(*verdict.witness));
  const EntryConditions ec = entry_conditions(nf.abar);
  const Matrix& b = nf.abar;

  // The row rebuilt last: the largest index with no < condition.
  std::size_t last = 3;
  for (std::size_t r = 3; r-- > 0 && last == 3;) {
    const std::size_t x = (r + 1) % 3, y = (r + 2) % 3;
    if (ec.relations[r][x] != Relation::Less && ec.relations[r][y] != Relation::Less) last = r;
  }
  const std::size_t lo = std::min((last + 1) % 3, (last + 2) % 3);
  const std::size_t hi = std::max((last + 1) % 3, (last + 2) % 3);

  Factorization f{3, nf.p_factors, m, Equality::ExactSupertropical};
  // Row `last` from the other two rows. An = condition means the entry is
  // already produced through the other row, so that operation is dropped
  // unless the entry is a ghost or both conditions tie (tropical only).
  const bool both_equal =
      ec.relations[last][lo] == Relation::Equal && ec.relations[last][hi] == Relation::Equal;
  for (std::size_t src : {hi, lo}) {
    if (ec.relations[last][src] == Relation::Equal && !b(last, src).is_ghost() && !both_equal)
      continue;
    emit_add(f.factors, 3, last, src, b(last, src));
  }
  // Column `last`, using the one at (last, last).
  emit_add(f.factors, 3, hi, last, b(hi, last));
  emit_add(f.factors, 3, lo, last, b(lo, last));
  // The 2x2 block on rows/columns lo, hi.
  emit_add(f.factors, 3, lo, hi, b(lo, hi));
  emit_add(f.factors, 3, hi, lo, b(hi, lo));

  const bool exact = mode == Mode::Supertropical;
  f.mode = strongest_equality(evaluate(f), m,
                              exact ? Equality::ExactSupertropical : Equality::ExactTropical);
  return f;
}

std::optional<NonFactorizabilityWitness> detect_shift_counterexample(const Matrix& a) {
  const std::size_t n = a.size();
  if (n <= 2) return std::nullopt;
  std::vector<std::vector<std::size_t>> support(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j).is_neg_inf()) continue;
      if (!a(i, j).is_tangible()) return std::nullopt;
      support[i].push_back(j);
    }
  for (const auto& cols : support)
    if (cols.size() != 2) return std::nullopt;

  for (std::size_t t = 1; t < n; ++t) {
    if ((2 * t) % n == 0) continue;
    Permutation sigma(n), pi(n);
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      const std::size_t c0 = support[i][0], c1 = support[i][1];
      if ((c0 + t) % n == c1) {
        sigma[i] = c0;
        pi[i] = c1;
      } else if ((c1 + t) % n == c0) {
        sigma[i] = c1;
        pi[i] = c0;
      } else {
        ok = false;
      }
    }
    if (!ok) continue;
    std::vector<bool> hit(n, false);
    for (std::size_t i = 0; i < n && ok; ++i) {
      ok = !hit[sigma[i]];
      hit[sigma[i]] = true;
    }
    if (!ok) continue;
    NonFactorizabilityWitness w;
    w.kind = NonFactorizabilityWitness::Kind::ShiftPermutationPair;
    w.sigma = std::move(sigma);
    w.pi = std::move(pi);
    w.shift = t;
    return w;
  }
  return std::nullopt;
}

std::vector<ElementaryMatrix> closure_factors(const Matrix& closed, std::size_t m) {
  const std::size_t n = closed.size();
  if (m > n) throw Error(ErrorCode::DimensionMismatch, "block larger than matrix");
  std::vector<ElementaryMatrix> out;
  if (m < 2) return out;
  // Stages are prepended, so the finished list reads
  //   [stage m-1] ... [stage 2] [2x2 block].
  emit_add(out, n, 1, 0, closed(1, 0));
  emit_add(out, n, 0, 1, closed(0, 1));
  for (std::size_t s = 2; s < m; ++s) {
    std::vector<ElementaryMatrix> stage;
    for (std::size_t k = s; k-- > 0;) emit_add(stage, n, s, k, closed(s, k));  // row s
    for (std::size_t t = s; t-- > 0;) emit_add(stage, n, t, s, closed(t, s));  // column s
    out.insert(out.begin(), stage.begin(), stage.end());
  }
  return out;
}

Factorization factor_star(const Matrix& a, Mode mode) {
  const Matrix m = working_copy(a, mode);
  const NormalForm nf = normal_form(m, mode);
  const std::size_t n = m.size();
  const Matrix closed = quasi_inverse(nf.abar, mode);
  Factorization f{n, closure_factors(closed, n), quasi_inverse(m, mode), Equality::ExactTropical};
  const auto tail = factor_invertible(invertible_inverse(nf.p)).factors;
  f.factors.insert(f.factors.end(), tail.begin(), tail.end());
  return f;
}

RecoveryCheck row_recovery_check(const Matrix& abar, std::size_t row) {
  if (!is_normal_form(abar)) throw Error(ErrorCode::NotNormalForm, "matrix is not in normal form");
  require_index(abar.size(), row);
  const std::size_t n = abar.size();
  bool strict = true;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == row) continue;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == row || k == j) continue;
      const auto c = compare_nu(abar(row, j), abar(row, k) * abar(k, j));
      if (c < 0) return RecoveryCheck::Fails;
      if (c == 0 && !abar(row, j).is_ghost()) strict = false;
    }
  }
  return strict ? RecoveryCheck::Supertropical : RecoveryCheck::TropicalOnly;
}

}  // namespace tropfact
