#include "tropfact/matrix.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "assignment.hpp"
#include "tropfact/error.hpp"

namespace tropfact {

namespace {

// Above this size the subset recursion gives way to the assignment solver.
constexpr std::size_t kSubsetDpLimit = 12;

void require_same_size(const Matrix& a, const Matrix& b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(a.size()) + " vs " + std::to_string(b.size()));
}

}  // namespace

Matrix::Matrix(std::size_t n) : n_(n), data_(n * n) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
  n_ = rows.size();
  data_.reserve(n_ * n_);
  for (const auto& r : rows) {
    if (r.size() != n_) throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one();
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rows) {
  Matrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size())
      throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::minor(std::size_t row, std::size_t col) const {
  Matrix m(n_ - 1);
  for (std::size_t i = 0, mi = 0; i < n_; ++i) {
    if (i == row) continue;
    for (std::size_t j = 0, mj = 0; j < n_; ++j) {
      if (j == col) continue;
      m(mi, mj++) = (*this)(i, j);
    }
    ++mi;
  }
  return m;
}

Matrix Matrix::principal(std::span<const std::size_t> indices) const {
  Matrix m(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = 0; j < indices.size(); ++j) m(i, j) = (*this)(indices[i], indices[j]);
  return m;
}

bool Matrix::has_one_diagonal() const {
  for (std::size_t i = 0; i < n_; ++i)
    if (!(*this)(i, i).is_one()) return false;
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_size(a, b);
  const std::size_t n = a.size();
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a(i, k).is_neg_inf()) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_size(a, b);
  Matrix c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

Matrix scale(const Matrix& a, const Scalar& k) {
  Matrix c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) c(i, j) = a(i, j) * k;
  return c;
}

namespace detail {

Scalar determinant_subset_dp(const Matrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return Scalar::one();
  if (n >= 8 * sizeof(std::size_t) - 1)
    throw Error(ErrorCode::DimensionTooLarge, "subset recursion needs n < 63");
  // best[mask]: sum over injections of rows 0..|mask|-1 onto the columns in mask.
  std::vector<Scalar> best(std::size_t{1} << n);
  best[0] = Scalar::one();
  for (std::size_t mask = 0; mask + 1 < best.size(); ++mask) {
    if (best[mask].is_neg_inf()) continue;
    const auto row = static_cast<std::size_t>(std::popcount(mask));
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t bit = std::size_t{1} << j;
      if (mask & bit || a(row, j).is_neg_inf()) continue;
      best[mask | bit] += best[mask] * a(row, j);
    }
  }
  return best.back();
}

Scalar determinant_assignment(const Matrix& a) {
  if (a.size() == 0) return Scalar::one();
  const Assignment opt = solve_max_assignment(a);
  if (!opt.feasible) return Scalar::neg_inf();
  bool ghost = has_alternative_matching(opt.tight, opt.perm);
  for (std::size_t i = 0; i < a.size() && !ghost; ++i) ghost = a(i, opt.perm[i]).is_ghost();
  return ghost ? Scalar::ghost(opt.weight) : Scalar::tangible(opt.weight);
}

}  // namespace detail

Scalar determinant(const Matrix& a) {
  if (a.size() <= kSubsetDpLimit) return detail::determinant_subset_dp(a);
  return detail::determinant_assignment(a);
}

SingularityClass classify(const Scalar& det) {
  if (det.is_tangible()) return SingularityClass::NonSingular;
  if (det.is_ghost()) return SingularityClass::Singular;
  return SingularityClass::StrictlySingular;
}

SingularityClass classify(const Matrix& a) { return classify(determinant(a)); }

Scalar track(const Matrix& a, const Permutation& perm) {
  Scalar t = Scalar::one();
  for (std::size_t i = 0; i < a.size(); ++i) t *= a(i, perm[i]);
  return t;
}

DominantTrackReport dominant_tracks(const Matrix& a) {
  DominantTrackReport report;
  report.weight = determinant(a);
  if (report.weight.is_neg_inf()) return report;
  const std::size_t n = a.size();
  if (n <= kTrackEnumerationLimit) {
    Permutation perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      if (nu_equivalent(track(a, perm), report.weight)) report.permutations.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return report;
  }
  const detail::Assignment opt = detail::solve_max_assignment(a);
  report.permutations.push_back(*detail::least_matching(opt.tight));
  report.truncated = detail::has_alternative_matching(opt.tight, opt.perm);
  return report;
}

std::optional<Permutation> least_dominant_permutation(const Matrix& a) {
  const std::size_t n = a.size();
  if (n <= kTrackEnumerationLimit) {
    Permutation perm(n), best;
    std::iota(perm.begin(), perm.end(), 0);
    Scalar best_track;
    do {
      const Scalar t = track(a, perm);
      if (t.is_finite() && (best.empty() || compare_nu(t, best_track) > 0)) {
        best = perm;
        best_track = t;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (best.empty()) return std::nullopt;
    return best;
  }
  const detail::Assignment opt = detail::solve_max_assignment(a);
  if (!opt.feasible) return std::nullopt;
  return detail::least_matching(opt.tight);
}

Matrix adjoint(const Matrix& a) {
  const std::size_t n = a.size();
  if (n == 1) return Matrix::identity(1);
  Matrix adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) adj(i, j) = determinant(a.minor(j, i));
  return adj;
}

Matrix quasi_inverse(const Matrix& a, Mode mode) {
  if (mode == Mode::Tropical) {
    const Matrix t = project_tropical(a);
    const Scalar det = determinant(t);
    if (det.is_neg_inf())
      throw Error(ErrorCode::NotInvertibleDeterminant, "strictly singular matrix");
    return project_tropical(scale(adjoint(t), inverse(project_tropical(det))));
  }
  const Scalar det = determinant(a);
  if (!det.is_tangible())
    throw Error(ErrorCode::NotInvertibleDeterminant, "determinant " + to_string(det));
  return scale(adjoint(a), inverse(det));
}

Matrix power(const Matrix& a, unsigned k) {
  Matrix result = Matrix::identity(a.size());
  for (unsigned i = 0; i < k; ++i) result = a * result;
  return result;
}

Matrix kleene_star(const Matrix& a, unsigned cap) {
  if (!a.has_one_diagonal())
    throw Error(ErrorCode::DiagonalNotOne, "star needs one on the diagonal");
  const std::size_t n = a.size();
  Matrix sum = Matrix::identity(n);
  Matrix term = sum;
  for (std::size_t i = 1; i < n; ++i) {
    term = a * term;
    sum = sum + term;
  }
  // Normal forms settle at n-1; anything else gets `cap` more steps.
  for (unsigned extra = 0; extra <= cap; ++extra) {
    term = a * term;
    const Matrix next = sum + term;
    if (nu_equivalent(next, sum)) return sum;
    sum = next;
  }
  throw Error(ErrorCode::NotStabilized, "powers still growing after cap");
}

bool nu_equivalent(const Matrix& a, const Matrix& b) {
  require_same_size(a, b);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (!nu_equivalent(a(i, j), b(i, j))) return false;
  return true;
}

bool ghost_surpasses(const Matrix& a, const Matrix& b) {
  require_same_size(a, b);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (!ghost_surpasses(a(i, j), b(i, j))) return false;
  return true;
}

Matrix project_tropical(const Matrix& a) {
  Matrix c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) c(i, j) = project_tropical(a(i, j));
  return c;
}

bool is_invertible_shape(const Matrix& a) {
  const std::size_t n = a.size();
  std::vector<int> col_count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    int row_count = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j).is_neg_inf()) continue;
      if (!a(i, j).is_tangible()) return false;
      ++row_count;
      ++col_count[j];
    }
    if (row_count != 1) return false;
  }
  return std::all_of(col_count.begin(), col_count.end(), [](int c) { return c == 1; });
}

Matrix invertible_inverse(const Matrix& a) {
  if (!is_invertible_shape(a))
    throw Error(ErrorCode::NotInvertibleShape, "need one tangible entry per row and column");
  Matrix inv(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a(i, j).is_finite()) inv(j, i) = inverse(a(i, j));
  return inv;
}

Matrix permutation_matrix(const Permutation& perm) {
  Matrix p(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) p(i, perm[i]) = Scalar::one();
  return p;
}

std::string to_string(const Matrix& a) {
  std::ostringstream os;
  os << a.size() << '\n';
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) os << (j ? " " : "") << to_string(a(i, j));
    os << '\n';
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Matrix& a) { return os << to_string(a); }

Matrix parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string token;
  if (!(in >> token)) throw Error(ErrorCode::ParseError, "empty matrix text");
  std::size_t n = 0;
  try {
    std::size_t used = 0;
    n = std::stoul(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "bad dimension '" + token + "'");
  }
  if (n == 0) throw Error(ErrorCode::ParseError, "dimension must be positive");
  Matrix m(n);
  for (std::size_t k = 0; k < n * n; ++k) {
    if (!(in >> token))
      throw Error(ErrorCode::ParseError, "expected " + std::to_string(n * n) + " entries");
    m(k / n, k % n) = parse_scalar(token);
  }
  if (in >> token) throw Error(ErrorCode::ParseError, "trailing token '" + token + "'");
  return m;
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

std::string to_string(SingularityClass c) {
  switch (c) {
    case SingularityClass::NonSingular: return "nonsingular";
    case SingularityClass::Singular: return "singular";
    case SingularityClass::StrictlySingular: return "strictly-singular";
  }
  return "unknown";
}

}  // namespace tropfact
