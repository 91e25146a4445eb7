#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tropfact/scalar.hpp"

namespace tropfact {

/// A permutation of {0..n-1}; entry i is the image of i.
using Permutation = std::vector<std::size_t>;

/// Supertropical semantics, or the ghost-free tropical reading where inputs
/// are projected first and ties are tolerated.
enum class Mode { Supertropical, Tropical };

enum class SingularityClass { NonSingular, Singular, StrictlySingular };

/// Dense square matrix, row-major, 0-based indices.
class Matrix {
 public:
  Matrix() = default;
  /// n x n matrix of -inf.
  explicit Matrix(std::size_t n);
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows);

  std::size_t size() const noexcept { return n_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::span<const Scalar> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

  /// The matrix with row `row` and column `col` removed.
  Matrix minor(std::size_t row, std::size_t col) const;
  /// The principal submatrix on the given (sorted) indices.
  Matrix principal(std::span<const std::size_t> indices) const;

  bool has_one_diagonal() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Scalar> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
/// Every entry multiplied by k.
Matrix scale(const Matrix& a, const Scalar& k);

/// Tropical determinant (the permanent).
Scalar determinant(const Matrix& a);
SingularityClass classify(const Matrix& a);
SingularityClass classify(const Scalar& det);

struct DominantTrackReport {
  Scalar weight;
  /// Every permutation whose track attains the nu-value of `weight`, in
  /// lexicographic order. Past the enumeration limit this holds a single
  /// representative (the lexicographically least) and `truncated` is set
  /// when further maximizers exist.
  std::vector<Permutation> permutations;
  bool truncated = false;
};

/// Largest n for which dominant_tracks enumerates S_n exhaustively.
inline constexpr std::size_t kTrackEnumerationLimit = 8;

DominantTrackReport dominant_tracks(const Matrix& a);

/// Lexicographically least permutation whose track attains the maximal
/// nu-value, or nullopt when every track is -inf.
std::optional<Permutation> least_dominant_permutation(const Matrix& a);

/// Product of the entries a(i, perm[i]).
Scalar track(const Matrix& a, const Permutation& perm);

Matrix adjoint(const Matrix& a);
/// adj(A) / det(A). Tropical mode works on the projection of A and returns a
/// ghost-free result.
Matrix quasi_inverse(const Matrix& a, Mode mode = Mode::Supertropical);
Matrix power(const Matrix& a, unsigned k);
/// Sum of A^0..A^{n-1}; requires the diagonal to be exactly one. If the sum
/// has not settled (up to nu-equivalence) by then, up to `cap` further powers
/// are accumulated before giving up with NotStabilized.
Matrix kleene_star(const Matrix& a, unsigned cap = 64);

bool nu_equivalent(const Matrix& a, const Matrix& b);
bool ghost_surpasses(const Matrix& a, const Matrix& b);
Matrix project_tropical(const Matrix& a);

/// Matrix with exactly one finite entry per row and column, all tangible.
bool is_invertible_shape(const Matrix& a);
/// Inverse of an invertible-shape matrix.
Matrix invertible_inverse(const Matrix& a);

/// Permutation matrix with P(i, perm[i]) = one.
Matrix permutation_matrix(const Permutation& perm);

// Text format: first line n, then n rows of n scalars.
std::string to_string(const Matrix& a);
Matrix parse_matrix(std::string_view text);
Matrix read_matrix_file(const std::string& path);
std::ostream& operator<<(std::ostream& os, const Matrix& a);

std::string to_string(SingularityClass c);

namespace detail {
/// Exhaustive determinant by dynamic programming over row subsets.
Scalar determinant_subset_dp(const Matrix& a);
/// Assignment-solver determinant with a uniqueness check on the optimum.
Scalar determinant_assignment(const Matrix& a);
}  // namespace detail

}  // namespace tropfact
