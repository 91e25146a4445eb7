#pragma once

// Elementary-matrix factorizations of tropical matrices.
//
// Products are read left to right, so the rightmost factor is the first row
// operation applied to the identity. Row and column indices are 0-based in
// this API and 1-based in the text format.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tropfact/error.hpp"
#include "tropfact/matrix.hpp"

namespace tropfact {

/// Type 1: exchange rows i and j.
struct Swap {
  std::size_t i, j;
  friend bool operator==(const Swap&, const Swap&) = default;
};

/// Type 2: multiply row `row` by a tangible k.
struct Scale {
  std::size_t row;
  Scalar k;
  friend bool operator==(const Scale&, const Scale&) = default;
};

/// Type 3: add k times row `source` to row `target`, k tangible.
struct AddMultiple {
  std::size_t target, source;
  Scalar k;
  friend bool operator==(const AddMultiple&, const AddMultiple&) = default;
};

class ElementaryMatrix {
 public:
  using Op = std::variant<Swap, Scale, AddMultiple>;

  ElementaryMatrix(std::size_t n, Op op);

  static ElementaryMatrix swap(std::size_t n, std::size_t i, std::size_t j) {
    return {n, Swap{i, j}};
  }
  static ElementaryMatrix scale(std::size_t n, std::size_t row, Scalar k) {
    return {n, Scale{row, std::move(k)}};
  }
  static ElementaryMatrix add_multiple(std::size_t n, std::size_t target, std::size_t source,
                                       Scalar k) {
    return {n, AddMultiple{target, source, std::move(k)}};
  }

  std::size_t size() const noexcept { return n_; }
  const Op& op() const noexcept { return op_; }
  bool is_type3() const noexcept { return std::holds_alternative<AddMultiple>(op_); }

  /// The operation applied to the identity matrix.
  Matrix expand() const;

  friend bool operator==(const ElementaryMatrix&, const ElementaryMatrix&) = default;

 private:
  std::size_t n_;
  Op op_;
};

/// How a product is compared with its target.
enum class Equality { ExactSupertropical, NuEquivalent, ExactTropical };

struct Factorization {
  std::size_t n = 0;
  std::vector<ElementaryMatrix> factors;
  Matrix target;
  Equality mode = Equality::ExactSupertropical;
};

/// Left-to-right product of the expanded factors; the empty product is I.
Matrix evaluate(std::size_t n, std::span<const ElementaryMatrix> factors);
Matrix evaluate(const Factorization& f);

bool equal_under(const Matrix& a, const Matrix& b, Equality mode);
bool verify(const Factorization& f);

/// Rewrites the product so every AddMultiple precedes every Swap and Scale,
/// keeping the product exactly.
std::vector<ElementaryMatrix> push_type3_left(std::span<const ElementaryMatrix> factors);

struct NormalForm {
  Permutation track;                     // dominant track moved onto the diagonal
  Matrix p;                              // invertible part, A = p * abar
  std::vector<ElementaryMatrix> p_factors;  // Swap/Scale factors of p
  Matrix abar;
};

/// A = P * Abar with P invertible and Abar carrying one on its diagonal.
/// Supertropical mode needs a nonsingular A; tropical mode works on the
/// projection and needs A not strictly singular, taking the lexicographically
/// least dominant track.
NormalForm normal_form(const Matrix& a, Mode mode = Mode::Supertropical);

/// Diagonal one and no track above one (nu-values).
bool is_normal_form(const Matrix& a);

Factorization factor_invertible(const Matrix& p);
Factorization factor_triangular(const Matrix& a, Mode mode = Mode::Supertropical);
Factorization factor_2x2(const Matrix& a, Mode mode = Mode::Supertropical);

enum class Relation { Less, Equal, Greater };

struct EntryConditions {
  Matrix values;
  /// Off-diagonal relation between a(i,j) and a(i,k) a(k,j); the diagonal is
  /// unused and holds Equal.
  std::array<std::array<Relation, 3>, 3> relations{};
};

EntryConditions entry_conditions(const Matrix& abar);

struct NonFactorizabilityWitness {
  enum class Kind { AllLessTrack, ShiftPermutationPair };
  Kind kind = Kind::AllLessTrack;
  /// AllLessTrack: the nondiagonal 3-cycle, positions (i, track[i]).
  Permutation track;
  /// ShiftPermutationPair: pi(i) = sigma(i) + shift mod n.
  Permutation sigma, pi;
  std::size_t shift = 0;
};

struct FactorizabilityVerdict {
  bool factorizable = true;
  std::optional<NonFactorizabilityWitness> witness;
};

FactorizabilityVerdict is_factorizable_3x3(const Matrix& abar);

class NotFactorizableError : public Error {
 public:
  NotFactorizableError(NonFactorizabilityWitness w, const std::string& what)
      : Error(ErrorCode::NotFactorizable, what), witness_(std::move(w)) {}
  const NonFactorizabilityWitness& witness() const noexcept { return witness_; }

 private:
  NonFactorizabilityWitness witness_;
};

/// Throws NotFactorizableError when the normal form has an all-< track.
Factorization factor_3x3(const Matrix& a, Mode mode = Mode::Supertropical);

/// A witness iff the finite support is two tangible permutation tracks, one a
/// shift of the other by t with 2t != 0 mod n. Needs n > 2.
std::optional<NonFactorizabilityWitness> detect_shift_counterexample(const Matrix& a);

/// Factors that build the leading m x m principal block of `closed` (padded
/// with the identity) by growing 2x2, 3x3, ... blocks. `closed` must satisfy
/// closed(i,j) >= closed(i,k) closed(k,j), as quasi-inverses of normal forms do.
std::vector<ElementaryMatrix> closure_factors(const Matrix& closed, std::size_t m);

/// Factorization of the quasi-inverse of A; always exists unless A is
/// strictly singular. Declared ExactTropical.
Factorization factor_star(const Matrix& a, Mode mode = Mode::Supertropical);

enum class RecoveryCheck { Fails, TropicalOnly, Supertropical };

/// Whether row `row` can be rebuilt from the others by type-3 operations:
/// a(row,j) >= a(row,k) a(k,j) for all j != row and k != row, j.
RecoveryCheck row_recovery_check(const Matrix& abar, std::size_t row);

// Text forms.
std::string to_string(const ElementaryMatrix& e);
std::string to_string(Equality mode);
std::string to_string(Relation r);
std::string to_string(RecoveryCheck c);
std::string to_string(const NonFactorizabilityWitness& w);

/// Factorization file: "n <dim>", one factor per line ("swap i j",
/// "scale i k", "addmul i j k"), then "target inline" followed by a matrix
/// (or "target <path>", resolved against base_dir), then "mode exact|nu|trop".
std::string to_string(const Factorization& f);
Factorization parse_factorization(std::string_view text, const std::string& base_dir = ".");
Factorization read_factorization_file(const std::string& path);

}  // namespace tropfact
