#pragma once

// Supertropical scalars over the rationals.
//
// An element is one of
//   tangible(q)   q in Q, the max-plus group element
//   ghost(q)      the ghost copy of q
//   -inf          the additive identity (tropical zero)
//
// Addition is max on the nu-value; when both operands share a nu-value the
// result is ghost. Multiplication adds values and is ghost if either factor
// is ghost. tangible(0) is the multiplicative identity.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace tropfact {

using Rational = mpq_class;

class Scalar {
 public:
  enum class Kind : std::uint8_t { NegInf, Tangible, Ghost };

  Scalar() = default;  // -inf

  static Scalar neg_inf() { return Scalar(); }
  static Scalar one() { return tangible(0); }
  static Scalar tangible(Rational q) { return Scalar(Kind::Tangible, std::move(q)); }
  static Scalar ghost(Rational q) { return Scalar(Kind::Ghost, std::move(q)); }
  static Scalar tangible(long num, long den = 1) { return tangible(Rational(num, den)); }
  static Scalar ghost(long num, long den = 1) { return ghost(Rational(num, den)); }

  Kind kind() const noexcept { return kind_; }
  bool is_neg_inf() const noexcept { return kind_ == Kind::NegInf; }
  bool is_tangible() const noexcept { return kind_ == Kind::Tangible; }
  bool is_ghost() const noexcept { return kind_ == Kind::Ghost; }
  bool is_finite() const noexcept { return kind_ != Kind::NegInf; }
  bool is_one() const { return is_tangible() && sgn(value_) == 0; }

  // Meaningless for -inf (reads as 0).
  const Rational& value() const noexcept { return value_; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.kind_ == b.kind_ && (a.kind_ == Kind::NegInf || a.value_ == b.value_);
  }

 private:
  Scalar(Kind kind, Rational q) : kind_(kind), value_(std::move(q)) { value_.canonicalize(); }

  Kind kind_ = Kind::NegInf;
  Rational value_{0};
};

// Semiring operations.
Scalar operator+(const Scalar& a, const Scalar& b);
Scalar operator*(const Scalar& a, const Scalar& b);
inline Scalar& operator+=(Scalar& a, const Scalar& b) { return a = a + b; }
inline Scalar& operator*=(Scalar& a, const Scalar& b) { return a = a * b; }

/// Ghost map: tangible(q) -> ghost(q); ghosts and -inf are fixed.
Scalar nu(const Scalar& a);

/// Total order on nu-values, -inf lowest.
std::strong_ordering compare_nu(const Scalar& a, const Scalar& b);

bool nu_equivalent(const Scalar& a, const Scalar& b);

/// a |=gs b: a == b, or a is a ghost whose nu-value is at least that of b.
bool ghost_surpasses(const Scalar& a, const Scalar& b);

/// Multiplicative inverse of a tangible element.
Scalar inverse(const Scalar& a);

/// Forgetful map onto the ghost-free image: ghost(q) -> tangible(q).
Scalar project_tropical(const Scalar& a);

/// k-fold product; pow(a, 0) is one.
Scalar pow(const Scalar& a, unsigned k);

// Canonical text: "3", "-5/2", "3g", "-inf".
std::string to_string(const Scalar& a);
Scalar parse_scalar(std::string_view text);
std::ostream& operator<<(std::ostream& os, const Scalar& a);

}  // namespace tropfact
