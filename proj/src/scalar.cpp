#include "tropfact/scalar.hpp"

#include <cctype>
#include <ostream>

#include "tropfact/error.hpp"

namespace tropfact {

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_neg_inf()) return b;
  if (b.is_neg_inf()) return a;
  const int c = cmp(a.value(), b.value());
  if (c > 0) return a;
  if (c < 0) return b;
  return Scalar::ghost(a.value());
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_neg_inf() || b.is_neg_inf()) return Scalar::neg_inf();
  Rational sum = a.value() + b.value();
  if (a.is_ghost() || b.is_ghost()) return Scalar::ghost(std::move(sum));
  return Scalar::tangible(std::move(sum));
}

Scalar nu(const Scalar& a) {
  if (a.is_tangible()) return Scalar::ghost(a.value());
  return a;
}

std::strong_ordering compare_nu(const Scalar& a, const Scalar& b) {
  if (a.is_neg_inf() || b.is_neg_inf()) {
    if (a.is_neg_inf() && b.is_neg_inf()) return std::strong_ordering::equal;
    return a.is_neg_inf() ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return cmp(a.value(), b.value()) <=> 0;
}

bool nu_equivalent(const Scalar& a, const Scalar& b) { return compare_nu(a, b) == 0; }

bool ghost_surpasses(const Scalar& a, const Scalar& b) {
  if (a == b) return true;
  return a.is_ghost() && compare_nu(a, b) >= 0;
}

Scalar inverse(const Scalar& a) {
  if (a.is_ghost()) throw Error(ErrorCode::GhostNotInvertible, to_string(a));
  if (a.is_neg_inf()) throw Error(ErrorCode::ZeroNotInvertible, "-inf");
  return Scalar::tangible(-a.value());
}

Scalar project_tropical(const Scalar& a) {
  if (a.is_ghost()) return Scalar::tangible(a.value());
  return a;
}

Scalar pow(const Scalar& a, unsigned k) {
  if (k == 0) return Scalar::one();
  if (a.is_neg_inf()) return a;
  Rational v = a.value() * k;
  return a.is_ghost() ? Scalar::ghost(std::move(v)) : Scalar::tangible(std::move(v));
}

std::string to_string(const Scalar& a) {
  if (a.is_neg_inf()) return "-inf";
  std::string s = a.value().get_str();
  if (a.is_ghost()) s += 'g';
  return s;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  if (text == "-inf") return Scalar::neg_inf();
  std::string_view body = text;
  bool ghost = false;
  if (!body.empty() && body.back() == 'g') {
    ghost = true;
    body.remove_suffix(1);
  }
  std::string_view digits = body;
  if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
  const auto slash = digits.find('/');
  const bool ok = slash == std::string_view::npos
                      ? all_digits(digits)
                      : all_digits(digits.substr(0, slash)) && all_digits(digits.substr(slash + 1));
  if (!ok) throw Error(ErrorCode::ParseError, "bad scalar '" + std::string(text) + "'");
  Rational q;
  if (q.set_str(std::string(body), 10) != 0 || sgn(q.get_den()) == 0)
    throw Error(ErrorCode::ParseError, "bad scalar '" + std::string(text) + "'");
  return ghost ? Scalar::ghost(std::move(q)) : Scalar::tangible(std::move(q));
}

std::ostream& operator<<(std::ostream& os, const Scalar& a) { return os << to_string(a); }

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::GhostNotInvertible: return "GhostNotInvertible";
    case ErrorCode::ZeroNotInvertible: return "ZeroNotInvertible";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotInvertibleDeterminant: return "NotInvertibleDeterminant";
    case ErrorCode::DiagonalNotOne: return "DiagonalNotOne";
    case ErrorCode::NotStabilized: return "NotStabilized";
    case ErrorCode::StrictlySingularInput: return "StrictlySingularInput";
    case ErrorCode::NotInvertibleShape: return "NotInvertibleShape";
    case ErrorCode::NotTriangular: return "NotTriangular";
    case ErrorCode::NonTangibleDiagonal: return "NonTangibleDiagonal";
    case ErrorCode::NotNormalForm: return "NotNormalForm";
    case ErrorCode::NotFactorizable: return "NotFactorizable";
    case ErrorCode::UnknownProperty: return "UnknownProperty";
    case ErrorCode::GeneratorExhausted: return "GeneratorExhausted";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace tropfact
