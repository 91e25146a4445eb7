#pragma once

#include <doctest.h>

#include <sstream>
#include <string>

#include "tropfact/factorization.hpp"
#include "tropfact/matrix.hpp"
#include "tropfact/scalar.hpp"

namespace testing {

inline tropfact::Scalar S(std::string_view text) { return tropfact::parse_scalar(text); }

/// Rows separated by ';', e.g. "0 -3; -4 0".
inline tropfact::Matrix M(const std::string& rows) {
  std::string body;
  std::size_t n = 0;
  std::istringstream in(rows);
  for (std::string row; std::getline(in, row, ';');) {
    body += row + '\n';
    ++n;
  }
  return tropfact::parse_matrix(std::to_string(n) + '\n' + body);
}

inline std::string data_path(const std::string& name) { return std::string(TROPFACT_TEST_DATA) + "/" + name; }

}  // namespace testing

namespace doctest {
template <>
struct StringMaker<tropfact::Scalar> {
  static String convert(const tropfact::Scalar& s) { return tropfact::to_string(s).c_str(); }
};
template <>
struct StringMaker<tropfact::Matrix> {
  static String convert(const tropfact::Matrix& m) { return ("\n" + tropfact::to_string(m)).c_str(); }
};
}  // namespace doctest
