#include "support.hpp"

using namespace tropfact;
using testing::M;
using testing::S;

namespace {
const Matrix kEx46 = M("0 -3 0; 1 5 0; 3 1 6");
const Matrix kEx47 = M("4 3 3; 4 5 2; 5 7 6");
const Matrix kAbar46 = M("0 -3 0; -4 0 -5; -3 -5 0");
}  // namespace

TEST_CASE("products") {
  const Matrix a = M("2 -inf 1/2; 0 3g -1; -inf 4 0");
  CHECK(Matrix::identity(3) * a == a);
  CHECK(a * Matrix::identity(3) == a);
  CHECK(M("0 -inf; -4 0") * M("0 -3; -inf 0") == M("0 -3; -4 0"));
  CHECK(M("0 -3; 0 -3") * M("0 -inf; 0 -inf") == M("0 -inf; 0 -inf"));
  CHECK(M("0 0; 0 0") * M("0 -inf; 0 -inf") == M("0g -inf; 0g -inf"));
}

TEST_CASE("determinant") {
  CHECK(determinant(kEx46) == S("11"));
  CHECK(determinant(kEx47) == S("15"));
  CHECK(determinant(Matrix::identity(5)) == S("0"));
  CHECK(determinant(M("0 0; 0 0")) == S("0g"));
  CHECK(determinant(M("-inf")) == S("-inf"));
  CHECK(determinant(kAbar46) == S("0"));
}

TEST_CASE("determinant strategies agree on larger inputs") {
  // Dense 13x13 with a unique heavy diagonal, then with a tie on a 2-cycle.
  Matrix a(13);
  for (std::size_t i = 0; i < 13; ++i)
    for (std::size_t j = 0; j < 13; ++j)
      a(i, j) = i == j ? S("5") : Scalar::tangible(-static_cast<long>((i * 7 + j * 3) % 11));
  CHECK(detail::determinant_assignment(a) == S("65"));
  CHECK(determinant(a) == S("65"));
  a(0, 1) = S("5");
  a(1, 0) = S("5");
  CHECK(determinant(a) == S("65g"));
  for (std::size_t n = 2; n <= 6; ++n) {
    Matrix b(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if ((i + 2 * j) % 3 != 0) b(i, j) = Scalar::tangible(static_cast<long>((i * 5 + j * j) % 4));
    CHECK(detail::determinant_assignment(b) == detail::determinant_subset_dp(b));
  }
}

TEST_CASE("classification") {
  CHECK(classify(kEx46) == SingularityClass::NonSingular);
  CHECK(classify(M("0 0; 0 0")) == SingularityClass::Singular);
  CHECK(classify(M("0 -inf; -inf -inf")) == SingularityClass::StrictlySingular);
  CHECK(to_string(SingularityClass::StrictlySingular) == "strictly-singular");
}

TEST_CASE("dominant tracks") {
  const auto ex = dominant_tracks(kEx46);
  CHECK(ex.weight == S("11"));
  REQUIRE(ex.permutations.size() == 1);
  CHECK(ex.permutations[0] == Permutation{0, 1, 2});

  const auto tie = dominant_tracks(M("0 0; 0 0"));
  CHECK(tie.weight == S("0g"));
  CHECK(tie.permutations == std::vector<Permutation>{{0, 1}, {1, 0}});

  const auto none = dominant_tracks(M("-inf"));
  CHECK(none.weight == S("-inf"));
  CHECK(none.permutations.empty());
  CHECK_FALSE(least_dominant_permutation(M("-inf")).has_value());
  CHECK(track(kEx46, {2, 1, 0}) == S("8"));
}

TEST_CASE("adjoint") {
  CHECK(adjoint(Matrix::identity(4)) == Matrix::identity(4));
  CHECK(adjoint(kAbar46) == M("0 -3 0; -4 0 -4; -3 -5 0"));
  CHECK(adjoint(M("0 -3; -4 0")) == M("0 -3; -4 0"));
  CHECK(adjoint(kEx46) == M("11 3 5; 7 6 1; 8 1 5"));
  CHECK(adjoint(kEx47) == M("11 10 8; 10 10 7; 11 11 9"));
}

TEST_CASE("quasi-inverse") {
  CHECK(quasi_inverse(Matrix::identity(3)) == Matrix::identity(3));
  CHECK(quasi_inverse(kAbar46) == adjoint(kAbar46));
  CHECK(quasi_inverse(kEx47) == M("-4 -5 -7; -5 -5 -8; -4 -4 -6"));
  try {
    (void)quasi_inverse(M("0 -inf; -inf -inf"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInvertibleDeterminant);
  }
  CHECK(quasi_inverse(M("0 0; 0 0"), Mode::Tropical) == M("0 0; 0 0"));
}

TEST_CASE("powers and star") {
  CHECK(power(kAbar46, 2) == M("0 -3g 0g; -4g 0 -4; -3g -5g 0"));
  CHECK(power(kEx46, 1) == kEx46);
  CHECK(power(kEx46, 0) == Matrix::identity(3));
  CHECK(kleene_star(kAbar46) == M("0g -3g 0g; -4g 0g -4; -3g -5g 0g"));
  CHECK(nu_equivalent(kleene_star(kAbar46), adjoint(kAbar46)));
  CHECK(kleene_star(Matrix::identity(1)) == Matrix::identity(1));
  CHECK(nu_equivalent(kleene_star(Matrix::identity(3)), Matrix::identity(3)));
  CHECK(kleene_star(Matrix::identity(2)) == M("0g -inf; -inf 0g"));
  try {
    (void)kleene_star(M("1 -inf; -inf 0"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DiagonalNotOne);
  }
}

TEST_CASE("relations between matrices") {
  CHECK(nu_equivalent(power(kAbar46, 2), adjoint(kAbar46)));
  CHECK(nu_equivalent(kEx46, kEx46));
  CHECK_FALSE(nu_equivalent(kEx46, kEx47));
  CHECK(ghost_surpasses(M("1g 0"
                          "; 2 -inf"),
                        M("1 0; 2 -inf")));
  CHECK(project_tropical(M("1g -inf; 2 0g")) == M("1 -inf; 2 0"));
}

TEST_CASE("invertible matrices") {
  const Matrix p = M("-inf 2; -1/2 -inf");
  CHECK(is_invertible_shape(p));
  CHECK(invertible_inverse(p) == M("-inf 1/2; -2 -inf"));
  CHECK(p * invertible_inverse(p) == Matrix::identity(2));
  CHECK_FALSE(is_invertible_shape(M("0 0; -inf 0")));
  CHECK_FALSE(is_invertible_shape(M("-inf 2g; 0 -inf")));
  CHECK(permutation_matrix({1, 2, 0}) == M("-inf 0 -inf; -inf -inf 0; 0 -inf -inf"));
}

TEST_CASE("minors") {
  CHECK(kEx46.minor(0, 1) == M("1 0; 3 6"));
  const std::size_t idx[] = {0, 2};
  CHECK(kEx46.principal(idx) == M("0 0; 3 6"));
  CHECK(kAbar46.has_one_diagonal());
  CHECK_FALSE(kEx46.has_one_diagonal());
}
