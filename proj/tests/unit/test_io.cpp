#include "support.hpp"

using namespace tropfact;
using testing::M;

TEST_CASE("matrix text round trip") {
  const Matrix a = M("0 -5/2 -inf; 3g 1 0; -inf -inf 7/3g");
  CHECK(to_string(a) == "3\n0 -5/2 -inf\n3g 1 0\n-inf -inf 7/3g\n");
  CHECK(parse_matrix(to_string(a)) == a);
}

TEST_CASE("matrix parse errors") {
  for (const char* bad : {"", "2\n0 0\n0", "2\n0 0 0\n0 0\n", "x\n", "1\n0 0\n", "0\n", "1\n0\n5\n"})
    CHECK_THROWS_AS(parse_matrix(bad), Error);
}

TEST_CASE("matrix files") {
  CHECK(read_matrix_file(testing::data_path("example4_6.mat")) == M("0 -3 0; 1 5 0; 3 1 6"));
  CHECK_THROWS_AS(read_matrix_file(testing::data_path("missing.mat")), Error);
}

TEST_CASE("factorization file with a target path") {
  const Factorization f = read_factorization_file(testing::data_path("example4_6.fact"));
  CHECK(f.n == 3);
  CHECK(f.factors.size() == 8);
  CHECK(f.mode == Equality::ExactSupertropical);
  CHECK(f.target == M("0 -3 0; 1 5 0; 3 1 6"));
  CHECK(verify(f));
}

TEST_CASE("factorization text round trip") {
  Factorization f;
  f.n = 2;
  f.factors = {ElementaryMatrix::swap(2, 0, 1), ElementaryMatrix::scale(2, 1, testing::S("-1/2")),
               ElementaryMatrix::add_multiple(2, 0, 1, testing::S("3"))};
  f.target = evaluate(f);
  f.mode = Equality::NuEquivalent;
  const std::string text = to_string(f);
  CHECK(text == "n 2\nswap 1 2\nscale 2 -1/2\naddmul 1 2 3\ntarget inline\n2\n-inf -1/2\n0 3\nmode nu\n");
  const Factorization back = parse_factorization(text);
  CHECK(back.factors == f.factors);
  CHECK(back.target == f.target);
  CHECK(back.mode == f.mode);
}

TEST_CASE("factorization parse tolerates comments and blank lines") {
  const auto f = parse_factorization("# header\n\nn 2   # dim\naddmul 2 1 -4\ntarget inline\n2\n0 -inf\n-4 0\n");
  CHECK(f.mode == Equality::ExactSupertropical);
  CHECK(verify(f));
}

TEST_CASE("factorization parse errors") {
  const char* bad[] = {
      "swap 1 2\n",                                        // no header
      "n 2\nswap 1 3\ntarget inline\n2\n0 0\n0 0\n",       // index out of range
      "n 2\nswap 1 1\ntarget inline\n2\n0 0\n0 0\n",       // equal rows
      "n 2\nscale 1 2g\ntarget inline\n2\n0 0\n0 0\n",     // ghost coefficient
      "n 2\nrotate 1 2\ntarget inline\n2\n0 0\n0 0\n",     // unknown factor
      "n 2\nswap 1 2\n",                                   // no target
      "n 2\ntarget inline\n3\n0 0 0\n0 0 0\n0 0 0\n",      // wrong dimension
      "n 2\ntarget inline\n2\n0 0\n0 0\nmode fuzzy\n",     // unknown mode
      "n 2\ntarget inline\n2\n0 0\n",                      // truncated target
  };
  for (const char* text : bad) CHECK_THROWS_AS(parse_factorization(text), Error);
}
