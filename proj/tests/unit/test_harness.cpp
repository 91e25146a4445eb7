#include "support.hpp"

#include "tropfact/harness.hpp"

using namespace tropfact;
using testing::M;
using testing::S;

TEST_CASE("generators are deterministic in the seed") {
  harness::GeneratorConfig cfg;
  cfg.n = 4;
  cfg.seed = 99;
  CHECK(harness::gen_matrix(cfg) == harness::gen_matrix(cfg));
  cfg.seed = 100;
  const Matrix other = harness::gen_matrix(cfg);
  cfg.seed = 99;
  CHECK(harness::gen_matrix(cfg) != other);
  CHECK(harness::trial_seed(1, 0) != harness::trial_seed(1, 1));
}

TEST_CASE("generator shapes") {
  harness::GeneratorConfig cfg;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    cfg.seed = seed;
    cfg.n = 1 + seed % 5;

    const Matrix one = harness::gen_matrix(harness::GeneratorConfig{1, 0.5, -6, 6, 0.0, seed});
    CHECK(one.size() == 1);
    CHECK_FALSE(one(0, 0).is_ghost());

    const Matrix nf = harness::gen_normal_form(cfg);
    CHECK(nf.has_one_diagonal());
    CHECK(is_normal_form(nf));

    const Matrix p = harness::gen_invertible(cfg);
    CHECK(is_invertible_shape(p));
  }
  cfg.n = 3;
  cfg.ghost_rate = 1.0;
  harness::Rng rng(5);
  CHECK_THROWS_AS(harness::gen_nonsingular(cfg, rng), Error);
}

TEST_CASE("sparse generation can be exhausted") {
  harness::GeneratorConfig cfg;
  cfg.n = 3;
  cfg.density = 0.0;
  harness::Rng rng(3);
  try {
    (void)harness::gen_nonsingular(cfg, rng);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GeneratorExhausted);
  }
}

TEST_CASE("oracle determinant") {
  CHECK(harness::oracle_determinant(M("0 -3 0; 1 5 0; 3 1 6")) == S("11"));
  CHECK(harness::oracle_determinant(Matrix::identity(4)) == S("0"));
  CHECK(harness::oracle_determinant(M("0 0; 0 0")) == S("0g"));
  CHECK(harness::oracle_determinant(M("2g -inf; -inf 1")) == S("3g"));
  CHECK_THROWS_AS(harness::oracle_determinant(Matrix::identity(9)), Error);
}

TEST_CASE("property registry") {
  const auto names = harness::property_names();
  for (const char* want : {"det-mult-gs", "thm5.5i", "thm5.5ii", "prop5.6", "lemma5.4", "lemma5.7i",
                           "lemma5.7ii", "lemma5.7iii", "lemma5.8", "claim6.1", "cor6.2", "lemma6.7",
                           "claim6.8", "claim3.1", "claim4.2", "lemma6.5", "oracle-det"})
    CHECK(std::find(names.begin(), names.end(), want) != names.end());
  try {
    (void)harness::run_property("no-such-law", {}, 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownProperty);
  }
}

TEST_CASE("property reports") {
  harness::GeneratorConfig cfg;
  cfg.n = 4;
  cfg.seed = 2024;
  const auto r = harness::run_property("thm5.5ii", cfg, 200);
  CHECK(r.passed());
  CHECK(r.trials == 200);
  CHECK(harness::format_report(r) == "PROP thm5.5ii trials=200 failures=0 seed=2024\n");

  cfg.n = 5;
  CHECK(harness::run_property("lemma6.7", cfg, 100).passed());
  cfg.n = 3;
  CHECK(harness::run_property("det-mult-gs", cfg, 500).passed());

  harness::PropertyReport failing{"x", 3, 7, {{1, 42, "1\n0\n"}}, {}};
  CHECK_FALSE(failing.passed());
  CHECK(harness::format_report(failing) == "PROP x trials=3 failures=1 seed=7\n  counterexample trial=1 stream=42\n1\n0\n");
}
