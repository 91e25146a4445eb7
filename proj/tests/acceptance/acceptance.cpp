// One line per acceptance criterion: "PASS|FAIL <id> <title> (<ms> ms, limit <ms> ms)".
// Exit status is nonzero if any criterion fails or exceeds its time limit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "tropfact/factorization.hpp"
#include "tropfact/harness.hpp"
#include "tropfact/matrix.hpp"

using namespace tropfact;

namespace {

Matrix M(const std::string& text) { return parse_matrix(text); }

/// Collects the reasons a criterion failed; empty means pass.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) problems_ << "    " << what << '\n';
  }
  std::string problems() const { return problems_.str(); }

 private:
  std::ostringstream problems_;
};

ElementaryMatrix am(std::size_t i, std::size_t j, long k) {
  return ElementaryMatrix::add_multiple(3, i - 1, j - 1, Scalar::tangible(k));
}
ElementaryMatrix sc(std::size_t i, long k) { return ElementaryMatrix::scale(3, i - 1, Scalar::tangible(k)); }

void relations_match(Check& c, const EntryConditions& ec, const char* rows) {
  // rows: nine characters, '.' on the diagonal.
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j)
        c.expect(to_string(ec.relations[i][j]) == std::string(1, rows[3 * i + j]),
                 "relation at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
}

std::string factorizable_pipeline(Check& c) {
  const Matrix a = M("3\n0 -3 0\n1 5 0\n3 1 6\n");
  c.expect(determinant(a) == Scalar::tangible(11), "determinant t(11)");
  const NormalForm nf = normal_form(a);
  c.expect(nf.abar == M("3\n0 -3 0\n-4 0 -5\n-3 -5 0\n"), "normal form");
  relations_match(c, entry_conditions(nf.abar), ".>>>.<>>.");
  const Factorization f = factor_3x3(a);
  const std::vector<ElementaryMatrix> golden = {sc(2, 5),      sc(3, 6),      am(3, 2, -5), am(3, 1, -3),
                                               am(2, 3, -5), am(1, 3, 0),   am(1, 2, -3), am(2, 1, -4)};
  c.expect(f.factors == golden, "eight factors identical to the golden product");
  c.expect(f.mode == Equality::ExactSupertropical && verify(f), "exact supertropical verification");
  return "";
}

std::string non_factorizable_pipeline(Check& c) {
  const Matrix a = M("3\n4 3 3\n4 5 2\n5 7 6\n");
  c.expect(determinant(a) == Scalar::tangible(15), "determinant t(15)");
  const NormalForm nf = normal_form(a);
  c.expect(nf.abar == M("3\n0 -1 -1\n-1 0 -3\n-1 1 0\n"), "normal form");
  relations_match(c, entry_conditions(nf.abar), ".<>>.<<>.");
  try {
    (void)factor_3x3(a);
    c.expect(false, "factor_3x3 should report NotFactorizable");
  } catch (const NotFactorizableError& e) {
    c.expect(e.witness().kind == NonFactorizabilityWitness::Kind::AllLessTrack, "witness kind");
    // Positions (1,2), (2,3), (3,1).
    c.expect(e.witness().track == Permutation{1, 2, 0}, "witness cycle (1,2),(2,3),(3,1)");
  }
  return "";
}

std::string shift_counterexample(Check& c) {
  const Matrix a = M("3\n0 -2 -inf\n-inf 0 -5\n-7 -inf 0\n");
  c.expect(!is_factorizable_3x3(a).factorizable, "is_factorizable_3x3 false");
  const auto w = detect_shift_counterexample(a);
  c.expect(w && w->kind == NonFactorizabilityWitness::Kind::ShiftPermutationPair, "shift-pair witness");
  const Matrix half = M("4\n0 -inf 1 -inf\n-inf 0 -inf 1\n1 -inf 0 -inf\n-inf 1 -inf 0\n");
  c.expect(!detect_shift_counterexample(half).has_value(), "n=4, t=2 yields none");
  return "";
}

void run_suite(Check& c, const std::string& name, harness::GeneratorConfig cfg, std::uint64_t trials,
               std::string& log) {
  const auto report = harness::run_property(name, cfg, trials);
  if (!report.passed()) log += harness::format_report(report);
  c.expect(report.passed(), name + " n=" + std::to_string(cfg.n));
}

std::string property_suites(Check& c) {
  std::string log;
  for (const char* name : {"det-mult-gs", "thm5.5i", "thm5.5ii", "prop5.6", "lemma5.4", "lemma5.7i",
                           "lemma5.7ii", "lemma5.7iii", "claim6.1", "cor6.2"})
    for (std::size_t n = 2; n <= 5; ++n) {
      harness::GeneratorConfig cfg;
      cfg.n = n;
      cfg.seed = 4000 + n;
      run_suite(c, name, cfg, 200, log);
    }
  return log;
}

std::string stabilization(Check& c) {
  for (std::size_t n = 2; n <= 6; ++n) {
    harness::GeneratorConfig cfg;
    cfg.n = n;
    cfg.seed = 5000 + n;
    int bad = 0;
    for (std::uint64_t t = 0; t < 100; ++t) {
      harness::Rng rng(harness::trial_seed(cfg.seed, t));
      const Matrix abar = harness::gen_normal_form(cfg, rng);
      const Matrix lo = power(abar, static_cast<unsigned>(n - 1)), hi = power(abar, static_cast<unsigned>(n));
      const Matrix star = kleene_star(abar), inv = quasi_inverse(abar);
      const bool nu = nu_equivalent(lo, hi) && nu_equivalent(hi, star) && nu_equivalent(star, inv);
      const Matrix t0 = project_tropical(lo);
      const bool trop = t0 == project_tropical(hi) && t0 == project_tropical(star) && t0 == project_tropical(inv);
      if (!nu || !trop) ++bad;
    }
    c.expect(bad == 0, std::to_string(bad) + " of 100 disagree at n=" + std::to_string(n));
  }
  return "";
}

std::string star_factorization(Check& c) {
  std::string log;
  for (std::size_t n = 2; n <= 6; ++n) {
    harness::GeneratorConfig cfg;
    cfg.n = n;
    cfg.seed = 6000 + n;
    run_suite(c, "lemma6.5", cfg, 100, log);
  }
  return log;
}

std::string rewriting(Check& c) {
  std::string log;
  for (std::size_t n = 2; n <= 5; ++n) {
    harness::GeneratorConfig cfg;
    cfg.n = n;
    cfg.seed = 7000 + n;
    run_suite(c, "claim3.1", cfg, 125, log);
  }
  return log;
}

std::string two_by_two(Check& c) {
  harness::GeneratorConfig cfg;
  cfg.n = 2;
  cfg.density = 0.85;
  cfg.value_min = -3;
  cfg.value_max = 3;
  cfg.seed = 8000;
  harness::Rng rng(cfg.seed);
  int nonsingular = 0, singular = 0, bad = 0;
  for (int t = 0; t < 500; ++t) {
    const Matrix a = harness::gen_not_strictly_singular(cfg, rng);
    const bool ns = classify(a) == SingularityClass::NonSingular;
    (ns ? nonsingular : singular)++;
    try {
      const Factorization f = factor_2x2(a, ns ? Mode::Supertropical : Mode::Tropical);
      const Equality want = ns ? Equality::ExactSupertropical : Equality::ExactTropical;
      if (f.mode != want || !verify(f)) ++bad;
    } catch (const Error&) {
      ++bad;
    }
  }
  c.expect(bad == 0, std::to_string(bad) + " of 500 failed");
  c.expect(nonsingular > 0 && singular > 0, "sample covers both nonsingular and singular inputs");
  return "";
}

std::string oracle_agreement(Check& c) {
  int bad = 0, ghosts = 0;
  for (int t = 0; t < 1000; ++t) {
    harness::GeneratorConfig cfg;
    cfg.n = 1 + t % 6;
    cfg.density = t % 3 == 0 ? 0.7 : 1.0;
    cfg.value_min = -3;
    cfg.value_max = 3;
    cfg.ghost_rate = 0.2;
    harness::Rng rng(harness::trial_seed(9000, t));
    const Matrix a = harness::gen_matrix(cfg, rng);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j) ghosts += a(i, j).is_ghost();
    if (determinant(a) != harness::oracle_determinant(a)) ++bad;
  }
  c.expect(bad == 0, std::to_string(bad) + " of 1000 disagree");
  c.expect(ghosts > 0, "sample includes ghost entries");
  return "";
}

struct Criterion {
  int id;
  const char* title;
  long limit_ms;
  std::function<std::string(Check&)> body;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "factorizable-3x3-pipeline", 1000, factorizable_pipeline},
      {2, "non-factorizable-3x3-pipeline", 1000, non_factorizable_pipeline},
      {3, "shift-counterexample", 1000, shift_counterexample},
      {4, "property-suites", 60000, property_suites},
      {5, "power-star-stabilization", 30000, stabilization},
      {6, "star-factorization", 60000, star_factorization},
      {7, "type3-rewriting", 10000, rewriting},
      {8, "2x2-completeness", 5000, two_by_two},
      {9, "determinant-oracle", 30000, oracle_agreement},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check check;
    std::string log;
    const auto start = std::chrono::steady_clock::now();
    try {
      log = cr.body(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const long ms = static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
    const bool in_time = ms < cr.limit_ms;
    if (!in_time) check.expect(false, "over time limit");
    const std::string problems = check.problems();
    const bool ok = problems.empty();
    failed += !ok;
    std::printf("%s %d %s (%ld ms, limit %ld ms)\n", ok ? "PASS" : "FAIL", cr.id, cr.title, ms, cr.limit_ms);
    if (!ok) std::cout << problems << log;
    std::fflush(stdout);
  }
  std::printf("%d of 9 criteria passed\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}
