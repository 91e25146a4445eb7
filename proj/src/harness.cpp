#include "tropfact/harness.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

namespace tropfact::harness {

namespace {

constexpr int kMaxRejections = 20000;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Scalar random_value(const GeneratorConfig& cfg, Rng& rng, bool allow_ghost) {
  std::uniform_int_distribution<long> num(cfg.value_min, cfg.value_max);
  // Mostly integers, with some halves to exercise the rationals.
  const long den = std::uniform_int_distribution<int>(0, 3)(rng) == 0 ? 2 : 1;
  Rational q(num(rng), den);
  if (allow_ghost && std::bernoulli_distribution(cfg.ghost_rate)(rng))
    return Scalar::ghost(std::move(q));
  return Scalar::tangible(std::move(q));
}

template <class Pred>
Matrix rejection_sample(const GeneratorConfig& cfg, Rng& rng, Pred accept, const char* what) {
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    Matrix m = gen_matrix(cfg, rng);
    if (accept(m)) return m;
  }
  throw Error(ErrorCode::GeneratorExhausted, std::string("no ") + what + " sample found");
}

// ---- property checks ------------------------------------------------------

using Outcome = std::optional<std::string>;
using Check = std::function<Outcome(const GeneratorConfig&, Rng&)>;

std::string dump(const char* label, const Matrix& m) {
  return std::string(label) + ":\n" + to_string(m);
}

std::string dump(const char* label, const Scalar& s) {
  return std::string(label) + " = " + to_string(s) + "\n";
}

GeneratorConfig with_n(GeneratorConfig cfg, std::size_t n) {
  cfg.n = n;
  return cfg;
}

Outcome check_det_mult(const GeneratorConfig& cfg, Rng& rng) {
  const Matrix a = gen_matrix(cfg, rng), b = gen_matrix(cfg, rng);
  const Scalar lhs = determinant(a * b), rhs = determinant(a) * determinant(b);
  if (ghost_surpasses(lhs, rhs)) return std::nullopt;
  return dump("A", a) + dump("B", b) + dump("det(AB)", lhs) + dump("det(A)det(B)", rhs);
}

Outcome check_thm55i(const GeneratorConfig& cfg, Rng& rng) {
  const Matrix a = gen_matrix(cfg, rng);
  const Scalar lhs = determinant(a * adjoint(a));
  const Scalar rhs = pow(determinant(a), static_cast<unsigned>(a.size()));
  if (lhs == rhs) return std::nullopt;
  return dump("A", a) + dump("det(A adj A)", lhs) + dump("det(A)^n", rhs);
}

Outcome check_thm55ii(const GeneratorConfig& cfg, Rng& rng) {
  const Matrix a = gen_matrix(cfg, rng);
  const Scalar lhs = determinant(adjoint(a));
  const Scalar rhs = pow(determinant(a), static_cast<unsigned>(a.size() - 1));
  if (lhs == rhs) return std::nullopt;
  return dump("A", a) + dump("det(adj A)", lhs) + dump("det(A)^(n-1)", rhs);
}

Outcome check_prop56(const GeneratorConfig& cfg, Rng& rng) {
  const Matrix a = gen_matrix(cfg, rng), b = gen_matrix(cfg, rng);
  const Matrix lhs = adjoint(a * b), rhs = adjoint(b) * adjoint(a);
  if (ghost_surpasses(lhs, rhs)) return std::nullopt;
  return dump("A", a) + dump("B", b) + dump("adj(AB)", lhs) + dump("adj(B)adj(A)", rhs);
}

bool is_quasi_identity(const Matrix& q) {
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (i == j && !q(i, j).is_one()) return false;
      if (i != j && q(i, j).is_tangible()) return false;
    }
  return q * q == q && classify(q) == SingularityClass::NonSingular;
}

Outcome check_lemma54(const GeneratorConfig& cfg, Rng& rng) {
  const Matrix a = gen_nonsingular(cfg, rng);
  const Matrix inv = quasi_inverse(a);
  const Matrix right = a * inv, left = inv * a;
  if (is_quasi_identity(right) && is_quasi_identity(left)) return std::nullopt;
  return dump("A", a) + dump("A A^nabla", right) + dump("A^nabla A", left);
}

Outcome check_lemma57i(const GeneratorConfig& cfg, Rng& rng) {
  const Matrix p = gen_invertible(cfg, rng);
  const Matrix inv = quasi_inverse(p);
  const Matrix id = Matrix::identity(p.size());
  if (inv * p == id && p * inv == id && inv == invertible_inverse(p)) return std::nullopt;
  return dump("P", p) + dump("P^nabla", inv);
}

Outcome check_lemma57ii(const GeneratorConfig& cfg, Rng& rng) {
  const Matrix p = gen_invertible(cfg, rng);
  const Matrix a = gen_nonsingular(cfg, rng);
  const Matrix lhs = quasi_inverse(p * a), rhs = quasi_inverse(a) * quasi_inverse(p);
  if (lhs == rhs) return std::nullopt;
  return dump("P", p) + dump("A", a) + dump("(PA)^nabla", lhs) + dump("A^nabla P^nabla", rhs);
}

Outcome check_lemma57iii(const GeneratorConfig& cfg, Rng& rng) {
  const Matrix a = gen_nonsingular(cfg, rng);
  const NormalForm nf = normal_form(a);
  const Matrix lhs = quasi_inverse(a), rhs = quasi_inverse(nf.abar) * invertible_inverse(nf.p);
  if (lhs == rhs) return std::nullopt;
  return dump("A", a) + dump("A^nabla", lhs) + dump("Abar^nabla P^-1", rhs);
}

Outcome check_lemma58(const GeneratorConfig& cfg, Rng& rng) {
  const Matrix abar = gen_normal_form(with_n(cfg, 3), rng);
  const Matrix inv = quasi_inverse(abar);
  std::string why;
  if (!nu_equivalent(entry_conditions(abar).values, inv)) why += "entry conditions differ\n";
  if (!is_factorizable_3x3(inv).factorizable) {
    why += "quasi-inverse judged not factorizable\n";
  } else if (!verify(factor_3x3(inv))) {
    why += "factorization of quasi-inverse failed to verify\n";
  }
  if (!nu_equivalent(quasi_inverse(inv), inv)) why += "double quasi-inverse not stable\n";
  if (why.empty()) return std::nullopt;
  return why + dump("Abar", abar) + dump("Abar^nabla", inv);
}

Outcome check_claim61(const GeneratorConfig& cfg, Rng& rng) {
  const Matrix abar = gen_normal_form(cfg, rng);
  const Matrix inv = quasi_inverse(abar);
  const Matrix left = inv * abar, right = abar * inv;
  const bool nu_ok = nu_equivalent(left, inv) && nu_equivalent(right, inv);
  const Matrix t = project_tropical(inv);
  const bool trop_ok = project_tropical(left) == t && project_tropical(right) == t;
  if (nu_ok && trop_ok) return std::nullopt;
  return dump("Abar", abar) + dump("Abar^nabla", inv) + dump("Abar^nabla Abar", left) +
         dump("Abar Abar^nabla", right);
}

Outcome check_cor62(const GeneratorConfig& cfg, Rng& rng) {
  const Matrix a = gen_nonsingular(cfg, rng);
  const NormalForm nf = normal_form(a);
  const Matrix inv_bar = quasi_inverse(nf.abar);
  std::string why;
  if (!nu_equivalent(quasi_inverse(inv_bar), inv_bar)) why += "Abar^nabla^nabla !~ Abar^nabla\n";
  const Matrix inv = quasi_inverse(a);
  if (!nu_equivalent(quasi_inverse(inv), nf.p * inv * nf.p)) why += "A^nabla^nabla !~ P A^nabla P\n";
  if (why.empty()) return std::nullopt;
  return why + dump("A", a);
}

Outcome check_lemma67(const GeneratorConfig& cfg, Rng& rng) {
  const Matrix abar = gen_normal_form(cfg, rng);
  const auto n = static_cast<unsigned>(abar.size());
  const Matrix lo = power(abar, n - 1), hi = power(abar, n), inv = quasi_inverse(abar);
  const bool nu_ok = nu_equivalent(lo, hi) && nu_equivalent(hi, inv);
  const bool trop_ok = project_tropical(lo) == project_tropical(hi) &&
                       project_tropical(hi) == project_tropical(inv);
  if (nu_ok && trop_ok) return std::nullopt;
  return dump("Abar", abar) + dump("Abar^(n-1)", lo) + dump("Abar^n", hi) + dump("Abar^nabla", inv);
}

Outcome check_claim68(const GeneratorConfig& cfg, Rng& rng) {
  const Matrix abar = gen_normal_form(cfg, rng);
  const Matrix star = kleene_star(abar), inv = quasi_inverse(abar);
  const Matrix lo = power(abar, static_cast<unsigned>(abar.size() - 1));
  const bool ok = nu_equivalent(star, inv) && nu_equivalent(star, lo) &&
                  project_tropical(star) == project_tropical(inv);
  if (ok) return std::nullopt;
  return dump("Abar", abar) + dump("Abar*", star) + dump("Abar^nabla", inv);
}

Outcome check_claim31(const GeneratorConfig& cfg, Rng& rng) {
  const auto seq = gen_elementary_sequence(cfg.n, 12, cfg, rng);
  const auto pushed = push_type3_left(seq);
  const auto first_other =
      std::find_if(pushed.begin(), pushed.end(), [](const auto& e) { return !e.is_type3(); });
  const bool ordered = std::none_of(first_other, pushed.end(), [](const auto& e) { return e.is_type3(); });
  const Matrix before = evaluate(cfg.n, seq), after = evaluate(cfg.n, pushed);
  if (ordered && before == after && pushed.size() == seq.size()) return std::nullopt;
  std::string s = "sequence:\n";
  for (const auto& e : seq) s += "  " + to_string(e) + "\n";
  s += "rewritten:\n";
  for (const auto& e : pushed) s += "  " + to_string(e) + "\n";
  return s + dump("before", before) + dump("after", after);
}

Outcome check_claim42(const GeneratorConfig& cfg, Rng& rng) {
  const Matrix a = gen_nonsingular(with_n(cfg, 3), rng);
  const bool predicted = is_factorizable_3x3(normal_form(a).abar).factorizable;
  bool built = false;
  try {
    built = verify(factor_3x3(a));
  } catch (const NotFactorizableError&) {
    built = false;
  }
  if (predicted == built) return std::nullopt;
  return dump("A", a) + "predicted=" + (predicted ? "yes" : "no") +
         " constructed=" + (built ? "yes" : "no") + "\n";
}

Outcome check_lemma65(const GeneratorConfig& cfg, Rng& rng) {
  const Matrix a = gen_nonsingular(cfg, rng);
  const Factorization f = factor_star(a);
  const Matrix product = evaluate(f);
  std::string why;
  if (!verify(f)) why += "factorization does not match A^nabla over T\n";
  if (!nu_equivalent(product, f.target)) why += "factorization not nu-equivalent over R\n";
  const Matrix closed = quasi_inverse(normal_form(a).abar);
  for (std::size_t m = 2; m <= a.size(); ++m) {
    const Matrix block = evaluate(a.size(), closure_factors(closed, m));
    Matrix expected = Matrix::identity(a.size());
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) expected(i, j) = closed(i, j);
    if (!equal_under(block, expected, Equality::ExactTropical))
      why += "leading " + std::to_string(m) + "x" + std::to_string(m) + " block differs\n";
  }
  if (why.empty()) return std::nullopt;
  return why + dump("A", a) + dump("product", product) + dump("A^nabla", f.target);
}

Outcome check_oracle_det(const GeneratorConfig& cfg, Rng& rng) {
  const Matrix a = gen_matrix(cfg, rng);
  const Scalar fast = determinant(a), slow = oracle_determinant(a);
  if (fast == slow) return std::nullopt;
  return dump("A", a) + dump("determinant", fast) + dump("oracle", slow);
}

Outcome check_example29b(const GeneratorConfig& cfg, Rng& rng) {
  const Matrix a = gen_not_strictly_singular(with_n(cfg, 2), rng);
  const bool nonsingular = classify(a) == SingularityClass::NonSingular;
  const Factorization f = factor_2x2(a, nonsingular ? Mode::Supertropical : Mode::Tropical);
  const Equality want = nonsingular ? Equality::ExactSupertropical : Equality::ExactTropical;
  if (verify(f) && f.mode == want) return std::nullopt;
  return dump("A", a) + dump("product", evaluate(f)) + "mode=" + to_string(f.mode) + "\n";
}

const std::map<std::string, Check>& registry() {
  static const std::map<std::string, Check> table = {
      {"det-mult-gs", check_det_mult},
      {"thm5.5i", check_thm55i},
      {"thm5.5ii", check_thm55ii},
      {"prop5.6", check_prop56},
      {"lemma5.4", check_lemma54},
      {"lemma5.7i", check_lemma57i},
      {"lemma5.7ii", check_lemma57ii},
      {"lemma5.7iii", check_lemma57iii},
      {"lemma5.8", check_lemma58},
      {"claim6.1", check_claim61},
      {"cor6.2", check_cor62},
      {"lemma6.7", check_lemma67},
      {"claim6.8", check_claim68},
      {"claim3.1", check_claim31},
      {"claim4.2", check_claim42},
      {"lemma6.5", check_lemma65},
      {"oracle-det", check_oracle_det},
      {"example2.9b", check_example29b},
  };
  return table;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return splitmix64(splitmix64(seed) ^ trial);
}

Matrix gen_matrix(const GeneratorConfig& cfg, Rng& rng) {
  if (cfg.n == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  Matrix m(cfg.n);
  std::bernoulli_distribution finite(cfg.density);
  for (std::size_t i = 0; i < cfg.n; ++i)
    for (std::size_t j = 0; j < cfg.n; ++j)
      if (finite(rng)) m(i, j) = random_value(cfg, rng, true);
  return m;
}

Matrix gen_nonsingular(const GeneratorConfig& cfg, Rng& rng) {
  return rejection_sample(
      cfg, rng, [](const Matrix& m) { return classify(m) == SingularityClass::NonSingular; },
      "nonsingular");
}

Matrix gen_not_strictly_singular(const GeneratorConfig& cfg, Rng& rng) {
  return rejection_sample(
      cfg, rng, [](const Matrix& m) { return classify(m) != SingularityClass::StrictlySingular; },
      "not strictly singular");
}

Matrix gen_normal_form(const GeneratorConfig& cfg, Rng& rng) {
  return normal_form(gen_nonsingular(cfg, rng)).abar;
}

Matrix gen_invertible(const GeneratorConfig& cfg, Rng& rng) {
  Permutation perm(cfg.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Matrix p(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) p(i, perm[i]) = random_value(cfg, rng, false);
  return p;
}

std::vector<ElementaryMatrix> gen_elementary_sequence(std::size_t n, std::size_t max_len,
                                                      const GeneratorConfig& cfg, Rng& rng) {
  std::vector<ElementaryMatrix> seq;
  if (n < 2) return seq;
  const auto len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
  std::uniform_int_distribution<std::size_t> row(0, n - 1);
  auto distinct_pair = [&] {
    const std::size_t i = row(rng);
    std::size_t j = row(rng);
    while (j == i) j = row(rng);
    return std::pair{i, j};
  };
  for (std::size_t k = 0; k < len; ++k) {
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
      case 0: {
        const auto [i, j] = distinct_pair();
        seq.push_back(ElementaryMatrix::swap(n, i, j));
        break;
      }
      case 1:
        seq.push_back(ElementaryMatrix::scale(n, row(rng), random_value(cfg, rng, false)));
        break;
      default: {
        const auto [i, j] = distinct_pair();
        seq.push_back(ElementaryMatrix::add_multiple(n, i, j, random_value(cfg, rng, false)));
      }
    }
  }
  return seq;
}

Matrix gen_matrix(const GeneratorConfig& cfg) {
  Rng rng(cfg.seed);
  return gen_matrix(cfg, rng);
}

Matrix gen_normal_form(const GeneratorConfig& cfg) {
  Rng rng(cfg.seed);
  return gen_normal_form(cfg, rng);
}

Matrix gen_invertible(const GeneratorConfig& cfg) {
  Rng rng(cfg.seed);
  return gen_invertible(cfg, rng);
}

Scalar oracle_determinant(const Matrix& a) {
  const std::size_t n = a.size();
  if (n > 8) throw Error(ErrorCode::DimensionTooLarge, "oracle enumerates S_n for n <= 8");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  bool any = false;
  Rational best;
  int tangible_hits = 0;
  bool ghost_hit = false;
  do {
    Rational sum = 0;
    bool finite = true, ghost = false;
    for (std::size_t i = 0; i < n && finite; ++i) {
      const Scalar& e = a(i, perm[i]);
      if (e.kind() == Scalar::Kind::NegInf) {
        finite = false;
      } else {
        sum += e.value();
        ghost = ghost || e.kind() == Scalar::Kind::Ghost;
      }
    }
    if (!finite) continue;
    if (!any || sum > best) {
      any = true;
      best = sum;
      tangible_hits = ghost ? 0 : 1;
      ghost_hit = ghost;
    } else if (sum == best) {
      if (ghost)
        ghost_hit = true;
      else
        ++tangible_hits;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (!any) return Scalar::neg_inf();
  if (ghost_hit || tangible_hits > 1) return Scalar::ghost(best);
  return Scalar::tangible(best);
}

std::vector<std::string> property_names() {
  std::vector<std::string> names;
  for (const auto& [name, check] : registry()) names.push_back(name);
  return names;
}

PropertyReport run_property(const std::string& name, const GeneratorConfig& cfg,
                            std::uint64_t trials) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw Error(ErrorCode::UnknownProperty, name);
  PropertyReport report{name, trials, cfg.seed, {}, {}};
  const auto start = std::chrono::steady_clock::now();
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::uint64_t s = trial_seed(cfg.seed, t);
    Rng rng(s);
    Outcome outcome;
    try {
      outcome = it->second(cfg, rng);
    } catch (const std::exception& e) {
      outcome = std::string("exception: ") + e.what() + "\n";
    }
    if (outcome) report.failures.push_back({t, s, *outcome});
  }
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

std::string format_report(const PropertyReport& report) {
  std::ostringstream os;
  os << "PROP " << report.name << " trials=" << report.trials
     << " failures=" << report.failures.size() << " seed=" << report.seed << '\n';
  for (const auto& f : report.failures)
    os << "  counterexample trial=" << f.trial << " stream=" << f.seed << '\n' << f.detail;
  return os.str();
}

}  // namespace tropfact::harness
