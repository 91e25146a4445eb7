#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>

#include "tropfact/factorization.hpp"
#include "tropfact/harness.hpp"
#include "tropfact/matrix.hpp"

namespace {

using namespace tropfact;

constexpr int kNegative = 1;
constexpr int kUsage = 2;

struct Options {
  std::string input;
  std::string output;
  std::string mode = "super";
  unsigned k = 1;
  std::vector<std::string> suites;
  std::size_t n = 3;
  std::uint64_t trials = 200;
  std::uint64_t seed = 1;
  double density = 1.0;
  double ghost_rate = 0.0;
};

Mode mode_of(const Options& o) { return o.mode == "trop" ? Mode::Tropical : Mode::Supertropical; }

Matrix load(const Options& o) {
  Matrix a = read_matrix_file(o.input);
  return mode_of(o) == Mode::Tropical ? project_tropical(a) : a;
}

std::string permutation_text(const Permutation& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + std::to_string(p[i] + 1);
  return s;
}

int emit_factorization(const Factorization& f, const Options& o) {
  if (!verify(f)) throw Error(ErrorCode::NotFactorizable, "internal: factorization failed to verify");
  const std::string text = to_string(f);
  if (o.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(o.output);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + o.output);
    out << text;
    std::cout << "factors=" << f.factors.size() << " mode=" << to_string(f.mode) << '\n';
  }
  return 0;
}

bool is_triangular(const Matrix& a) {
  bool upper = true, lower = true;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (i > j && !a(i, j).is_neg_inf()) upper = false;
      if (i < j && !a(i, j).is_neg_inf()) lower = false;
    }
  return upper || lower;
}

int cmd_det(const Options& o) {
  const Scalar d = determinant(load(o));
  std::cout << d << "\nclass=" << to_string(classify(d)) << '\n';
  return 0;
}

int cmd_classify(const Options& o) {
  std::cout << to_string(classify(load(o))) << '\n';
  return 0;
}

int cmd_tracks(const Options& o) {
  const auto report = dominant_tracks(load(o));
  std::cout << "weight=" << report.weight << " count=" << report.permutations.size()
            << (report.truncated ? " truncated" : "") << '\n';
  for (const auto& p : report.permutations) std::cout << permutation_text(p) << '\n';
  return 0;
}

int cmd_normal_form(const Options& o) {
  const NormalForm nf = normal_form(load(o), mode_of(o));
  std::cout << "track " << permutation_text(nf.track) << '\n';
  for (const auto& e : nf.p_factors) std::cout << to_string(e) << '\n';
  std::cout << "abar\n" << nf.abar;
  return 0;
}

int cmd_factor(const Options& o) {
  const Matrix a = load(o);
  const Mode mode = mode_of(o);
  try {
    if (a.size() == 2) return emit_factorization(factor_2x2(a, mode), o);
    if (a.size() == 3) return emit_factorization(factor_3x3(a, mode), o);
  } catch (const NotFactorizableError& e) {
    std::cout << "not-factorizable " << to_string(e.witness()) << '\n';
    return kNegative;
  }
  if (is_triangular(a)) return emit_factorization(factor_triangular(a, mode), o);
  std::cerr << "no factorization procedure for this " << a.size() << "x" << a.size()
            << " input; try 'factor-star' for its quasi-inverse\n";
  return kUsage;
}

int cmd_verify(const Options& o) {
  const Factorization f = read_factorization_file(o.input);
  if (verify(f)) {
    std::cout << "verified mode=" << to_string(f.mode) << '\n';
    return 0;
  }
  std::cout << "mismatch mode=" << to_string(f.mode) << "\nproduct\n" << evaluate(f);
  return kNegative;
}

int cmd_detect_shift(const Options& o) {
  if (const auto w = detect_shift_counterexample(load(o))) {
    std::cout << to_string(*w) << '\n';
    return kNegative;
  }
  std::cout << "none\n";
  return 0;
}

int cmd_entry_conditions(const Options& o) {
  const Matrix a = load(o);
  if (a.size() != 3) throw Error(ErrorCode::DimensionMismatch, "entry conditions need a 3x3 matrix");
  const Matrix abar = is_normal_form(a) ? a : normal_form(a, mode_of(o)).abar;
  const EntryConditions ec = entry_conditions(abar);
  std::cout << "values\n" << ec.values << "relations\n";
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j)
      std::cout << (j ? " " : "") << (i == j ? "." : to_string(ec.relations[i][j]));
    std::cout << '\n';
  }
  const auto verdict = is_factorizable_3x3(abar);
  std::cout << "factorizable=" << (verdict.factorizable ? "yes" : "no");
  if (verdict.witness) std::cout << ' ' << to_string(*verdict.witness);
  std::cout << '\n';
  return 0;
}

int cmd_props(const Options& o) {
  std::vector<std::string> suites = o.suites;
  if (suites.empty() || (suites.size() == 1 && suites[0] == "all")) suites = harness::property_names();
  harness::GeneratorConfig cfg;
  cfg.n = o.n;
  cfg.seed = o.seed;
  cfg.density = o.density;
  cfg.ghost_rate = o.ghost_rate;
  bool ok = true;
  for (const auto& name : suites) {
    const auto report = harness::run_property(name, cfg, o.trials);
    std::cout << harness::format_report(report);
    ok = ok && report.passed();
  }
  return ok ? 0 : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tropical and supertropical matrix algebra"};
  app.require_subcommand(1);
  Options o;
  int status = 0;

  auto add = [&](const std::string& name, const std::string& help, auto&& run) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--mode", o.mode, "super or trop")->check(CLI::IsMember({"super", "trop"}));
    sub->callback([&status, &o, run] { status = run(o); });
    return sub;
  };
  auto with_file = [&](CLI::App* sub) {
    sub->add_option("FILE", o.input, "input file")->required()->check(CLI::ExistingFile);
    return sub;
  };

  with_file(add("det", "determinant and its class", cmd_det));
  with_file(add("classify", "nonsingular, singular or strictly-singular", cmd_classify));
  with_file(add("tracks", "dominant permutation tracks", cmd_tracks));
  with_file(add("adjoint", "adjoint matrix", [](const Options& opt) {
    std::cout << adjoint(load(opt));
    return 0;
  }));
  with_file(add("nabla", "quasi-inverse", [](const Options& opt) {
    std::cout << quasi_inverse(load(opt), mode_of(opt));
    return 0;
  }));
  auto* power_cmd = with_file(add("power", "k-th power", [](const Options& opt) {
    std::cout << power(load(opt), opt.k);
    return 0;
  }));
  power_cmd->add_option("--k", o.k, "exponent")->required();
  with_file(add("star", "Kleene star", [](const Options& opt) {
    std::cout << kleene_star(load(opt));
    return 0;
  }));
  with_file(add("normal-form", "P factors and normal form", cmd_normal_form));
  with_file(add("factor", "elementary factorization", cmd_factor))
      ->add_option("-o,--output", o.output, "write the factorization here");
  with_file(add("factor-star", "factorization of the quasi-inverse", [](const Options& opt) {
    return emit_factorization(factor_star(load(opt), mode_of(opt)), opt);
  }))->add_option("-o,--output", o.output, "write the factorization here");
  with_file(add("verify", "check a factorization file", cmd_verify));
  with_file(add("detect-shift", "shift-permutation counterexample", cmd_detect_shift));
  with_file(add("entry-conditions", "3x3 entry-condition table", cmd_entry_conditions));

  auto* props = add("props", "randomised property suites", cmd_props);
  props->add_option("--suite", o.suites, "property name, repeatable, or 'all'");
  props->add_option("--n", o.n, "dimension")->check(CLI::PositiveNumber);
  props->add_option("--trials", o.trials, "trials per suite");
  props->add_option("--seed", o.seed, "base seed");
  props->add_option("--density", o.density, "finite-entry probability")->check(CLI::Range(0.0, 1.0));
  props->add_option("--ghost-rate", o.ghost_rate, "ghost-entry probability")->check(CLI::Range(0.0, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  } catch (const NotFactorizableError& e) {
    std::cout << "not-factorizable " << to_string(e.witness()) << '\n';
    return kNegative;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return status;
}
