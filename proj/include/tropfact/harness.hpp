#pragma once

// Randomised property checks for the algebraic identities of the library.
// Every trial draws from its own stream derived from (seed, trial index), so
// reports are reproducible and independent of execution order.

#include <chrono>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tropfact/factorization.hpp"
#include "tropfact/matrix.hpp"

namespace tropfact::harness {

using Rng = std::mt19937_64;

struct GeneratorConfig {
  std::size_t n = 3;
  double density = 1.0;     // probability an entry is finite
  long value_min = -6;      // numerator bounds
  long value_max = 6;
  double ghost_rate = 0.0;  // probability a finite entry is a ghost
  std::uint64_t seed = 1;
};

/// Stream seed for one trial of a run.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

Matrix gen_matrix(const GeneratorConfig& cfg, Rng& rng);
/// Rejection-samples gen_matrix until the result is nonsingular.
Matrix gen_nonsingular(const GeneratorConfig& cfg, Rng& rng);
/// Rejection-samples gen_matrix until the result is not strictly singular.
Matrix gen_not_strictly_singular(const GeneratorConfig& cfg, Rng& rng);
/// Normal form of a nonsingular sample.
Matrix gen_normal_form(const GeneratorConfig& cfg, Rng& rng);
/// One tangible entry per row and column.
Matrix gen_invertible(const GeneratorConfig& cfg, Rng& rng);
std::vector<ElementaryMatrix> gen_elementary_sequence(std::size_t n, std::size_t max_len,
                                                      const GeneratorConfig& cfg, Rng& rng);

// Single-shot forms seeded from cfg.seed.
Matrix gen_matrix(const GeneratorConfig& cfg);
Matrix gen_normal_form(const GeneratorConfig& cfg);
Matrix gen_invertible(const GeneratorConfig& cfg);

/// Determinant by direct enumeration of S_n on raw values; shares no code
/// with tropfact::determinant. n <= 8.
Scalar oracle_determinant(const Matrix& a);

struct Failure {
  std::uint64_t trial;
  std::uint64_t seed;
  std::string detail;  // includes serialized counterexample matrices
};

struct PropertyReport {
  std::string name;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<Failure> failures;
  std::chrono::duration<double> elapsed{};

  bool passed() const { return failures.empty(); }
};

std::vector<std::string> property_names();

/// Throws Error(UnknownProperty) for an unregistered name.
PropertyReport run_property(const std::string& name, const GeneratorConfig& cfg,
                            std::uint64_t trials);

/// "PROP <name> trials=<k> failures=<m> seed=<s>" followed by counterexamples.
std::string format_report(const PropertyReport& report);

}  // namespace tropfact::harness
