#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opk/common.hpp"
#include "opk/observables.hpp"
#include "opk/operator_space.hpp"

namespace opk {

/// Configuration of one ensemble experiment.  Config files use the short
/// key names noted on each field.
struct ExperimentConfig {
  int n_fermions = 8;           // key: N
  int interaction_order = 4;    // key: q
  double coupling_scale = 1.0;  // key: J
  std::vector<double> mu_values = {0.0, 0.025, 0.05, 0.075, 0.1};  // key: mu_values (mu/J)
  double t_max = 120.0;         // key: t_max (in units of Jt)
  int n_times = 241;            // key: n_times, linear grid
  int n_realizations = 200;     // key: n_realizations
  std::uint64_t seed = 24243;   // key: seed
  std::string initial_operator = "sqrt2*psi1";  // key: initial_operator
  std::vector<std::string> bases = {"krylov", "string"};  // key: bases
  std::string outputs = "results";  // key: outputs

  void validate() const;
  /// Jt grid: n_times linear points on [0, t_max]; just {0} if t_max = 0.
  std::vector<double> time_grid() const;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// Builds the seed operator from a spec like "sqrt2*psi1" (factors
/// separated by '*': scalar literals, sqrt<number>, or psi<k> with
/// 1-based mode number).  The result must be unit-norm.
OperatorVector parse_initial_operator(const std::string& text, const MajoranaSet& majoranas);

/// Per-realization outcome; excluded realizations carry a note instead of
/// observable series.
struct RealizationResult {
  int realization = 0;
  double mu = 0.0;
  bool excluded = false;
  std::string note;
  int krylov_dim = 0;
  Vector a;
  RealVector b, c;
  ComplexitySeries series;
  bool expm_fallback = false;
};

/// Mean/variance tables for one dissipation strength.
struct MuAggregate {
  double mu = 0.0;
  std::vector<double> k_mean, k_var;
  std::vector<double> c_krylov_mean, c_krylov_var;
  std::vector<double> c_string_mean, c_string_var;
  std::vector<double> norm_mean;
  double mk_mean = 0.0, mk_var = 0.0;
  int n_success = 0, n_excluded = 0;
};

struct ResultsBundle {
  ExperimentConfig config;
  std::vector<double> times;
  std::vector<MuAggregate> aggregates;        // one per mu, config order
  std::vector<RealizationResult> realizations;  // all (mu, r) pairs, deterministic order
  int expm_fallback_count = 0;
  double max_imag_residue = 0.0;
  std::string manifest_text() const;
};

/// Unbiased sample mean/variance (variance 0 for a single sample).
std::pair<double, double> mean_variance(const std::vector<double>& samples);

/// Reduce per-realization series (completion-order independent: results
/// are keyed and folded in realization order).
MuAggregate aggregate(double mu, const std::vector<const RealizationResult*>& results,
                      std::size_t n_times);

/// Full ensemble run: for each (mu, realization), sample couplings, build
/// the generator, tridiagonalize, evolve along the chain and collect
/// observables.  Deterministic for a fixed config regardless of workers.
ResultsBundle run_experiment(const ExperimentConfig& config, int workers = 0);

/// Writes summary/dimensions/coefficients tables and the manifest.
void emit(const ResultsBundle& results, const std::string& out_dir);

}  // namespace opk
