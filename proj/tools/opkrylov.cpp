// Command-line runner: ensemble experiments, invariant verification and
// small-time basis-optimality sweeps for the dissipative SYK simulator.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opk/bilanczos.hpp"
#include "opk/errors.hpp"
#include "opk/evolution.hpp"
#include "opk/experiment.hpp"
#include "opk/lemma.hpp"
#include "opk/lindbladian.hpp"
#include "opk/observables.hpp"
#include "opk/operator_space.hpp"
#include "opk/rng.hpp"
#include "opk/string_algebra.hpp"
#include "opk/syk.hpp"

namespace {

using namespace opk;

int run_command(const std::string& config_path, std::uint64_t seed, bool seed_set,
                const std::string& out_dir, int workers) {
  ExperimentConfig config = parse_config_file(config_path);
  if (seed_set) config.seed = seed;
  if (!out_dir.empty()) config.outputs = out_dir;

  std::cerr << "running " << config.mu_values.size() << " dissipation strengths x "
            << config.n_realizations << " realizations (N = " << config.n_fermions
            << ", q = " << config.interaction_order << ")\n";
  const ResultsBundle results = run_experiment(config, workers);
  emit(results, config.outputs);

  for (const auto& agg : results.aggregates)
    std::cerr << "  mu/J = " << agg.mu << ": mean M_K = " << agg.mk_mean
              << ", K(t_max) = " << agg.k_mean.back() << ", excluded " << agg.n_excluded << "\n";
  std::cerr << "results written to " << config.outputs << "\n";
  return 0;
}

struct CheckSession {
  int failures = 0;

  void check(const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "ok   " : "FAIL ") << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++failures;
  }
};

int verify_command() {
  CheckSession s;
  const int n = 8;
  const MajoranaSet majoranas = MajoranaSet::jordan_wigner(n);
  const int d = majoranas.hilbert_dim();

  {
    double worst = 0.0;
    const Matrix id = Matrix::Identity(d, d);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const Matrix anti = majoranas.mode(i) * majoranas.mode(j) +
                            majoranas.mode(j) * majoranas.mode(i) -
                            (i == j ? id : Matrix::Zero(d, d));
        worst = std::max(worst, anti.cwiseAbs().maxCoeff());
      }
    s.check("anticommutation relations", worst < 1e-12, "max dev " + std::to_string(worst));
  }

  const StringBasis odd(majoranas, StringParity::odd);
  const StringBasis all(majoranas, StringParity::all);
  {
    const Matrix gram = all.vectors().adjoint() * all.vectors() / static_cast<double>(d);
    const double worst =
        (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    s.check("string basis orthonormality", worst < 1e-12, "max dev " + std::to_string(worst));
  }

  {
    // Symbolic string products against dense matrix products on a sample.
    double worst = 0.0;
    for (int a = 0; a < odd.size(); a += 17) {
      for (int b = 0; b < odd.size(); b += 13) {
        const auto& sa = odd.elements()[static_cast<std::size_t>(a)];
        const auto& sb = odd.elements()[static_cast<std::size_t>(b)];
        const StringOperator sym = operator_multiply(sa.symbolic(), sb.symbolic());
        Matrix expected = Matrix::Zero(d, d);
        for (const auto& [idx, coeff] : sym)
          expected += coeff * MajoranaString{idx}.matrix(majoranas) /
                      MajoranaString{idx}.normalization();
        const Matrix got = sa.matrix(majoranas) * sb.matrix(majoranas);
        worst = std::max(worst, (expected - got).cwiseAbs().maxCoeff());
      }
    }
    s.check("symbolic string oracle vs matrices", worst < 1e-10,
            "max dev " + std::to_string(worst));
  }

  {
    const double mu = 0.37;
    const Matrix diss = build_dissipative_part(majoranas, mu);
    double worst = 0.0;
    for (int k = 0; k < all.size(); ++k) {
      const int len = all.elements()[static_cast<std::size_t>(k)].length();
      const double rate = len % 2 == 1 ? mu * len : mu * (n - len);
      const Vector v = all.vectors().col(k);
      worst = std::max(worst, (diss * v - Complex(0.0, rate) * v).cwiseAbs().maxCoeff());
    }
    s.check("dissipator string eigenvalues", worst < 1e-12, "max residual " + std::to_string(worst));
  }

  {
    DisorderSpec spec{1.0, 4, n, 777, 2};
    const CouplingTensor c0 = sample_couplings(spec, 0);
    const CouplingTensor c0_again = sample_couplings(spec, 0);
    const bool identical = (c0.values() - c0_again.values()).cwiseAbs().maxCoeff() == 0.0;
    s.check("coupling sampling determinism", identical);

    const Matrix h = build_hamiltonian(c0, majoranas);
    s.check("Hamiltonian Hermitian/traceless",
            (h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-10 && std::abs(h.trace()) < 1e-10);

    const Superoperator superop = build_full(h, majoranas, 0.05);
    const OperatorVector x0 = parse_initial_operator("sqrt2*psi1", majoranas);
    const KrylovData krylov = bi_lanczos(superop, x0);
    s.check("bi-Lanczos biorthogonality", krylov.max_biorth_error < 1e-8,
            "M_K = " + std::to_string(krylov.dim) + ", max dev " +
                std::to_string(krylov.max_biorth_error));

    const auto jt = std::vector<double>{0.0, 1.0, 5.0, 10.0};
    const ChainAmplitudes amps = evolve_krylov(krylov, jt);
    const ComplexitySeries series = complexity_series(krylov, amps, odd);
    bool monotone = true;
    for (std::size_t k = 1; k < series.norm_sq.size(); ++k)
      if (series.norm_sq[k] > series.norm_sq[k - 1] + 1e-12) monotone = false;
    s.check("norm decay monotone", monotone);
    s.check("K(0) = 0 and C(0) = 1",
            std::abs(series.krylov_complexity[0]) < 1e-9 &&
                std::abs(series.spread_krylov[0] - 1.0) < 1e-9 &&
                std::abs(series.spread_string[0] - 1.0) < 1e-9);
  }

  std::cout << (s.failures == 0 ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
  return s.failures == 0 ? 0 : 1;
}

int lemma_command(const std::string& config_path) {
  const ExperimentConfig config = parse_config_file(config_path);
  const MajoranaSet majoranas = MajoranaSet::jordan_wigner(config.n_fermions);
  const StringBasis odd(majoranas, StringParity::odd);
  const OperatorVector x0 = parse_initial_operator(config.initial_operator, majoranas);
  const std::vector<double> grid = lemma_time_grid();

  const int n_realizations = std::min(config.n_realizations, 5);
  const int n_random_bases = 20;

  std::ostringstream table;
  table << "mu, realization, m, basis, aggregate_slope, worst_slope, n_fitted, "
           "max_entropy_excess, taylor_ok, minimality_ok\n";
  bool all_ok = true;

  for (double mu_over_j : config.mu_values) {
    for (int r = 0; r < n_realizations; ++r) {
      DisorderSpec spec{config.coupling_scale, config.interaction_order, config.n_fermions,
                        config.seed, config.n_realizations};
      const Matrix h = build_hamiltonian(sample_couplings(spec, r), majoranas);
      const Superoperator superop =
          build_full(h, majoranas, mu_over_j * config.coupling_scale);
      const KrylovData krylov = bi_lanczos(superop, x0);

      for (int m : {1, 2}) {
        std::vector<TrialBasis> bases;
        if (m == 1) bases.push_back(string_trial_basis(odd));
        for (int b = 0; b < n_random_bases; ++b)
          bases.push_back(random_trial_basis(
              odd, krylov, m,
              substream_seed(config.seed ^ 0xba5e5ULL,
                             static_cast<std::uint64_t>((r * 4 + m) * 1000 + b))));
        const LemmaReport report = lemma_check(superop, x0, krylov, m, bases, grid);
        for (const auto& basis : report.bases) {
          table << mu_over_j << ", " << r << ", " << m << ", " << basis.label << ", "
                << basis.aggregate_slope << ", " << basis.worst_slope << ", " << basis.n_fitted
                << ", " << basis.max_entropy_excess << ", " << (basis.taylor_ok ? 1 : 0) << ", "
                << (basis.minimality_ok ? 1 : 0) << "\n";
          if (!basis.taylor_ok || !basis.minimality_ok) all_ok = false;
        }
      }
      std::cerr << "lemma sweep: mu/J = " << mu_over_j << ", realization " << r << " done\n";
    }
  }

  std::filesystem::create_directories(config.outputs);
  const auto path = std::filesystem::path(config.outputs) / "lemma_report.csv";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << table.str();
  std::cerr << "lemma report written to " << path.string() << "\n";
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"operator growth and spread complexity for the dissipative SYK model"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  int workers = 0;

  auto* run = app.add_subcommand("run", "run a configured ensemble experiment");
  run->add_option("--config", config_path, "experiment config file")->required();
  auto* seed_opt = run->add_option("--seed", seed, "override the config seed");
  run->add_option("--workers", workers, "worker threads (0 = hardware)");
  run->add_option("--out", out_dir, "override the output directory");

  auto* verify = app.add_subcommand("verify", "run the oracle/invariant checks");
  (void)verify;

  std::string lemma_config;
  auto* lemma = app.add_subcommand("lemma", "small-time basis-optimality sweeps");
  lemma->add_option("--config", lemma_config, "experiment config file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("run"))
      return run_command(config_path, seed, seed_opt->count() > 0, out_dir, workers);
    if (app.got_subcommand("verify")) return verify_command();
    if (app.got_subcommand("lemma")) return lemma_command(lemma_config);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 1;
}
