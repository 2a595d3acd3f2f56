#include "opk/experiment.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "opk/bilanczos.hpp"
#include "opk/errors.hpp"
#include "opk/evolution.hpp"
#include "opk/lindbladian.hpp"
#include "opk/syk.hpp"

namespace opk {

void ExperimentConfig::validate() const {
  DisorderSpec spec{coupling_scale, interaction_order, n_fermions, seed, n_realizations};
  spec.validate();
  if (n_fermions > kMaxFermions)
    throw ResourceLimitError("N exceeds the dense-representation guard");
  if (t_max < 0.0) throw std::invalid_argument("t_max must be >= 0");
  if (n_times < 1) throw std::invalid_argument("n_times must be >= 1");
  if (mu_values.empty()) throw std::invalid_argument("mu_values must not be empty");
  for (std::size_t i = 0; i < mu_values.size(); ++i) {
    if (mu_values[i] < 0.0) throw std::invalid_argument("mu values must be >= 0");
    if (i > 0 && mu_values[i] <= mu_values[i - 1])
      throw std::invalid_argument("mu_values must be sorted ascending");
  }
  if (bases.empty()) throw std::invalid_argument("bases must not be empty");
  for (const auto& b : bases)
    if (b != "krylov" && b != "string")
      throw std::invalid_argument("unknown basis '" + b + "' (expected krylov or string)");
  if (initial_operator.empty()) throw std::invalid_argument("initial_operator must be set");
  if (outputs.empty()) throw std::invalid_argument("outputs directory must be set");
}

std::vector<double> ExperimentConfig::time_grid() const {
  if (t_max == 0.0 || n_times == 1) return {0.0};
  std::vector<double> grid(static_cast<std::size_t>(n_times));
  for (int k = 0; k < n_times; ++k)
    grid[static_cast<std::size_t>(k)] =
        t_max * static_cast<double>(k) / static_cast<double>(n_times - 1);
  return grid;
}

std::pair<double, double> mean_variance(const std::vector<double>& samples) {
  const std::size_t n = samples.size();
  if (n == 0) throw std::invalid_argument("no samples to aggregate");
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(n);
  if (n == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  return {mean, ss / static_cast<double>(n - 1)};
}

MuAggregate aggregate(double mu, const std::vector<const RealizationResult*>& results,
                      std::size_t n_times) {
  MuAggregate agg;
  agg.mu = mu;
  std::vector<const RealizationResult*> ok;
  for (const auto* r : results) {
    if (r->excluded)
      ++agg.n_excluded;
    else
      ok.push_back(r);
  }
  agg.n_success = static_cast<int>(ok.size());
  if (ok.empty()) throw AbortedRunError("no successful realization at mu = " + std::to_string(mu));

  agg.k_mean.resize(n_times);
  agg.k_var.resize(n_times);
  agg.c_krylov_mean.resize(n_times);
  agg.c_krylov_var.resize(n_times);
  agg.c_string_mean.resize(n_times);
  agg.c_string_var.resize(n_times);
  agg.norm_mean.resize(n_times);

  std::vector<double> column(ok.size());
  for (std::size_t t = 0; t < n_times; ++t) {
    for (std::size_t r = 0; r < ok.size(); ++r) column[r] = ok[r]->series.krylov_complexity[t];
    std::tie(agg.k_mean[t], agg.k_var[t]) = mean_variance(column);
    for (std::size_t r = 0; r < ok.size(); ++r) column[r] = ok[r]->series.spread_krylov[t];
    std::tie(agg.c_krylov_mean[t], agg.c_krylov_var[t]) = mean_variance(column);
    for (std::size_t r = 0; r < ok.size(); ++r) column[r] = ok[r]->series.spread_string[t];
    std::tie(agg.c_string_mean[t], agg.c_string_var[t]) = mean_variance(column);
    for (std::size_t r = 0; r < ok.size(); ++r) column[r] = ok[r]->series.norm_sq[t];
    agg.norm_mean[t] = mean_variance(column).first;
  }

  std::vector<double> dims(ok.size());
  for (std::size_t r = 0; r < ok.size(); ++r) dims[r] = static_cast<double>(ok[r]->krylov_dim);
  std::tie(agg.mk_mean, agg.mk_var) = mean_variance(dims);
  return agg;
}

namespace {

RealizationResult run_realization(const ExperimentConfig& config, const MajoranaSet& majoranas,
                                  const StringBasis& string_basis, const OperatorVector& x0,
                                  const std::vector<double>& jt_grid, double mu_over_j,
                                  int realization) {
  RealizationResult out;
  out.realization = realization;
  out.mu = mu_over_j;

  DisorderSpec spec{config.coupling_scale, config.interaction_order, config.n_fermions,
                    config.seed, config.n_realizations};
  const CouplingTensor couplings = sample_couplings(spec, realization);
  const Matrix h = build_hamiltonian(couplings, majoranas);
  const double mu = mu_over_j * config.coupling_scale;
  const Superoperator superop = build_full(h, majoranas, mu);

  try {
    const KrylovData krylov = bi_lanczos(superop, x0);
    out.krylov_dim = krylov.dim;
    out.a = krylov.a;
    out.b = krylov.b;
    out.c = krylov.c;

    // Physical times: the grid is in Jt units.
    std::vector<double> times(jt_grid.size());
    for (std::size_t k = 0; k < times.size(); ++k) times[k] = jt_grid[k] / config.coupling_scale;
    const ChainAmplitudes amps = evolve_krylov(krylov, times);
    out.expm_fallback = amps.used_expm_fallback;
    out.series = complexity_series(krylov, amps, string_basis);
    out.series.times = jt_grid;
  } catch (const NumericalBreakdownError& err) {
    out.excluded = true;
    out.note = err.what();
  }
  return out;
}

}  // namespace

ResultsBundle run_experiment(const ExperimentConfig& config, int workers) {
  config.validate();

  const MajoranaSet majoranas = MajoranaSet::jordan_wigner(config.n_fermions);
  const StringBasis string_basis(majoranas, StringParity::odd);
  const OperatorVector x0 = parse_initial_operator(config.initial_operator, majoranas);
  const std::vector<double> jt_grid = config.time_grid();

  ResultsBundle bundle;
  bundle.config = config;
  bundle.times = jt_grid;

  const std::size_t n_mu = config.mu_values.size();
  const std::size_t n_real = static_cast<std::size_t>(config.n_realizations);
  bundle.realizations.resize(n_mu * n_real);

  // Independent jobs; slot (mu, r) is written exactly once, so any worker
  // count yields identical results.
  std::atomic<std::size_t> next{0};
  const std::size_t n_jobs = n_mu * n_real;
  int n_workers = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
  if (n_workers < 1) n_workers = 1;

  auto worker = [&]() {
    while (true) {
      const std::size_t job = next.fetch_add(1);
      if (job >= n_jobs) return;
      const std::size_t mu_idx = job / n_real;
      const int realization = static_cast<int>(job % n_real);
      bundle.realizations[job] =
          run_realization(config, majoranas, string_basis, x0, jt_grid,
                          config.mu_values[mu_idx], realization);
    }
  };

  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (std::size_t mu_idx = 0; mu_idx < n_mu; ++mu_idx) {
    std::vector<const RealizationResult*> slice;
    slice.reserve(n_real);
    for (std::size_t r = 0; r < n_real; ++r)
      slice.push_back(&bundle.realizations[mu_idx * n_real + r]);
    MuAggregate agg = aggregate(config.mu_values[mu_idx], slice, jt_grid.size());
    if (agg.n_excluded > 0 &&
        static_cast<double>(agg.n_excluded) > 0.01 * static_cast<double>(n_real))
      throw AbortedRunError("more than 1% of realizations excluded at mu = " +
                            std::to_string(config.mu_values[mu_idx]));
    bundle.aggregates.push_back(std::move(agg));
  }

  for (const auto& r : bundle.realizations) {
    if (r.expm_fallback) ++bundle.expm_fallback_count;
    if (!r.excluded)
      bundle.max_imag_residue = std::max(bundle.max_imag_residue, r.series.max_imag_residue);
  }
  return bundle;
}

}  // namespace opk
