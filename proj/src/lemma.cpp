#include "opk/lemma.hpp"

#include <cmath>
#include <stdexcept>

#include "opk/errors.hpp"
#include "opk/evolution.hpp"
#include "opk/rng.hpp"

namespace opk {

namespace {

/// Least-squares slope of ln(y) vs ln(t).
double loglog_slope(const std::vector<double>& t, const std::vector<double>& y) {
  const std::size_t n = t.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(t[i]);
    const double v = std::log(y[i]);
    sx += x;
    sy += v;
    sxx += x * x;
    sxy += x * v;
  }
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

void require_orthonormal(const Matrix& basis, double d) {
  const Matrix gram = basis.adjoint() * basis / d;
  const Matrix id = Matrix::Identity(gram.rows(), gram.cols());
  if ((gram - id).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("trial basis is not orthonormal");
}

}  // namespace

bool LemmaReport::taylor_ok() const {
  for (const auto& b : bases)
    if (!b.taylor_ok) return false;
  return !bases.empty();
}

bool LemmaReport::minimality_ok() const {
  for (const auto& b : bases)
    if (!b.minimality_ok) return false;
  return !bases.empty();
}

std::vector<double> lemma_time_grid(double t_min, double t_max, int n) {
  std::vector<double> grid(static_cast<std::size_t>(n));
  const double ratio = std::log(t_max / t_min);
  for (int k = 0; k < n; ++k)
    grid[static_cast<std::size_t>(k)] =
        t_min * std::exp(ratio * static_cast<double>(k) / static_cast<double>(n - 1));
  return grid;
}

TrialBasis string_trial_basis(const StringBasis& odd_basis) {
  return TrialBasis{odd_basis.label(), odd_basis.vectors()};
}

TrialBasis random_trial_basis(const StringBasis& sector_basis, const KrylovData& krylov, int m,
                              std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("prefix length m must be >= 1");
  const int sector = sector_basis.size();
  if (m > 2 || m > krylov.dim)
    throw std::invalid_argument("random completion supports m <= 2 (orthonormal Krylov prefix)");

  const double d = static_cast<double>(sector_basis.hilbert_dim());
  // Hermitian coordinates: phase-adjusted strings make every sector
  // element Hermitian, so real rotations keep the trial basis Hermitian.
  Matrix hermitian_columns = sector_basis.vectors();
  for (int k = 0; k < sector; ++k) {
    const int s = sector_basis.elements()[static_cast<std::size_t>(k)].length();
    hermitian_columns.col(k) *= hermitian_phase(s);
  }

  // Coordinates of the Krylov prefix in the Hermitian string basis; the
  // prefix vectors are phase-rotated so their coordinates are real.
  RealMatrix prefix(sector, m);
  for (int j = 0; j < m; ++j) {
    Vector coords = hermitian_columns.adjoint() * krylov.right_basis.col(j) / d;
    // Remove the overall phase (populations are phase-insensitive).
    Eigen::Index imax = 0;
    coords.cwiseAbs().maxCoeff(&imax);
    const Complex lead = coords(imax);
    if (std::abs(lead) < 1e-12)
      throw std::invalid_argument("Krylov prefix element has no sector support");
    coords *= std::conj(lead) / std::abs(lead);
    if (coords.imag().cwiseAbs().maxCoeff() > 1e-9)
      throw std::invalid_argument("Krylov prefix element is not Hermitian up to phase");
    prefix.col(j) = coords.real();
    prefix.col(j).normalize();
  }

  // Haar-random real orthogonal completion of the prefix.
  GaussianStream stream(seed);
  RealMatrix full(sector, sector);
  full.leftCols(m) = prefix;
  for (int j = m; j < sector; ++j)
    for (int i = 0; i < sector; ++i) full(i, j) = stream.normal();
  Eigen::HouseholderQR<RealMatrix> qr(full);
  RealMatrix q = qr.householderQ();
  // Householder Q may flip prefix columns; restore them exactly.
  q.leftCols(m) = prefix;
  // One orthogonalization pass to keep the complement orthogonal to the
  // restored prefix at full precision.
  for (int j = m; j < sector; ++j) {
    for (int i = 0; i < j; ++i) q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
    q.col(j).normalize();
  }

  TrialBasis basis;
  basis.label = "random_m" + std::to_string(m) + "_" + std::to_string(seed & 0xffffu);
  basis.vectors = hermitian_columns * q;
  return basis;
}

LemmaReport lemma_check(const Superoperator& superop, const OperatorVector& x0,
                        const KrylovData& krylov, int m, const std::vector<TrialBasis>& bases,
                        const std::vector<double>& t_grid, LemmaOptions opts) {
  if (m < 1 || m > krylov.dim) throw std::invalid_argument("invalid prefix length m");
  const double d = static_cast<double>(x0.dim);

  for (const auto& basis : bases) {
    require_orthonormal(basis.vectors, d);
    // Shared prefix: |(G_j | O_j)| = 1 for j < m.
    for (int j = 0; j < m; ++j) {
      const Complex ov = basis.vectors.col(j).dot(krylov.right_basis.col(j)) / d;
      if (std::abs(std::abs(ov) - 1.0) > 1e-8)
        throw std::invalid_argument("trial basis '" + basis.label +
                                    "' does not share Krylov element " + std::to_string(j));
    }
  }

  const FullEvolution evolution = evolve_full(superop, x0, t_grid);
  const ChainAmplitudes chain = evolve_krylov(krylov, t_grid);

  // Krylov-basis spread entropy per time.
  std::vector<double> f_krylov(t_grid.size());
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    const Eigen::Index col = static_cast<Eigen::Index>(k);
    f_krylov[k] =
        spread_complexity(krylov_population(chain.p.col(col), chain.q.col(col), opts.krylov_weight))
            .entropy;
  }

  LemmaReport report;
  report.m = m;
  report.mu = superop.mu;

  for (const auto& basis : bases) {
    TrialBasisReport r;
    r.label = basis.label;

    const int n_elements = static_cast<int>(basis.vectors.cols());
    // P_G(n, t) for all n, t.
    RealMatrix populations(n_elements, static_cast<Eigen::Index>(t_grid.size()));
    std::vector<double> f_basis(t_grid.size());
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
      const auto dist =
          population_distribution(evolution.states[k].vector, basis.vectors, basis.label);
      for (int n = 0; n < n_elements; ++n)
        populations(n, static_cast<Eigen::Index>(k)) = dist.probabilities[static_cast<std::size_t>(n)];
      f_basis[k] = spread_complexity(dist).entropy;
    }

    // Aggregate tail weight sum_{n>=m} P(n,t) has slope 2m.
    const double target = 2.0 * static_cast<double>(m);
    std::vector<double> tail(t_grid.size());
    for (std::size_t k = 0; k < t_grid.size(); ++k)
      tail[k] = populations.col(static_cast<Eigen::Index>(k)).tail(n_elements - m).sum();
    r.aggregate_slope = loglog_slope(t_grid, tail);
    bool ok = std::abs(r.aggregate_slope - target) <= opts.slope_rel_tol * target;

    // Per-element slopes where the population rises above fit noise.
    r.worst_slope = r.aggregate_slope;
    for (int n = m; n < n_elements; ++n) {
      std::vector<double> ts, ys;
      for (std::size_t k = 0; k < t_grid.size(); ++k) {
        const double pv = populations(n, static_cast<Eigen::Index>(k));
        if (pv > opts.noise_floor) {
          ts.push_back(t_grid[k]);
          ys.push_back(pv);
        }
      }
      if (static_cast<int>(ts.size()) < opts.min_fit_points) continue;
      const double slope = loglog_slope(ts, ys);
      ++r.n_fitted;
      if (std::abs(slope - target) > std::abs(r.worst_slope - target)) r.worst_slope = slope;
      if (std::abs(slope - target) > opts.slope_rel_tol * target) ok = false;
    }
    r.taylor_ok = ok;

    r.max_entropy_excess = 0.0;
    for (std::size_t k = 0; k < t_grid.size(); ++k)
      r.max_entropy_excess = std::max(r.max_entropy_excess, f_krylov[k] - f_basis[k]);
    r.minimality_ok = r.max_entropy_excess <= opts.entropy_slack;

    report.bases.push_back(std::move(r));
  }
  return report;
}

}  // namespace opk
