#include "opk/observables.hpp"

#include <cmath>
#include <stdexcept>

#include "opk/errors.hpp"

namespace opk {

KrylovComplexityValue krylov_complexity(const Vector& p, const Vector& q) {
  if (p.size() != q.size()) throw std::invalid_argument("amplitude lists differ in length");
  Complex num{0.0, 0.0};
  Complex den{0.0, 0.0};
  for (Eigen::Index n = 0; n < p.size(); ++n) {
    const Complex w = q(n) * p(n);
    num += static_cast<double>(n) * w;
    den += w;
  }
  if (std::abs(den) < 1e-300)
    throw DegenerateStateError("total chain weight vanished; complexity undefined");
  const Complex ratio = num / den;
  return KrylovComplexityValue{ratio.real(), std::abs(ratio.imag())};
}

PopulationDistribution population_distribution(const OperatorVector& x, const Matrix& basis,
                                               const std::string& label,
                                               double completeness_tol) {
  if (basis.rows() != x.data.size())
    throw std::invalid_argument("basis vectors do not match the operator space");
  const double d = static_cast<double>(x.dim);
  const Vector overlaps = basis.adjoint() * x.data / d;
  // sum_m |(S_m|X)|^2 must equal (X|X) for a basis complete on the sector.
  const double captured = overlaps.squaredNorm();
  const double norm_sq = x.data.squaredNorm() / d;
  if (std::abs(captured - norm_sq) > completeness_tol)
    throw BasisIncompleteError("basis misses operator weight: captured " +
                               std::to_string(captured) + " of " + std::to_string(norm_sq));
  if (captured < 1e-300) throw DegenerateStateError("operator weight vanished");

  PopulationDistribution dist;
  dist.basis_label = label;
  dist.probabilities.resize(static_cast<std::size_t>(overlaps.size()));
  for (Eigen::Index n = 0; n < overlaps.size(); ++n) {
    double pr = std::norm(overlaps(n)) / captured;
    if (pr < 0.0) pr = 0.0;  // clamp -1e-12-level noise
    dist.probabilities[static_cast<std::size_t>(n)] = pr;
  }
  return dist;
}

PopulationDistribution population_distribution(const OperatorVector& x, const StringBasis& basis,
                                               double completeness_tol) {
  return population_distribution(x, basis.vectors(), basis.label(), completeness_tol);
}

PopulationDistribution krylov_population(const Vector& p, const Vector& q, KrylovWeight weight) {
  if (p.size() != q.size()) throw std::invalid_argument("amplitude lists differ in length");
  std::vector<double> w(static_cast<std::size_t>(p.size()));
  double total = 0.0;
  for (Eigen::Index n = 0; n < p.size(); ++n) {
    const Complex prod = q(n) * p(n);
    double v = weight == KrylovWeight::modulus ? std::abs(prod) : std::max(prod.real(), 0.0);
    w[static_cast<std::size_t>(n)] = v;
    total += v;
  }
  if (total < 1e-300) throw DegenerateStateError("total chain weight vanished");
  PopulationDistribution dist;
  dist.basis_label = "krylov";
  dist.probabilities.resize(w.size());
  for (std::size_t n = 0; n < w.size(); ++n) dist.probabilities[n] = w[n] / total;
  return dist;
}

SpreadMeasures spread_complexity(const PopulationDistribution& dist) {
  double entropy = 0.0;
  for (double pr : dist.probabilities) {
    if (pr > 0.0) entropy -= pr * std::log(pr);
  }
  return SpreadMeasures{entropy, std::exp(entropy)};
}

ComplexitySeries complexity_series(const KrylovData& krylov, const ChainAmplitudes& amps,
                                   const StringBasis& string_basis, KrylovWeight weight) {
  const std::size_t n_times = amps.times.size();
  ComplexitySeries series;
  series.times = amps.times;
  series.krylov_dim = krylov.dim;
  series.krylov_complexity.resize(n_times);
  series.spread_krylov.resize(n_times);
  series.spread_string.resize(n_times);
  series.norm_sq.resize(n_times);

  // String overlaps of X_t are a single small matrix-vector product per
  // time once the basis is projected onto the chain subspace.
  const double d = static_cast<double>(krylov.space_dim);
  const Matrix string_from_chain = string_basis.vectors().adjoint() * krylov.ortho_basis / d;

  for (std::size_t k = 0; k < n_times; ++k) {
    const Eigen::Index col = static_cast<Eigen::Index>(k);
    const Vector p = amps.p.col(col);
    const Vector q = amps.q.col(col);

    const auto kc = krylov_complexity(p, q);
    series.krylov_complexity[k] = kc.value;
    series.max_imag_residue = std::max(series.max_imag_residue, kc.imag_residue);

    series.norm_sq[k] = (q.transpose() * p).value().real();  // sum_n q_n p_n = (X_t|X_t)

    series.spread_krylov[k] = spread_complexity(krylov_population(p, q, weight)).complexity;

    const Vector string_overlaps = string_from_chain * amps.reduced.col(col);
    const double captured = string_overlaps.squaredNorm();
    if (captured < 1e-300) throw DegenerateStateError("operator weight vanished");
    PopulationDistribution dist;
    dist.basis_label = string_basis.label();
    dist.probabilities.resize(static_cast<std::size_t>(string_overlaps.size()));
    for (Eigen::Index n = 0; n < string_overlaps.size(); ++n)
      dist.probabilities[static_cast<std::size_t>(n)] = std::norm(string_overlaps(n)) / captured;
    series.spread_string[k] = spread_complexity(dist).complexity;
  }
  return series;
}

}  // namespace opk
