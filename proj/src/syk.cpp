#include "opk/syk.hpp"

#include <cmath>
#include <stdexcept>

#include "opk/rng.hpp"

namespace opk {

void DisorderSpec::validate() const {
  if (coupling_scale <= 0.0) throw std::invalid_argument("coupling scale J must be positive");
  if (interaction_order < 2 || interaction_order % 2 != 0)
    throw std::invalid_argument("interaction order q must be even and >= 2");
  if (n_fermions < interaction_order)
    throw std::invalid_argument("need at least q Majorana modes");
  if (n_fermions % 2 != 0) throw std::invalid_argument("N must be even");
  if (n_realizations < 1) throw std::invalid_argument("n_realizations must be >= 1");
}

double DisorderSpec::coupling_variance() const {
  double factorial = 1.0;
  for (int k = 2; k < interaction_order; ++k) factorial *= static_cast<double>(k);
  return coupling_scale * coupling_scale * factorial /
         std::pow(static_cast<double>(n_fermions), interaction_order - 1);
}

std::vector<std::vector<int>> CouplingTensor::ascending_tuples(int n_fermions,
                                                               int interaction_order) {
  std::vector<std::vector<int>> tuples;
  std::vector<int> comb(static_cast<std::size_t>(interaction_order));
  for (int i = 0; i < interaction_order; ++i) comb[static_cast<std::size_t>(i)] = i;
  while (true) {
    tuples.push_back(comb);
    int k = interaction_order - 1;
    while (k >= 0 && comb[static_cast<std::size_t>(k)] == n_fermions - interaction_order + k) --k;
    if (k < 0) break;
    ++comb[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < interaction_order; ++j)
      comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
  }
  return tuples;
}

CouplingTensor::CouplingTensor(int n_fermions, int interaction_order, RealVector values)
    : n_(n_fermions), q_(interaction_order), values_(std::move(values)) {
  if (q_ < 2 || q_ % 2 != 0) throw std::invalid_argument("interaction order q must be even");
  if (n_ < q_) throw std::invalid_argument("need at least q Majorana modes");
  tuples_ = ascending_tuples(n_, q_);
  if (values_.size() != static_cast<Eigen::Index>(tuples_.size()))
    throw std::invalid_argument("coupling count does not match C(N, q)");
  if (!values_.allFinite()) throw std::invalid_argument("couplings must be finite");
}

CouplingTensor sample_couplings(const DisorderSpec& spec, int realization_index) {
  spec.validate();
  if (realization_index < 0 || realization_index >= spec.n_realizations)
    throw std::invalid_argument("realization index out of range");

  const auto tuples = CouplingTensor::ascending_tuples(spec.n_fermions, spec.interaction_order);
  const double sigma = std::sqrt(spec.coupling_variance());

  GaussianStream stream(substream_seed(spec.seed, static_cast<std::uint64_t>(realization_index)));
  RealVector values(static_cast<Eigen::Index>(tuples.size()));
  for (Eigen::Index k = 0; k < values.size(); ++k) values(k) = sigma * stream.normal();
  return CouplingTensor(spec.n_fermions, spec.interaction_order, std::move(values));
}

Matrix build_hamiltonian(const CouplingTensor& couplings, const MajoranaSet& majoranas) {
  if (couplings.n_fermions() != majoranas.n_fermions())
    throw std::invalid_argument("coupling tensor and Majorana set disagree on N");

  const int d = majoranas.hilbert_dim();
  const int q = couplings.interaction_order();
  // i^{q/2}
  Complex prefactor{1.0, 0.0};
  for (int k = 0; k < q / 2; ++k) prefactor *= kI;

  Matrix h = Matrix::Zero(d, d);
  const auto& tuples = couplings.tuples();
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    const double j = couplings.values()(static_cast<Eigen::Index>(t));
    if (j == 0.0) continue;
    Matrix term = majoranas.mode(tuples[t][0]);
    for (std::size_t k = 1; k < tuples[t].size(); ++k) term = term * majoranas.mode(tuples[t][k]);
    h += (prefactor * j) * term;
  }
  // Exact Hermitian storage keeps the mu = 0 superoperator exactly
  // self-adjoint, which the closed-limit checks rely on.
  h = 0.5 * (h + h.adjoint()).eval();
  return h;
}

}  // namespace opk
