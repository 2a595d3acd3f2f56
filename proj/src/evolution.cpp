#include "opk/evolution.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace opk {

SpectralPropagator::SpectralPropagator(Matrix generator, PropagatorOptions opts)
    : generator_(std::move(generator)) {
  if (generator_.rows() != generator_.cols())
    throw std::invalid_argument("generator must be square");

  Eigen::ComplexEigenSolver<Matrix> solver(generator_, /*computeEigenvectors=*/true);
  if (solver.info() == Eigen::Success) {
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
    Eigen::PartialPivLU<Matrix> lu(eigenvectors_);
    eigenvectors_inv_ = lu.inverse();
    const double norm_v = eigenvectors_.cwiseAbs().colwise().sum().maxCoeff();
    const double norm_vinv = eigenvectors_inv_.cwiseAbs().colwise().sum().maxCoeff();
    condition_ = norm_v * norm_vinv;
    if (std::isfinite(condition_) && condition_ < opts.condition_limit) return;
  }
  fallback_ = true;
}

Vector SpectralPropagator::apply(const Vector& x0, double t) const {
  if (x0.size() != generator_.rows())
    throw std::invalid_argument("state dimension does not match the generator");
  if (fallback_) {
    const Matrix expm = (generator_ * t).exp();
    return expm * x0;
  }
  const Vector w = eigenvectors_inv_ * x0;
  const Vector phases = (eigenvalues_ * t).array().exp();
  return eigenvectors_ * (phases.asDiagonal() * w);
}

Matrix SpectralPropagator::trajectory(const Vector& x0, const std::vector<double>& times) const {
  Matrix out(x0.size(), static_cast<Eigen::Index>(times.size()));
  if (fallback_) {
    for (std::size_t k = 0; k < times.size(); ++k)
      out.col(static_cast<Eigen::Index>(k)) = apply(x0, times[k]);
    return out;
  }
  const Vector w = eigenvectors_inv_ * x0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const Vector phases = (eigenvalues_ * times[k]).array().exp();
    out.col(static_cast<Eigen::Index>(k)) = eigenvectors_ * (phases.asDiagonal() * w);
  }
  return out;
}

FullEvolution evolve_full(const Superoperator& superop, const OperatorVector& x0,
                          const std::vector<double>& times, PropagatorOptions opts) {
  if (x0.dim != superop.dim)
    throw std::invalid_argument("seed operator dimension does not match the superoperator");
  if (std::abs(operator_norm(x0) - 1.0) > 1e-10)
    throw std::invalid_argument("seed operator is not unit-norm");

  SpectralPropagator prop(kI * superop.matrix, opts);
  const Matrix traj = prop.trajectory(x0.data, times);

  FullEvolution out;
  out.used_expm_fallback = prop.used_expm_fallback();
  out.condition_estimate = prop.condition_estimate();
  out.states.reserve(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    EvolvedOperator state;
    state.time = times[k];
    state.vector = OperatorVector{traj.col(static_cast<Eigen::Index>(k)), x0.dim};
    const double scaled = operator_norm(state.vector);
    state.norm_sq = scaled * scaled;
    out.states.push_back(std::move(state));
  }
  return out;
}

ChainAmplitudes evolve_krylov(const KrylovData& krylov, const std::vector<double>& times,
                              PropagatorOptions opts) {
  const double d = static_cast<double>(krylov.space_dim);

  // Seed coordinates of X_0 = first right vector in the orthonormal basis.
  const Vector seed = krylov.ortho_basis.adjoint() * krylov.right_basis.col(0);

  SpectralPropagator prop(kI * krylov.reduced_generator, opts);

  ChainAmplitudes out;
  out.times = times;
  out.used_expm_fallback = prop.used_expm_fallback();
  out.reduced = prop.trajectory(seed, times);
  // Biorthogonal amplitudes of the reduced state:
  //   p_n = (left_n | X_t),  q_n = (X_t | right_n).
  out.p = (krylov.left_basis.adjoint() * krylov.ortho_basis / d) * out.reduced;
  out.q = ((krylov.right_basis.adjoint() * krylov.ortho_basis / d) * out.reduced).conjugate();
  return out;
}

OperatorVector reconstruct_state(const KrylovData& krylov, const ChainAmplitudes& amps,
                                 int time_index) {
  Vector data = krylov.ortho_basis * amps.reduced.col(time_index);
  return OperatorVector{std::move(data), krylov.space_dim};
}

}  // namespace opk
