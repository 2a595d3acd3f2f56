#include "opk/lindbladian.hpp"

#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace opk {

Matrix build_unitary_part(const Matrix& hamiltonian) {
  if (hamiltonian.rows() != hamiltonian.cols())
    throw std::invalid_argument("Hamiltonian must be square");
  if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("Hamiltonian is not Hermitian");

  const Eigen::Index d = hamiltonian.rows();
  const Matrix id = Matrix::Identity(d, d);
  // Row stacking: vec(AXB) = (A ⊗ B^T) vec(X), so [H, X] becomes
  // H ⊗ 1 - 1 ⊗ H^T.
  return Eigen::kroneckerProduct(hamiltonian, id) -
         Eigen::kroneckerProduct(id, hamiltonian.transpose());
}

Matrix build_dissipative_part(const MajoranaSet& majoranas, double mu, JumpSign sign) {
  if (mu < 0.0) throw std::invalid_argument("dissipation strength mu must be >= 0");

  const int d = majoranas.hilbert_dim();
  const Eigen::Index d2 = static_cast<Eigen::Index>(d) * d;
  const int n = majoranas.n_fermions();

  Matrix hop = Matrix::Zero(d2, d2);
  for (int i = 0; i < n; ++i) {
    const Matrix& psi = majoranas.mode(i);
    hop += Eigen::kroneckerProduct(psi, psi.transpose());
  }

  if (sign == JumpSign::fermionic) {
    // i mu (sum_n psi_n . psi_n + (N/2) .); the anticommutator term of the
    // master equation contributes N/2 once summed over the N jump modes.
    Matrix base = hop + (0.5 * n) * Matrix::Identity(d2, d2);
    return (mu * kI) * base;
  }
  // Bosonic (+) branch of the jump term; exposed for completeness only.
  Matrix base = hop - (0.5 * n) * Matrix::Identity(d2, d2);
  return (-mu * kI) * base;
}

Superoperator build_full(const Matrix& hamiltonian, const MajoranaSet& majoranas, double mu,
                         JumpSign sign) {
  Superoperator s;
  s.dim = majoranas.hilbert_dim();
  if (hamiltonian.rows() != s.dim || hamiltonian.cols() != s.dim)
    throw std::invalid_argument("Hamiltonian dimension does not match the Majorana set");
  s.mu = mu;
  s.unitary_part = build_unitary_part(hamiltonian);
  s.dissipative_part = build_dissipative_part(majoranas, mu, sign);
  s.matrix = s.unitary_part + s.dissipative_part;
  return s;
}

}  // namespace opk
