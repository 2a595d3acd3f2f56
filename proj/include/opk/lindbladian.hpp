#pragma once

#include "opk/common.hpp"
#include "opk/operator_space.hpp"

namespace opk {

/// Sign convention of the master equation's jump term: the minus branch
/// applies when both the observable and the jump operators are fermionic.
enum class JumpSign { fermionic, bosonic };

/// Vectorized generator of the Heisenberg-picture master equation,
/// dX/dt = i L X, split into its commutator and dissipative parts.
/// L acts on row-stacked operator vectors; immutable after assembly.
struct Superoperator {
  Matrix matrix;            // unitary_part + dissipative_part
  Matrix unitary_part;      // [H, .]
  Matrix dissipative_part;  // i mu (sum_n psi_n . psi_n + (N/2) .)
  double mu = 0.0;
  int dim = 0;  // Hilbert-space dimension D; matrices are D^2 x D^2

  /// Adjoint with respect to (A|B) = Tr[A^dag B]/D.  The vectorization is
  /// orthonormal for that inner product, so this is the conjugate
  /// transpose of `matrix`.
  Matrix adjoint() const { return matrix.adjoint(); }
};

/// Commutator superoperator [H, .] as a D^2 x D^2 matrix (H ⊗ 1 - 1 ⊗ H^T).
/// H must be Hermitian within 1e-8.
Matrix build_unitary_part(const Matrix& hamiltonian);

/// Dissipative part for jump operators sqrt(mu) psi_n.  Every normalized
/// Majorana string of length s is an exact eigenvector with eigenvalue
/// i mu s (s odd) or i mu (N - s) (s even).
Matrix build_dissipative_part(const MajoranaSet& majoranas, double mu,
                              JumpSign sign = JumpSign::fermionic);

Superoperator build_full(const Matrix& hamiltonian, const MajoranaSet& majoranas, double mu,
                         JumpSign sign = JumpSign::fermionic);

}  // namespace opk
