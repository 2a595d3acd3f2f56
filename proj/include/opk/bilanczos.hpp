#pragma once

#include "opk/common.hpp"
#include "opk/lindbladian.hpp"
#include "opk/operator_space.hpp"

namespace opk {

enum class Termination { breakdown, alignment, max_dim };

const char* to_string(Termination reason);

/// Output of the two-sided tridiagonalization.
///
/// The families satisfy (left_n | right_m) = delta_nm, the right family
/// is unit-norm, and the recurrence reads
///   L |O_n) = a_n |O_n) + b_{n+1} |O_{n+1}) + c_n |O_{n-1}),
/// i.e. in the projected matrix (left_n| L |right_m) the b series sits on
/// the subdiagonal and the c series on the superdiagonal.  b[0] and c[0]
/// are zero by convention.
struct KrylovData {
  Vector a;      // size M, diagonal coefficients (purely imaginary here)
  RealVector b;  // size M, b[0] = 0
  RealVector c;  // size M, c[0] = 0
  Matrix right_basis;  // L-dim x M
  Matrix left_basis;   // L-dim x M
  int dim = 0;         // M, the numerically resolved Krylov dimension
  int space_dim = 0;   // Hilbert-space dimension D used by the inner product
  Termination termination_reason = Termination::breakdown;
  double max_biorth_error = 0.0;

  // Orthonormal basis of the same Krylov subspace (2-norm columns) and
  // the superoperator's orthogonal section in it.  Unlike the oblique
  // tridiagonal, the section provably inherits the generator's
  // dissipativity, so it is the safe object to exponentiate.
  Matrix ortho_basis;        // L-dim x M
  Matrix reduced_generator;  // M x M, section of the superoperator
};

struct BiLanczosOptions {
  double tol = 1e-8;  // relative to b_1 (breakdown) and to 1 (alignment)
  int max_dim = 0;    // 0 means the full space dimension
};

/// Two-sided Lanczos recursion for a (generally non-self-adjoint)
/// superoperator matrix, with full two-sided re-biorthogonalization at
/// every step.  x0 must be unit-norm under (.|.).  Terminates when the
/// next-neighbour coupling b falls below tol (Krylov space exhausted),
/// when the candidate next right vector aligns with the previous one
/// (overlap modulus > 1 - tol), or at max_dim.
KrylovData bi_lanczos(const Matrix& superop, const OperatorVector& x0, BiLanczosOptions opts = {});
KrylovData bi_lanczos(const Superoperator& superop, const OperatorVector& x0,
                      BiLanczosOptions opts = {});

/// M x M matrix with diagonal a, subdiagonal b_1..b_{M-1} and
/// superdiagonal c_1..c_{M-1}; equals the projection (left_n| L |right_m).
Matrix tridiagonal_matrix(const KrylovData& k);

}  // namespace opk
