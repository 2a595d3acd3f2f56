#pragma once

#include <vector>

#include "opk/bilanczos.hpp"
#include "opk/common.hpp"
#include "opk/lindbladian.hpp"
#include "opk/operator_space.hpp"

namespace opk {

struct EvolvedOperator {
  double time = 0.0;
  OperatorVector vector;
  double norm_sq = 0.0;  // (X_t | X_t)
};

struct PropagatorOptions {
  double condition_limit = 1e12;  // eigenbasis condition beyond which we fall back
};

/// Exponential propagator x(t) = exp(G t) x(0) for a fixed generator G.
///
/// A single spectral decomposition is reused for every requested time.
/// When the eigenvector matrix is too ill-conditioned (non-normal G close
/// to defective) the propagator falls back to scaling-and-squaring matrix
/// exponentials per time step; the fallback is reported, never silent.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(Matrix generator, PropagatorOptions opts = {});

  Vector apply(const Vector& x0, double t) const;
  /// Columns are exp(G t_k) x0 for each grid time.
  Matrix trajectory(const Vector& x0, const std::vector<double>& times) const;

  bool used_expm_fallback() const { return fallback_; }
  double condition_estimate() const { return condition_; }

 private:
  Matrix generator_;
  Vector eigenvalues_;
  Matrix eigenvectors_;
  Matrix eigenvectors_inv_;
  bool fallback_ = false;
  double condition_ = 0.0;
};

struct FullEvolution {
  std::vector<EvolvedOperator> states;
  bool used_expm_fallback = false;
  double condition_estimate = 0.0;
};

/// X_t = exp(i L t) X_0 on the time grid.
FullEvolution evolve_full(const Superoperator& superop, const OperatorVector& x0,
                          const std::vector<double>& times, PropagatorOptions opts = {});

/// Amplitudes of the operator on the Krylov chain.
///
/// The state is propagated inside the resolved Krylov subspace by
/// exponentiating the superoperator's orthogonal section (dissipative by
/// construction; the oblique tridiagonal can acquire spurious growth
/// modes at the truncation point).  p_n(t) = (left_n | X_t) and
/// q_n(t) = (X_t | right_n) are the biorthogonal expansion amplitudes of
/// the reduced state.  Columns are time points.
struct ChainAmplitudes {
  std::vector<double> times;
  Matrix p;        // M x T
  Matrix q;        // M x T
  Matrix reduced;  // M x T, coordinates in the orthonormal chain basis
  bool used_expm_fallback = false;
};

ChainAmplitudes evolve_krylov(const KrylovData& krylov, const std::vector<double>& times,
                              PropagatorOptions opts = {});

/// Operator vector reconstructed from chain amplitudes.
OperatorVector reconstruct_state(const KrylovData& krylov, const ChainAmplitudes& amps,
                                 int time_index);

}  // namespace opk
