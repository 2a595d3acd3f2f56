#pragma once

#include <string>
#include <vector>

#include "opk/common.hpp"
#include "opk/evolution.hpp"
#include "opk/operator_space.hpp"

namespace opk {

/// Normalized overlap weights of an operator with an orthonormal basis.
struct PopulationDistribution {
  std::vector<double> probabilities;  // sum to 1, entries >= 0
  std::string basis_label;
};

struct SpreadMeasures {
  double entropy = 0.0;     // Shannon entropy of the distribution
  double complexity = 1.0;  // exp(entropy)
};

struct KrylovComplexityValue {
  double value = 0.0;
  double imag_residue = 0.0;  // |Im| of the renormalized ratio, diagnostic
};

/// How biorthogonal weights q_n p_n are turned into a distribution.
/// The modulus convention guarantees a valid distribution; the real-part
/// alternative is kept for diagnostics and coincides at mu = 0.
enum class KrylovWeight { modulus, real_part };

/// Expected position on the Krylov chain,
/// K = Re[ sum_n n q_n p_n / sum_n q_n p_n ].
KrylovComplexityValue krylov_complexity(const Vector& p, const Vector& q);

/// P(n) = |(S_n|X)|^2 / sum_m |(S_m|X)|^2 over an orthonormal basis.
/// Checks that the basis accounts for the operator's full weight on its
/// parity sector (completeness) before normalizing.
PopulationDistribution population_distribution(const OperatorVector& x, const StringBasis& basis,
                                               double completeness_tol = 1e-8);

/// Same, for an explicit matrix of orthonormal basis columns.
PopulationDistribution population_distribution(const OperatorVector& x, const Matrix& basis,
                                               const std::string& label,
                                               double completeness_tol = 1e-8);

/// Renormalized chain populations P(n) from biorthogonal weights.
PopulationDistribution krylov_population(const Vector& p, const Vector& q,
                                         KrylovWeight weight = KrylovWeight::modulus);

/// Shannon entropy F (0 ln 0 = 0) and spread complexity C = e^F.
SpreadMeasures spread_complexity(const PopulationDistribution& dist);

/// Per-time observables of one realization.
struct ComplexitySeries {
  std::vector<double> times;
  std::vector<double> krylov_complexity;
  std::vector<double> spread_krylov;   // C in the Krylov basis
  std::vector<double> spread_string;   // C in the string basis
  std::vector<double> norm_sq;         // (X_t|X_t)
  int krylov_dim = 0;
  double max_imag_residue = 0.0;
};

/// Chain-route observable series: Krylov complexity, spread complexity in
/// the Krylov and string bases, and the decaying norm.
ComplexitySeries complexity_series(const KrylovData& krylov, const ChainAmplitudes& amps,
                                   const StringBasis& string_basis,
                                   KrylovWeight weight = KrylovWeight::modulus);

}  // namespace opk
