#pragma once

#include <cstdint>
#include <vector>

#include "opk/common.hpp"
#include "opk/operator_space.hpp"

namespace opk {

/// Ensemble description for the disordered couplings.  J sets the energy
/// unit (times are reported as J*t), q is the interaction order.
struct DisorderSpec {
  double coupling_scale = 1.0;  // J
  int interaction_order = 4;    // q
  int n_fermions = 8;           // N
  std::uint64_t seed = 0;
  int n_realizations = 1;

  void validate() const;
  /// Per-coupling variance J^2 (q-1)! / N^{q-1}.
  double coupling_variance() const;
};

/// One disorder realization: a real coupling for every strictly
/// ascending q-tuple of mode indices, in lexicographic tuple order.
class CouplingTensor {
 public:
  CouplingTensor(int n_fermions, int interaction_order, RealVector values);

  static std::vector<std::vector<int>> ascending_tuples(int n_fermions, int interaction_order);

  int n_fermions() const { return n_; }
  int interaction_order() const { return q_; }
  const std::vector<std::vector<int>>& tuples() const { return tuples_; }
  const RealVector& values() const { return values_; }

 private:
  int n_;
  int q_;
  std::vector<std::vector<int>> tuples_;
  RealVector values_;
};

/// Independent Gaussian draws with the ensemble variance; the draw for a
/// given (spec.seed, realization_index) is reproducible bit-for-bit and
/// distinct realization indices use independent substreams.
CouplingTensor sample_couplings(const DisorderSpec& spec, int realization_index);

/// H = i^{q/2} sum_{i1<...<iq} J_{i1..iq} psi_{i1}...psi_{iq}, symmetrized
/// so the returned matrix is exactly Hermitian in storage.
Matrix build_hamiltonian(const CouplingTensor& couplings, const MajoranaSet& majoranas);

}  // namespace opk
