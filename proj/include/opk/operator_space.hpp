#pragma once

#include <string>
#include <vector>

#include "opk/common.hpp"
#include "opk/string_algebra.hpp"

namespace opk {

/// Memory guard for the dense representation: N = 14 means a 16384-dim
/// vectorized operator space, the largest that is comfortably dense.
inline constexpr int kMaxFermions = 14;

/// Concrete matrix representation of N Majorana modes on a 2^{N/2}-dim
/// Hilbert space, normalized so that {psi_i, psi_j} = delta_ij (every
/// mode squares to 1/2).  Immutable after construction.
class MajoranaSet {
 public:
  /// Jordan-Wigner construction: mode 2k   -> (1/sqrt2) Z^k ⊗ X ⊗ 1...
  ///                             mode 2k+1 -> (1/sqrt2) Z^k ⊗ Y ⊗ 1...
  static MajoranaSet jordan_wigner(int n_fermions);

  /// Adopts externally supplied matrices (e.g. a unitarily rotated
  /// representation) after validating the defining invariants.
  MajoranaSet(int n_fermions, std::vector<Matrix> modes);

  int n_fermions() const { return n_; }
  int hilbert_dim() const { return dim_; }
  /// Mode i, 0-based.
  const Matrix& mode(int i) const { return modes_.at(static_cast<std::size_t>(i)); }

 private:
  int n_;
  int dim_;
  std::vector<Matrix> modes_;
};

/// A vectorized operator: row-stacked length-D^2 coefficient vector.
/// The stacking convention is vec(A)[i*D + j] = A(i, j), chosen so that
/// vec(A X B) = (A ⊗ B^T) vec(X).
struct OperatorVector {
  Vector data;
  int dim = 0;
};

OperatorVector vectorize(const Matrix& a);
Matrix devectorize(const OperatorVector& v);

/// Infinite-temperature inner product (A|B) = Tr[A^dag B] / D.
Complex inner_product(const OperatorVector& a, const OperatorVector& b);

/// sqrt((v|v)); the norm induced by the inner product above.
double operator_norm(const OperatorVector& v);

/// Product of distinct Majorana modes, ascending 0-based indices; the
/// empty string is the identity.  normalization() makes it unit-norm.
struct MajoranaString {
  std::vector<int> indices;

  int length() const { return static_cast<int>(indices.size()); }
  /// 2^{s/2}, the scalar making the string unit-norm under (.|.).
  double normalization() const;
  /// Normalized dense matrix 2^{s/2} psi_{i1} ... psi_{is}.
  Matrix matrix(const MajoranaSet& majoranas) const;
  /// Same content as a symbolic operator (for oracle cross-checks).
  StringOperator symbolic() const;
  /// Human-readable 1-based label, e.g. "psi1*psi3*psi7".
  std::string label() const;
};

/// Phase i^{s(s-1)/2} that turns a normalized length-s string into a
/// Hermitian operator.
Complex hermitian_phase(int length);

enum class StringParity { odd, even, all };

/// All Majorana strings of the requested parity, normalized, ordered by
/// length then lexicographically by index list.  Pairwise orthonormal
/// under the infinite-temperature inner product.
class StringBasis {
 public:
  StringBasis(const MajoranaSet& majoranas, StringParity parity);

  const std::vector<MajoranaString>& elements() const { return elements_; }
  /// D^2 x K matrix whose column n is vec of the n-th normalized string.
  const Matrix& vectors() const { return vectors_; }
  StringParity parity() const { return parity_; }
  int size() const { return static_cast<int>(elements_.size()); }
  int hilbert_dim() const { return dim_; }
  std::string label() const;

 private:
  StringParity parity_;
  int dim_;
  std::vector<MajoranaString> elements_;
  Matrix vectors_;
};

}  // namespace opk
