#pragma once

#include <map>
#include <span>
#include <vector>

#include "opk/common.hpp"

namespace opk {

/// One term coeff * psi_{i1} psi_{i2} ... psi_{is} with strictly ascending
/// 0-based mode indices.  An empty index list is the identity.
struct StringTerm {
  std::vector<int> indices;
  Complex coeff{1.0, 0.0};
};

/// Linear combination of canonical strings, keyed by the index list.
using StringOperator = std::map<std::vector<int>, Complex>;

/// Reduce an arbitrary product of Majorana factors to canonical form by
/// pure index/sign bookkeeping: neighbouring factors anticommute, and a
/// repeated factor contracts to 1/2.  No matrices are involved; this is
/// the independent oracle for all string-algebra checks.
StringTerm canonical_product(std::span<const int> factors, Complex coeff);

StringTerm string_multiply(const StringTerm& lhs, const StringTerm& rhs);

void add_term(StringOperator& op, const StringTerm& term);

StringOperator to_operator(const StringTerm& term);

StringOperator operator_sum(const StringOperator& a, const StringOperator& b);
StringOperator operator_scale(const StringOperator& a, Complex s);
StringOperator operator_multiply(const StringOperator& a, const StringOperator& b);
StringOperator commutator(const StringOperator& a, const StringOperator& b);
StringOperator anticommutator(const StringOperator& a, const StringOperator& b);

/// Adjoint: reverses every string, i.e. multiplies the coefficient by
/// (-1)^{s(s-1)/2} and conjugates it.
StringOperator string_adjoint(const StringOperator& a);

/// Tr[op] / Tr[1], which is the coefficient of the identity string.
Complex normalized_trace(const StringOperator& a);

/// Drop terms with |coeff| <= eps.
void prune(StringOperator& a, double eps = 0.0);

}  // namespace opk
