#include "opk/string_algebra.hpp"

#include <algorithm>
#include <utility>

namespace opk {

StringTerm canonical_product(std::span<const int> factors, Complex coeff) {
  std::vector<int> s(factors.begin(), factors.end());
  // Insertion sort; every transposition of distinct neighbours flips the sign.
  int sign = 1;
  for (std::size_t i = 1; i < s.size(); ++i) {
    std::size_t j = i;
    while (j > 0 && s[j - 1] > s[j]) {
      std::swap(s[j - 1], s[j]);
      sign = -sign;
      --j;
    }
  }
  // Equal indices are now adjacent; each pair contracts to 1/2.
  StringTerm out;
  double scale = 1.0;
  for (std::size_t i = 0; i < s.size();) {
    if (i + 1 < s.size() && s[i] == s[i + 1]) {
      scale *= 0.5;
      i += 2;
    } else {
      out.indices.push_back(s[i]);
      ++i;
    }
  }
  out.coeff = coeff * static_cast<double>(sign) * scale;
  return out;
}

StringTerm string_multiply(const StringTerm& lhs, const StringTerm& rhs) {
  std::vector<int> seq;
  seq.reserve(lhs.indices.size() + rhs.indices.size());
  seq.insert(seq.end(), lhs.indices.begin(), lhs.indices.end());
  seq.insert(seq.end(), rhs.indices.begin(), rhs.indices.end());
  return canonical_product(seq, lhs.coeff * rhs.coeff);
}

void add_term(StringOperator& op, const StringTerm& term) {
  if (term.coeff == Complex{0.0, 0.0}) return;
  op[term.indices] += term.coeff;
}

StringOperator to_operator(const StringTerm& term) {
  StringOperator op;
  add_term(op, term);
  return op;
}

StringOperator operator_sum(const StringOperator& a, const StringOperator& b) {
  StringOperator out = a;
  for (const auto& [idx, coeff] : b) out[idx] += coeff;
  return out;
}

StringOperator operator_scale(const StringOperator& a, Complex s) {
  StringOperator out;
  for (const auto& [idx, coeff] : a) out[idx] = coeff * s;
  return out;
}

StringOperator operator_multiply(const StringOperator& a, const StringOperator& b) {
  StringOperator out;
  for (const auto& [ia, ca] : a) {
    for (const auto& [ib, cb] : b) {
      add_term(out, string_multiply({ia, ca}, {ib, cb}));
    }
  }
  return out;
}

StringOperator commutator(const StringOperator& a, const StringOperator& b) {
  return operator_sum(operator_multiply(a, b),
                      operator_scale(operator_multiply(b, a), Complex{-1.0, 0.0}));
}

StringOperator anticommutator(const StringOperator& a, const StringOperator& b) {
  return operator_sum(operator_multiply(a, b), operator_multiply(b, a));
}

StringOperator string_adjoint(const StringOperator& a) {
  StringOperator out;
  for (const auto& [idx, coeff] : a) {
    const std::size_t s = idx.size();
    const double sign = (s * (s - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    out[idx] = sign * std::conj(coeff);
  }
  return out;
}

Complex normalized_trace(const StringOperator& a) {
  auto it = a.find({});
  return it == a.end() ? Complex{0.0, 0.0} : it->second;
}

void prune(StringOperator& a, double eps) {
  for (auto it = a.begin(); it != a.end();) {
    if (std::abs(it->second) <= eps) {
      it = a.erase(it);
    } else {
      ++it;
    }
  }
}

}  // namespace opk
