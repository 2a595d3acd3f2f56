#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "opk/operator_space.hpp"
#include "opk/string_algebra.hpp"

using namespace opk;

TEST_CASE("single-mode contraction: psi psi = 1/2") {
  const StringTerm t = canonical_product(std::vector<int>{3, 3}, {1.0, 0.0});
  CHECK(t.indices.empty());
  CHECK(t.coeff == Complex{0.5, 0.0});
}

TEST_CASE("anticommutation is exact in the symbolic algebra") {
  const auto ab = canonical_product(std::vector<int>{0, 1}, {1.0, 0.0});
  const auto ba = canonical_product(std::vector<int>{1, 0}, {1.0, 0.0});
  CHECK(ab.indices == std::vector<int>{0, 1});
  CHECK(ba.indices == std::vector<int>{0, 1});
  CHECK(ab.coeff == -ba.coeff);
}

TEST_CASE("out-of-order products reduce with the right sign and weight") {
  // psi1 psi2 psi1 = -(1/2) psi2
  const auto t = canonical_product(std::vector<int>{0, 1, 0}, {1.0, 0.0});
  CHECK(t.indices == std::vector<int>{1});
  CHECK(t.coeff == Complex{-0.5, 0.0});
}

TEST_CASE("adjoint reverses strings with the (-1)^{s(s-1)/2} sign") {
  StringOperator op;
  add_term(op, StringTerm{{0, 1, 2, 3}, {2.0, 0.0}});  // s=4: sign +1
  add_term(op, StringTerm{{0, 1}, {0.0, 1.0}});        // s=2: sign -1
  const StringOperator adj = string_adjoint(op);
  CHECK(adj.at({0, 1, 2, 3}) == Complex{2.0, 0.0});
  CHECK(adj.at({0, 1}) == Complex{0.0, 1.0});  // -conj(i) = i
}

TEST_CASE("normalized trace picks the identity component") {
  StringOperator op;
  add_term(op, StringTerm{{}, {0.25, 0.0}});
  add_term(op, StringTerm{{2, 5}, {1.0, 0.0}});
  CHECK(normalized_trace(op) == Complex{0.25, 0.0});
  CHECK(normalized_trace(operator_multiply(to_operator(StringTerm{{1}, {1.0, 0.0}}),
                                           to_operator(StringTerm{{1}, {1.0, 0.0}}))) ==
        Complex{0.5, 0.0});
}

TEST_CASE("length and weight of a product follow the index overlap") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> a, b;
    for (int i = 0; i < 10; ++i) {
      if (rng() & 1) a.push_back(i);
      if (rng() & 1) b.push_back(i);
    }
    const StringTerm p = string_multiply({a, {1.0, 0.0}}, {b, {1.0, 0.0}});
    int overlap = 0;
    std::vector<int> sym_diff;
    for (int i = 0; i < 10; ++i) {
      const bool in_a = std::find(a.begin(), a.end(), i) != a.end();
      const bool in_b = std::find(b.begin(), b.end(), i) != b.end();
      if (in_a && in_b) ++overlap;
      if (in_a != in_b) sym_diff.push_back(i);
    }
    CHECK(p.indices == sym_diff);
    CHECK(std::abs(p.coeff) == doctest::Approx(std::pow(0.5, overlap)).epsilon(1e-14));
  }
}

// The module-level oracle contract: pure index/sign bookkeeping agrees
// with dense matrix multiplication on every pair of odd strings at N=8.
TEST_CASE("symbolic products match matrix products on all odd string pairs (N=8)") {
  const MajoranaSet maj = MajoranaSet::jordan_wigner(8);
  const StringBasis odd(maj, StringParity::odd);
  const int d = maj.hilbert_dim();

  double worst = 0.0;
  for (int ia = 0; ia < odd.size(); ++ia) {
    const Matrix ma = odd.elements()[static_cast<std::size_t>(ia)].matrix(maj);
    for (int ib = 0; ib < odd.size(); ++ib) {
      const auto& sa = odd.elements()[static_cast<std::size_t>(ia)];
      const auto& sb = odd.elements()[static_cast<std::size_t>(ib)];
      const StringTerm sym = string_multiply({sa.indices, Complex(sa.normalization(), 0.0)},
                                             {sb.indices, Complex(sb.normalization(), 0.0)});
      Matrix expected = Matrix::Identity(d, d);
      for (int idx : sym.indices) expected = expected * maj.mode(idx);
      expected *= sym.coeff;
      const Matrix got = ma * odd.elements()[static_cast<std::size_t>(ib)].matrix(maj);
      worst = std::max(worst, (expected - got).cwiseAbs().maxCoeff());
    }
  }
  CHECK(worst < 1e-10);
}
