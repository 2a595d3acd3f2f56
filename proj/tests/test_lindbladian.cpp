#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "opk/lindbladian.hpp"
#include "opk/operator_space.hpp"
#include "opk/string_algebra.hpp"
#include "opk/syk.hpp"

using namespace opk;

namespace {

Matrix random_hermitian(int d, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist;
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = Complex(dist(rng), dist(rng));
  return 0.5 * (m + m.adjoint()).eval();
}

Matrix apply(const Matrix& superop, const Matrix& x) {
  return devectorize(OperatorVector{superop * vectorize(x).data, static_cast<int>(x.rows())});
}

}  // namespace

TEST_CASE("commutator superoperator reproduces [H, X]") {
  const int d = 8;
  const Matrix h = random_hermitian(d, 1);
  const Matrix lu = build_unitary_part(h);
  std::mt19937 rng(2);
  std::normal_distribution<double> dist;
  for (int trial = 0; trial < 5; ++trial) {
    Matrix x(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) x(i, j) = Complex(dist(rng), dist(rng));
    const Matrix expected = h * x - x * h;
    CHECK((apply(lu, x) - expected).cwiseAbs().maxCoeff() < 1e-10);
  }
  // The identity and H itself commute with H.
  CHECK(apply(lu, Matrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(apply(lu, h).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("commutator superoperator agrees with the symbolic oracle") {
  // H = psi1 psi2 at N=2; X = psi1.
  const MajoranaSet maj = MajoranaSet::jordan_wigner(2);
  const Matrix h_raw = maj.mode(0) * maj.mode(1);
  const Matrix h = Complex(0, 1) * h_raw;  // i psi1 psi2 is Hermitian
  const Matrix lu = build_unitary_part(h);

  const StringOperator sym = commutator(
      operator_scale(to_operator(StringTerm{{0, 1}, {1.0, 0.0}}), kI),
      to_operator(StringTerm{{0}, {1.0, 0.0}}));
  Matrix expected = Matrix::Zero(2, 2);
  for (const auto& [idx, coeff] : sym) {
    Matrix term = Matrix::Identity(2, 2);
    for (int i : idx) term = term * maj.mode(i);
    expected += coeff * term;
  }
  CHECK((apply(lu, maj.mode(0)) - expected).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("commutator superoperator rejects non-Hermitian input") {
  Matrix h = Matrix::Zero(4, 4);
  h(0, 1) = 1.0;  // not Hermitian
  CHECK_THROWS_AS(build_unitary_part(h), std::invalid_argument);
}

TEST_CASE("dissipator basics: zero at mu=0, exact linearity in mu") {
  const MajoranaSet maj = MajoranaSet::jordan_wigner(6);
  CHECK(build_dissipative_part(maj, 0.0).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(build_dissipative_part(maj, -0.1), std::invalid_argument);

  const Matrix at_one = build_dissipative_part(maj, 1.0);
  const Matrix at_mu = build_dissipative_part(maj, 0.73);
  CHECK(((0.73 * at_one) - at_mu).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("every Majorana string is an exact dissipator eigenoperator") {
  const int n = 8;
  const MajoranaSet maj = MajoranaSet::jordan_wigner(n);
  const StringBasis all(maj, StringParity::all);
  const double mu = 0.41;
  const Matrix diss = build_dissipative_part(maj, mu);

  double worst = 0.0;
  for (int k = 0; k < all.size(); ++k) {
    const int s = all.elements()[static_cast<std::size_t>(k)].length();
    const double rate = s % 2 == 1 ? mu * s : mu * (n - s);
    const Vector v = all.vectors().col(k);
    worst = std::max(worst, (diss * v - Complex(0.0, rate) * v).cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("full generator: parts sum exactly, identity decays at rate mu N") {
  const int n = 6;
  const MajoranaSet maj = MajoranaSet::jordan_wigner(n);
  const Matrix h = random_hermitian(maj.hilbert_dim(), 5);
  const double mu = 0.2;
  const Superoperator s = build_full(h, maj, mu);

  CHECK((s.matrix - (s.unitary_part + s.dissipative_part)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(s.mu == mu);

  // L vec(1) = i mu N vec(1): the s=0 even-branch eigenvalue.
  const Vector id = vectorize(Matrix::Identity(maj.hilbert_dim(), maj.hilbert_dim())).data;
  CHECK((s.matrix * id - Complex(0.0, mu * n) * id).cwiseAbs().maxCoeff() < 1e-12);

  const Superoperator closed = build_full(h, maj, 0.0);
  CHECK(closed.dissipative_part.cwiseAbs().maxCoeff() == 0.0);
  CHECK((closed.matrix - closed.unitary_part).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("bosonic jump-sign branch leaves the identity stationary") {
  const MajoranaSet maj = MajoranaSet::jordan_wigner(6);
  const Matrix h = random_hermitian(maj.hilbert_dim(), 6);
  const Superoperator s = build_full(h, maj, 0.3, JumpSign::bosonic);
  const Vector id = vectorize(Matrix::Identity(maj.hilbert_dim(), maj.hilbert_dim())).data;
  CHECK((s.matrix * id).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("adjoint: self-adjoint at mu=0, pairing identity, involution") {
  const MajoranaSet maj = MajoranaSet::jordan_wigner(6);
  const int d = maj.hilbert_dim();
  const Matrix h = random_hermitian(d, 8);

  const Superoperator closed = build_full(h, maj, 0.0);
  CHECK((closed.adjoint() - closed.matrix).cwiseAbs().maxCoeff() < 1e-14);

  const Superoperator open = build_full(h, maj, 0.05);
  CHECK((open.adjoint().adjoint() - open.matrix).cwiseAbs().maxCoeff() == 0.0);

  // (L†A | B) = (A | L B) on random pairs.
  std::mt19937 rng(9);
  std::normal_distribution<double> dist;
  for (int trial = 0; trial < 5; ++trial) {
    Vector a(d * d), b(d * d);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      a(i) = Complex(dist(rng), dist(rng));
      b(i) = Complex(dist(rng), dist(rng));
    }
    const Complex lhs = (open.adjoint() * a).dot(b) / static_cast<double>(d);
    const Complex rhs = a.dot(open.matrix * b) / static_cast<double>(d);
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }

  // The commutator part is self-adjoint on the vectorized space.
  CHECK((open.unitary_part - open.unitary_part.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("i L preserves Hermiticity of operators") {
  const MajoranaSet maj = MajoranaSet::jordan_wigner(6);
  const int d = maj.hilbert_dim();
  const Matrix h = random_hermitian(d, 10);
  const Superoperator s = build_full(h, maj, 0.1);
  for (unsigned seed = 0; seed < 4; ++seed) {
    const Matrix x = random_hermitian(d, 100 + seed);
    const Matrix dx = devectorize(OperatorVector{kI * (s.matrix * vectorize(x).data), d});
    CHECK((dx - dx.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("generator spectrum is dissipative at mu > 0 (one N=8 realization)") {
  const MajoranaSet maj = MajoranaSet::jordan_wigner(8);
  DisorderSpec spec{1.0, 4, 8, 31337, 1};
  const Matrix h = build_hamiltonian(sample_couplings(spec, 0), maj);
  const Superoperator s = build_full(h, maj, 0.08);
  Eigen::ComplexEigenSolver<Matrix> es(kI * s.matrix, false);
  REQUIRE(es.info() == Eigen::Success);
  double max_real = -1e9;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    max_real = std::max(max_real, es.eigenvalues()(i).real());
  CHECK(max_real < 1e-10);
}
