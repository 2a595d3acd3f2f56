#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "opk/operator_space.hpp"
#include "opk/string_algebra.hpp"
#include "opk/syk.hpp"

using namespace opk;

TEST_CASE("coupling variance formula") {
  // J^2 (q-1)! / N^{q-1}
  DisorderSpec spec{1.0, 4, 8, 0, 1};
  CHECK(spec.coupling_variance() == doctest::Approx(6.0 / 512.0).epsilon(1e-15));
  CHECK(spec.coupling_variance() == doctest::Approx(0.01171875).epsilon(1e-15));

  DisorderSpec q2{1.0, 2, 2, 0, 1};
  CHECK(q2.coupling_variance() == doctest::Approx(0.5).epsilon(1e-15));

  DisorderSpec scaled{2.0, 4, 8, 0, 1};
  CHECK(scaled.coupling_variance() == doctest::Approx(4.0 * 6.0 / 512.0).epsilon(1e-15));
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS((DisorderSpec{1.0, 3, 8, 0, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((DisorderSpec{0.0, 4, 8, 0, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((DisorderSpec{1.0, 4, 8, 0, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((DisorderSpec{1.0, 4, 2, 0, 1}.validate()), std::invalid_argument);
}

TEST_CASE("tuple enumeration is complete and lexicographic") {
  const auto tuples = CouplingTensor::ascending_tuples(8, 4);
  REQUIRE(tuples.size() == 70);  // C(8,4)
  CHECK(tuples.front() == std::vector<int>{0, 1, 2, 3});
  CHECK(tuples[1] == std::vector<int>{0, 1, 2, 4});
  CHECK(tuples.back() == std::vector<int>{4, 5, 6, 7});
}

TEST_CASE("sampling is deterministic per (seed, index) and index-validated") {
  DisorderSpec spec{1.0, 4, 8, 123456, 4};
  const CouplingTensor a = sample_couplings(spec, 2);
  const CouplingTensor b = sample_couplings(spec, 2);
  CHECK((a.values() - b.values()).cwiseAbs().maxCoeff() == 0.0);

  const CouplingTensor c = sample_couplings(spec, 3);
  CHECK((a.values() - c.values()).cwiseAbs().maxCoeff() > 0.0);

  CHECK_THROWS_AS(sample_couplings(spec, 4), std::invalid_argument);
  CHECK_THROWS_AS(sample_couplings(spec, -1), std::invalid_argument);
}

TEST_CASE("sample mean of one coupling over many realizations is zero within 5 sigma") {
  const int n_draws = 100000;
  DisorderSpec spec{1.0, 4, 8, 2026, n_draws};
  const double sigma = std::sqrt(spec.coupling_variance());
  double mean = 0.0;
  for (int r = 0; r < n_draws; ++r) mean += sample_couplings(spec, r).values()(0);
  mean /= n_draws;
  CHECK(std::abs(mean) < 5.0 * sigma / std::sqrt(static_cast<double>(n_draws)));
}

TEST_CASE("empirical variance of a fixed coupling matches the ensemble variance") {
  const int n_draws = 400;
  DisorderSpec spec{1.0, 4, 8, 515151, n_draws};
  double ss = 0.0;
  for (int r = 0; r < n_draws; ++r) {
    const double j = sample_couplings(spec, r).values()(17);
    ss += j * j;
  }
  const double empirical = ss / n_draws;
  CHECK(empirical == doctest::Approx(spec.coupling_variance()).epsilon(0.30));
}

TEST_CASE("zero couplings give the zero Hamiltonian") {
  const MajoranaSet maj = MajoranaSet::jordan_wigner(4);
  const CouplingTensor zero(4, 4, RealVector::Zero(1));
  CHECK(build_hamiltonian(zero, maj).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("single coupling at q=4, N=4: H = -psi1 psi2 psi3 psi4, Hermitian") {
  const MajoranaSet maj = MajoranaSet::jordan_wigner(4);
  RealVector values = RealVector::Zero(1);
  values(0) = 1.0;
  const CouplingTensor c(4, 4, values);
  const Matrix h = build_hamiltonian(c, maj);

  // Symbolic oracle: the 4-string is self-adjoint, so i^2 J psi1..psi4 is
  // -1 times the ascending product.
  const StringOperator term = to_operator(StringTerm{{0, 1, 2, 3}, {1.0, 0.0}});
  CHECK(string_adjoint(term) == term);
  const Matrix expected =
      -(maj.mode(0) * maj.mode(1) * maj.mode(2) * maj.mode(3));
  CHECK((h - expected).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("sampled Hamiltonians are Hermitian and traceless") {
  const MajoranaSet maj = MajoranaSet::jordan_wigner(8);
  DisorderSpec spec{1.0, 4, 8, 7, 3};
  for (int r = 0; r < 3; ++r) {
    const Matrix h = build_hamiltonian(sample_couplings(spec, r), maj);
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(h.trace()) < 1e-10);
  }
}

TEST_CASE("q=2 Hamiltonians build and stay Hermitian") {
  const MajoranaSet maj = MajoranaSet::jordan_wigner(6);
  DisorderSpec spec{1.0, 2, 6, 11, 1};
  const Matrix h = build_hamiltonian(sample_couplings(spec, 0), maj);
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(h.trace()) < 1e-12);
}

TEST_CASE("Hamiltonian builder rejects mismatched N") {
  const MajoranaSet maj = MajoranaSet::jordan_wigner(6);
  DisorderSpec spec{1.0, 4, 8, 7, 1};
  CHECK_THROWS_AS(build_hamiltonian(sample_couplings(spec, 0), maj), std::invalid_argument);
}
