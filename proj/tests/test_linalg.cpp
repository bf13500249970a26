#include <catch2/catch_amalgamated.hpp>

#include "qchi/linalg.hpp"
#include "qchi/states.hpp"
#include "test_helpers.hpp"

using namespace qchi;
using qchi::testing::random_matrix;

TEST_CASE("hermitian_eig on known matrices") {
  SECTION("identity") {
    const HermitianSpectrum s = hermitian_eig(CMatrix::Identity(2, 2));
    CHECK(s.eigenvalues(0) == Catch::Approx(1.0));
    CHECK(s.eigenvalues(1) == Catch::Approx(1.0));
  }
  SECTION("diagonal, ascending order") {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = 0.3;
    m(1, 1) = 0.7;
    const HermitianSpectrum s = hermitian_eig(m);
    CHECK(s.eigenvalues(0) == Catch::Approx(0.3));
    CHECK(s.eigenvalues(1) == Catch::Approx(0.7));
  }
  SECTION("pauli x has eigenvalues -1, 1") {
    // characteristic polynomial: t^2 - 1
    const HermitianSpectrum s = hermitian_eig(pauli_x());
    CHECK(s.eigenvalues(0) == Catch::Approx(-1.0).margin(1e-14));
    CHECK(s.eigenvalues(1) == Catch::Approx(1.0).margin(1e-14));
  }
  SECTION("rejects non-hermitian input") {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eig(m), NotHermitian);
  }
}

TEST_CASE("hermitian_eig reconstruction and orthonormality") {
  Rng rng(17);
  for (Index n : {2, 3, 5}) {
    const CMatrix m = testing::random_hermitian(rng, n);
    const HermitianSpectrum s = hermitian_eig(m);
    CHECK((s.eigenvectors * s.eigenvalues.asDiagonal() *
               s.eigenvectors.adjoint() -
           m)
              .norm() <= 1e-10 * m.norm());
    CHECK((s.eigenvectors.adjoint() * s.eigenvectors -
           CMatrix::Identity(n, n))
              .norm() <= 1e-10);
  }
}

TEST_CASE("sandwich matches the fixed vectorization convention") {
  Rng rng(3);
  const CMatrix a = random_matrix(rng, 3);
  const CMatrix b = random_matrix(rng, 3);
  CHECK((sandwich(a, b).mat - kron(b.transpose(), a)).norm() == 0.0);
}

TEST_CASE("sandwich examples") {
  SECTION("identity pair gives the identity superoperator") {
    const SuperOperator s = sandwich(CMatrix::Identity(3, 3),
                                     CMatrix::Identity(3, 3));
    CHECK((s.mat - CMatrix::Identity(9, 9)).norm() == 0.0);
  }
  SECTION("right identity gives left multiplication") {
    Rng rng(5);
    const CMatrix a = random_matrix(rng, 3);
    const CMatrix x = random_matrix(rng, 3);
    CHECK((sandwich(a, CMatrix::Identity(3, 3)).apply(x) - a * x).norm() <=
          1e-13 * x.norm() * a.norm());
  }
  SECTION("sqrt(sigma) sandwich against the direct triple product") {
    Rng rng(7);
    const DensityMatrix sigma = random_density(rng, 3);
    const CMatrix root = sigma.sqrt();
    const CMatrix x = random_matrix(rng, 3);
    CHECK((sandwich(root, root).apply(x) - root * x * root).norm() <= 1e-12);
  }
  SECTION("dimension mismatch") {
    CHECK_THROWS_AS(sandwich(CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)),
                    DimMismatch);
  }
}

TEST_CASE("vec factors matrix products: vec(AXB) = sandwich(A,B) vec(X)") {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 2 + trial % 3;
    const CMatrix a = random_matrix(rng, n);
    const CMatrix b = random_matrix(rng, n);
    const CMatrix x = random_matrix(rng, n);
    const CVector lhs = vec(CMatrix(a * x * b));
    const CVector rhs = sandwich(a, b).mat * vec(x);
    REQUIRE((lhs - rhs).norm() <= 1e-12 * lhs.norm());
  }
}

TEST_CASE("vec and devec invert each other") {
  Rng rng(13);
  const CMatrix x = random_matrix(rng, 4);
  CHECK((devec(vec(x), 4) - x).norm() == 0.0);
}

TEST_CASE("hs_inner") {
  CHECK(hs_inner(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)).real() ==
        Catch::Approx(2.0));
  // explicit 2x2 trace: tr(X Z) = 0
  CHECK(std::abs(hs_inner(pauli_x(), pauli_z())) <= 1e-15);
  Rng rng(19);
  const CMatrix a = random_matrix(rng, 3);
  const double self = hs_inner(a, a).real();
  CHECK(self >= 0.0);
  CHECK(std::abs(hs_inner(a, a).imag()) <= 1e-12 * self);
}

TEST_CASE("hs adjoint pairing and involution") {
  Rng rng(23);
  const Index n = 3;
  SuperOperator s{n, random_matrix(rng, n * n)};
  CHECK(testing::superop_distance(adjoint_hs(adjoint_hs(s)), s) == 0.0);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix a = random_matrix(rng, n);
    const CMatrix b = random_matrix(rng, n);
    const Complex lhs = hs_inner(a, s.apply(b));
    const Complex rhs = hs_inner(adjoint_hs(s).apply(a), b);
    REQUIRE(std::abs(lhs - rhs) <= 1e-10 * std::abs(lhs) + 1e-12);
  }
}

TEST_CASE("compose is associative") {
  Rng rng(29);
  const Index n = 2;
  const SuperOperator a{n, random_matrix(rng, n * n)};
  const SuperOperator b{n, random_matrix(rng, n * n)};
  const SuperOperator c{n, random_matrix(rng, n * n)};
  const SuperOperator lhs = compose(compose(a, b), c);
  const SuperOperator rhs = compose(a, compose(b, c));
  CHECK(testing::superop_distance(lhs, rhs) <= 1e-12 * lhs.mat.norm());
}

TEST_CASE("partial traces of a product factorize") {
  Rng rng(31);
  const CMatrix a = random_matrix(rng, 2);
  const CMatrix b = random_matrix(rng, 3);
  const CMatrix ab = kron(a, b);
  CHECK((partial_trace_second(ab, 2, 3) - b.trace() * a).norm() <= 1e-13);
  CHECK((partial_trace_first(ab, 2, 3) - a.trace() * b).norm() <= 1e-13);
}
