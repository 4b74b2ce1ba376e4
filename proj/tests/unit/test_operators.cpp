#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "photonfilter/errors.hpp"
#include "photonfilter/operators.hpp"

using namespace photonfilter;

namespace {

void expect_matrix(const ComplexMatrix& m, const oracle::Dense& want, double tol = 0.0) {
  ASSERT_EQ(m.dim(), want.size());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      EXPECT_LE(std::abs(m(i, j) - want[i][j]), tol) << "entry (" << i << "," << j << ")";
}

}  // namespace

TEST(Ladder, AnnihilationDim3) {
  const double r2 = std::sqrt(2.0);
  expect_matrix(annihilation(3), {{0, 1, 0}, {0, 0, r2}, {0, 0, 0}});
}

TEST(Ladder, AnnihilationDim1IsZero) { expect_matrix(annihilation(1), {{0}}); }

TEST(Ladder, AnnihilationEntryFollowsSqrtLevel) {
  EXPECT_DOUBLE_EQ(annihilation(4)(2, 3).real(), std::sqrt(3.0));
}

TEST(Ladder, ZeroDimensionRejected) {
  EXPECT_THROW(annihilation(0), DimensionError);
  EXPECT_THROW(creation(0), DimensionError);
  EXPECT_THROW(number_op(0), DimensionError);
  EXPECT_THROW(ComplexMatrix(0), DimensionError);
}

TEST(Ladder, CreationDim3) {
  const double r2 = std::sqrt(2.0);
  expect_matrix(creation(3), {{0, 0, 0}, {1, 0, 0}, {0, r2, 0}});
}

TEST(Ladder, CreationRaisesVacuum) {
  const FockKet up = creation(2) * FockKet::basis(2, 0);
  EXPECT_EQ(up[0], Complex(0.0));
  EXPECT_EQ(up[1], Complex(1.0));
}

TEST(Ladder, CreationIsAdjointOfAnnihilation) {
  EXPECT_EQ(creation(5), annihilation(5).adjoint());
}

TEST(Ladder, NumberOperatorDiagonal) {
  expect_matrix(number_op(3), {{0, 0, 0}, {0, 1, 0}, {0, 0, 2}});
  expect_matrix(number_op(2), {{0, 0}, {0, 1}});
}

TEST(Ladder, NumberEqualsCreationTimesAnnihilation) {
  for (std::size_t d = 1; d <= 8; ++d) {
    const auto brute = oracle::multiply(oracle::dense(creation(d)), oracle::dense(annihilation(d)));
    expect_matrix(number_op(d), brute, 1e-15);
  }
}

TEST(Commutator, LadderPairShowsTruncationArtifact) {
  expect_matrix(commutator(annihilation(4), creation(4)),
                {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -3}}, 1e-12);
}

TEST(Commutator, IdentityCommutesWithEverything) {
  oracle::Gen gen(11);
  const ComplexMatrix x = gen.matrix(4);
  EXPECT_EQ(commutator(ComplexMatrix::identity(4), x).max_abs(), 0.0);
}

TEST(Commutator, NumberWithAnnihilationIsMinusAnnihilation) {
  const ComplexMatrix c = commutator(number_op(3), annihilation(3));
  expect_matrix(c, oracle::dense(Complex(-1.0) * annihilation(3)), 1e-15);
}

TEST(Commutator, MismatchedDimensions) {
  EXPECT_THROW(commutator(annihilation(2), annihilation(3)), ShapeError);
  EXPECT_THROW(annihilation(2) * annihilation(3), ShapeError);
}

TEST(Commutator, TruncationIdentityForAllDims) {
  for (std::size_t d = 2; d <= 8; ++d) {
    const ComplexMatrix c = commutator(annihilation(d), creation(d));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const double want = i != j ? 0.0 : (i + 1 < d ? 1.0 : -static_cast<double>(d - 1));
        EXPECT_NEAR(std::abs(c(i, j) - want), 0.0, 1e-12) << "D=" << d;
      }
    }
  }
}

TEST(Expectation, NumberStates) {
  EXPECT_EQ(expectation(FockKet::basis(3, 0), number_op(3)), Complex(0.0));
  EXPECT_EQ(expectation(FockKet::basis(3, 1), number_op(3)), Complex(1.0));
}

TEST(Expectation, EqualSuperpositionQuadrature) {
  const double h = 1.0 / std::sqrt(2.0);
  const FockKet plus{h, h};
  EXPECT_NEAR(expectation(plus, annihilation(2) + creation(2)).real(), 1.0, 1e-15);
}

TEST(Expectation, Errors) {
  EXPECT_THROW(expectation(FockKet::basis(2, 0), number_op(3)), ShapeError);
  EXPECT_THROW(expectation(FockKet{1.0, 1.0}, number_op(2)), NormalizationError);
}

TEST(Expectation, RealForHermitianRandomCases) {
  oracle::Gen gen(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = gen.index(1, 6);
    const auto amps = gen.unit_vector(d);
    FockKet psi(d);
    for (std::size_t i = 0; i < d; ++i) psi[i] = amps[i];
    const ComplexMatrix x = gen.hermitian(d);
    const Complex got = expectation(psi, x);
    EXPECT_LE(std::abs(got.imag()), 1e-12);
    EXPECT_NEAR(std::abs(got - oracle::sandwich(amps, oracle::dense(x))), 0.0, 1e-12);
  }
}

TEST(Matrix, AdjointIsInvolution) {
  oracle::Gen gen(5);
  for (std::size_t d = 1; d <= 6; ++d) {
    const ComplexMatrix m = gen.matrix(d);
    EXPECT_EQ(m.adjoint().adjoint(), m);
  }
}

TEST(Matrix, ProductAndTraceMatchBruteForce) {
  oracle::Gen gen(6);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = gen.index(1, 5);
    const ComplexMatrix a = gen.matrix(d);
    const ComplexMatrix b = gen.matrix(d);
    const auto ab = oracle::multiply(oracle::dense(a), oracle::dense(b));
    expect_matrix(a * b, ab, 1e-12);
    EXPECT_NEAR(std::abs(trace_product(a, b) - oracle::trace(ab)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs((a * b).trace() - oracle::trace(ab)), 0.0, 1e-12);
  }
}

TEST(Matrix, AddScaledMatchesTemporary) {
  oracle::Gen gen(7);
  const ComplexMatrix a = gen.matrix(3);
  const ComplexMatrix b = gen.matrix(3);
  const Complex s{0.3, -1.2};
  ComplexMatrix c = a;
  c.add_scaled(s, b);
  EXPECT_LE((c - (a + s * b)).max_abs(), 1e-15);
}

TEST(Matrix, UnitAndPredicates) {
  const ComplexMatrix e = ComplexMatrix::unit(3, 0, 2);
  EXPECT_EQ(e(0, 2), Complex(1.0));
  EXPECT_EQ(e.max_abs(), 1.0);
  EXPECT_TRUE(is_hermitian(number_op(4), 0.0));
  EXPECT_FALSE(is_hermitian(annihilation(4), 1e-10));
  EXPECT_TRUE(is_unitary(ComplexMatrix::identity(3), 1e-12));
  EXPECT_FALSE(is_unitary(annihilation(3), 1e-3));
}

TEST(Ket, ProjectorAndNorm) {
  const FockKet psi{0.6, Complex(0.0, 0.8)};
  EXPECT_NEAR(psi.norm_squared(), 1.0, 1e-15);
  const ComplexMatrix p = psi.projector();
  EXPECT_LE((p * p - p).max_abs(), 1e-15);
  EXPECT_NEAR(p.trace().real(), 1.0, 1e-15);
}
