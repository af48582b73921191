#include <gtest/gtest.h>

#include <algorithm>

#include "fermiloss/bogoliubov.hpp"
#include "fermiloss/fock.hpp"
#include "fermiloss/linalg.hpp"
#include "fermiloss/measurement.hpp"
#include "fermiloss/random.hpp"
#include "support.hpp"

using namespace fermiloss;

TEST(FockSpace, SingleModeFullSpace) {
  const auto s = FockSpace::build(1);
  EXPECT_EQ(s.dim(), 2);
  EXPECT_EQ(s.basis(), (std::vector<std::uint32_t>{0, 1}));
}

TEST(FockSpace, OddSectorOfFourModes) {
  const auto s = FockSpace::build(4, Sector::Odd);
  ASSERT_EQ(s.dim(), 8);
  for (auto b : s.basis()) EXPECT_EQ(__builtin_popcount(b) % 2, 1);
  EXPECT_TRUE(std::is_sorted(s.basis().begin(), s.basis().end()));
}

TEST(FockSpace, EvenSectorOfThreeModes) {
  const auto s = FockSpace::build(3, Sector::Even);
  EXPECT_EQ(s.basis(), (std::vector<std::uint32_t>{0, 3, 5, 6}));
}

TEST(FockSpace, SectorDimensionsAreHalf) {
  for (int n = 1; n <= 8; ++n) {
    EXPECT_EQ(FockSpace::build(n, Sector::Even).dim(), Eigen::Index{1} << (n - 1));
    EXPECT_EQ(FockSpace::build(n, Sector::Odd).dim(), Eigen::Index{1} << (n - 1));
  }
}

TEST(FockSpace, RejectsModeCountOutOfRange) {
  EXPECT_THROW(FockSpace::build(0), ValidationError);
  EXPECT_THROW(FockSpace::build(13), ValidationError);
  EXPECT_NO_THROW(FockSpace::build(12, Sector::Odd));
  EXPECT_THROW(FockSpace::build(5, Sector::Full, 4), ValidationError);
}

TEST(FockSpace, IndexOfRespectsSector) {
  const auto s = FockSpace::build(3, Sector::Even);
  EXPECT_EQ(s.index_of(5), 2);
  EXPECT_EQ(s.index_of(1), -1);
  EXPECT_EQ(s.index_of(8), -1);
}

TEST(FockSpace, SectorParsing) {
  EXPECT_EQ(parse_sector("odd"), Sector::Odd);
  EXPECT_EQ(to_string(Sector::Even), "even");
  EXPECT_THROW(parse_sector("mixed"), ValidationError);
}

TEST(Annihilator, SingleModeMatrix) {
  const auto c = annihilation_matrix(FockSpace::build(1), 0);
  CMatrix expected = CMatrix::Zero(2, 2);
  expected(0, 1) = 1.0;
  EXPECT_EQ(c.matrix, expected);
  EXPECT_EQ(c.kind, OperatorKind::Annihilation);
}

TEST(Annihilator, StringSignFromLowerModes) {
  // c_2 |11> = -|01>: mode 1 precedes and is occupied.
  const auto c = annihilation_matrix(FockSpace::build(2), 1).matrix;
  EXPECT_EQ(c(1, 3), Complex(-1.0));
  EXPECT_EQ(c(0, 2), Complex(1.0));
}

TEST(Annihilator, RejectsBadMode) {
  EXPECT_THROW(annihilation_matrix(FockSpace::build(2), 2), ValidationError);
  EXPECT_THROW(creation_matrix(FockSpace::build(2), -1), ValidationError);
}

TEST(Annihilator, CanonicalAnticommutation) {
  for (int n = 1; n <= 5; ++n) {
    const auto c = annihilators(n);
    const CMatrix id = CMatrix::Identity(c[0].rows(), c[0].cols());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        EXPECT_LE(support::max_abs(anticommutator(c[i], c[j])), 1e-12);
        const CMatrix expected = i == j ? id : CMatrix::Zero(id.rows(), id.cols());
        EXPECT_LE(support::max_abs(anticommutator(c[i], c[j].adjoint()) - expected), 1e-12);
      }
  }
}

TEST(Projectors, ResolveIdentityAndAreIdempotent) {
  const auto s = FockSpace::build(3, Sector::Odd);
  for (int k = 0; k < 3; ++k) {
    const CMatrix p = occupied_projector(s, k).matrix;
    const CMatrix q = empty_projector(s, k).matrix;
    EXPECT_LE(support::max_abs(p + q - CMatrix::Identity(4, 4)), 0.0);
    EXPECT_LE(support::max_abs(p * p - p), 0.0);
  }
}

TEST(Parity, SmallSpaces) {
  EXPECT_EQ(parity_operator(FockSpace::build(1)).diagonal(), CVector((CVector(2) << 1, -1).finished()));
  EXPECT_EQ(parity_operator(FockSpace::build(2)).diagonal(),
            CVector((CVector(4) << 1, -1, -1, 1).finished()));
}

TEST(Parity, SquaresToIdentityAndCommutesWithEvenMonomials) {
  const auto s = FockSpace::build(4);
  const CMatrix p = parity_operator(s);
  EXPECT_LE(support::max_abs(p * p - CMatrix::Identity(16, 16)), 0.0);
  const auto c = annihilators(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      EXPECT_LE(support::max_abs(commutator(p, c[i].adjoint() * c[j])), 0.0);
      EXPECT_LE(support::max_abs(commutator(p, c[i].adjoint() * c[j].adjoint())), 0.0);
    }
}

TEST(Hamiltonian, DiagonalSingleParticleEnergies) {
  const auto s = FockSpace::build(3);
  RVector eps(3);
  eps << 0.3, -1.1, 2.5;
  const CMatrix h = one_body_hamiltonian_matrix(s, eps.cast<Complex>().asDiagonal(), CMatrix::Zero(3, 3));
  for (std::uint32_t b = 0; b < 8; ++b) {
    double e = 0.0;
    for (int k = 0; k < 3; ++k) e += (b >> k & 1u) ? eps(k) : 0.0;
    EXPECT_NEAR(h(b, b).real(), e, 1e-14);
  }
  EXPECT_LE(support::max_abs(h - CMatrix(h.diagonal().asDiagonal())), 0.0);
}

TEST(Hamiltonian, PairingCouplesVacuumAndPairOnly) {
  CMatrix delta = CMatrix::Zero(2, 2);
  delta(0, 1) = 1.0;
  delta(1, 0) = -1.0;
  const CMatrix h = one_body_hamiltonian_matrix(FockSpace::build(2), CMatrix::Zero(2, 2), delta);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const bool pair = (i == 0 && j == 3) || (i == 3 && j == 0);
      if (!pair) EXPECT_EQ(h(i, j), Complex(0.0)) << i << "," << j;
    }
  // c_1^dag c_2^dag |00> = |11>.
  EXPECT_NEAR(std::abs(h(3, 0)), 1.0, 1e-15);
}

TEST(Hamiltonian, PropagatorIsUnitaryAndParityEven) {
  Rng rng = trial_rng(1, 0);
  const auto s = FockSpace::build(4);
  const CMatrix h = one_body_hamiltonian_matrix(s, random_hermitian(4, rng), random_antisymmetric(4, rng));
  EXPECT_LE(support::max_abs(h - h.adjoint()), 1e-12);
  EXPECT_LE(support::max_abs(commutator(h, parity_operator(s))), 1e-12);
  const CMatrix u = support::expm_minus_i(0.7 * h);
  EXPECT_LE(support::max_abs(u * u.adjoint() - CMatrix::Identity(16, 16)), 1e-12);
}

TEST(Hamiltonian, RejectsSymmetryViolations) {
  const auto s = FockSpace::build(2);
  CMatrix h = CMatrix::Zero(2, 2);
  h(0, 1) = 1.0;
  EXPECT_THROW(one_body_hamiltonian_matrix(s, h, CMatrix::Zero(2, 2)), ValidationError);
  CMatrix d = CMatrix::Identity(2, 2);
  EXPECT_THROW(one_body_hamiltonian_matrix(s, CMatrix::Zero(2, 2), d), ValidationError);
}

TEST(Sector, RestrictionIsMultiplicativeForEvenOperators) {
  Rng rng = trial_rng(2, 0);
  const auto full = FockSpace::build(4);
  const auto odd = FockSpace::build(4, Sector::Odd);
  const CMatrix a = one_body_hamiltonian_matrix(full, random_hermitian(4, rng), random_antisymmetric(4, rng));
  const CMatrix b = one_body_hamiltonian_matrix(full, random_hermitian(4, rng), random_antisymmetric(4, rng));
  EXPECT_LE(support::max_abs(odd.restrict(CMatrix(a * b)) - odd.restrict(a) * odd.restrict(b)), 1e-12);
  EXPECT_LE(support::max_abs(odd.restrict(odd.embed(odd.restrict(a))) - odd.restrict(a)), 0.0);
}

TEST(SignConvention, LossIsIndependentOfStringDirection) {
  // The same operator-defined state and basis give the same loss whichever
  // direction the Jordan-Wigner string runs.
  Rng rng = trial_rng(3, 0);
  const int n = 3;
  const CMatrix hh = random_hermitian(n, rng), hd = random_antisymmetric(n, rng);
  const CMatrix u0 = haar_unitary(n, rng);
  const auto w = from_majorana_rotation(haar_orthogonal(2 * n, rng));
  auto build = [&](const std::vector<CMatrix>& c) {
    // rho = 0.6 |phi1><phi1| + 0.4 |phi2><phi2| with operator-built phi's.
    const Eigen::Index d = c[0].rows();
    CVector vac = CVector::Zero(d);
    vac(0) = 1.0;
    CMatrix gen = CMatrix::Zero(d, d);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        gen += hh(i, j) * c[i].adjoint() * c[j];
        gen += 0.5 * (hd(i, j) * c[i].adjoint() * c[j].adjoint() +
                      std::conj(hd(i, j)) * c[j] * c[i]);
      }
    gen += 0.8 * c[0].adjoint() * c[0] * c[1].adjoint() * c[1];
    const CMatrix prop = support::expm_minus_i(gen);
    CMatrix creator = CMatrix::Zero(d, d);
    for (int j = 0; j < n; ++j) creator += u0(j, 0) * c[j].adjoint();
    const CVector phi1 = prop * vac;
    const CVector phi2 = prop * creator * vac;
    CMatrix rho = 0.6 * phi1 * phi1.adjoint() + 0.4 * phi2 * phi2.adjoint() / phi2.squaredNorm();
    return support::naive_loss(rho, support::transform_modes(c, w.U, w.V));
  };
  EXPECT_NEAR(build(annihilators(n)), build(support::reversed_annihilators(n)), 1e-10);
}

TEST(ModesForDimension, PowersOfTwo) {
  EXPECT_EQ(modes_for_dimension(16), 4);
  EXPECT_EQ(modes_for_dimension(12), -1);
}
