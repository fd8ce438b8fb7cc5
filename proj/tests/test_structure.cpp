#include "oracles.hpp"

#include <baerdec/fixtures.hpp>

#include <gtest/gtest.h>

using namespace baerdec;

namespace {

const ToleranceProfile kTol{};

ComplexMatrix diag(std::initializer_list<cplx> d) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (cplx v : d) m(i, i) = v, ++i;
  return m;
}

}  // namespace

TEST(Wold, UnitaryHasNoShiftPart) {
  fixtures::Rng rng(4);
  for (int n = 1; n <= 10; ++n) {
    const auto w = wold(fixtures::haar_unitary(n, rng), kTol);
    EXPECT_TRUE(w.unitary_projection.is_identity());
    EXPECT_EQ(w.shift_rank, 0);
  }
}

TEST(Wold, RejectsNonIsometry) {
  try {
    (void)wold(diag({1.0, 0.5}), kTol);
    FAIL() << "expected PreconditionError";
  } catch (const PreconditionError& e) {
    EXPECT_NEAR(e.measured(), 0.75, 1e-15);
  }
  EXPECT_THROW(wold(fixtures::truncated_shift(3), kTol), PreconditionError);
}

TEST(TruncatedShift, Conventions) {
  EXPECT_TRUE(fixtures::truncated_shift(1).isZero(0.0));
  const ComplexMatrix s = fixtures::truncated_shift(3);
  // e0 -> e1 -> e2 -> 0
  EXPECT_EQ(s(1, 0), cplx(1.0));
  EXPECT_EQ(s(2, 1), cplx(1.0));
  EXPECT_EQ(oracle::lu_rank(s), 2);
  EXPECT_LE((power_range_projection(s, 2, kTol).matrix() - oracle::coordinate_projector(3, {2})).norm(), 1e-14);
}

TEST(Defect, ProjectionsOfShift) {
  // [S^m (1 − [S])] = span e_m for the shift e0 -> e1 -> ...
  const ComplexMatrix s = fixtures::truncated_shift(4);
  for (int m = 0; m < 4; ++m) {
    const Projection d = defect_projection(s, m, kTol);
    EXPECT_LE((d.matrix() - oracle::coordinate_projector(4, {m})).norm(), 1e-14) << "m=" << m;
    EXPECT_LE(defect_identity_residual(s, m, kTol), 1e-14);
  }
  EXPECT_TRUE(defect_projection(s, 4, kTol).is_zero());
  EXPECT_THROW(defect_projection(s, -1, kTol), InputError);
}

TEST(Defect, UnitaryHasNone) {
  fixtures::Rng rng(6);
  EXPECT_TRUE(defect_projection(fixtures::haar_unitary(5, rng), 0, kTol).is_zero());
}

TEST(HalmosWallen, MultiplicitiesMatchLuOracle) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    fixtures::Rng rng(s);
    const auto [mult, udim] = fixtures::random_shift_spec(12, rng);
    const auto inst = fixtures::gen_power_partial_isometry(mult, udim, s);
    // Oracle: undo the conjugation, drop the unitary block and read block
    // counts off the LU ranks of the powers of the nilpotent rest.
    const ComplexMatrix raw = inst.conjugator.adjoint() * inst.matrix * inst.conjugator;
    const Eigen::Index rest = raw.rows() - udim;
    const auto counts = rest > 0 ? oracle::nilpotent_block_counts(raw.bottomRightCorner(rest, rest))
                                 : std::map<int, int>{};
    std::map<int, int> expected;
    for (const auto& [k, m] : mult)
      if (m > 0) expected[k] = m;
    EXPECT_EQ(counts, expected) << "seed " << s;

    const auto hw = halmos_wallen(inst.matrix, kTol);
    ASSERT_TRUE(hw.power_partial_isometry) << "seed " << s;
    EXPECT_EQ(hw.profile.multiplicities, counts) << "seed " << s;
    EXPECT_EQ(hw.profile.unitary_projection.rank(), udim);
    EXPECT_LE(distance(hw.profile.unitary_projection, inst.profile.unitary_projection), 1e-8);
    EXPECT_EQ(hw.profile.accounted_dimension(), inst.matrix.rows());
    EXPECT_EQ(hw.profile.pure_isometry_rank, 0);
    EXPECT_EQ(hw.profile.pure_coisometry_rank, 0);
  }
}

TEST(HalmosWallen, DetectsFailingPower) {
  // e0 -> e1, e1 -> (e0 + e2)/√2, e2 -> 0 is a partial isometry; its
  // square has singular values 1 and 1/√2.
  ComplexMatrix x = ComplexMatrix::Zero(3, 3);
  x(1, 0) = 1.0;
  x(0, 1) = x(2, 1) = 1.0 / std::sqrt(2.0);
  ASSERT_LE((x * x.adjoint() * x - x).norm(), 1e-15);
  const auto hw = halmos_wallen(x, kTol);
  EXPECT_FALSE(hw.power_partial_isometry);
  EXPECT_EQ(hw.failing_power, 2);
  EXPECT_GT(hw.failing_residual, 0.1);
  const auto dd = halmos_wallen(diag({0.5, 1.0}), kTol);
  EXPECT_FALSE(dd.power_partial_isometry);
  EXPECT_EQ(dd.failing_power, 1);
}

TEST(HalmosWallen, GeneratorValidation) {
  EXPECT_THROW(fixtures::gen_power_partial_isometry({}, 0, 1), InputError);
  EXPECT_THROW(fixtures::gen_power_partial_isometry({{0, 1}}, 1, 1), InputError);
  const auto only_unitary = fixtures::gen_power_partial_isometry({}, 3, 1);
  EXPECT_TRUE(halmos_wallen(only_unitary.matrix, kTol).profile.unitary_projection.is_identity());
}

TEST(WoldSlocinski, DoublyCommutingUnitaries) {
  fixtures::Rng rng(12);
  for (int n = 1; n <= 6; ++n) {
    // commuting normal unitaries: same eigenbasis, unimodular eigenvalues
    const ComplexMatrix u = fixtures::haar_unitary(n, rng);
    ComplexMatrix a = ComplexMatrix::Zero(n, n), b = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) a(i, i) = fixtures::unit_phase(rng), b(i, i) = fixtures::unit_phase(rng);
    const auto w = wold_slocinski(u * a * u.adjoint(), u * b * u.adjoint(), kTol);
    EXPECT_TRUE(w.uu().is_identity());
    EXPECT_TRUE(w.us().is_zero());
    EXPECT_TRUE(w.su().is_zero());
    EXPECT_TRUE(w.ss().is_zero());
    EXPECT_LE(w.cells.partition_defect, 1e-10);
    EXPECT_LE(w.us_identity, 1e-10);
    EXPECT_LE(w.su_identity, 1e-10);
    EXPECT_LE(w.ss_identity, 1e-10);
  }
}

TEST(WoldSlocinski, Preconditions) {
  ComplexMatrix swap = ComplexMatrix::Zero(2, 2);
  swap(0, 1) = swap(1, 0) = 1.0;
  EXPECT_THROW(wold_slocinski(diag({1.0, 0.5}), identity(2), kTol), PreconditionError);
  EXPECT_THROW(wold_slocinski(diag({1.0, -1.0}), swap, kTol), PreconditionError);
}

TEST(WoldSlocinski, ExtendedDefectIdentityOnShifts) {
  const ComplexMatrix s = fixtures::truncated_shift(4);
  EXPECT_LE(extended_defect_check(s, kTol), 1e-14);
}
