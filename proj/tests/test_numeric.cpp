#include "oracles.hpp"

#include <baerdec/fixtures.hpp>

#include <gtest/gtest.h>

using namespace baerdec;

namespace {

ComplexMatrix low_rank(Eigen::Index n, Eigen::Index r, std::uint64_t seed) {
  fixtures::Rng rng(seed);
  return fixtures::gaussian(n, r, rng) * fixtures::gaussian(r, n, rng);
}

}  // namespace

TEST(Tolerance, DefaultsAndValidation) {
  ToleranceProfile t;
  EXPECT_DOUBLE_EQ(t.rank_rel, 1e-10);
  EXPECT_DOUBLE_EQ(t.res_rel, 1e-8);
  EXPECT_NO_THROW(t.validate());
  t.rank_rel = 0.0;
  EXPECT_THROW(t.validate(), InputError);
  t.rank_rel = 1e-10;
  t.res_rel = 2.0;
  EXPECT_THROW(t.validate(), InputError);
  EXPECT_DOUBLE_EQ(ToleranceProfile{}.tightened(100.0).rank_rel, 1e-12);
}

TEST(Frame, RankMatchesLuOracle) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(s % 9);
    const Eigen::Index r = static_cast<Eigen::Index>(s % static_cast<std::uint64_t>(n + 1));
    const ComplexMatrix m = low_rank(n, r, s);
    const Frame f = rank_revealing_frame(m, ToleranceProfile{});
    EXPECT_EQ(f.size(), oracle::lu_rank(m)) << "seed " << s;
    EXPECT_LE(f.orthonormality_defect(), 1e-12);
    EXPECT_LE((f.projector() - oracle::range_projector(m)).norm(), 1e-8);
  }
}

TEST(Frame, ZeroMatrixHasEmptyRange) {
  const Frame f = rank_revealing_frame(ComplexMatrix::Zero(4, 4), ToleranceProfile{});
  EXPECT_TRUE(f.empty());
  EXPECT_EQ(f.dim(), 4);
  EXPECT_TRUE(f.projector().isZero(0.0));
}

TEST(Frame, RelativeCutoffIgnoresTinySingularValues) {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 1e-13;
  EXPECT_EQ(rank_revealing_frame(m, ToleranceProfile{}).size(), 1);
  m(1, 1) = 1e-8;
  EXPECT_EQ(rank_revealing_frame(m, ToleranceProfile{}).size(), 2);
}

TEST(Frame, ComplementIsOrthogonal) {
  const ComplexMatrix m = low_rank(6, 2, 7);
  const Frame f = rank_revealing_frame(m, ToleranceProfile{});
  const Frame c = complement(f);
  EXPECT_EQ(c.size(), 4);
  EXPECT_LE((f.basis().adjoint() * c.basis()).norm(), 1e-12);
  EXPECT_LE((f.projector() + c.projector() - identity(6)).norm(), 1e-12);
  EXPECT_EQ(complement(Frame::zero(3)).size(), 3);
  EXPECT_EQ(complement(Frame::full(3)).size(), 0);
}

TEST(Frame, IntersectionOfCoordinateSubspaces) {
  // span{e0,e1,e2} ∩ span{e1,e2,e3} = span{e1,e2}
  ComplexMatrix a = ComplexMatrix::Zero(5, 3), b = ComplexMatrix::Zero(5, 3);
  for (int i = 0; i < 3; ++i) a(i, i) = b(i + 1, i) = 1.0;
  const Frame i = subspace_intersection({Frame(a), Frame(b)}, ToleranceProfile{});
  EXPECT_LE((i.projector() - oracle::coordinate_projector(5, {1, 2})).norm(), 1e-12);
}

TEST(Frame, PreimageOfSubspace) {
  // a = shift e0 -> e1 -> e2 -> 0; preimage of span{e2} is span{e1, e2}
  const ComplexMatrix a = fixtures::truncated_shift(3);
  ComplexMatrix b = ComplexMatrix::Zero(3, 1);
  b(2, 0) = 1.0;
  const Frame p = preimage_subspace(a, Frame(b), ToleranceProfile{});
  EXPECT_LE((p.projector() - oracle::coordinate_projector(3, {1, 2})).norm(), 1e-12);
}

TEST(Frame, SameSubspaceIgnoresBasisChoice) {
  fixtures::Rng rng(3);
  const ComplexMatrix u = fixtures::haar_unitary(2, rng);
  ComplexMatrix a = ComplexMatrix::Zero(4, 2);
  a.topRows(2) = identity(2);
  ComplexMatrix b = ComplexMatrix::Zero(4, 2);
  b.topRows(2) = u;
  EXPECT_TRUE(same_subspace(Frame(a), Frame(b)));
  EXPECT_LE(subspace_distance(Frame(a), Frame(b)), 1e-12);
}

TEST(Numeric, RejectsNonFiniteAndNonSquare) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_FALSE(all_finite(m));
  EXPECT_THROW(require_finite(m), InputError);
  EXPECT_THROW(require_square(ComplexMatrix::Zero(2, 3)), InputError);
}

TEST(Numeric, SpectralNormOfDiagonal) {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = 2.0;
  m(1, 1) = cplx(0.0, -5.0);
  EXPECT_NEAR(spectral_norm(m), 5.0, 1e-12);
}
