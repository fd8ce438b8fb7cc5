#include "oracles.hpp"

#include <baerdec/fixtures.hpp>
#include <baerdec/functional_parser.hpp>

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

ComplexMatrix half_ones() { return ComplexMatrix::Constant(2, 2, 0.5); }

}  // namespace

TEST(Builtin, Shapes) {
  const auto normal = builtin_property("normal", 4);
  EXPECT_EQ(normal.arity, 1);
  EXPECT_EQ(normal.functionals.size(), 1u);
  EXPECT_FALSE(normal.uses_unit());
  const auto unitary = builtin_property("unitary", 2);
  EXPECT_EQ(unitary.functionals.size(), 2u);
  EXPECT_TRUE(unitary.uses_unit());
  const auto compatible = builtin_property("compatible", 3);
  EXPECT_EQ(compatible.arity, 2);
  EXPECT_EQ(compatible.functionals.size(), 9u);
  EXPECT_THROW(builtin_property("hyponormal", 2), LookupError);
  for (const auto& name : builtin_property_names()) EXPECT_NO_THROW(builtin_property(name, 3).validate());
}

TEST(Evaluate, NormalOnDiagonal) {
  const TupleInstance t({diag({1.0, cplx(0.0, 1.0)})});
  const auto v = evaluate(builtin_property("normal", 2), t, kTol);
  EXPECT_TRUE(v[0].isZero(0.0));
}

TEST(Evaluate, PartialIsometryOnDiagonal) {
  const TupleInstance t({diag({1.0, 0.5})});
  const auto v = evaluate(builtin_property("partial_isometry", 2), t, kTol);
  EXPECT_LE((v[0] - diag({0.0, 0.375})).norm(), 1e-15);
}

TEST(Evaluate, CompatibleF11OnTwoLines) {
  const TupleInstance t({diag({1.0, 0.0}), half_ones()});
  const auto v = evaluate(builtin_property("compatible", 2), t, kTol);
  ComplexMatrix expect(2, 2);
  expect << 0.0, 0.5, -0.5, 0.0;
  EXPECT_LE((v[0] - expect).norm(), 1e-12);
  EXPECT_NEAR(commutation_residual(diag({1.0, 0.0}), half_ones()), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Evaluate, UnitBindsToGivenProjection) {
  // 1 − x*x with unit := p on x = p: vanishes.
  const ComplexMatrix p = oracle::coordinate_projector(3, {0, 2});
  const TupleInstance t({p});
  const auto v = evaluate(builtin_property("isometry", 3), t, Projection::from_matrix(p), kTol);
  EXPECT_TRUE(v[0].isZero(1e-15));
  const auto w = evaluate(builtin_property("isometry", 3), t, kTol);
  EXPECT_LE((w[0] - oracle::coordinate_projector(3, {1})).norm(), 1e-15);
}

TEST(Evaluate, ArityMismatch) {
  const TupleInstance t({identity(2)});
  EXPECT_THROW(evaluate(builtin_property("commuting", 2), t, kTol), InputError);
}

TEST(Evaluate, FunctionalsMatchDirectDefinitions) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const TupleInstance t = fixtures::random_tuple(2, 4, s);
    const TupleInstance x({t[0]});
    const ComplexMatrix& a = t[0];
    const ComplexMatrix& b = t[1];
    EXPECT_LE((evaluate(builtin_property("normal", 4), x, kTol)[0] - (a * a.adjoint() - a.adjoint() * a)).norm(), 1e-12);
    EXPECT_LE((evaluate(builtin_property("coisometry", 4), x, kTol)[0] - (identity(4) - a * a.adjoint())).norm(), 1e-12);
    const auto dc = evaluate(builtin_property("doubly_commuting", 4), t, kTol);
    EXPECT_LE((dc[1] - (a * b.adjoint() - b.adjoint() * a)).norm(), 1e-12);
    const auto comp = evaluate(builtin_property("compatible", 4), t, kTol);
    // F_{2,3} is index (2-1)*4 + (3-1)
    const ComplexMatrix px = oracle::range_projector(oracle::power(a, 2));
    const ComplexMatrix py = oracle::range_projector(oracle::power(b, 3));
    EXPECT_LE((comp[6] - (px * py - py * px)).norm(), 1e-7) << "seed " << s;
  }
}

TEST(Evaluate, CompatibleVanishesOnDoublyCommutingPairs) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto dc = fixtures::random_doubly_commuting_pair(10, s);
    for (const auto& v : evaluate(builtin_property("compatible", dc.tuple.dim()), dc.tuple, kTol))
      EXPECT_LE(v.norm(), 1e-8) << "seed " << s;
  }
}

TEST(Equivariance, TrivialProjections) {
  const TupleInstance t = fixtures::random_tuple(2, 4, 9);
  for (const auto& name : builtin_property_names()) {
    const auto spec = builtin_property(name, 4);
    const TupleInstance& tt = spec.arity == 1 ? TupleInstance({t[0]}) : t;
    EXPECT_LE(equivariance_check(spec, tt, Projection::identity(4), kTol), 1e-12) << name;
    EXPECT_LE(equivariance_check(spec, tt, Projection::zero(4), kTol), 1e-12) << name;
  }
}

TEST(Equivariance, BlockProjectionsOfPlantedInstances) {
  for (const auto& name : builtin_property_names()) {
    for (std::uint64_t s = 0; s < 15; ++s) {
      const Eigen::Index dim = 4 + static_cast<Eigen::Index>(s % 5);
      const std::string planted = name == "isometry" || name == "coisometry" ? "unitary" : name;
      const auto inst = fixtures::random_planted(planted, dim, 100 + s);
      const auto spec = builtin_property(name, dim);
      const TupleInstance& t = inst.tuple;
      const TupleInstance single({t[0]});
      const double scale = functional_scale(spec, t);
      EXPECT_LE(equivariance_check(spec, spec.arity == 1 ? single : t, inst.expected_projection, kTol),
                kTol.res_rel * scale)
          << name << " seed " << s;
    }
  }
}

TEST(Equivariance, RejectsNonCommutingProjection) {
  const TupleInstance t({fixtures::truncated_shift(3)});
  const Projection p = Projection::from_matrix(oracle::coordinate_projector(3, {0}));
  EXPECT_THROW(equivariance_check(builtin_property("normal", 3), t, p, kTol), PreconditionError);
}

TEST(Combinators, LiftConjunctionFamily) {
  const auto normal = builtin_property("normal", 2);
  const auto lifted = lift(normal, {1}, 2, "[y]");
  EXPECT_EQ(lifted.arity, 2);
  EXPECT_EQ(lifted.functionals.front().polynomial.max_slot(), 1);
  const auto both = conjunction(builtin_property("commuting", 2), builtin_property("compatible", 2));
  EXPECT_EQ(both.functionals.size(), 5u);
  EXPECT_THROW(conjunction(normal, builtin_property("commuting", 2)), InputError);
  EXPECT_EQ(family(normal, 3).functionals.size(), 3u);
  EXPECT_THROW(family(builtin_property("commuting", 2), 2), InputError);
}

TEST(Polynomial, AdjointAndDegree) {
  using P = StarPolynomial;
  const P x = P::element(0), xs = P::element(0, true);
  const P f = x * xs - xs * x;
  EXPECT_EQ(f.degree(), 2);
  EXPECT_EQ((f.adjoint() - f).terms().size(), 0u);  // self-adjoint
  EXPECT_TRUE((x - x).is_zero());
  const P g = P::scalar(cplx(0.0, 2.0)) * x;
  EXPECT_EQ(g.adjoint().terms().front().coefficient, cplx(0.0, -2.0));
}

// ---------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------

TEST(Parser, NormalFunctional) {
  const std::vector<std::string> sym = {"x"};
  const auto spec = parse_property("x*x' - x'*x", sym);
  const ComplexMatrix j = fixtures::truncated_shift(2);
  const TupleInstance t({j});
  const auto a = evaluate(spec, t, kTol)[0];
  const auto b = evaluate(builtin_property("normal", 2), t, kTol)[0];
  EXPECT_LE((a - b).norm(), 1e-15);
}

TEST(Parser, UnitAndScalars) {
  const std::vector<std::string> sym = {"x"};
  const TupleInstance t({diag({2.0, 3.0})});
  const auto v = evaluate(parse_property("1 - x'*x", sym), t, kTol)[0];
  EXPECT_LE((v - diag({-3.0, -8.0})).norm(), 1e-15);
  const auto w = evaluate(parse_property("2j*x", sym), t, kTol)[0];
  EXPECT_LE((w - diag({cplx(0.0, 4.0), cplx(0.0, 6.0)})).norm(), 1e-15);
  const auto z = evaluate(parse_property("(x - 2)^2", sym), t, kTol)[0];
  EXPECT_LE((z - diag({0.0, 1.0})).norm(), 1e-15);
}

TEST(Parser, RangeTokens) {
  const std::vector<std::string> sym = {"x", "y"};
  const TupleInstance t({diag({1.0, 0.0}), half_ones()});
  const auto mine = evaluate(parse_property("[x^1]*[y^1] - [y^1]*[x^1]", sym), t, kTol)[0];
  const auto builtin = evaluate(builtin_property("compatible", 2), t, kTol)[0];
  EXPECT_LE((mine - builtin).norm(), 1e-12);
  const auto adj = evaluate(parse_property("[x'^2]", sym), TupleInstance({fixtures::truncated_shift(3), identity(3)}), kTol)[0];
  // (S*)^2 for the shift e0 -> e1 -> e2 maps e2 -> e0
  EXPECT_LE((adj - oracle::coordinate_projector(3, {0})).norm(), 1e-12);
}

TEST(Parser, SeveralFunctionals) {
  const auto spec = parse_property("x*y - y*x; x*y' - y'*x", {"x", "y"});
  EXPECT_EQ(spec.functionals.size(), 2u);
  EXPECT_EQ(spec.arity, 2);
}

TEST(Parser, Errors) {
  const std::vector<std::string> sym = {"x", "y"};
  EXPECT_THROW(parse_property("x*z", sym), InputError);
  EXPECT_THROW(parse_property("x*(y", sym), InputError);
  EXPECT_THROW(parse_property("x +", sym), InputError);
  EXPECT_THROW(parse_property("[x^0]", sym), InputError);
  EXPECT_THROW(parse_property("", sym), InputError);
  EXPECT_THROW(parse_property(";;", sym), InputError);
  EXPECT_THROW(parse_property("x", {}), InputError);
}

TEST(Parser, ToStringRoundTrip) {
  const std::vector<std::string> sym = {"x", "y"};
  for (const char* text : {"x*y - y*x", "1 - x'*x", "[x^2]*[y^3] - [y^3]*[x^2]", "2j*x*y' + 0.5*y"}) {
    const StarPolynomial p = parse_functional(text, sym);
    const StarPolynomial q = parse_functional(p.to_string(sym), sym);
    EXPECT_TRUE((p - q).is_zero()) << text << " -> " << p.to_string(sym);
  }
}
