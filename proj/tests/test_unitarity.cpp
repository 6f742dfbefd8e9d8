#include <gtest/gtest.h>

#include "voa/models.hpp"
#include "voa/unitarity.hpp"

using namespace voa;

namespace {

GradedVector gen(const VOAModel& m, const std::string& name) {
  for (const auto& g : m.generators())
    if (g.name == name) return g.vector;
  throw std::runtime_error("no generator " + name);
}

std::vector<VOAModel> families() {
  std::vector<VOAModel> v;
  v.push_back(build_virasoro(Scalar(1, 2), 5));
  v.push_back(build_heisenberg(5));
  v.push_back(build_affine_sl2(1, 4));
  v.push_back(build_lattice_rank1(4, 5));
  return v;
}

}  // namespace

TEST(InvariantForm, HeisenbergSignAndTheta) {
  // weight one: (a, a) = (-1)^1 times the a_(1) a coefficient
  VOAModel m = build_heisenberg(4);
  BilinearForm f = invariant_form(m);
  GradedVector a = gen(m, "a");
  EXPECT_EQ(f(a, a), Scalar(-1));
  EXPECT_EQ(f(m.vacuum(), m.vacuum()), Scalar(1));
  PCTOperator th = pct_operator(m, f);
  EXPECT_EQ(th.apply(a), a.scaled(Scalar(-1)));
}

TEST(InvariantForm, FamiliesAreInvariant) {
  for (const auto& m : families()) {
    BilinearForm f = invariant_form(m);
    InvarianceReport r = check_invariant_form(m, f);
    EXPECT_TRUE(r.symmetric && r.invariant && r.normalized) << m.name() << " " << r.first_failure;
  }
}

TEST(InvariantForm, MissingWhenL1ActsOnWeightOne) {
  // shifted Heisenberg conformal vector: L_1 a = -2 lambda Omega != 0
  VOAModel h = build_heisenberg(4);
  ModelData d = h.data();
  ConformalShiftReport s = conformal_shift_check(h, gen(h, "a").scaled(Scalar(1, 3)));
  d.conformal_vector = s.shifted;
  VOAModel shifted(std::move(d));
  EXPECT_THROW(invariant_form(shifted), PreconditionError);
}

TEST(PCT, AllPropertiesOnFamilies) {
  for (const auto& m : families()) {
    PCTOperator th = pct_operator(m);
    EXPECT_TRUE(th.ok()) << m.name() << " " << th.first_failure;
    EXPECT_GT(th.automorphism_checks, 0);
    AdjointReport ar = check_adjoint_modes(m, th);
    EXPECT_TRUE(ar.matches) << m.name() << " " << ar.first_failure;
  }
}

TEST(PCT, AffineThetaSwapsRootVectorsUpToSign) {
  VOAModel m = build_affine_sl2(1, 3);
  PCTOperator th = pct_operator(m);
  GradedVector te = th.apply(gen(m, "e"));
  // theta e is proportional to f, with theta^2 = 1
  const Vec& c = *te.block(1);
  EXPECT_TRUE(c[0].is_zero());
  EXPECT_TRUE(c[1].is_zero());
  EXPECT_FALSE(c[2].is_zero());
  EXPECT_EQ(th.apply(te), gen(m, "e"));
}

TEST(Positivity, ShapovalovLevelTwo) {
  // ||L_{-2} Omega||^2 = c/2
  for (auto c : {Scalar(1, 2), Scalar(-22, 5), Scalar(3)}) {
    VOAModel m = build_virasoro(c, 4);
    ASSERT_EQ(m.dim(2), 1);
    const Vec& nu = *m.conformal_vector().block(2);
    EXPECT_EQ(bilinear(nu, m.gram(2), nu), c / Scalar(2));
    PositivityReport p = gram_positivity(m, 2);
    EXPECT_EQ(p.positive, c.sign() > 0) << c;
  }
}

TEST(Positivity, ShapovalovLevelFourDeterminant) {
  // Gram of {L_{-4}, L_{-2}^2} Omega is [[5c, 3c], [3c, c(8+c)/2]]
  for (auto c : {Scalar(1, 2), Scalar(7, 10), Scalar(2), Scalar(5)}) {
    VOAModel m = build_virasoro(c, 4);
    ASSERT_EQ(m.dim(4), 2);
    Scalar det = determinant(m.gram(4));
    Scalar ref = c * c * (Scalar(5) * c + Scalar(22)) / Scalar(2);
    EXPECT_EQ(det.sign(), ref.sign());
    EXPECT_TRUE(gram_positivity(m, 4).positive);
  }
}

TEST(Positivity, LeeYangFailsByLevelFour) {
  VOAModel m = build_virasoro(Scalar(-22, 5), 6);
  bool some_fail = false;
  for (int l = 0; l <= 4; ++l) some_fail = some_fail || !gram_positivity(m, l).positive;
  EXPECT_TRUE(some_fail);
  PositivityReport p = gram_positivity(m, 2);
  ASSERT_TRUE(p.first_failure);
  EXPECT_EQ(*p.first_failure, 1u);
}

TEST(Hermitian, ConformalVectorAndPrecondition) {
  VOAModel m = build_virasoro(Scalar(7, 10), 5);
  EXPECT_TRUE(hermitian_quasiprimary_check(m, m.conformal_vector()));
  VOAModel h = build_heisenberg(4);
  // a_{-2}|0> = L_{-1} a is not quasi-primary
  EXPECT_THROW(hermitian_quasiprimary_check(h, h.apply_virasoro(-1, gen(h, "a"))), PreconditionError);
}

TEST(Automorphisms, ExponentialOfNilpotentZeroMode) {
  VOAModel m = build_affine_sl2(1, 4);
  LevelwiseMap g = zero_mode_exponential(m, gen(m, "e"), Scalar(1));
  AutomorphismReport r = unitary_automorphism_check(m, g);
  EXPECT_TRUE(r.invertible && r.automorphism);
  EXPECT_TRUE(r.fixes_conformal && r.commutes_with_virasoro);
  EXPECT_TRUE(r.conditions_agree);
  EXPECT_FALSE(r.unitary);
  EXPECT_THROW(zero_mode_exponential(m, gen(m, "h"), Scalar(1)), PreconditionError);
}

TEST(Automorphisms, HeisenbergFlipAndScaling) {
  VOAModel m = build_heisenberg(5);
  LevelwiseMap flip = automorphism_from_generators(m, {gen(m, "a").scaled(Scalar(-1))});
  AutomorphismReport r = unitary_automorphism_check(m, flip);
  EXPECT_TRUE(r.automorphism && r.unitary && r.preserves_form && r.conditions_agree);
  EXPECT_EQ(compose(flip, flip).apply(gen(m, "a")), gen(m, "a"));
  LevelwiseMap twice = automorphism_from_generators(m, {gen(m, "a").scaled(Scalar(2))});
  EXPECT_FALSE(unitary_automorphism_check(m, twice).automorphism);
}

TEST(Automorphisms, LatticeFlip) {
  VOAModel m = build_lattice_rank1(2, 4);
  LevelwiseMap flip = automorphism_from_generators(
      m, {gen(m, "b").scaled(Scalar(-1)), gen(m, "e-"), gen(m, "e+")});
  AutomorphismReport r = unitary_automorphism_check(m, flip);
  EXPECT_TRUE(r.automorphism && r.unitary) << r.first_failure;
}
