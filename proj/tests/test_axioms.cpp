#include <gtest/gtest.h>

#include "voa/axioms.hpp"
#include "voa/models.hpp"

using namespace voa;

namespace {

GradedVector gen(const VOAModel& m, const std::string& name) {
  for (const auto& g : m.generators())
    if (g.name == name) return g.vector;
  throw std::runtime_error("no generator " + name);
}

// 1 + largest j with a_(j) b != 0, straight from products
int order_from_products(const VOAModel& m, const GradedVector& a, const GradedVector& b) {
  int da = *a.weight(), db = *b.weight(), top = -1;
  for (int j = 0; j <= da + db - 1; ++j)
    if (!m.product(a, j, b).is_zero()) top = j;
  return top + 1;
}

}  // namespace

TEST(Borcherds, SweepsVanish) {
  for (const VOAModel& m : {build_heisenberg(5), build_affine_sl2(1, 4), build_lattice_rank1(4, 4),
                            build_virasoro(Scalar(7, 10), 5)}) {
    BorcherdsSweepReport r = borcherds_sweep(m);
    EXPECT_TRUE(r.all_zero) << m.name() << " " << r.first_failure;
    EXPECT_GT(r.instances, 0);
  }
}

TEST(Borcherds, BrokenModelDetected) {
  VOAModel good = build_heisenberg(4);
  ModelData d = good.data();
  // double a_(1) on a_{-1}|0>, i.e. break the bracket normalization once
  SparseMatrix& blk = d.modes[1][1][0];
  ASSERT_FALSE(blk.is_zero());
  blk = blk.scaled(Scalar(2));
  VOAModel bad(std::move(d));
  BorcherdsSweepReport r = borcherds_sweep(bad);
  EXPECT_FALSE(r.all_zero);
  EXPECT_FALSE(r.first_failure.empty());
}

TEST(Borcherds, ResidualAtOneInstance) {
  VOAModel m = build_affine_sl2(1, 4);
  GradedVector e = gen(m, "e"), f = gen(m, "f"), h = gen(m, "h");
  for (long mm = -1; mm <= 1; ++mm)
    for (long n = -1; n <= 1; ++n) EXPECT_TRUE(borcherds_residual(m, e, f, h, mm, n, 0).is_zero());
}

TEST(Locality, OrdersMatchProducts) {
  VOAModel h = build_heisenberg(6);
  EXPECT_EQ(locality_order(h, gen(h, "a"), gen(h, "a"), 8).order, 2);
  VOAModel v = build_virasoro(Scalar(1, 2), 6);
  EXPECT_EQ(locality_order(v, gen(v, "L"), gen(v, "L"), 8).order, 4);
  VOAModel s = build_affine_sl2(1, 4);
  for (const char* x : {"e", "h", "f"})
    for (const char* y : {"e", "h", "f"}) {
      GradedVector a = gen(s, x), b = gen(s, y);
      EXPECT_EQ(locality_order(s, a, b, 6).order, order_from_products(s, a, b)) << x << y;
    }
}

TEST(Translation, HoldsForGenerators) {
  VOAModel s = build_affine_sl2(1, 4);
  for (const auto& g : s.generators()) EXPECT_TRUE(check_translation(s, g.vector).exact_zero) << g.name;
  VOAModel l = build_lattice_rank1(4, 5);
  for (const auto& g : l.generators()) EXPECT_TRUE(check_translation(l, g.vector).exact_zero) << g.name;
}

TEST(Conformal, VirasoroRelationsAndCentralCharge) {
  for (auto c : {Scalar(1, 2), Scalar(7, 10), Scalar(2)}) {
    VOAModel m = build_virasoro(c, 6);
    VirasoroReport r = check_virasoro(m, m.conformal_vector());
    EXPECT_TRUE(r.is_virasoro && r.l0_is_grading && r.lminus1_is_translation);
    EXPECT_EQ(r.c, c);
  }
  VOAModel s = build_affine_sl2(2, 3);
  EXPECT_EQ(check_virasoro(s, s.conformal_vector()).c, Scalar(3, 2));
}

TEST(Conformal, NonConformalVectorRejected) {
  VOAModel m = build_virasoro(Scalar(1, 2), 5);
  VirasoroReport r = check_virasoro(m, m.conformal_vector().scaled(Scalar(2)));
  EXPECT_FALSE(r.is_virasoro && r.l0_is_grading);
}

TEST(Conformal, HeisenbergShiftCentralCharge) {
  // nu + lambda T a has c = 1 - 12 lambda^2 for (a|a) = 1
  VOAModel m = build_heisenberg(6);
  for (auto lam : {Scalar(1, 3), Scalar(1, 2), Scalar(-2)}) {
    ConformalShiftReport r = conformal_shift_check(m, gen(m, "a").scaled(lam));
    EXPECT_TRUE(r.is_conformal);
    EXPECT_EQ(r.virasoro.c, Scalar(1) - Scalar(12) * lam * lam);
    EXPECT_EQ(r.recovered_a, gen(m, "a").scaled(lam));
  }
}

TEST(Conformal, ShiftPreconditionOnAffineCartan) {
  VOAModel m = build_affine_sl2(1, 4);
  EXPECT_THROW(conformal_shift_check(m, gen(m, "h")), PreconditionError);
  EXPECT_THROW(conformal_shift_check(m, m.conformal_vector()), PreconditionError);
}

TEST(QuasiPrimary, CountsAreFirstDifferences) {
  VOAModel m = build_heisenberg(6);
  EXPECT_EQ(int(quasi_primary_basis(m, 1).quasi_primary.size()), 1);
  for (int l = 2; l <= 6; ++l) {
    QuasiPrimaryDecomposition q = quasi_primary_basis(m, l);
    EXPECT_EQ(int(q.quasi_primary.size()), m.dim(l) - m.dim(l - 1)) << l;
    EXPECT_EQ(int(q.descendants.size()), m.dim(l - 1)) << l;
    EXPECT_TRUE(q.direct_sum && q.orthogonal);
  }
}
