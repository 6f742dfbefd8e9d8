#include <gtest/gtest.h>

#include "oracles.hpp"
#include "voa/models.hpp"
#include "voa/subalgebra.hpp"

using namespace voa;

namespace {

GradedVector gen(const VOAModel& m, const std::string& name) {
  for (const auto& g : m.generators())
    if (g.name == name) return g.vector;
  throw std::runtime_error("no generator " + name);
}

std::vector<long long> dims(const Subalgebra& w) {
  std::vector<long long> d;
  for (int x : w.level_dims()) d.push_back(x);
  return d;
}

}  // namespace

TEST(Closure, VacuumOnly) {
  VOAModel m = build_heisenberg(4);
  Subalgebra w = close_unitary_subalgebra(m, {});
  EXPECT_EQ(dims(w), (std::vector<long long>{1, 0, 0, 0, 0}));
  EXPECT_TRUE(verify_subalgebra(w).ok());
}

TEST(Closure, TensorFactorAndCoset) {
  VOAModel h = build_heisenberg(5);
  VOAModel t = tensor_product(h, h);
  Subalgebra w = close_unitary_subalgebra(t, {gen(t, "left.a")});
  EXPECT_EQ(dims(w), oracle::partitions(5));
  SubalgebraReport vr = verify_subalgebra(w);
  EXPECT_TRUE(vr.ok()) << vr.first_failure;

  Subalgebra wc = coset_subalgebra(w);
  EXPECT_EQ(dims(wc), oracle::partitions(5));
  EXPECT_TRUE(wc.contains(gen(t, "right.a")));
  EXPECT_FALSE(wc.contains(gen(t, "left.a")));
  CosetSplit cs = coset_split(w, wc);
  EXPECT_TRUE(cs.sum_exact && cs.central_charges_add && cs.spectra_nonnegative);
  EXPECT_EQ(cs.w.c_w, Scalar(1));
  EXPECT_EQ(cs.wc.c_w, Scalar(1));
}

TEST(Closure, VirasoroInsideAffine) {
  VOAModel m = build_affine_sl2(1, 5);
  Subalgebra w = close_unitary_subalgebra(m, {m.conformal_vector()});
  // c = 1 vacuum module: partitions without parts 1
  EXPECT_EQ(dims(w), oracle::partitions_min_part(5, 2));
  ProjectedConformal pc = projected_conformal_vector(w);
  EXPECT_EQ(pc.c_w, Scalar(1));
  EXPECT_EQ(pc.nu_w, m.conformal_vector());
  Subalgebra wc = coset_subalgebra(w);
  EXPECT_EQ(dims(wc), (std::vector<long long>{1, 0, 0, 0, 0, 0}));
  CosetSplit cs = coset_split(w, wc);
  EXPECT_TRUE(cs.sum_exact && cs.central_charges_add);
  EXPECT_EQ(cs.wc.c_w, Scalar(0));
}

TEST(Closure, CartanGeneratesHeisenberg) {
  VOAModel m = build_affine_sl2(1, 5);
  Subalgebra w = close_unitary_subalgebra(m, {gen(m, "h")});
  EXPECT_EQ(dims(w), oracle::partitions(5));
  EXPECT_EQ(projected_conformal_vector(w).c_w, Scalar(1));
  EXPECT_TRUE(verify_subalgebra(w).ok());
}

TEST(Closure, VirasoroMinimality) {
  for (auto c : {Scalar(1, 2), Scalar(1), Scalar(2)}) {
    VOAModel m = build_virasoro(c, 5);
    Subalgebra w = close_unitary_subalgebra(m, {m.conformal_vector().scaled(Scalar(3))});
    EXPECT_TRUE(w.is_full()) << c;
  }
}

TEST(Projection, IdempotentAndSelfAdjoint) {
  VOAModel m = build_affine_sl2(1, 4);
  Subalgebra w = close_unitary_subalgebra(m, {gen(m, "h")});
  GradedVector v = m.basis_vector(2, 3) + m.basis_vector(2, 1);
  GradedVector p = w.project(v);
  EXPECT_TRUE(w.contains(p));
  EXPECT_EQ(w.project(p), p);
  SubalgebraReport r = verify_subalgebra(w);
  EXPECT_TRUE(r.projection_idempotent && r.projection_selfadjoint && r.compresses_fields);
}

TEST(FixedPoints, HeisenbergFlipMatchesEvenPartCount) {
  VOAModel m = build_heisenberg(7);
  LevelwiseMap flip = automorphism_from_generators(m, {gen(m, "a").scaled(Scalar(-1))});
  Subalgebra w = fixed_point_subalgebra(m, {flip});
  for (int l = 0; l <= 7; ++l) EXPECT_EQ(w.level_dims()[l], oracle::even_part_partitions(l)) << l;
  EXPECT_TRUE(verify_subalgebra(w).ok());
}

TEST(FixedPoints, AffineInvariantsAreFirstDifferences) {
  VOAModel m = build_affine_sl2(1, 5);
  LevelwiseMap ee = zero_mode_exponential(m, gen(m, "e"), Scalar(1));
  LevelwiseMap ff = zero_mode_exponential(m, gen(m, "f"), Scalar(1));
  Subalgebra w = fixed_point_subalgebra(m, {ee, ff});
  auto p = oracle::partitions(5);
  for (int l = 0; l <= 5; ++l) EXPECT_EQ(w.level_dims()[l], p[l] - (l ? p[l - 1] : 0)) << l;
}

TEST(FixedPoints, NonAutomorphismRejected) {
  VOAModel m = build_heisenberg(4);
  LevelwiseMap twice = automorphism_from_generators(m, {gen(m, "a").scaled(Scalar(2))});
  EXPECT_THROW(fixed_point_subalgebra(m, {twice}), PreconditionError);
}

TEST(Coset, WindowLimitFlagged) {
  // weight-2 generator: a_(0) on level L lands on L+1, beyond the cutoff
  VOAModel m = build_virasoro(Scalar(1, 2), 4);
  Subalgebra w = close_unitary_subalgebra(m, {m.conformal_vector()});
  Subalgebra wc = coset_subalgebra(w);
  EXPECT_TRUE(wc.window_limited);
  EXPECT_FALSE(wc.window_note.empty());
}
