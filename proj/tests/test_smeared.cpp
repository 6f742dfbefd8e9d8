#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "voa/models.hpp"
#include "voa/smeared.hpp"

using namespace voa;

namespace {

constexpr double kPi = std::numbers::pi;

GradedVector gen(const VOAModel& m, const std::string& name) {
  for (const auto& g : m.generators())
    if (g.name == name) return g.vector;
  throw std::runtime_error("no generator " + name);
}

double bump_value(double theta, double t1, double t2) {
  double x = (2 * theta - t1 - t2) / (t2 - t1);
  return std::abs(x) < 1 ? std::exp(-1 / (1 - x * x)) : 0;
}

}  // namespace

TEST(TestFunctions, TrigCoefficients) {
  TestFunction c = TestFunction::cosine(2, 8), s = TestFunction::sine(2, 8);
  EXPECT_DOUBLE_EQ(c.coefficient(2).real(), 0.5);
  EXPECT_DOUBLE_EQ(c.coefficient(-2).real(), 0.5);
  EXPECT_DOUBLE_EQ(std::abs(c.coefficient(1)), 0);
  // sin = (e^{i2t} - e^{-i2t}) / 2i
  EXPECT_DOUBLE_EQ(s.coefficient(2).imag(), -0.5);
  EXPECT_DOUBLE_EQ(s.coefficient(-2).imag(), 0.5);
  EXPECT_DOUBLE_EQ(std::abs(TestFunction::single_mode(3, 8).coefficient(3)), 1);
}

TEST(TestFunctions, Transformations) {
  TestFunction f = TestFunction::single_mode(3, 8);
  cplx r = f.rotated(0.4).coefficient(3);
  EXPECT_NEAR(std::arg(r), -1.2, 1e-14);
  EXPECT_DOUBLE_EQ(std::abs(f.reflected().coefficient(-3)), 1);
  EXPECT_DOUBLE_EQ(std::abs(f.conjugate().coefficient(-3)), 1);
  TestFunction s = TestFunction::sine(1, 4);
  // conj of a real function is itself
  EXPECT_NEAR(std::abs(s.conjugate().coefficient(1) - s.coefficient(1)), 0, 1e-16);
}

TEST(TestFunctions, BumpMeanAgainstIndependentQuadrature) {
  const double t1 = 0.2, t2 = 2.0;
  TestFunction f = TestFunction::bump(t1, t2, 64);
  // midpoint rule, different sampling from the library
  const int n = 200000;
  double sum = 0, first = 0;
  for (int i = 0; i < n; ++i) {
    double th = 2 * kPi * (i + 0.5) / n;
    sum += bump_value(th, t1, t2);
    first += bump_value(th, t1, t2) * std::cos(th);
  }
  EXPECT_NEAR(f.coefficient(0).real(), sum / n, 1e-9);
  EXPECT_NEAR(std::abs(f.coefficient(0).imag()), 0, 1e-15);
  // Re c_1 = (1/2pi) int f cos
  EXPECT_NEAR(f.coefficient(1).real(), first / n, 1e-9);
  ASSERT_TRUE(f.support());
  EXPECT_DOUBLE_EQ(f.support()->first, t1);
}

TEST(TestFunctions, TailBoundShrinksWithWindow) {
  double a = TestFunction::bump(0, kPi, 64).tail_bound(0);
  double b = TestFunction::bump(0, kPi, 128).tail_bound(0);
  EXPECT_TRUE(std::isfinite(a) && std::isfinite(b));
  EXPECT_LT(b, a);
}

TEST(TestFunctions, FourierNorm) {
  EXPECT_DOUBLE_EQ(fourier_norm(TestFunction::single_mode(-4, 8), 2).value, 5);
  EXPECT_DOUBLE_EQ(fourier_norm(TestFunction::cosine(1, 8), 0).value, 1);
  EXPECT_THROW(fourier_norm(TestFunction::cosine(1, 8), -1), PreconditionError);
}

TEST(Polynomials, BinomialValues) {
  for (int d = 1; d <= 4; ++d)
    for (int n = 0; n <= 20; ++n)
      EXPECT_EQ(evaluate(p_polynomial(d), Scalar(n)), Scalar(oracle::binom(d + n - 1, n - d))) << d << " " << n;
  std::vector<Scalar> p2 = p_polynomial(2);
  ASSERT_EQ(p2.size(), 4u);
  EXPECT_EQ(p2[1], Scalar(-1, 6));
  EXPECT_EQ(p2[3], Scalar(1, 6));
  // odd polynomial
  for (int d = 1; d <= 4; ++d) EXPECT_EQ(evaluate(p_polynomial(d), Scalar(-3)), -evaluate(p_polynomial(d), Scalar(3)));
}

TEST(Descendants, VermaLadder) {
  for (int d = 1; d <= 4; ++d)
    for (int n = 0; n <= 10; ++n) {
      Scalar ladder = Scalar(oracle::verma_ladder_norm(d, n)) / (Scalar(oracle::factorial(n)) * Scalar(oracle::factorial(n)));
      EXPECT_EQ(descendant_norm(d, n), ladder) << d << " " << n;
    }
}

TEST(Descendants, ModelGramAgrees) {
  VOAModel m = build_lattice_rank1(4, 7);   // e+ has weight 2
  for (const char* name : {"b", "e+"}) {
    GradedVector a = gen(m, name);
    int d = *a.weight();
    Scalar na = bilinear(*a.block(d), m.gram(d), *a.block(d));
    GradedVector v = a;
    for (int n = 1; d + n <= 7; ++n) {
      v = m.apply_virasoro(-1, v).scaled(Scalar(1, n));
      EXPECT_EQ(bilinear(*v.block(d + n), m.gram(d + n), *v.block(d + n)), descendant_norm(d, n) * na) << name << n;
    }
  }
}

TEST(Symplectic, TrigClosedForm) {
  // d = 1, f1 = cos, f2 = sin: (1/4i) * i = 1/4
  SymplecticReport s = symplectic_form(1, 1.0, TestFunction::cosine(1, 16), TestFunction::sine(1, 16));
  EXPECT_NEAR(s.fourier, 0.25, 1e-15);
  EXPECT_NEAR(s.direct, 0.25, 1e-15);
  // p_2(1) = 0
  SymplecticReport z = symplectic_form(2, 1.0, TestFunction::cosine(1, 16), TestFunction::sine(1, 16));
  EXPECT_NEAR(z.fourier, 0, 1e-15);
  // antisymmetric
  SymplecticReport t = symplectic_form(1, 1.0, TestFunction::sine(1, 16), TestFunction::cosine(1, 16));
  EXPECT_NEAR(t.fourier, -0.25, 1e-15);
}

TEST(Symplectic, BumpsAgree) {
  TestFunction f = TestFunction::bump(0.1, 2.0, 128), g = TestFunction::bump(1.0, 3.0, 128);
  for (int d = 1; d <= 3; ++d) EXPECT_LE(symplectic_form(d, 2.0, f, g).relative_difference, 1e-10);
  EXPECT_THROW(symplectic_form(1, 1.0, TestFunction::single_mode(1, 4), f), PreconditionError);
}

TEST(Smeared, AdjointAndRotation) {
  VOAModel m = build_heisenberg(5);
  PCTOperator th = pct_operator(m);
  TestFunction f = TestFunction::bump(0, kPi, 64);
  EXPECT_LE(smeared_adjoint_residual(m, th, gen(m, "a"), f).relative_residual, 1e-12);
  EXPECT_LE(rotation_covariance_residual(m, gen(m, "a"), f, 1.3).relative_residual, 1e-12);
  VOAModel v = build_virasoro(Scalar(1, 2), 6);
  EXPECT_LE(smeared_adjoint_residual(v, pct_operator(v), v.conformal_vector(), f).relative_residual, 1e-12);
  EXPECT_THROW(smeared_adjoint_residual(m, th, m.apply_virasoro(-1, gen(m, "a")), f), PreconditionError);
}

TEST(Smeared, CommutatorFormulaMatchesMatrices) {
  // single modes keep every intermediate level inside the truncation
  VOAModel m = build_affine_sl2(1, 5);
  GradedVector e = gen(m, "e"), f = gen(m, "f"), c = m.basis_vector(1, 1);
  for (int p : {-1, 0, 1})
    for (int q : {-1, 1}) {
      TestFunction tf = TestFunction::single_mode(p, 4), tg = TestFunction::single_mode(q, 4);
      CVector viaFormula = smeared_commutator(m, e, tf, f, tg, c);
      CMatrix ye = smeared_matrix(m, e, tf), yf = smeared_matrix(m, f, tg);
      CVector cv = to_window(m, c);
      CVector direct = ye * (yf * cv) - yf * (ye * cv);
      // only compare where the window can hold both orders
      if (1 + std::abs(p) + std::abs(q) <= 5) EXPECT_LE((viaFormula - direct).norm(), 1e-13) << p << q;
    }
}

TEST(Smeared, WightmanPreconditionsAndSmallResidual) {
  VOAModel m = build_heisenberg(6);
  GradedVector a = gen(m, "a");
  TestFunction f = TestFunction::bump(0.3, kPi - 0.3, 128), g = TestFunction::bump(kPi + 0.3, 2 * kPi - 0.3, 128);
  WightmanReport r = wightman_residual(m, a, f, a, g, m.basis_vector(2, 0));
  EXPECT_LE(r.residual, 1e-8);
  EXPECT_EQ(r.locality_order, 2);
  EXPECT_THROW(wightman_residual(m, a, f, a, TestFunction::bump(1.0, 4.0, 128), m.vacuum()), PreconditionError);
  EXPECT_THROW(wightman_residual(m, a, TestFunction::cosine(1, 8), a, g, m.vacuum()), PreconditionError);
  // overlapping supports: the commutator is genuinely nonzero
  CVector x = smeared_commutator(m, a, f, a, f.rotated(0.5), m.vacuum());
  EXPECT_GT(window_norm(m, x), 1e-6);
}

TEST(Smeared, GoodmanWallach) {
  EXPECT_TRUE(goodman_wallach_check(build_virasoro(Scalar(2), 6)).holds);
  GoodmanWallachReport r = goodman_wallach_check(build_virasoro(Scalar(1, 2), 6));
  EXPECT_FALSE(r.holds);
  // n = 0, a = nu: ||L_0 nu||^2 / ||(L_0+1) nu||^2 = 4/9 > 1/4
  ASSERT_TRUE(r.first_violation);
  EXPECT_LE(r.worst_ratio_nonzero_n, r.bound);
  EXPECT_THROW(goodman_wallach_check(build_virasoro(Scalar(-22, 5), 4)), PreconditionError);
}

TEST(Smeared, EnergyWitnessReproducible) {
  VOAModel m = build_heisenberg(5);
  EnergyBoundWitness a = energy_bound_witness(m, gen(m, "a"), 2, 1, 7);
  EnergyBoundWitness b = energy_bound_witness(m, gen(m, "a"), 2, 1, 7);
  EXPECT_EQ(a.M, b.M);
  EXPECT_TRUE(std::isfinite(a.M));
  EXPECT_GT(a.M, 0);
  EXPECT_GE(a.samples, m.total_dim());
}

TEST(ModuleVectors, TrivialModuleRejected) {
  EXPECT_THROW(a_of_f(0, TestFunction::cosine(1, 4)), PreconditionError);
  AOfF x = a_of_f(1, TestFunction::single_mode(-1, 4));
  // c_{-n-1} = 1 only for n = 0
  EXPECT_NEAR(x.norm_squared(), 1, 1e-15);
  EXPECT_NEAR(std::abs(descendant_inner(x, x) - cplx(1, 0)), 0, 1e-15);
}

TEST(Reflection, TruncationGrowsWithNmax) {
  // the truncated generator is unbounded, so the residual grows with n_max
  TestFunction f = TestFunction::bump(0, kPi, 64);
  double r10 = bisognano_wichmann_single(1, f, 10), r20 = bisognano_wichmann_single(1, f, 20);
  EXPECT_TRUE(std::isfinite(r10));
  EXPECT_GT(r20, r10);
}
