#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "voa/model.hpp"
#include "voa/unitarity.hpp"

namespace voa {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// homogeneous with L_1 a = 0 (zero counts)
bool is_quasi_primary(const VOAModel& model, const GradedVector& a);

// Smooth function on the circle through its Fourier coefficients
// f(theta) = sum_n c_n e^{i n theta}, kept for |n| <= window. Coefficients
// for window < |n| <= 8 window are kept separately to estimate the tail.
class TestFunction {
 public:
  TestFunction() = default;
  explicit TestFunction(int window);

  static TestFunction single_mode(int n, int window);
  static TestFunction cosine(int k, int window);
  static TestFunction sine(int k, int window);
  // exp(-1/(1-x^2)) with x mapped affinely from the arc (theta1, theta2),
  // coefficients by composite Simpson quadrature on `samples` intervals
  static TestFunction bump(double theta1, double theta2, int window, int samples = 4096);

  int window() const { return window_; }
  cplx coefficient(long n) const;   // zero outside the window
  void set(long n, cplx v);
  const std::optional<std::pair<double, double>>& support() const { return support_; }
  void declare_support(double theta1, double theta2) { support_ = std::make_pair(theta1, theta2); }

  // estimate of sum_{|n| > window} (|n|+1)^{s} |c_n| plus the quadrature
  // error folded over the window, s = two_s / 2
  double tail_bound(int two_s) const;
  double quadrature_error() const { return quad_error_; }

  TestFunction conjugate() const;           // coefficients of the complex conjugate function
  TestFunction rotated(double t) const;     // f(theta - t)
  TestFunction reflected() const;           // f(-theta), the map z -> conj(z)
  TestFunction with_window(int window) const;  // truncate (or zero-extend) the kept window

 private:
  int window_ = 0;
  std::vector<cplx> coeffs_;                 // index n + window
  std::vector<std::pair<long, cplx>> tail_;  // window < |n| <= 8 window
  double quad_error_ = 0;
  std::optional<std::pair<double, double>> support_;
};

struct FourierNorm {
  double value = 0;
  double tail_bound = 0;
};

// ||f||_s = sum (|n|+1)^s |c_n| over the window, with s = two_s / 2
FourierNorm fourier_norm(const TestFunction& f, int two_s);

// Y(a,f) on V_0 + ... + V_L as one block matrix, basis ordered by global index.
CMatrix smeared_matrix(const VOAModel& model, const GradedVector& a, const TestFunction& f);

// Gram adjoint of an operator on the whole window: G^{-1} A^dagger G
CMatrix window_adjoint(const VOAModel& model, const CMatrix& a);

struct SmearedAdjointReport {
  double relative_residual = 0;   // ||Y(a,f)^+ - (-1)^{d_a} Y(theta a, conj f)|| / ||Y(a,f)^+||
};
SmearedAdjointReport smeared_adjoint_residual(const VOAModel& model, const PCTOperator& theta, const GradedVector& a,
                                              const TestFunction& f);

struct RotationReport {
  double relative_residual = 0;   // || e^{itL0} Y(a,f) e^{-itL0} - Y(a,f_t) || / ||Y(a,f)||
};
RotationReport rotation_covariance_residual(const VOAModel& model, const GradedVector& a, const TestFunction& f,
                                            double t);

struct GoodmanWallachReport {
  bool holds = true;                 // every (n, basis a) pair, exact squares
  bool operator_holds = true;        // PSD form of the same bound on each level
  long long checks = 0;
  std::optional<std::pair<long, std::string>> first_violation;   // (n, basis label)
  Scalar worst_ratio;   // max ||L_n a||^2 / ((|n|+1)^3 ||(L_0+1)a||^2) over basis a
  Scalar worst_ratio_nonzero_n;   // same with n = 0 left out
  Scalar bound;         // c/2
};
GoodmanWallachReport goodman_wallach_check(const VOAModel& model);

struct EnergyBoundWitness {
  std::string a_label;
  int two_s = 0;
  int k = 0;
  double M = 0;
  long long samples = 0;
  std::pair<long, int> max_ratio_location{0, 0};   // (n, level)
};

// samples: every basis vector plus `random_per_level` random unit vectors per level
EnergyBoundWitness energy_bound_witness(const VOAModel& model, const GradedVector& a, int two_s, int k,
                                        std::uint64_t seed, int random_per_level = 8);

struct WightmanReport {
  double residual = 0;         // || [Y(a,f), Y(b,g)] c ||
  double declared_bound = 0;   // from tail bounds and the locality order
  int locality_order = 0;
  int window = 0;
};

// Commutator of smeared fields through the commutator formula, so only the
// output level has to lie in the window. No support condition.
CVector smeared_commutator(const VOAModel& model, const GradedVector& a, const TestFunction& f,
                           const GradedVector& b, const TestFunction& g, const GradedVector& c,
                           int* locality_order = nullptr);

// Requires declared disjoint supports on f and g.
WightmanReport wightman_residual(const VOAModel& model, const GradedVector& a, const TestFunction& f,
                                 const GradedVector& b, const TestFunction& g, const GradedVector& c);

// norm of a window vector for the model scalar product
double window_norm(const VOAModel& model, const CVector& v);
CVector to_window(const VOAModel& model, const GradedVector& v);

// a(f) = sum_n c_{-n-d} a^n in the lowest-weight-d module, a^n = L_{-1}^n a / n!
struct AOfF {
  int d = 0;
  std::vector<cplx> coefficients;   // over a^0, a^1, ...
  double norm_squared(double norm_a_squared = 1) const;
};
AOfF a_of_f(int d, const TestFunction& f);
// (x|y) for the descendant inner product, antilinear in x
cplx descendant_inner(const AOfF& x, const AOfF& y, double norm_a_squared = 1);

// ||a^n||^2 / ||a||^2 = C(2d+n-1, n)
Scalar descendant_norm(int d, int n);

// exact coefficients of p_d: index i holds the coefficient of x^i
std::vector<Scalar> p_polynomial(int d);
Scalar evaluate(const std::vector<Scalar>& poly, const Scalar& x);

struct SymplecticReport {
  double fourier = 0;   // (||a||^2 / 4i) sum_n (f1_n f2_{-n} - f2_n f1_{-n}) p_d(n)
  double direct = 0;    // Im (a(f1) | a(f2))
  double relative_difference = 0;
};
SymplecticReport symplectic_form(int d, double norm_a_squared, const TestFunction& f1, const TestFunction& f2);

struct BWReport {
  int d = 0;
  int n_max = 0;
  double residual = 0;        // at n_max
  double residual_half = 0;   // at n_max / 2
  double improvement = 0;     // residual_half / residual
};

// || e^{K/2} a(f) - (-1)^d a(f o j) || / || a(f) || with K = i pi (L_1 - L_{-1})
// truncated to span{a^0 .. a^{n_max}}
double bisognano_wichmann_single(int d, const TestFunction& f, int n_max);
BWReport bisognano_wichmann_residual(int d, const TestFunction& f, int n_max);

}  // namespace voa
