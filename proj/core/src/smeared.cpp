#include "voa/smeared.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "voa/axioms.hpp"

namespace voa {

namespace {

constexpr double kPi = std::numbers::pi;

double bump_profile(double x) {
  if (x <= -1 || x >= 1) return 0;
  return std::exp(-1 / (1 - x * x));
}

// (1/2pi) int f(theta) e^{-i n theta} over the arc, composite Simpson,
// for n = n0 .. n1 (n >= 0)
std::vector<cplx> simpson_coefficients(double t1, double t2, int intervals, long n0, long n1) {
  if (intervals % 2) ++intervals;
  const double h = (t2 - t1) / intervals;
  std::vector<double> w(intervals + 1);
  for (int k = 0; k <= intervals; ++k) {
    double x = -1 + 2.0 * k / intervals;
    double weight = (k == 0 || k == intervals) ? 1 : (k % 2 ? 4 : 2);
    w[k] = weight * bump_profile(x) * h / 3 / (2 * kPi);
  }
  std::vector<cplx> out;
  for (long n = n0; n <= n1; ++n) {
    cplx z = std::polar(1.0, -double(n) * t1);
    const cplx step = std::polar(1.0, -double(n) * h);
    cplx acc = 0;
    for (int k = 0; k <= intervals; ++k) {
      // restart the rotation now and then to keep rounding drift small
      if (k % 1024 == 0) z = std::polar(1.0, -double(n) * (t1 + k * h));
      acc += w[k] * z;
      z *= step;
    }
    out.push_back(acc);
  }
  return out;
}

double real_binomial(double p, int j) {
  double r = 1;
  for (int i = 0; i < j; ++i) r *= (p - i) / (i + 1);
  return r;
}

double descendant_weight(int d, int n) {
  // C(2d+n-1, n)
  double r = 1;
  for (int i = 1; i <= n; ++i) r *= double(2 * d - 1 + i) / i;
  return r;
}

Eigen::MatrixXd to_eigen(const Matrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_double();
  return out;
}

Eigen::MatrixXd to_eigen(const SparseMatrix& m) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (const auto& [j, x] : m.row(i)) out(i, j) = x.to_double();
  return out;
}

double arc_start(double t) {
  double r = std::fmod(t, 2 * kPi);
  return r < 0 ? r + 2 * kPi : r;
}

bool arcs_disjoint(std::pair<double, double> a, std::pair<double, double> b) {
  double la = a.second - a.first, lb = b.second - b.first;
  if (la <= 0 || lb <= 0) return true;
  if (la + lb > 2 * kPi) return false;
  double sa = arc_start(a.first), sb = arc_start(b.first);
  // b must start after a ends and end before a starts again
  double off = std::fmod(sb - sa + 2 * kPi, 2 * kPi);
  return off >= la && off + lb <= 2 * kPi;
}

Eigen::MatrixXd window_gram(const VOAModel& model) {
  const int n = model.total_dim();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  for (int l = 0; l <= model.cutoff(); ++l) g.block(model.offset(l), model.offset(l), model.dim(l), model.dim(l)) = to_eigen(model.gram(l));
  return g;
}

}  // namespace

bool is_quasi_primary(const VOAModel& model, const GradedVector& a) {
  if (!a.is_homogeneous()) return false;
  if (a.is_zero()) return true;
  int d = *a.weight();
  return d == 0 || is_zero(model.virasoro(1, d).apply(*a.block(d)));
}

TestFunction::TestFunction(int window) : window_(window), coeffs_(2 * size_t(window) + 1) {
  if (window < 0) throw PreconditionError("negative window");
}

TestFunction TestFunction::single_mode(int n, int window) {
  TestFunction f(window);
  f.set(n, 1);
  return f;
}

TestFunction TestFunction::cosine(int k, int window) {
  TestFunction f(window);
  f.set(k, 0.5);
  f.set(-k, 0.5);
  return f;
}

TestFunction TestFunction::sine(int k, int window) {
  TestFunction f(window);
  f.set(k, cplx(0, -0.5));
  f.set(-k, cplx(0, 0.5));
  return f;
}

TestFunction TestFunction::bump(double theta1, double theta2, int window, int samples) {
  if (!(theta2 > theta1) || theta2 - theta1 > 2 * kPi) throw PreconditionError("bad arc");
  TestFunction f(window);
  f.declare_support(theta1, theta2);
  auto c = simpson_coefficients(theta1, theta2, samples, 0, window);
  auto coarse = simpson_coefficients(theta1, theta2, samples / 2, 0, window);
  for (long n = 0; n <= window; ++n) {
    f.set(n, c[n]);
    f.set(-n, std::conj(c[n]));
    f.quad_error_ = std::max(f.quad_error_, std::abs(c[n] - coarse[n]));
  }
  if (window > 0) {
    const long top = 8L * window;
    const int fine = std::max<long>(samples, 16 * top);
    auto t = simpson_coefficients(theta1, theta2, fine, window + 1, top);
    for (long n = window + 1; n <= top; ++n) {
      f.tail_.emplace_back(n, t[n - window - 1]);
      f.tail_.emplace_back(-n, std::conj(t[n - window - 1]));
    }
  }
  return f;
}

cplx TestFunction::coefficient(long n) const {
  if (n < -window_ || n > window_) return 0;
  return coeffs_[n + window_];
}

void TestFunction::set(long n, cplx v) {
  if (n < -window_ || n > window_) throw PreconditionError("coefficient outside the window");
  coeffs_[n + window_] = v;
}

double TestFunction::tail_bound(int two_s) const {
  const double s = two_s / 2.0;
  double t = 0;
  for (const auto& [n, c] : tail_) t += std::pow(std::abs(double(n)) + 1, s) * std::abs(c);
  if (quad_error_ > 0)
    for (long n = -window_; n <= window_; ++n) t += std::pow(std::abs(double(n)) + 1, s) * quad_error_;
  return t;
}

TestFunction TestFunction::conjugate() const {
  TestFunction g = *this;
  for (long n = -window_; n <= window_; ++n) g.coeffs_[n + window_] = std::conj(coefficient(-n));
  for (auto& [n, c] : g.tail_) {
    n = -n;
    c = std::conj(c);
  }
  return g;
}

TestFunction TestFunction::rotated(double t) const {
  TestFunction g = *this;
  for (long n = -window_; n <= window_; ++n) g.coeffs_[n + window_] *= std::polar(1.0, -double(n) * t);
  for (auto& [n, c] : g.tail_) c *= std::polar(1.0, -double(n) * t);
  if (support_) g.support_ = std::make_pair(support_->first + t, support_->second + t);
  return g;
}

TestFunction TestFunction::reflected() const {
  TestFunction g = *this;
  for (long n = -window_; n <= window_; ++n) g.coeffs_[n + window_] = coefficient(-n);
  for (auto& [n, c] : g.tail_) n = -n;
  if (support_) g.support_ = std::make_pair(-support_->second, -support_->first);
  return g;
}

TestFunction TestFunction::with_window(int window) const {
  TestFunction g(window);
  for (long n = -std::min(window, window_); n <= std::min(window, window_); ++n) g.set(n, coefficient(n));
  g.support_ = support_;
  g.quad_error_ = quad_error_;
  for (long n = -window_; n <= window_; ++n)
    if (std::abs(n) > window) g.tail_.emplace_back(n, coefficient(n));
  for (const auto& e : tail_)
    if (std::abs(e.first) > window) g.tail_.push_back(e);
  return g;
}

FourierNorm fourier_norm(const TestFunction& f, int two_s) {
  if (two_s < 0) throw PreconditionError("s must be non-negative");
  FourierNorm r;
  const double s = two_s / 2.0;
  for (long n = -f.window(); n <= f.window(); ++n) r.value += std::pow(std::abs(double(n)) + 1, s) * std::abs(f.coefficient(n));
  r.tail_bound = f.tail_bound(two_s);
  return r;
}

CMatrix smeared_matrix(const VOAModel& model, const GradedVector& a, const TestFunction& f) {
  if (!a.is_homogeneous()) throw PreconditionError("smeared field needs a homogeneous vector");
  const int N = model.total_dim(), L = model.cutoff();
  CMatrix y = CMatrix::Zero(N, N);
  if (a.is_zero()) return y;
  for (int s = 0; s <= L; ++s)
    for (int t = 0; t <= L; ++t) {
      long n = s - t;
      cplx c = f.coefficient(n);
      if (c == cplx(0)) continue;
      y.block(model.offset(t), model.offset(s), model.dim(t), model.dim(s)) =
          c * to_eigen(model.mode(a, n, s)).cast<cplx>();
    }
  return y;
}

CMatrix window_adjoint(const VOAModel& model, const CMatrix& a) {
  const int N = model.total_dim();
  Eigen::MatrixXd g = window_gram(model);
  Eigen::MatrixXd ginv = Eigen::MatrixXd::Zero(N, N);
  for (int l = 0; l <= model.cutoff(); ++l) {
    auto inv = inverse(model.gram(l));
    if (!inv) throw PreconditionError("inconsistent unitary structure");
    ginv.block(model.offset(l), model.offset(l), model.dim(l), model.dim(l)) = to_eigen(*inv);
  }
  return ginv.cast<cplx>() * a.adjoint() * g.cast<cplx>();
}

SmearedAdjointReport smeared_adjoint_residual(const VOAModel& model, const PCTOperator& theta, const GradedVector& a,
                                              const TestFunction& f) {
  if (!is_quasi_primary(model, a)) throw PreconditionError("a is not quasi-primary");
  SmearedAdjointReport r;
  if (a.is_zero()) return r;
  CMatrix lhs = window_adjoint(model, smeared_matrix(model, a, f));
  double sign = (*a.weight() % 2) ? -1 : 1;
  CMatrix rhs = sign * smeared_matrix(model, theta.apply(a), f.conjugate());
  double scale = lhs.norm();
  r.relative_residual = scale > 0 ? (lhs - rhs).norm() / scale : (lhs - rhs).norm();
  return r;
}

RotationReport rotation_covariance_residual(const VOAModel& model, const GradedVector& a, const TestFunction& f,
                                            double t) {
  RotationReport r;
  const int N = model.total_dim();
  CVector phase(N);
  for (int l = 0; l <= model.cutoff(); ++l)
    for (int i = 0; i < model.dim(l); ++i) phase(model.offset(l) + i) = std::polar(1.0, l * t);
  CMatrix y = smeared_matrix(model, a, f);
  CMatrix lhs = phase.asDiagonal() * y * phase.conjugate().asDiagonal();
  CMatrix rhs = smeared_matrix(model, a, f.rotated(t));
  double scale = y.norm();
  r.relative_residual = scale > 0 ? (lhs - rhs).norm() / scale : (lhs - rhs).norm();
  return r;
}

GoodmanWallachReport goodman_wallach_check(const VOAModel& model) {
  const Scalar c = model.central_charge();
  if (c.sign() <= 0) throw PreconditionError("Goodman-Wallach check needs c > 0");
  GoodmanWallachReport rep;
  rep.bound = c * Scalar(1, 2);
  const int L = model.cutoff();
  for (int l = 0; l <= L; ++l) {
    const Matrix& gs = model.gram(l);
    for (long n = l - L; n <= l; ++n) {
      const int t = int(l - n);
      Matrix ln = model.virasoro(n, l).to_dense();
      Matrix lhs = ln.transpose() * model.gram(t) * ln;
      Scalar weight = Scalar((std::abs(n) + 1) * (std::abs(n) + 1) * (std::abs(n) + 1)) * Scalar((l + 1) * (l + 1));
      for (int i = 0; i < model.dim(l); ++i) {
        ++rep.checks;
        Scalar ratio = lhs(i, i) / (weight * gs(i, i));
        if (ratio > rep.worst_ratio) rep.worst_ratio = ratio;
        if (n != 0 && ratio > rep.worst_ratio_nonzero_n) rep.worst_ratio_nonzero_n = ratio;
        if (ratio > rep.bound && rep.holds) {
          rep.holds = false;
          rep.first_violation = std::make_pair(n, model.labels(l)[i]);
        }
      }
      if (!is_positive_semidefinite(gs.scaled(rep.bound * weight) - lhs)) rep.operator_holds = false;
    }
  }
  return rep;
}

EnergyBoundWitness energy_bound_witness(const VOAModel& model, const GradedVector& a, int two_s, int k,
                                        std::uint64_t seed, int random_per_level) {
  if (!a.is_homogeneous()) throw PreconditionError("energy bound witness needs a homogeneous vector");
  EnergyBoundWitness w;
  w.two_s = two_s;
  w.k = k;
  if (!a.is_zero()) {
    int d = *a.weight();
    for (int i = 0; i < model.dim(d); ++i)
      if (!(*a.block(d))[i].is_zero()) {
        if (!w.a_label.empty()) w.a_label += " + ";
        w.a_label += (*a.block(d))[i].str() + "*" + model.labels(d)[i];
      }
  }
  if (a.is_zero()) return w;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int L = model.cutoff();
  for (int l = 0; l <= L; ++l) {
    const int n_l = model.dim(l);
    if (n_l == 0) continue;
    Eigen::MatrixXd gs = to_eigen(model.gram(l));
    std::vector<Eigen::VectorXd> samples;
    for (int i = 0; i < n_l; ++i) samples.push_back(Eigen::VectorXd::Unit(n_l, i));
    for (int r = 0; r < random_per_level; ++r) {
      Eigen::VectorXd v(n_l);
      for (int i = 0; i < n_l; ++i) v(i) = gauss(rng);
      samples.push_back(v / std::sqrt(v.dot(gs * v)));
    }
    for (long n = l - L; n <= l; ++n) {
      const int t = int(l - n);
      Eigen::MatrixXd an = to_eigen(model.mode(a, n, l));
      Eigen::MatrixXd gt = to_eigen(model.gram(t));
      const double denom_n = std::pow(std::abs(double(n)) + 1, two_s / 2.0) * std::pow(double(l + 1), k);
      for (const auto& b : samples) {
        ++w.samples;
        Eigen::VectorXd out = an * b;
        double num = std::sqrt(std::max(0.0, out.dot(gt * out)));
        double ratio = num / (denom_n * std::sqrt(b.dot(gs * b)));
        if (ratio > w.M) {
          w.M = ratio;
          w.max_ratio_location = {n, l};
        }
      }
    }
  }
  return w;
}

CVector to_window(const VOAModel& model, const GradedVector& v) {
  CVector out = CVector::Zero(model.total_dim());
  for (const auto& [l, c] : v.blocks())
    for (size_t i = 0; i < c.size(); ++i) out(model.offset(l) + int(i)) = c[i].to_double();
  return out;
}

double window_norm(const VOAModel& model, const CVector& v) {
  Eigen::MatrixXd g = window_gram(model);
  return std::sqrt(std::max(0.0, (v.adjoint() * g.cast<cplx>() * v)(0, 0).real()));
}

namespace {

struct CommutatorTerms {
  CVector value;
  std::vector<std::pair<int, std::pair<long, double>>> pieces;   // (j, (s, ||(a_(j)b)_s c||))
  int order = 0;
};

CommutatorTerms commutator_terms(const VOAModel& model, const GradedVector& a, const TestFunction& f,
                                 const GradedVector& b, const TestFunction& g, const GradedVector& c) {
  if (!a.is_homogeneous() || !b.is_homogeneous()) throw PreconditionError("homogeneous fields required");
  CommutatorTerms out;
  out.value = CVector::Zero(model.total_dim());
  if (a.is_zero() || b.is_zero() || c.is_zero()) return out;
  const int L = model.cutoff();
  const int da = *a.weight(), db = *b.weight();
  const int W = std::max(f.window(), g.window());
  for (int j = 0; j <= da + db - 1; ++j) {
    GradedVector x = model.product(a, j, b);
    if (x.is_zero()) continue;
    out.order = j + 1;
    const int wx = *x.weight();
    for (const auto& [l, cl] : c.blocks()) {
      for (long s = l - L; s <= l; ++s) {
        // S_j(s) = sum_m f_m g_{s-m} C(m + d_a - 1, j)
        cplx S = 0;
        for (long m = std::max<long>(-W, s - W); m <= std::min<long>(W, s + W); ++m) {
          cplx fm = f.coefficient(m);
          if (fm == cplx(0)) continue;
          cplx gn = g.coefficient(s - m);
          if (gn == cplx(0)) continue;
          S += fm * gn * real_binomial(double(m + da - 1), j);
        }
        const int t = int(l - s);
        Vec v = model.paren_mode(x, s + wx - 1, l).apply(cl);
        CVector piece = to_window(model, model.make(t, v));
        out.pieces.push_back({j, {s, window_norm(model, piece)}});
        out.value += S * piece;
      }
    }
  }
  return out;
}

}  // namespace

CVector smeared_commutator(const VOAModel& model, const GradedVector& a, const TestFunction& f,
                           const GradedVector& b, const TestFunction& g, const GradedVector& c, int* locality_order) {
  CommutatorTerms t = commutator_terms(model, a, f, b, g, c);
  if (locality_order) *locality_order = t.order;
  return t.value;
}

WightmanReport wightman_residual(const VOAModel& model, const GradedVector& a, const TestFunction& f,
                                 const GradedVector& b, const TestFunction& g, const GradedVector& c) {
  if (!f.support() || !g.support()) throw PreconditionError("supports not declared");
  if (!arcs_disjoint(*f.support(), *g.support())) throw PreconditionError("supports not declared disjoint");
  if (!is_quasi_primary(model, a) || !is_quasi_primary(model, b)) throw PreconditionError("fields must be quasi-primary");
  CommutatorTerms t = commutator_terms(model, a, f, b, g, c);
  WightmanReport r;
  r.window = std::max(f.window(), g.window());
  r.locality_order = t.order;
  r.residual = window_norm(model, t.value);
  if (a.is_zero()) return r;
  const int da = *a.weight();
  const double F0 = fourier_norm(f, 0).value + f.tail_bound(0);
  const double G0 = fourier_norm(g, 0).value + g.tail_bound(0);
  for (const auto& [j, sn] : t.pieces) {
    const auto [s, norm] = sn;
    const double K = std::pow(double(da + j), j);
    r.declared_bound +=
        norm * K * (f.tail_bound(2 * j) * G0 + std::pow(std::abs(double(s)) + 1, j) * F0 * g.tail_bound(2 * j));
  }
  return r;
}

double AOfF::norm_squared(double norm_a_squared) const {
  double s = 0;
  for (size_t n = 0; n < coefficients.size(); ++n) s += std::norm(coefficients[n]) * descendant_weight(d, int(n));
  return s * norm_a_squared;
}

AOfF a_of_f(int d, const TestFunction& f) {
  if (d < 1) throw PreconditionError("trivial module");
  AOfF r;
  r.d = d;
  for (long n = 0; n + d <= f.window(); ++n) r.coefficients.push_back(f.coefficient(-n - d));
  return r;
}

cplx descendant_inner(const AOfF& x, const AOfF& y, double norm_a_squared) {
  if (x.d != y.d) throw PreconditionError("vectors live in different modules");
  cplx s = 0;
  size_t n_max = std::min(x.coefficients.size(), y.coefficients.size());
  for (size_t n = 0; n < n_max; ++n) s += std::conj(x.coefficients[n]) * y.coefficients[n] * descendant_weight(x.d, int(n));
  return s * norm_a_squared;
}

Scalar descendant_norm(int d, int n) { return binomial(2L * d + n - 1, n); }

std::vector<Scalar> p_polynomial(int d) {
  if (d < 1) throw PreconditionError("d must be positive");
  std::vector<Scalar> p{Scalar(0), Scalar(1)};
  for (long k = 1; k < d; ++k) {
    // multiply by x^2 - k^2
    std::vector<Scalar> q(p.size() + 2);
    for (size_t i = 0; i < p.size(); ++i) {
      q[i + 2] += p[i];
      q[i] -= p[i] * Scalar(k * k);
    }
    p = std::move(q);
  }
  Scalar norm = factorial(2L * d - 1).inverse();
  for (auto& x : p) x *= norm;
  return p;
}

Scalar evaluate(const std::vector<Scalar>& poly, const Scalar& x) {
  Scalar r;
  for (size_t i = poly.size(); i-- > 0;) r = r * x + poly[i];
  return r;
}

SymplecticReport symplectic_form(int d, double norm_a_squared, const TestFunction& f1, const TestFunction& f2) {
  const int W = std::min(f1.window(), f2.window());
  for (const auto* f : {&f1, &f2})
    for (long n = 0; n <= W; ++n) {
      cplx a = f->coefficient(n), b = std::conj(f->coefficient(-n));
      if (std::abs(a - b) > 1e-14 * std::max(1.0, std::abs(a))) throw PreconditionError("test functions must be real");
    }
  std::vector<Scalar> p = p_polynomial(d);
  SymplecticReport r;
  cplx sum = 0;
  double scale = 0;
  for (long n = -W; n <= W; ++n) {
    double pn = evaluate(p, Scalar(n)).to_double();
    cplx term = (f1.coefficient(n) * f2.coefficient(-n) - f2.coefficient(n) * f1.coefficient(-n)) * pn;
    sum += term;
    scale += std::abs(term);
  }
  scale *= norm_a_squared / 4;
  r.fourier = (norm_a_squared * sum / cplx(0, 4)).real();
  AOfF x = a_of_f(d, f1.with_window(W)), y = a_of_f(d, f2.with_window(W));
  r.direct = descendant_inner(x, y, norm_a_squared).imag();
  double diff = std::abs(r.fourier - r.direct);
  r.relative_difference = scale > 0 ? diff / scale : diff;
  return r;
}

double bisognano_wichmann_single(int d, const TestFunction& f, int n_max) {
  if (d < 1) throw PreconditionError("trivial module");
  if (n_max < 0) throw PreconditionError("n_max must be non-negative");
  const int n = n_max + 1;
  CMatrix K = CMatrix::Zero(n, n);
  const cplx ipi(0, kPi);
  for (int k = 0; k < n; ++k) {
    if (k >= 1) K(k - 1, k) += ipi * double(2 * d + k - 1);   // L_1 a^k = (2d+k-1) a^{k-1}
    if (k + 1 < n) K(k + 1, k) -= ipi * double(k + 1);       // L_{-1} a^k = (k+1) a^{k+1}
  }
  CMatrix E = (K * 0.5).exp();
  CVector v = CVector::Zero(n), target = CVector::Zero(n);
  const double sign = (d % 2) ? -1 : 1;
  TestFunction fj = f.reflected();
  for (int k = 0; k < n; ++k) {
    v(k) = f.coefficient(-k - d);
    target(k) = sign * fj.coefficient(-k - d);
  }
  CVector diff = E * v - target;
  double num = 0, den = 0;
  for (int k = 0; k < n; ++k) {
    double w = descendant_weight(d, k);
    num += std::norm(diff(k)) * w;
    den += std::norm(v(k)) * w;
  }
  if (den == 0) return num == 0 ? 0 : std::sqrt(num);
  return std::sqrt(num / den);
}

BWReport bisognano_wichmann_residual(int d, const TestFunction& f, int n_max) {
  BWReport r;
  r.d = d;
  r.n_max = n_max;
  r.residual = bisognano_wichmann_single(d, f, n_max);
  r.residual_half = bisognano_wichmann_single(d, f, n_max / 2);
  r.improvement = r.residual > 0 ? r.residual_half / r.residual : (r.residual_half > 0 ? INFINITY : 1);
  return r;
}

}  // namespace voa
