#include "voa/axioms.hpp"

#include <array>
#include <map>
#include <sstream>

namespace voa {

namespace {

Scalar sgn(long e) { return (e % 2 == 0) ? Scalar(1) : Scalar(-1); }

class BinomialCache {
 public:
  const Scalar& operator()(long p, long j) {
    auto key = std::make_pair(p, j);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(key, binomial(p, j)).first->second;
  }

 private:
  std::map<std::pair<long, long>, Scalar> cache_;
};

SparseMatrix zero_map(const VOAModel& m, int target, int source) {
  return SparseMatrix(m.dim(target), m.dim(source));
}

// a_(q) on `source`, as a full-shape matrix (zero-row matrix for negative targets)
SparseMatrix paren(const VOAModel& m, const GradedVector& a, long q, int source) {
  if (a.is_zero()) return SparseMatrix(0, m.dim(source));
  return m.paren_mode(a, q, source);
}

}  // namespace

LevelMap mode_matrix(const VOAModel& model, const GradedVector& a, long n, int source_level) {
  int target = int(source_level - n);
  if (source_level < 0 || source_level > model.cutoff()) throw TruncationOverflow();
  if (target > model.cutoff()) throw TruncationOverflow();
  LevelMap lm;
  lm.source_level = source_level;
  lm.target_level = target;
  lm.matrix = SparseMatrix(target < 0 ? 0 : model.dim(target), model.dim(source_level));
  if (target < 0) return lm;
  for (const auto& [l, coords] : a.blocks()) {
    GradedVector comp = model.make(l, coords);
    lm.matrix.add_scaled(model.mode(comp, n, source_level), Scalar(1));
  }
  return lm;
}

GradedVector borcherds_residual(const VOAModel& model, const GradedVector& a, const GradedVector& b,
                                const GradedVector& c, long m, long n, long k) {
  GradedVector res = model.zero();
  if (a.is_zero() || b.is_zero() || c.is_zero()) return res;
  long Da = a.max_level(), Db = b.max_level(), Dc = c.max_level();
  for (long j = 0; j <= Da + Db - n - 1; ++j) {
    Scalar coef = binomial(m, j);
    if (coef.is_zero()) continue;
    GradedVector x = model.product(a, n + j, b);
    res = res + model.product(x, m + k - j, c).scaled(coef);
  }
  for (long j = 0; j <= Db + Dc - k - 1; ++j) {
    Scalar coef = sgn(j) * binomial(n, j);
    if (coef.is_zero()) continue;
    GradedVector y = model.product(b, k + j, c);
    res = res - model.product(a, m + n - j, y).scaled(coef);
  }
  for (long j = 0; j <= Da + Dc - m - 1; ++j) {
    Scalar coef = sgn(j + n) * binomial(n, j);
    if (coef.is_zero()) continue;
    GradedVector y = model.product(a, m + j, c);
    res = res + model.product(b, n + k - j, y).scaled(coef);
  }
  return res;
}

GradedVector commutator_residual(const VOAModel& model, const GradedVector& a, const GradedVector& b,
                                 const GradedVector& c, long m, long k) {
  GradedVector res = model.zero();
  if (a.is_zero() || b.is_zero() || c.is_zero()) return res;
  long Da = a.max_level(), Db = b.max_level();
  for (long j = 0; j <= Da + Db - 1; ++j) {
    Scalar coef = binomial(m, j);
    if (coef.is_zero()) continue;
    res = res + model.product(model.product(a, j, b), m + k - j, c).scaled(coef);
  }
  res = res - model.product(a, m, model.product(b, k, c));
  res = res + model.product(b, k, model.product(a, m, c));
  return res;
}

BorcherdsSweepReport borcherds_sweep(const VOAModel& model, int max_level) {
  const int W = max_level < 0 ? model.cutoff() : std::min(max_level, model.cutoff());
  BorcherdsSweepReport rep;
  rep.cutoff = model.cutoff();
  rep.max_level = W;
  BinomialCache C;
  const int top = W + 1 <= model.cutoff() ? model.offset(W + 1) : model.total_dim();
  for (int ga = 0; ga < top; ++ga) {
    const int da = model.weight_of(ga);
    const GradedVector avec = model.basis_vector(da, ga - model.offset(da));
    for (int gb = 0; gb < top; ++gb) {
      const int db = model.weight_of(gb);
      const GradedVector bvec = model.basis_vector(db, gb - model.offset(db));
      std::map<long, GradedVector> prods;
      std::map<std::array<long, 3>, SparseMatrix> pm, ab, ba;
      auto prod_mode = [&](long s, long r, int dc) -> const SparseMatrix& {
        std::array<long, 3> key{s, r, dc};
        auto it = pm.find(key);
        if (it != pm.end()) return it->second;
        auto pit = prods.find(s);
        if (pit == prods.end()) pit = prods.emplace(s, model.product(avec, s, bvec)).first;
        int w = int(da + db - s - 1);
        int out = int(w + dc - r - 1);
        SparseMatrix mat = pit->second.is_zero() ? zero_map(model, out, dc) : model.paren_mode(pit->second, r, dc);
        return pm.emplace(key, std::move(mat)).first->second;
      };
      auto comp = [&](auto& cache, int g1, long x, int g2, long y, int dc, int d2) -> const SparseMatrix& {
        std::array<long, 3> key{x, y, dc};
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        int mid = int(d2 + dc - y - 1);
        SparseMatrix mat = model.paren_mode(g1, x, mid) * model.paren_mode(g2, y, dc);
        return cache.emplace(key, std::move(mat)).first->second;
      };
      for (int dc = 0; dc <= W; ++dc) {
        if (model.dim(dc) == 0) continue;
        const long mmin = da + dc - 1 - W, nmin = da + db - 1 - W, kmin = db + dc - 1 - W;
        const long S = da + db + dc - 2;
        for (long n = nmin; n <= S - mmin - kmin; ++n) {
          for (long m = mmin; m <= S - n - kmin; ++m) {
            for (long k = kmin; k <= S - n - m; ++k) {
              const long out = S - m - n - k;
              if (out > W || model.dim(int(out)) == 0) continue;
              SparseMatrix lhs = zero_map(model, int(out), dc);
              for (long j = 0; j <= da + db - n - 1; ++j) {
                const Scalar& coef = C(m, j);
                if (coef.is_zero()) continue;
                lhs.add_scaled(prod_mode(n + j, m + k - j, dc), coef);
              }
              SparseMatrix rhs = zero_map(model, int(out), dc);
              for (long j = 0; j <= db + dc - k - 1; ++j) {
                const Scalar& coef = C(n, j);
                if (coef.is_zero()) continue;
                rhs.add_scaled(comp(ab, ga, m + n - j, gb, k + j, dc, db), sgn(j) * coef);
              }
              for (long j = 0; j <= da + dc - m - 1; ++j) {
                const Scalar& coef = C(n, j);
                if (coef.is_zero()) continue;
                rhs.add_scaled(comp(ba, gb, n + k - j, ga, m + j, dc, da), -sgn(j + n) * coef);
              }
              ++rep.operator_checks;
              rep.instances += model.dim(dc);
              if (!(lhs == rhs) && rep.all_zero) {
                rep.all_zero = false;
                std::ostringstream os;
                os << "a=" << model.label(ga) << " b=" << model.label(gb) << " level(c)=" << dc << " (m,n,k)=("
                   << m << "," << n << "," << k << ")";
                rep.first_failure = os.str();
              }
            }
          }
        }
      }
    }
  }
  return rep;
}

LocalityReport locality_order(const VOAModel& model, const GradedVector& a, const GradedVector& b, int max_N) {
  if (!a.is_homogeneous() || !b.is_homogeneous()) throw PreconditionError("locality_order needs homogeneous vectors");
  if (max_N < 0) throw PreconditionError("max_N must be non-negative");
  const int L = model.cutoff();
  LocalityReport rep;
  auto label_of = [&](const GradedVector& v) {
    if (v.is_zero()) return std::string("0");
    int d = *v.weight();
    const Vec& c = *v.block(d);
    std::string s;
    for (int i = 0; i < model.dim(d); ++i)
      if (!c[i].is_zero()) s += (s.empty() ? "" : " + ") + c[i].str() + "*" + model.labels(d)[i];
    return s;
  };
  rep.a_label = label_of(a);
  rep.b_label = label_of(b);
  rep.max_level_tested = L;
  if (a.is_zero() || b.is_zero()) return rep;
  const long da = *a.weight(), db = *b.weight();
  std::map<std::pair<long, int>, SparseMatrix> amodes, bmodes;
  auto A = [&](long q, int s) -> const SparseMatrix& {
    auto key = std::make_pair(q, s);
    auto it = amodes.find(key);
    if (it == amodes.end()) it = amodes.emplace(key, paren(model, a, q, s)).first;
    return it->second;
  };
  auto B = [&](long q, int s) -> const SparseMatrix& {
    auto key = std::make_pair(q, s);
    auto it = bmodes.find(key);
    if (it == bmodes.end()) it = bmodes.emplace(key, paren(model, b, q, s)).first;
    return it->second;
  };
  for (int N = 0; N <= max_N; ++N) {
    bool ok = true;
    for (int l = 0; l <= L && ok; ++l) {
      if (model.dim(l) == 0) continue;
      const long mmin = da + l - 1 - L, nmin = db + l - 1 - L;
      const long S = da + db + l - N - 2;
      for (long m = mmin; m <= S - nmin && ok; ++m) {
        for (long n = nmin; n <= S - m && ok; ++n) {
          long out = S - m - n;
          if (out > L || model.dim(int(out)) == 0) continue;
          SparseMatrix acc = zero_map(model, int(out), l);
          for (long j = 0; j <= N; ++j) {
            Scalar coef = sgn(j) * binomial(N, j);
            long qa = m + N - j, qb = n + j;
            int mid = int(db + l - qb - 1);
            if (mid >= 0) acc.add_scaled(A(qa, mid) * B(qb, l), coef);
            int mid2 = int(da + l - qa - 1);
            if (mid2 >= 0) acc.add_scaled(B(qb, mid2) * A(qa, l), -coef);
          }
          ++rep.checks;
          if (!acc.is_zero()) ok = false;
        }
      }
    }
    if (ok) {
      rep.order = N;
      return rep;
    }
  }
  throw Error("no N found ≤ max_N");
}

TranslationReport check_translation(const VOAModel& model, const GradedVector& a) {
  if (!a.is_homogeneous()) throw PreconditionError("check_translation needs a homogeneous vector");
  TranslationReport rep;
  if (a.is_zero()) return rep;
  const int L = model.cutoff();
  const long d = *a.weight();
  GradedVector Ta = d + 1 <= L ? model.apply_virasoro(-1, a) : model.zero();
  auto fail = [&](const std::string& what, long q, int l) {
    if (rep.exact_zero) {
      rep.exact_zero = false;
      rep.first_failure = what + " at q=" + std::to_string(q) + " level=" + std::to_string(l);
    }
  };
  for (int l = 0; l <= L; ++l) {
    for (long t = -1; t <= L - 1; ++t) {
      long q = d + l - t - 1;
      SparseMatrix rhs = paren(model, a, q - 1, l).scaled(Scalar(-q));
      if (l + 1 <= L) {
        // [T, a_(q)] on level l
        SparseMatrix lhs = zero_map(model, int(t + 1), l);
        if (t >= 0) lhs.add_scaled(model.virasoro(-1, int(t)) * model.paren_mode(a, q, l), Scalar(1));
        lhs.add_scaled(model.paren_mode(a, q, l + 1) * model.virasoro(-1, l), Scalar(-1));
        ++rep.checks;
        if (!(lhs == rhs)) fail("[T,a_(q)] != -q a_(q-1)", q, l);
      }
      if (d + 1 <= L) {
        SparseMatrix lhs = paren(model, Ta, q, l);
        if (Ta.is_zero()) lhs = zero_map(model, int(t + 1), l);
        ++rep.checks;
        if (!(lhs == rhs)) fail("(Ta)_(q) != -q a_(q-1)", q, l);
      }
    }
  }
  return rep;
}

VirasoroReport check_virasoro(const VOAModel& model, const GradedVector& v) {
  VirasoroReport rep;
  const int L = model.cutoff();
  if (!v.is_zero() && (!v.is_homogeneous() || *v.weight() != 2)) {
    rep.reason = "not a level-2 vector";
    return rep;
  }
  std::map<std::pair<long, int>, SparseMatrix> cache;
  auto Lm = [&](long n, int l) -> const SparseMatrix& {
    auto key = std::make_pair(n, l);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    SparseMatrix m = v.is_zero() ? zero_map(model, int(l - n), l) : model.paren_mode(v, n + 1, l);
    return cache.emplace(key, std::move(m)).first->second;
  };
  if (v.is_zero()) {
    rep.c = Scalar(0);
  } else {
    Vec top = Lm(2, 2).apply(*v.block(2));
    rep.c = top.empty() ? Scalar(0) : top[0] * Scalar(2);
  }
  rep.is_virasoro = true;
  for (int l = 0; l <= L; ++l) {
    for (long m = l - L; m <= l; ++m) {
      for (long n = l - m - L; n <= l - m; ++n) {
        long out = l - m - n;
        if (out < 0 || out > L) continue;
        if (l - n > L) continue;
        SparseMatrix lhs = Lm(n, int(l - m)) * Lm(m, l);
        if (l - n >= 0) lhs.add_scaled(Lm(m, int(l - n)) * Lm(n, l), Scalar(-1));
        SparseMatrix rhs = Lm(n + m, l).scaled(Scalar(n - m));
        if (n + m == 0) rhs.add_scaled(SparseMatrix::identity(model.dim(l)), rep.c * Scalar(n * n * n - n, 12));
        ++rep.checks;
        if (!(lhs == rhs) && rep.is_virasoro) {
          rep.is_virasoro = false;
          rep.failure = std::array<long, 3>{n, m, l};
          rep.reason = "relation fails";
        }
      }
    }
  }
  rep.l0_is_grading = true;
  for (int l = 0; l <= L; ++l)
    if (!(Lm(0, l) == SparseMatrix::identity(model.dim(l)).scaled(Scalar(l)))) rep.l0_is_grading = false;
  rep.lminus1_is_translation = true;
  GradedVector omega = model.vacuum();
  for (int l = 0; l + 1 <= L; ++l) {
    for (int i = 0; i < model.dim(l); ++i) {
      GradedVector bi = model.basis_vector(l, i);
      GradedVector t = model.product(bi, -2, omega);
      Vec lhs = Lm(-1, l).apply(*bi.block(l));
      if (lhs != t.component(l + 1, model.dim(l + 1))) rep.lminus1_is_translation = false;
    }
  }
  return rep;
}

QuasiPrimaryDecomposition quasi_primary_basis(const VOAModel& model, int level) {
  if (level < 0 || level > model.cutoff()) throw TruncationOverflow();
  QuasiPrimaryDecomposition out;
  const size_t n = model.dim(level);
  if (level == 0) {
    for (size_t i = 0; i < n; ++i) {
      Vec e(n);
      e[i] = 1;
      out.quasi_primary.push_back(e);
    }
  } else {
    out.quasi_primary = rref_kernel(model.virasoro(1, level).to_dense());
    Matrix lm1 = model.virasoro(-1, level - 1).to_dense();
    RowEchelon e = rref(lm1.transpose());
    for (size_t r = 0; r < e.pivots.size(); ++r) out.descendants.push_back(e.reduced.row(r));
  }
  std::vector<Vec> all = out.quasi_primary;
  all.insert(all.end(), out.descendants.begin(), out.descendants.end());
  out.direct_sum = all.size() == n && (n == 0 || rank(Matrix::from_rows(all, n)) == n);
  out.orthogonal = true;
  const Matrix& G = model.gram(level);
  for (const auto& q : out.quasi_primary)
    for (const auto& d : out.descendants)
      if (!bilinear(q, G, d).is_zero()) out.orthogonal = false;
  return out;
}

ConformalShiftReport conformal_shift_check(const VOAModel& model, const GradedVector& a) {
  ConformalShiftReport rep;
  const int L = model.cutoff();
  if (!a.is_zero() && (!a.is_homogeneous() || *a.weight() != 1))
    throw PreconditionError("conformal shift needs a in V_1");
  if (!a.is_zero())
    for (int l = 0; l <= L; ++l)
      if (!model.paren_mode(a, 0, l).is_zero()) throw PreconditionError("precondition violated: a_(0) != 0");
  GradedVector Ta = a.is_zero() ? model.zero() : model.apply_virasoro(-1, a);
  rep.shifted = model.conformal_vector() + Ta;
  rep.virasoro = check_virasoro(model, rep.shifted);
  // original L_1 kills nu and sends T a to 2a
  GradedVector recovered = model.apply_virasoro(1, rep.shifted).scaled(Scalar(1, 2));
  rep.recovered_a = recovered;
  rep.is_conformal = rep.virasoro.is_virasoro && rep.virasoro.l0_is_grading && recovered == a;
  return rep;
}

}  // namespace voa
