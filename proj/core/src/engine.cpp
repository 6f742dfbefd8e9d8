#include "engine.hpp"

#include <cstdlib>
#include <functional>

namespace voa::detail {

namespace {

Scalar sign_pow(long e) { return (e % 2 == 0) ? Scalar(1) : Scalar(-1); }

void add_into(Combo& acc, const Combo& c, const Scalar& s) {
  if (s.is_zero()) return;
  for (const auto& [m, v] : c) {
    Scalar& slot = acc[m];
    slot += v * s;
    if (slot.is_zero()) acc.erase(m);
  }
}

class VirasoroFamily : public Family {
 public:
  explicit VirasoroFamily(Scalar c) : c_(std::move(c)) {}
  int generator_count() const override { return 1; }
  int weight(int) const override { return 2; }
  int min_depth(int) const override { return 2; }
  std::string symbol(int) const override { return "L"; }
  void bracket(int, long m, int, long n, std::vector<BracketTerm>& terms, Scalar& central) const override {
    terms.clear();
    if (m != n) terms.push_back({0, Scalar(m - n)});
    central = (m + n == 0) ? c_ * Scalar(m * m * m - m, 12) : Scalar(0);
  }

 private:
  Scalar c_;
};

class HeisenbergFamily : public Family {
 public:
  explicit HeisenbergFamily(long kappa, std::string sym) : kappa_(kappa), sym_(std::move(sym)) {}
  int generator_count() const override { return 1; }
  int weight(int) const override { return 1; }
  int min_depth(int) const override { return 1; }
  std::string symbol(int) const override { return sym_; }
  void bracket(int, long m, int, long n, std::vector<BracketTerm>& terms, Scalar& central) const override {
    terms.clear();
    central = (m + n == 0) ? Scalar(kappa_ * m) : Scalar(0);
  }

 protected:
  long kappa_;
  std::string sym_;
};

// rank-one lattice: sectors m carry e^{m beta}, <beta,beta> = 2n
class LatticeFamily : public HeisenbergFamily {
 public:
  explicit LatticeFamily(int two_n) : HeisenbergFamily(two_n, "b"), two_n_(two_n) {}
  Scalar zero_mode(int, int sector) const override { return Scalar(long(two_n_) * sector); }
  std::vector<int> sectors(int max_level) const override {
    std::vector<int> s;
    int n = two_n_ / 2;
    int M = 0;
    while (n * (M + 1) * (M + 1) <= max_level) ++M;
    for (int m = -M; m <= M; ++m) s.push_back(m);
    return s;
  }
  int sector_level(int s) const override { return (two_n_ / 2) * s * s; }
  std::string sector_label(int s) const override { return "|" + std::to_string(s) + ">"; }

 private:
  int two_n_;
};

// e = 0, h = 1, f = 2; (e|f) = 1, (h|h) = 2
class AffineSl2Family : public Family {
 public:
  explicit AffineSl2Family(int k) : k_(k) {}
  int generator_count() const override { return 3; }
  int weight(int) const override { return 1; }
  int min_depth(int) const override { return 1; }
  std::string symbol(int g) const override { return g == 0 ? "e" : g == 1 ? "h" : "f"; }
  int adjoint(int g) const override { return 2 - g; }
  void bracket(int a, long m, int b, long n, std::vector<BracketTerm>& terms, Scalar& central) const override {
    terms.clear();
    central = Scalar(0);
    bool diag = (m + n == 0);
    if (a == 1 && b == 0) terms.push_back({0, Scalar(2)});
    if (a == 0 && b == 1) terms.push_back({0, Scalar(-2)});
    if (a == 1 && b == 2) terms.push_back({2, Scalar(-2)});
    if (a == 2 && b == 1) terms.push_back({2, Scalar(2)});
    if (a == 0 && b == 2) {
      terms.push_back({1, Scalar(1)});
      if (diag) central = Scalar(long(k_) * m);
    }
    if (a == 2 && b == 0) {
      terms.push_back({1, Scalar(-1)});
      if (diag) central = Scalar(long(k_) * m);
    }
    if (a == 1 && b == 1 && diag) central = Scalar(2L * k_ * m);
  }

 private:
  int k_;
};

}  // namespace

std::unique_ptr<Family> make_virasoro_family(const Scalar& c) { return std::make_unique<VirasoroFamily>(c); }
std::unique_ptr<Family> make_heisenberg_family() { return std::make_unique<HeisenbergFamily>(1, "a"); }
std::unique_ptr<Family> make_affine_sl2_family(int k) { return std::make_unique<AffineSl2Family>(k); }

int Engine::level_of(const Monomial& m) const {
  int l = fam_->sector_level(m.sector);
  for (const auto& op : m.ops) l -= op.first;
  return l;
}

void Engine::enumerate(int sector, int fock_level, std::vector<Monomial>& out) {
  Monomial cur;
  cur.sector = sector;
  std::function<void(int)> rec = [&](int remaining) {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = remaining; k >= 1; --k) {
      for (int g = 0; g < fam_->generator_count(); ++g) {
        if (k < fam_->min_depth(g)) continue;
        OpKey key{-k, g};
        if (!cur.ops.empty() && key < cur.ops.back()) continue;
        cur.ops.push_back(key);
        rec(remaining - k);
        cur.ops.pop_back();
      }
    }
  };
  rec(fock_level);
}

const Engine::Level& Engine::level(int l) {
  auto it = levels_.find(l);
  if (it != levels_.end()) return it->second;
  Level lv;
  for (int s : fam_->sectors(l)) {
    int sl = fam_->sector_level(s);
    if (sl <= l) enumerate(s, l - sl, lv.pbw);
  }
  for (size_t i = 0; i < lv.pbw.size(); ++i) lv.index[lv.pbw[i]] = int(i);
  size_t n = lv.pbw.size();
  lv.pbw_gram = Matrix(n, n);
  for (size_t i = 0; i < n; ++i) {
    const Monomial& mi = lv.pbw[i];
    if (mi.ops.empty()) {
      lv.pbw_gram(i, i) = 1;
      continue;
    }
    auto [negk, g] = mi.ops.front();
    int k = -negk;
    Monomial rest = mi;
    rest.ops.erase(rest.ops.begin());
    const Level& lower = level(l - k);
    int ri = lower.index.at(rest);
    for (size_t j = 0; j < n; ++j) {
      const Combo& c = apply(fam_->adjoint(g), k, lv.pbw[j]);
      Scalar s;
      for (const auto& [mono, coef] : c) s += coef * lower.pbw_gram(ri, lower.index.at(mono));
      lv.pbw_gram(i, j) = s;
    }
  }
  lv.quotient = quotient_by_radical(lv.pbw_gram, n);
  for (size_t p : lv.quotient.kept) lv.basis.push_back(lv.pbw[p]);
  size_t d = lv.basis.size();
  lv.gram = Matrix(d, d);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) lv.gram(i, j) = lv.pbw_gram(lv.quotient.kept[i], lv.quotient.kept[j]);
  return levels_.emplace(l, std::move(lv)).first->second;
}

const Combo& Engine::apply(int g, long m, const Monomial& mono) {
  auto key = std::make_tuple(g, m, mono);
  auto it = apply_memo_.find(key);
  if (it != apply_memo_.end()) return it->second;
  Combo res;
  bool creation = m < 0 && -m >= fam_->min_depth(g);
  OpKey mine{int(m), g};
  if (creation && (mono.ops.empty() || !(mono.ops.front() < mine))) {
    Monomial r = mono;
    r.ops.insert(r.ops.begin(), mine);
    res[r] = 1;
  } else if (mono.ops.empty()) {
    if (m == 0) {
      Scalar z = fam_->zero_mode(g, mono.sector);
      if (!z.is_zero()) res[mono] = z;
    }
  } else {
    auto [m1, g1] = mono.ops.front();
    Monomial rest = mono;
    rest.ops.erase(rest.ops.begin());
    // x_m y_{m1} R = y_{m1} x_m R + [x_m, y_{m1}] R
    Combo inner = apply(g, m, rest);
    for (const auto& [mm, c] : inner) add_into(res, apply(g1, m1, mm), c);
    std::vector<BracketTerm> terms;
    Scalar central;
    fam_->bracket(g, m, g1, m1, terms, central);
    for (const auto& t : terms) add_into(res, apply(t.gen, m + m1, rest), t.coeff);
    if (!central.is_zero()) add_into(res, Combo{{rest, Scalar(1)}}, central);
  }
  return apply_memo_.emplace(key, std::move(res)).first->second;
}

Combo Engine::apply(int g, long m, const Combo& c) {
  Combo out;
  for (const auto& [mono, coef] : c) add_into(out, apply(g, m, mono), coef);
  return out;
}

Vec Engine::project(int l, const Combo& c) {
  const Level& lv = level(l);
  Vec pbw(lv.pbw.size());
  for (const auto& [mono, coef] : c) pbw[lv.index.at(mono)] += coef;
  return lv.quotient.projection.apply(pbw);
}

Vec Engine::gen_mode(int g, long m, int l, const Vec& v) {
  int t = int(l - m);
  if (t < 0) return Vec();
  Vec out(dim(t));
  const Level& lv = level(l);
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    std::array<long, 4> key{g, m, l, long(i)};
    auto it = gen_memo_.find(key);
    if (it == gen_memo_.end()) {
      Combo c = apply(g, m, lv.basis[i]);
      it = gen_memo_.emplace(key, project(t, c)).first;
    }
    axpy(out, v[i], it->second);
  }
  return out;
}

const Vec& Engine::product(int la, int ia, long q, int lc, int ic) {
  static const Vec kEmpty;
  int t = int(la + lc - q - 1);
  if (t < 0) return kEmpty;
  std::array<long, 5> key{la, ia, q, lc, ic};
  auto it = prod_memo_.find(key);
  if (it != prod_memo_.end()) return it->second;

  Vec out(dim(t));
  Monomial mono = level(la).basis[ia];
  if (mono.ops.empty()) {
    if (mono.sector == 0) {
      if (q == -1) out[ic] = 1;
    } else {
      out = sector_vertex(mono.sector, q, lc, ic);
    }
  } else {
    auto [negk, g] = mono.ops.front();
    int k = -negk;
    Monomial rest = mono;
    rest.ops.erase(rest.ops.begin());
    int lr = la - k;
    Vec b = project(lr, Combo{{rest, Scalar(1)}});
    int d = fam_->weight(g);
    long p = d - 1 - k;
    Vec ec(dim(lc));
    ec[ic] = 1;
    // (y_(p) b)_(q) c = sum_j (-1)^j C(p,j) [ y_(p-j) b_(q+j) c - (-1)^p b_(p+q-j) y_(j) c ]
    for (long j = 0; j <= lr + lc - q - 1; ++j) {
      Vec v = product(lr, b, q + j, lc, ec);
      if (is_zero(v)) continue;
      int lv = int(lr + lc - q - j - 1);
      Vec w = gen_mode(g, (p - j) - d + 1, lv, v);
      axpy(out, sign_pow(j) * binomial(p, j), w);
    }
    for (long j = 0; j <= lc + d - 1; ++j) {
      Vec u = gen_mode(g, j - d + 1, lc, ec);
      if (is_zero(u)) continue;
      int lu = int(lc + d - j - 1);
      Vec v = product(lr, b, p + q - j, lu, u);
      if (v.empty()) continue;
      axpy(out, -sign_pow(p) * sign_pow(j) * binomial(p, j), v);
    }
  }
  return prod_memo_.emplace(key, std::move(out)).first->second;
}

Vec Engine::product(int la, const Vec& a, long q, int lc, const Vec& c) {
  int t = int(la + lc - q - 1);
  if (t < 0) return Vec();
  Vec out(dim(t));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < c.size(); ++j) {
      if (c[j].is_zero()) continue;
      axpy(out, a[i] * c[j], product(la, int(i), q, lc, int(j)));
    }
  }
  return out;
}

Vec Engine::sector_vertex(int, long, int, int) { throw Error("sector vertex operator not available"); }

std::string Engine::label(const Monomial& m) const {
  std::string s;
  for (const auto& [negk, g] : m.ops) s += fam_->symbol(g) + "_{" + std::to_string(negk) + "}";
  return s + fam_->sector_label(m.sector);
}

Construction Engine::construction(int l, int i, int cutoff) {
  Construction c;
  const Monomial mono = level(l).basis[i];
  if (mono.ops.empty()) {
    if (mono.sector == 0) return c;
    auto it = sector_gen_.find(mono.sector);
    if (it == sector_gen_.end()) throw Error("no construction for sector vacuum");
    c.kind = Construction::Kind::Generator;
    c.generator = it->second;
    return c;
  }
  auto [negk, g] = mono.ops.front();
  int k = -negk;
  Monomial rest = mono;
  rest.ops.erase(rest.ops.begin());
  int d = fam_->weight(g);
  if (rest.ops.empty() && rest.sector == 0 && k == d) {
    c.kind = Construction::Kind::Generator;
    c.generator = gen_state_.at(g);
    return c;
  }
  c.kind = Construction::Kind::Product;
  c.left = generator_vectors_.at(gen_state_.at(g));
  c.q = d - 1 - k;
  c.right = GradedVector::homogeneous(cutoff, l - k, project(l - k, Combo{{rest, Scalar(1)}}));
  return c;
}

ModelData Engine::build(const std::string& name, int cutoff, const Scalar& c, const Combo& conformal,
                        const std::vector<std::pair<std::string, Combo>>& generators,
                        std::map<std::string, std::string> metadata) {
  ModelData md;
  md.name = name;
  md.cutoff = cutoff;
  md.central_charge = c;
  md.metadata = std::move(metadata);
  std::vector<int> dims;
  for (int l = 0; l <= cutoff; ++l) {
    const Level& lv = level(l);
    std::vector<std::string> labels;
    for (const auto& m : lv.basis) labels.push_back(label(m));
    md.labels.push_back(std::move(labels));
    md.gram.push_back(lv.gram);
    dims.push_back(int(lv.basis.size()));
  }
  for (const auto& [gname, combo] : generators) {
    int l = level_of(combo.begin()->first);
    GradedVector v = l <= cutoff ? GradedVector::homogeneous(cutoff, l, project(l, combo)) : GradedVector(cutoff);
    generator_vectors_.push_back(v);
    md.generators.push_back({gname, v});
  }
  md.conformal_vector = GradedVector::homogeneous(cutoff, 2, project(2, conformal));

  for (int la = 0; la <= cutoff; ++la) {
    for (int ia = 0; ia < dims[la]; ++ia) {
      std::vector<std::vector<SparseMatrix>> per_source;
      for (int s = 0; s <= cutoff; ++s) {
        std::vector<SparseMatrix> per_target;
        for (int t = 0; t <= cutoff; ++t) {
          long q = la + s - t - 1;
          std::vector<std::tuple<size_t, size_t, Scalar>> trip;
          for (int j = 0; j < dims[s]; ++j) {
            const Vec& col = product(la, ia, q, s, j);
            for (size_t r = 0; r < col.size(); ++r)
              if (!col[r].is_zero()) trip.emplace_back(r, size_t(j), col[r]);
          }
          per_target.push_back(SparseMatrix::from_triplets(dims[t], dims[s], trip));
        }
        per_source.push_back(std::move(per_target));
      }
      md.modes.push_back(std::move(per_source));
    }
  }
  bool all_generators_in_window = true;
  for (const auto& g : md.generators) all_generators_in_window = all_generators_in_window && !g.vector.is_zero();
  if (all_generators_in_window)
    for (int l = 0; l <= cutoff; ++l)
      for (int i = 0; i < dims[l]; ++i) md.constructions.push_back(construction(l, i, cutoff));
  return md;
}

// ---- lattice ----

namespace {

// partitions of n as multiplicity lists {part -> count}
void partitions(int n, int max_part, std::vector<std::pair<int, int>>& cur,
                std::vector<std::vector<std::pair<int, int>>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    for (int c = n / p; c >= 1; --c) {
      cur.emplace_back(p, c);
      partitions(n - p * c, p - 1, cur, out);
      cur.pop_back();
    }
  }
}

class LatticeEngine : public Engine {
 public:
  explicit LatticeEngine(int two_n) : Engine(std::make_unique<LatticeFamily>(two_n)), two_n_(two_n) {}

  Construction construction(int l, int i, int cutoff) override {
    const Monomial mono = level(l).basis[i];
    if (!mono.ops.empty() || std::abs(mono.sector) <= 1) return Engine::construction(l, i, cutoff);
    int m = mono.sector;
    int sg = m > 0 ? 1 : -1;
    Construction c;
    c.kind = Construction::Kind::Product;
    c.left = generator_vectors_.at(sector_gen_.at(sg));
    c.q = -1 - long(two_n_) * (std::abs(m) - 1);
    Monomial prev;
    prev.sector = m - sg;
    int lp = level_of(prev);
    c.right = GradedVector::homogeneous(cutoff, lp, project(lp, Combo{{prev, Scalar(1)}}));
    return c;
  }

 protected:
  Vec sector_vertex(int m, long q, int lc, int ic) override {
    const Monomial mc = level(lc).basis[ic];
    int n = two_n_ / 2;
    int la = n * m * m;
    int t = int(la + lc - q - 1);
    Vec out(dim(t));
    int fock_c = lc - n * mc.sector * mc.sector;
    long e = long(two_n_) * m * mc.sector;
    for (int j = 0; j <= fock_c; ++j) {
      long i = j - q - 1 - e;
      if (i < 0) continue;
      Combo annihilated = expo(j, -m, Combo{{mc, Scalar(1)}}, +1);
      Combo created = expo(int(i), m, annihilated, -1);
      Combo shifted;
      for (const auto& [mono, c] : created) {
        Monomial s = mono;
        s.sector = m + mc.sector;
        shifted[s] += c;
      }
      axpy(out, Scalar(1), project(t, shifted));
    }
    return out;
  }

 private:
  // coefficient of degree `deg` in exp(sum_k x beta_{sign*k} / k) applied to c
  Combo expo(int deg, int x, const Combo& c, int sign) {
    std::vector<std::vector<std::pair<int, int>>> parts;
    std::vector<std::pair<int, int>> cur;
    partitions(deg, deg, cur, parts);
    Combo out;
    for (const auto& mu : parts) {
      Scalar coef(1);
      Combo v = c;
      for (const auto& [k, cnt] : mu) {
        coef *= Scalar(1) / factorial(cnt);
        for (int r = 0; r < cnt; ++r) {
          coef *= Scalar(x, k);
          v = apply(0, long(sign) * k, v);
        }
      }
      add_into(out, v, coef);
    }
    return out;
  }

  int two_n_;
};

}  // namespace

std::unique_ptr<Engine> make_lattice_engine(int two_n) { return std::make_unique<LatticeEngine>(two_n); }

}  // namespace voa::detail
