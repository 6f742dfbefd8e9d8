#include "voa/subalgebra.hpp"

#include <deque>
#include <sstream>

namespace voa {

namespace {

// Rows in reduced echelon form with their pivot columns.
struct Echelon {
  std::vector<Vec> rows;
  std::vector<size_t> pivots;

  Vec reduce(Vec v) const {
    for (size_t r = 0; r < rows.size(); ++r) {
      Scalar x = v[pivots[r]];
      if (!x.is_zero()) axpy(v, -x, rows[r]);
    }
    return v;
  }

  // true if v was new
  bool insert(const Vec& v0) {
    Vec v = reduce(v0);
    size_t p = 0;
    while (p < v.size() && v[p].is_zero()) ++p;
    if (p == v.size()) return false;
    v = scale(v, v[p].inverse());
    for (auto& row : rows) {
      Scalar x = row[p];
      if (!x.is_zero()) axpy(row, -x, v);
    }
    size_t at = 0;
    while (at < pivots.size() && pivots[at] < p) ++at;
    rows.insert(rows.begin() + at, v);
    pivots.insert(pivots.begin() + at, p);
    return true;
  }
};

Matrix projection_for(const VOAModel& model, int l, const std::vector<Vec>& basis) {
  const size_t n = model.dim(l);
  if (basis.empty()) return Matrix(n, n);
  Matrix B = Matrix::from_columns(basis, n);
  const Matrix& G = model.gram(l);
  auto inv = inverse(B.transpose() * G * B);
  if (!inv) throw PreconditionError("scalar product degenerate on the subspace");
  return B * *inv * B.transpose() * G;
}

std::string product_note(const VOAModel& model, int la, long q, int lb) {
  std::ostringstream os;
  os << "product of level " << la << " and level " << lb << " vectors at q=" << q << " lands on level "
     << VOAModel::target_level(la, q, lb) << " > cutoff " << model.cutoff();
  return os.str();
}

}  // namespace

std::vector<int> Subalgebra::level_dims() const {
  std::vector<int> d;
  for (const auto& b : basis) d.push_back(int(b.size()));
  return d;
}

bool Subalgebra::contains(const GradedVector& v) const { return project(v) == v; }

GradedVector Subalgebra::project(const GradedVector& v) const {
  GradedVector out(v.cutoff());
  for (const auto& [l, c] : v.blocks()) out.add(l, projection[l] * c);
  return out;
}

bool Subalgebra::is_full() const {
  for (int l = 0; l <= parent->cutoff(); ++l)
    if (int(basis[l].size()) != parent->dim(l)) return false;
  return true;
}

Subalgebra make_subalgebra(const VOAModel& model, const std::vector<std::vector<Vec>>& spanning) {
  Subalgebra w;
  w.parent = &model;
  for (int l = 0; l <= model.cutoff(); ++l) {
    Echelon e;
    if (l < int(spanning.size()))
      for (const auto& v : spanning[l]) e.insert(v);
    w.basis.push_back(e.rows);
    w.projection.push_back(projection_for(model, l, e.rows));
  }
  return w;
}

Subalgebra close_unitary_subalgebra(const VOAModel& model, const std::vector<GradedVector>& generators) {
  const int L = model.cutoff();
  std::vector<Echelon> ech(L + 1);
  // every vector ever accepted, used as product partners
  std::vector<std::pair<int, Vec>> accepted;
  std::deque<std::pair<int, Vec>> queue;
  auto offer = [&](int l, const Vec& v) {
    if (is_zero(v)) return;
    Vec r = ech[l].reduce(v);
    if (is_zero(r)) return;
    ech[l].insert(r);
    queue.emplace_back(l, r);
  };
  PCTOperator theta = pct_operator(model);
  Subalgebra w;
  w.parent = &model;
  offer(0, model.vacuum().component(0, model.dim(0)));
  for (const auto& g : generators)
    for (const auto& [l, c] : g.blocks()) {
      if (l > L) throw TruncationOverflow();
      offer(l, c);
    }
  auto full = [&] {
    for (int l = 0; l <= L; ++l)
      if (int(ech[l].rows.size()) != model.dim(l)) return false;
    return true;
  };
  auto products = [&](int la, const Vec& va, int lb, const Vec& vb) {
    GradedVector a = model.make(la, va);
    // q from the largest legal value down
    for (long q = la + lb - 1; q >= la + lb - 1 - L; --q) {
      offer(VOAModel::target_level(la, q, lb), model.paren_mode(a, q, lb).apply(vb));
    }
    // the remaining q all land above the cutoff
    ++w.skipped;
    if (w.window_note.empty()) w.window_note = product_note(model, la, la + lb - 2 - L, lb);
  };
  while (!queue.empty() && !full()) {
    auto [l, v] = queue.front();
    queue.pop_front();
    offer(l, theta.levels[l] * v);
    if (l >= 1) offer(l - 1, model.virasoro(1, l).apply(v));
    if (l + 1 <= L) offer(l + 1, model.virasoro(-1, l).apply(v));
    accepted.emplace_back(l, v);
    for (const auto& [lw, vw] : accepted) {
      products(l, v, lw, vw);
      if (!(lw == l && vw == v)) products(lw, vw, l, v);
    }
  }
  w.window_limited = w.skipped > 0 && !full();
  for (int l = 0; l <= L; ++l) {
    w.basis.push_back(ech[l].rows);
    w.projection.push_back(projection_for(model, l, ech[l].rows));
  }
  return w;
}

ProjectedConformal projected_conformal_vector(const Subalgebra& w) {
  const VOAModel& model = *w.parent;
  ProjectedConformal pc;
  pc.nu_w = w.project(model.conformal_vector());
  pc.virasoro = check_virasoro(model, pc.nu_w);
  pc.c_w = pc.virasoro.c;
  pc.restricts_on_w = true;
  const int L = model.cutoff();
  for (int l = 0; l <= L; ++l)
    for (const auto& b : w.basis[l])
      for (int n = -1; n <= 1; ++n) {
        int t = l - n;
        if (t < 0 || t > L) continue;
        Vec lhs = pc.nu_w.is_zero() ? Vec(model.dim(t)) : model.paren_mode(pc.nu_w, n + 1, l).apply(b);
        if (lhs != model.virasoro(n, l).apply(b)) pc.restricts_on_w = false;
      }
  return pc;
}

Subalgebra coset_subalgebra(const Subalgebra& w) {
  const VOAModel& model = *w.parent;
  const int L = model.cutoff();
  std::vector<std::vector<Vec>> span(L + 1);
  bool limited = false;
  std::string note;
  for (int l = 0; l <= L; ++l) {
    std::vector<Vec> rows;
    for (int la = 0; la <= L; ++la)
      for (const auto& av : w.basis[la]) {
        GradedVector a = model.make(la, av);
        for (long j = 0; j <= la + l - 1; ++j) {
          int t = VOAModel::target_level(la, j, l);
          if (t > L) {
            if (!limited) {
              std::ostringstream os;
              os << "mode a_(" << j << ") of a level " << la << " vector on level " << l << " lands above cutoff";
              note = os.str();
            }
            limited = true;
            continue;
          }
          Matrix m = model.paren_mode(a, j, l).to_dense();
          for (size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
        }
      }
    if (rows.empty()) {
      for (int i = 0; i < model.dim(l); ++i) {
        Vec e(model.dim(l));
        e[i] = 1;
        span[l].push_back(e);
      }
    } else {
      span[l] = rref_kernel(Matrix::from_rows(rows, model.dim(l)));
    }
  }
  Subalgebra wc = make_subalgebra(model, span);
  wc.window_limited = limited;
  wc.window_note = note;
  return wc;
}

Subalgebra fixed_point_subalgebra(const VOAModel& model, const std::vector<LevelwiseMap>& group_elements) {
  for (const auto& g : group_elements) {
    AutomorphismReport r = unitary_automorphism_check(model, g);
    if (!r.automorphism || !r.invertible) throw PreconditionError("non-automorphism input rejected: " + r.first_failure);
  }
  const int L = model.cutoff();
  std::vector<std::vector<Vec>> span(L + 1);
  for (int l = 0; l <= L; ++l) {
    const size_t n = model.dim(l);
    std::vector<Vec> rows;
    for (const auto& g : group_elements) {
      Matrix m = g.levels[l] - Matrix::identity(n);
      for (size_t r = 0; r < n; ++r) rows.push_back(m.row(r));
    }
    if (rows.empty()) {
      for (size_t i = 0; i < n; ++i) {
        Vec e(n);
        e[i] = 1;
        span[l].push_back(e);
      }
    } else {
      span[l] = rref_kernel(Matrix::from_rows(rows, n));
    }
  }
  return make_subalgebra(model, span);
}

SubalgebraReport verify_subalgebra(const Subalgebra& w) {
  const VOAModel& model = *w.parent;
  const int L = model.cutoff();
  SubalgebraReport rep;
  auto fail = [&](bool& flag, const std::string& what) {
    if (flag && rep.first_failure.empty()) rep.first_failure = what;
    flag = false;
  };
  PCTOperator theta = pct_operator(model);
  for (int la = 0; la <= L; ++la)
    for (const auto& av : w.basis[la]) {
      GradedVector a = model.make(la, av);
      if (!w.contains(theta.apply(a))) fail(rep.theta_invariant, "theta W not in W");
      if (la >= 1 && !w.contains(model.apply_virasoro(1, a))) fail(rep.l1_invariant, "L_1 W not in W");
      if (la + 1 <= L && !w.contains(model.apply_virasoro(-1, a))) fail(rep.lminus1_invariant, "L_-1 W not in W");
      for (int lb = 0; lb <= L; ++lb)
        for (const auto& bv : w.basis[lb])
          for (long q = la + lb - 1; q >= la + lb - 1 - L; --q) {
            int t = VOAModel::target_level(la, q, lb);
            if (t > L) continue;
            ++rep.checks;
            if (!w.contains(model.make(t, model.paren_mode(a, q, lb).apply(bv)))) fail(rep.closed, "W not closed under products");
          }
    }
  for (int l = 0; l <= L; ++l) {
    const Matrix& e = w.projection[l];
    if (!(e * e == e)) fail(rep.projection_idempotent, "e_W not idempotent");
    if (!(model.gram(l) * e == e.transpose() * model.gram(l))) fail(rep.projection_selfadjoint, "e_W not self-adjoint");
    if (!(theta.levels[l] * e == e * theta.levels[l])) fail(rep.commutes_with_theta, "[theta, e_W] != 0");
    for (int n = -1; n <= 1; ++n) {
      int t = l - n;
      if (t < 0 || t > L) continue;
      Matrix ln = model.virasoro(n, l).to_dense();
      if (!(w.projection[t] * ln == ln * e)) fail(rep.commutes_with_virasoro, "[L_n, e_W] != 0");
    }
  }
  for (int ga = 0; ga < model.total_dim(); ++ga) {
    auto [d, i] = model.locate(ga);
    GradedVector ea = w.project(model.basis_vector(d, i));
    for (int s = 0; s <= L; ++s)
      for (int t = 0; t <= L; ++t) {
        long q = d + s - t - 1;
        Matrix lhs = w.projection[t] * model.paren_mode(ga, q, s).to_dense() * w.projection[s];
        Matrix rhs = ea.is_zero() ? Matrix(model.dim(t), model.dim(s))
                                  : model.paren_mode(ea, q, s).to_dense() * w.projection[s];
        ++rep.checks;
        if (!(lhs == rhs)) fail(rep.compresses_fields, "e_W Y(a) e_W != Y(e_W a) e_W");
      }
  }
  return rep;
}

CosetSplit coset_split(const Subalgebra& w, const Subalgebra& wc) {
  const VOAModel& model = *w.parent;
  CosetSplit cs;
  cs.w = projected_conformal_vector(w);
  cs.wc = projected_conformal_vector(wc);
  cs.sum_exact = cs.w.nu_w + cs.wc.nu_w == model.conformal_vector();
  cs.central_charges_add = cs.w.c_w + cs.wc.c_w == model.central_charge();
  cs.spectra_nonnegative = true;
  for (const auto* pc : {&cs.w, &cs.wc})
    for (int l = 0; l <= model.cutoff(); ++l) {
      if (pc->nu_w.is_zero()) continue;
      // L_0^W is self-adjoint, so its spectrum is >= 0 iff G L_0^W is PSD
      Matrix l0 = model.paren_mode(pc->nu_w, 1, l).to_dense();
      if (!is_positive_semidefinite(model.gram(l) * l0)) cs.spectra_nonnegative = false;
    }
  return cs;
}

}  // namespace voa
