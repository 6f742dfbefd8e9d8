#include "voa/unitarity.hpp"

#include <sstream>

namespace voa {

namespace {

Scalar sign_pow(long e) { return (e % 2 == 0) ? Scalar(1) : Scalar(-1); }

Matrix dense(const SparseMatrix& m) { return m.to_dense(); }

// L_1^j v for v at `level`
Vec l1_power(const VOAModel& model, Vec v, int level, int j) {
  for (int i = 0; i < j; ++i) v = model.virasoro(1, level - i).apply(v);
  return v;
}

Matrix zero_dense(const VOAModel& model, int target, int source) {
  return Matrix(size_t(model.dim(target)), size_t(model.dim(source)));
}

std::vector<Matrix> gram_inverses(const VOAModel& model) {
  std::vector<Matrix> inv;
  for (int l = 0; l <= model.cutoff(); ++l) {
    auto g = inverse(model.gram(l));
    if (!g) throw PreconditionError("inconsistent unitary structure");
    inv.push_back(std::move(*g));
  }
  return inv;
}

Matrix adjoint_with(const VOAModel& model, const std::vector<Matrix>& ginv, const Matrix& a, int source, int target) {
  return ginv[source] * a.transpose() * model.gram(target);
}

std::string triple(const VOAModel& model, int ga, long q, int level) {
  std::ostringstream os;
  os << "a=" << model.label(ga) << " q=" << q << " level=" << level;
  return os.str();
}

}  // namespace

Scalar BilinearForm::operator()(const GradedVector& a, const GradedVector& b) const {
  Scalar s;
  for (const auto& [l, va] : a.blocks()) {
    const Vec* vb = b.block(l);
    if (vb) s += bilinear(va, levels[l], *vb);
  }
  return s;
}

BilinearForm invariant_form(const VOAModel& model) {
  const int L = model.cutoff();
  if (L >= 1 && model.dim(1) > 0 && !model.virasoro(1, 1).is_zero())
    throw PreconditionError("no invariant form exists");
  BilinearForm f;
  for (int d = 0; d <= L; ++d) {
    const size_t n = model.dim(d);
    Matrix F(n, n);
    for (size_t i = 0; i < n; ++i) {
      Vec e(n);
      e[i] = 1;
      for (int l = 0; l <= d; ++l) {
        Vec v = l1_power(model, e, d, l);
        if (is_zero(v)) break;
        GradedVector lv = model.make(d - l, v);
        // (L_1^l a)_(2d-l-1) lands on level 0
        SparseMatrix m = model.paren_mode(lv, 2L * d - l - 1, d);
        if (m.rows() == 0) continue;
        Scalar coef = sign_pow(d) / factorial(l);
        for (const auto& [j, x] : m.row(0)) F(i, j) += coef * x;
      }
    }
    f.levels.push_back(std::move(F));
  }
  return f;
}

InvarianceReport check_invariant_form(const VOAModel& model, const BilinearForm& form) {
  InvarianceReport rep;
  const int L = model.cutoff();
  for (int l = 0; l <= L; ++l)
    if (!form.levels[l].is_symmetric()) rep.symmetric = false;
  rep.normalized = form.levels[0].rows() == 1 && form.levels[0](0, 0).is_one();
  for (int ga = 0; ga < model.total_dim(); ++ga) {
    const int d = model.weight_of(ga);
    const GradedVector a = model.basis_vector(d, ga - model.offset(d));
    std::vector<GradedVector> l1a;
    for (int j = 0; j <= d; ++j) {
      Vec v = l1_power(model, *a.block(d), d, j);
      if (is_zero(v)) break;
      l1a.push_back(model.make(d - j, v));
    }
    for (int lb = 0; lb <= L; ++lb) {
      for (int lt = 0; lt <= L; ++lt) {
        long n = lb - lt;
        // (a_n b, c) for b in V_lb, c in V_lt
        Matrix lhs = dense(model.mode(a, n, lb)).transpose() * form.levels[lt];
        Matrix x = zero_dense(model, lb, lt);
        for (size_t j = 0; j < l1a.size(); ++j)
          x = x + dense(model.mode(l1a[j], -n, lt)).scaled(sign_pow(d) / factorial(long(j)));
        Matrix rhs = form.levels[lb] * x;
        ++rep.checks;
        if (!(lhs == rhs) && rep.invariant) {
          rep.invariant = false;
          rep.first_failure = triple(model, ga, n, lb);
        }
      }
    }
  }
  return rep;
}

GradedVector PCTOperator::apply(const GradedVector& v) const {
  GradedVector out(v.cutoff());
  for (const auto& [l, c] : v.blocks()) out.add(l, levels[l] * c);
  return out;
}

PCTOperator pct_operator(const VOAModel& model) { return pct_operator(model, invariant_form(model)); }

PCTOperator pct_operator(const VOAModel& model, const BilinearForm& form) {
  const int L = model.cutoff();
  std::vector<Matrix> ginv = gram_inverses(model);
  PCTOperator th;
  for (int l = 0; l <= L; ++l) {
    if (determinant(form.levels[l]).is_zero()) throw PreconditionError("inconsistent unitary structure");
    th.levels.push_back(ginv[l] * form.levels[l]);
  }
  // G invertible: the per-level linear system has exactly one solution
  th.unique = true;
  th.involution = true;
  th.antiunitary = true;
  for (int l = 0; l <= L; ++l) {
    const Matrix& t = th.levels[l];
    if (!(t * t == Matrix::identity(t.rows()))) th.involution = false;
    // (theta a | theta b) = (b | a), G symmetric
    if (!(t.transpose() * model.gram(l) * t == model.gram(l).transpose())) th.antiunitary = false;
  }
  th.fixes_vacuum = th.apply(model.vacuum()) == model.vacuum();
  th.fixes_conformal = th.apply(model.conformal_vector()) == model.conformal_vector();
  th.automorphism = true;
  for (int ga = 0; ga < model.total_dim(); ++ga) {
    const int d = model.weight_of(ga);
    const GradedVector ta = th.apply(model.basis_vector(d, ga - model.offset(d)));
    for (int s = 0; s <= L; ++s) {
      for (int t = 0; t <= L; ++t) {
        long q = d + s - t - 1;
        Matrix lhs = th.levels[t] * dense(model.paren_mode(ga, q, s));
        Matrix rhs = ta.is_zero() ? zero_dense(model, t, s) : dense(model.paren_mode(ta, q, s)) * th.levels[s];
        ++th.automorphism_checks;
        if (!(lhs == rhs) && th.automorphism) {
          th.automorphism = false;
          th.first_failure = triple(model, ga, q, s);
        }
      }
    }
  }
  return th;
}

LevelMap gram_adjoint(const VOAModel& model, const LevelMap& a) {
  LevelMap out;
  out.source_level = a.target_level;
  out.target_level = a.source_level;
  if (a.target_level < 0 || a.target_level > model.cutoff()) {
    out.matrix = SparseMatrix(model.dim(a.source_level), 0);
    return out;
  }
  auto gi = inverse(model.gram(a.source_level));
  if (!gi) throw PreconditionError("inconsistent unitary structure");
  out.matrix = SparseMatrix::from_dense(*gi * a.matrix.to_dense().transpose() * model.gram(a.target_level));
  return out;
}

LevelMap adjoint_mode(const VOAModel& model, const PCTOperator& theta, const GradedVector& a, long n,
                      int source_level) {
  if (!a.is_homogeneous()) throw PreconditionError("adjoint_mode needs a homogeneous vector");
  const int target = int(source_level + n);
  if (source_level < 0 || source_level > model.cutoff() || target > model.cutoff()) throw TruncationOverflow();
  LevelMap out;
  out.source_level = source_level;
  out.target_level = target;
  out.matrix = SparseMatrix(target < 0 ? 0 : model.dim(target), model.dim(source_level));
  if (a.is_zero() || target < 0) return out;
  const int d = *a.weight();
  Vec v = theta.levels[d] * *a.block(d);
  for (int j = 0; j <= d; ++j) {
    if (is_zero(v)) break;
    GradedVector lv = model.make(d - j, v);
    out.matrix.add_scaled(model.mode(lv, -n, source_level), sign_pow(d) / factorial(j));
    v = model.virasoro(1, d - j).apply(v);
  }
  return out;
}

AdjointReport check_adjoint_modes(const VOAModel& model, const PCTOperator& theta) {
  AdjointReport rep;
  const int L = model.cutoff();
  std::vector<Matrix> ginv = gram_inverses(model);
  for (int ga = 0; ga < model.total_dim(); ++ga) {
    const int d = model.weight_of(ga);
    const GradedVector a = model.basis_vector(d, ga - model.offset(d));
    for (int s = 0; s <= L; ++s) {
      for (int t = 0; t <= L; ++t) {
        long n = t - s;
        Matrix lhs = adjoint_mode(model, theta, a, n, s).matrix.to_dense();
        Matrix rhs = adjoint_with(model, ginv, dense(model.mode(a, n, t)), t, s);
        ++rep.checks;
        if (!(lhs == rhs) && rep.matches) {
          rep.matches = false;
          rep.first_failure = triple(model, ga, n, s);
        }
      }
    }
  }
  return rep;
}

PositivityReport gram_positivity(const VOAModel& model, int level) {
  if (level < 0 || level > model.cutoff()) throw TruncationOverflow();
  PositivityReport rep;
  rep.level = level;
  MinorReport m = leading_minors(model.gram(level));
  rep.positive = m.positive_definite;
  rep.minors = m.minors;
  rep.first_failure = m.first_failure;
  return rep;
}

bool hermitian_quasiprimary_check(const VOAModel& model, const GradedVector& a) {
  if (!a.is_homogeneous()) throw PreconditionError("a is not quasi-primary");
  if (a.is_zero()) return true;
  const int d = *a.weight();
  if (d > 0 && !is_zero(model.virasoro(1, d).apply(*a.block(d)))) throw PreconditionError("a is not quasi-primary");
  const int L = model.cutoff();
  std::vector<Matrix> ginv = gram_inverses(model);
  for (int s = 0; s <= L; ++s)
    for (int t = 0; t <= L; ++t) {
      long n = s - t;
      Matrix adj = adjoint_with(model, ginv, dense(model.mode(a, n, s)), s, t);
      if (!(adj == dense(model.mode(a, -n, t)))) return false;
    }
  return true;
}

GradedVector LevelwiseMap::apply(const GradedVector& v) const {
  GradedVector out(v.cutoff());
  for (const auto& [l, c] : v.blocks()) out.add(l, levels[l] * c);
  return out;
}

AutomorphismReport unitary_automorphism_check(const VOAModel& model, const LevelwiseMap& g) {
  AutomorphismReport rep;
  const int L = model.cutoff();
  if (int(g.levels.size()) != L + 1) throw PreconditionError("map must have one block per level");
  for (int l = 0; l <= L; ++l) {
    const Matrix& m = g.levels[l];
    if (m.rows() != size_t(model.dim(l)) || m.cols() != size_t(model.dim(l)))
      throw PreconditionError("map block has the wrong shape");
    if (determinant(m).is_zero()) rep.invertible = false;
  }
  for (int ga = 0; ga < model.total_dim(); ++ga) {
    const int d = model.weight_of(ga);
    const GradedVector image = g.apply(model.basis_vector(d, ga - model.offset(d)));
    for (int s = 0; s <= L; ++s)
      for (int t = 0; t <= L; ++t) {
        long q = d + s - t - 1;
        Matrix lhs = g.levels[t] * dense(model.paren_mode(ga, q, s));
        Matrix rhs = image.is_zero() ? zero_dense(model, t, s) : dense(model.paren_mode(image, q, s)) * g.levels[s];
        ++rep.checks;
        if (!(lhs == rhs) && rep.automorphism) {
          rep.automorphism = false;
          rep.first_failure = triple(model, ga, q, s);
        }
      }
  }
  rep.fixes_conformal = g.apply(model.conformal_vector()) == model.conformal_vector();
  rep.commutes_with_virasoro = true;
  for (int n = -1; n <= 1; ++n)
    for (int l = 0; l <= L; ++l) {
      int t = l - n;
      if (t < 0 || t > L) continue;
      Matrix ln = dense(model.virasoro(n, l));
      if (!(g.levels[t] * ln == ln * g.levels[l])) rep.commutes_with_virasoro = false;
    }
  try {
    BilinearForm f = invariant_form(model);
    rep.preserves_form = true;
    for (int l = 0; l <= L; ++l)
      if (!(g.levels[l].transpose() * f.levels[l] * g.levels[l] == f.levels[l])) rep.preserves_form = false;
  } catch (const PreconditionError&) {
    rep.preserves_form = false;
  }
  rep.conditions_agree =
      rep.fixes_conformal == rep.commutes_with_virasoro && rep.commutes_with_virasoro == rep.preserves_form;
  rep.unitary = true;
  for (int l = 0; l <= L; ++l)
    if (!(g.levels[l].transpose() * model.gram(l) * g.levels[l] == model.gram(l))) rep.unitary = false;
  return rep;
}

LevelwiseMap zero_mode_exponential(const VOAModel& model, const GradedVector& a, const Scalar& t) {
  if (!a.is_zero() && (!a.is_homogeneous() || *a.weight() != 1))
    throw PreconditionError("zero-mode exponential needs a in V_1");
  LevelwiseMap g;
  for (int l = 0; l <= model.cutoff(); ++l) {
    const size_t n = model.dim(l);
    Matrix sum = Matrix::identity(n);
    if (a.is_zero()) {
      g.levels.push_back(sum);
      continue;
    }
    Matrix a0 = dense(model.paren_mode(a, 0, l)).scaled(t);
    Matrix term = Matrix::identity(n);
    for (size_t k = 1;; ++k) {
      term = (term * a0).scaled(Scalar(1) / Scalar(long(k)));
      if (term.is_zero()) break;
      if (k > n) throw PreconditionError("zero mode is not nilpotent on the window");
      sum = sum + term;
    }
    g.levels.push_back(std::move(sum));
  }
  return g;
}

LevelwiseMap automorphism_from_generators(const VOAModel& model, const std::vector<GradedVector>& images) {
  const auto& cons = model.constructions();
  if (cons.empty()) throw PreconditionError("model has no constructions");
  if (images.size() != model.generators().size()) throw PreconditionError("one image per generator required");
  const int L = model.cutoff();
  std::vector<std::vector<Vec>> cols(L + 1);
  auto apply_partial = [&](const GradedVector& v) {
    GradedVector out(L);
    for (const auto& [l, c] : v.blocks())
      for (size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) continue;
        if (i >= cols[l].size()) throw Error("construction refers to a later basis vector");
        out.add(l, cols[l][i], c[i]);
      }
    return out;
  };
  for (int gi = 0; gi < model.total_dim(); ++gi) {
    auto [l, i] = model.locate(gi);
    const Construction& c = cons[gi];
    GradedVector img;
    switch (c.kind) {
      case Construction::Kind::Vacuum:
        img = model.vacuum();
        break;
      case Construction::Kind::Generator:
        img = images.at(c.generator);
        break;
      case Construction::Kind::Product:
        img = model.product(apply_partial(c.left), c.q, apply_partial(c.right));
        break;
    }
    if (!img.is_zero() && (!img.is_homogeneous() || *img.weight() != l))
      throw PreconditionError("generator image does not preserve the grading");
    cols[l].push_back(img.component(l, model.dim(l)));
    (void)i;
  }
  LevelwiseMap g;
  for (int l = 0; l <= L; ++l) g.levels.push_back(Matrix::from_columns(cols[l], model.dim(l)));
  return g;
}

LevelwiseMap compose(const LevelwiseMap& a, const LevelwiseMap& b) {
  LevelwiseMap out;
  for (size_t l = 0; l < a.levels.size(); ++l) out.levels.push_back(a.levels[l] * b.levels[l]);
  return out;
}

}  // namespace voa
