#include <functional>

#include "engine.hpp"
#include "voa/models.hpp"

namespace voa {

using detail::Combo;
using detail::Monomial;

namespace {

void require_cutoff(int cutoff) {
  if (cutoff < 2) throw InputError("cutoff too small for conformal vector");
}

Monomial word(std::initializer_list<std::pair<int, int>> ops, int sector = 0) {
  Monomial m;
  m.sector = sector;
  for (auto [depth, g] : ops) m.ops.emplace_back(-depth, g);
  return m;
}

}  // namespace

VOAModel build_virasoro(const Scalar& c, int cutoff) {
  require_cutoff(cutoff);
  detail::Engine eng(detail::make_virasoro_family(c));
  Combo nu{{word({{2, 0}}), Scalar(1)}};
  eng.set_generator_state(0, 0);
  std::map<std::string, std::string> meta{{"family", "virasoro"}, {"c", c.str()}};
  return VOAModel(eng.build("virasoro(c=" + c.str() + ")", cutoff, c, nu, {{"L", nu}}, meta));
}

VOAModel build_heisenberg(int cutoff) {
  require_cutoff(cutoff);
  detail::Engine eng(detail::make_heisenberg_family());
  Combo nu{{word({{1, 0}, {1, 0}}), Scalar(1, 2)}};
  Combo a{{word({{1, 0}}), Scalar(1)}};
  eng.set_generator_state(0, 0);
  std::map<std::string, std::string> meta{{"family", "heisenberg"}, {"bracket", "[a_m,a_n]=m delta_{m+n,0}"}};
  return VOAModel(eng.build("heisenberg", cutoff, Scalar(1), nu, {{"a", a}}, meta));
}

VOAModel build_affine_sl2(int k, int cutoff) {
  if (k < 1) throw InputError("level must be a positive integer");
  require_cutoff(cutoff);
  detail::Engine eng(detail::make_affine_sl2_family(k));
  Monomial vac;
  auto two = [&](int g1, int g2) { return eng.apply(g1, -1, Combo(eng.apply(g2, -1, vac))); };
  Combo cas;
  for (const auto& part : {std::make_pair(two(0, 2), Scalar(1)), std::make_pair(two(2, 0), Scalar(1)),
                           std::make_pair(two(1, 1), Scalar(1, 2))})
    for (const auto& [m, v] : part.first) cas[m] += v * part.second;
  Combo nu;
  Scalar pref = Scalar(1) / Scalar(2L * (k + 2));
  for (const auto& [m, v] : cas)
    if (!(v * pref).is_zero()) nu[m] = v * pref;
  std::vector<std::pair<std::string, Combo>> gens;
  const char* names[] = {"e", "h", "f"};
  for (int g = 0; g < 3; ++g) {
    gens.emplace_back(names[g], Combo{{word({{1, g}}), Scalar(1)}});
    eng.set_generator_state(g, g);
  }
  Scalar c = Scalar(3L * k, k + 2);
  std::map<std::string, std::string> meta{{"family", "affine_sl2"},
                                          {"k", std::to_string(k)},
                                          {"affine_normalization", "(e|f)=1, (h|h)=2, e^+=f, h^+=h"}};
  return VOAModel(eng.build("affine_sl2(k=" + std::to_string(k) + ")", cutoff, c, nu, gens, meta));
}

VOAModel build_lattice_rank1(int two_n, int cutoff) {
  if (two_n < 2 || two_n % 2 != 0) throw InputError("lattice not even");
  require_cutoff(cutoff);
  auto eng = detail::make_lattice_engine(two_n);
  Combo nu{{word({{1, 0}, {1, 0}}), Scalar(1, 2L * two_n)}};
  std::vector<std::pair<std::string, Combo>> gens{{"b", Combo{{word({{1, 0}}), Scalar(1)}}},
                                                  {"e+", Combo{{word({}, 1), Scalar(1)}}},
                                                  {"e-", Combo{{word({}, -1), Scalar(1)}}}};
  eng->set_generator_state(0, 0);
  eng->set_sector_generator(1, 1);
  eng->set_sector_generator(-1, 2);
  std::map<std::string, std::string> meta{{"family", "lattice_rank1"},
                                          {"two_n", std::to_string(two_n)},
                                          {"lattice_cocycle", "epsilon = 1 (trivial section in rank one)"},
                                          {"lattice_normalization", "<b,b> = 2n, b_0 e^{mb} = 2n m e^{mb}"}};
  return VOAModel(eng->build("lattice(2n=" + std::to_string(two_n) + ")", cutoff, Scalar(1), nu, gens, meta));
}

namespace {

void kron_into(std::vector<std::tuple<size_t, size_t, Scalar>>& out, const SparseMatrix& a, const SparseMatrix& b,
               size_t row0, size_t col0) {
  for (size_t i = 0; i < a.rows(); ++i)
    for (const auto& [j, x] : a.row(i))
      for (size_t k = 0; k < b.rows(); ++k)
        for (const auto& [l, y] : b.row(k))
          out.emplace_back(row0 + i * b.rows() + k, col0 + size_t(j) * b.cols() + l, x * y);
}

}  // namespace

VOAModel tensor_product(const VOAModel& A, const VOAModel& B) {
  const int L = std::min(A.cutoff(), B.cutoff());
  // level l = blocks (la, l - la) with la descending
  std::vector<std::map<int, int>> block_off(L + 1);
  std::vector<int> dims(L + 1);
  ModelData md;
  md.cutoff = L;
  md.name = A.name() + " (x) " + B.name();
  md.central_charge = A.central_charge() + B.central_charge();
  for (int l = 0; l <= L; ++l) {
    std::vector<std::string> labels;
    int off = 0;
    for (int la = l; la >= 0; --la) {
      int lb = l - la;
      block_off[l][la] = off;
      for (int i = 0; i < A.dim(la); ++i)
        for (int j = 0; j < B.dim(lb); ++j) labels.push_back(A.labels(la)[i] + " (x) " + B.labels(lb)[j]);
      off += A.dim(la) * B.dim(lb);
    }
    dims[l] = off;
    Matrix g(off, off);
    for (int la = l; la >= 0; --la) {
      int lb = l - la;
      int o = block_off[l][la];
      const Matrix& ga = A.gram(la);
      const Matrix& gb = B.gram(lb);
      for (size_t i = 0; i < ga.rows(); ++i)
        for (size_t j = 0; j < ga.cols(); ++j)
          for (size_t k = 0; k < gb.rows(); ++k)
            for (size_t m = 0; m < gb.cols(); ++m)
              g(o + i * gb.rows() + k, o + j * gb.cols() + m) = ga(i, j) * gb(k, m);
    }
    md.labels.push_back(std::move(labels));
    md.gram.push_back(std::move(g));
  }

  auto embed = [&](const GradedVector& x, const GradedVector& y) {
    // x (x) y for homogeneous-by-block inputs
    GradedVector out(L);
    for (const auto& [la, va] : x.blocks())
      for (const auto& [lb, vb] : y.blocks()) {
        int l = la + lb;
        if (l > L) throw TruncationOverflow();
        Vec v(dims[l]);
        int o = block_off[l][la];
        for (size_t i = 0; i < va.size(); ++i)
          for (size_t j = 0; j < vb.size(); ++j) v[o + i * vb.size() + j] = va[i] * vb[j];
        out.add(l, v);
      }
    return out;
  };

  for (int l = 0; l <= L; ++l) {
    for (int la = l; la >= 0; --la) {
      int lb = l - la;
      for (int ia = 0; ia < A.dim(la); ++ia) {
        for (int ib = 0; ib < B.dim(lb); ++ib) {
          int ga = A.offset(la) + ia, gb = B.offset(lb) + ib;
          std::vector<std::vector<SparseMatrix>> per_source;
          for (int s = 0; s <= L; ++s) {
            std::vector<SparseMatrix> per_target;
            for (int t = 0; t <= L; ++t) {
              long q = l + s - t - 1;
              std::vector<std::tuple<size_t, size_t, Scalar>> trip;
              // (a (x) b)_(q) = sum_{i+j=q-1} a_(i) (x) b_(j)
              for (int sa = s; sa >= 0; --sa) {
                int sb = s - sa;
                for (int ta = 0; ta <= t; ++ta) {
                  int tb = t - ta;
                  long i = la + sa - ta - 1;
                  long j = q - 1 - i;
                  if (B.cutoff() < tb || A.cutoff() < ta) continue;
                  const SparseMatrix& ma = A.paren_mode(ga, i, sa);
                  if (ma.rows() == 0 || ma.is_zero()) continue;
                  const SparseMatrix& mb = B.paren_mode(gb, j, sb);
                  if (mb.rows() == 0 || mb.is_zero()) continue;
                  kron_into(trip, ma, mb, block_off[t][ta], block_off[s][sa]);
                }
              }
              per_target.push_back(SparseMatrix::from_triplets(dims[t], dims[s], trip));
            }
            per_source.push_back(std::move(per_target));
          }
          md.modes.push_back(std::move(per_source));
        }
      }
    }
  }

  GradedVector omega_a = A.vacuum(), omega_b = B.vacuum();
  md.conformal_vector = embed(A.conformal_vector(), omega_b) + embed(omega_a, B.conformal_vector());
  for (const auto& g : A.generators()) md.generators.push_back({"left." + g.name, embed(g.vector, omega_b)});
  for (const auto& g : B.generators()) md.generators.push_back({"right." + g.name, embed(omega_a, g.vector)});
  md.metadata = {{"family", "tensor"}, {"left", A.name()}, {"right", B.name()}};

  const auto& ca = A.constructions();
  const auto& cb = B.constructions();
  bool ok = !ca.empty() && !cb.empty();
  for (const auto& g : md.generators) ok = ok && !g.vector.is_zero();
  if (ok) {
    try {
      const int na = int(A.generators().size());
      for (int l = 0; l <= L; ++l)
        for (int la = l; la >= 0; --la) {
          int lb = l - la;
          for (int ia = 0; ia < A.dim(la); ++ia)
            for (int ib = 0; ib < B.dim(lb); ++ib) {
              Construction c;
              if (la == 0 && lb == 0) {
                c.kind = Construction::Kind::Vacuum;
              } else if (lb == 0) {
                const Construction& x = ca[A.offset(la) + ia];
                c.kind = x.kind;
                c.generator = x.generator;
                c.q = x.q;
                if (x.kind == Construction::Kind::Product) {
                  c.left = embed(x.left, omega_b);
                  c.right = embed(x.right, omega_b);
                }
              } else if (la == 0) {
                const Construction& x = cb[B.offset(lb) + ib];
                c.kind = x.kind;
                c.generator = x.kind == Construction::Kind::Generator ? na + x.generator : -1;
                c.q = x.q;
                if (x.kind == Construction::Kind::Product) {
                  c.left = embed(omega_a, x.left);
                  c.right = embed(omega_a, x.right);
                }
              } else {
                c.kind = Construction::Kind::Product;
                c.left = embed(A.basis_vector(la, ia), omega_b);
                c.q = -1;
                c.right = embed(omega_a, B.basis_vector(lb, ib));
              }
              md.constructions.push_back(std::move(c));
            }
        }
    } catch (const TruncationOverflow&) {
      md.constructions.clear();
    }
  }
  return VOAModel(std::move(md));
}

Character character(const VOAModel& model) {
  Character ch;
  for (int d : model.level_dims()) ch.coefficients.push_back(d);
  return ch;
}

std::string Character::q_series(int max_power) const {
  static const char* sup[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string out;
  int top = int(coefficients.size()) - 1;
  if (max_power >= 0) top = std::min(top, max_power);
  for (int n = 0; n <= top; ++n) {
    long long c = coefficients[n];
    if (c == 0) continue;
    std::string term;
    if (n == 0) {
      term = std::to_string(c);
    } else {
      if (c != 1) term = std::to_string(c);
      term += "q";
      if (n > 1)
        for (char ch : std::to_string(n)) term += sup[ch - '0'];
    }
    out += out.empty() ? term : " + " + term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace voa
