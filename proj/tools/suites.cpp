#include <cmath>
#include <numbers>
#include <cstdio>

#include "report.hpp"
#include "voa/axioms.hpp"
#include "voa/serialize.hpp"
#include "voa/smeared.hpp"
#include "voa/subalgebra.hpp"
#include "voa/unitarity.hpp"

namespace voa::cli {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;


json cutoff_window(const VOAModel& m) { return {{"cutoff", m.cutoff()}}; }

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

std::string level_name(int l) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "level%02d", l);
  return buf;
}

Record failed(std::string name, std::string identity, const std::exception& e) {
  Record r = Record::exact_check(std::move(name), std::move(identity), false);
  r.details["error"] = e.what();
  return r;
}

}  // namespace

std::vector<Task> axioms_suite(const VOAModel& m, const SuiteOptions& opt) {
  std::vector<Task> tasks;
  tasks.push_back([&m, ml = opt.max_level] {
    BorcherdsSweepReport r = borcherds_sweep(m, ml);
    Record rec = Record::exact_check("axioms.borcherds_sweep", "Borcherds identity", r.all_zero);
    rec.window = {{"cutoff", r.cutoff}, {"max_level", r.max_level}};
    rec.details = {{"instances", r.instances}, {"operator_checks", r.operator_checks}};
    if (!r.first_failure.empty()) rec.details["first_failure"] = r.first_failure;
    return std::vector<Record>{rec};
  });
  tasks.push_back([&m] {
    Record rec = Record::exact_check("axioms.vacuum_and_creation", "vacuum axiom and creation", true);
    rec.window = cutoff_window(m);
    GradedVector omega = m.vacuum();
    for (int s = 0; s <= m.cutoff() && rec.pass; ++s)
      for (int t = 0; t <= m.cutoff(); ++t) {
        long q = s - t - 1;
        SparseMatrix expect = q == -1 ? SparseMatrix::identity(m.dim(s)) : SparseMatrix(m.dim(t), m.dim(s));
        if (!(m.paren_mode(omega, q, s) == expect)) rec.pass = false;
      }
    for (int g = 0; g < m.total_dim(); ++g) {
      auto [l, i] = m.locate(g);
      GradedVector b = m.basis_vector(l, i);
      if (!(m.product(b, -1, omega) == b)) rec.pass = false;
      for (long q = 0; q <= l; ++q)
        if (!m.product(b, q, omega).is_zero()) rec.pass = false;
    }
    return std::vector<Record>{rec};
  });
  for (const auto& g : m.generators()) {
    tasks.push_back([&m, g] {
      TranslationReport r = check_translation(m, g.vector);
      Record rec = Record::exact_check("axioms.translation." + g.name, "translation covariance", r.exact_zero);
      rec.window = cutoff_window(m);
      rec.details = {{"checks", r.checks}};
      if (!r.first_failure.empty()) rec.details["first_failure"] = r.first_failure;
      return std::vector<Record>{rec};
    });
  }
  const auto& gens = m.generators();
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i; j < gens.size(); ++j) {
      tasks.push_back([&m, a = gens[i], b = gens[j]] {
        std::string name = "axioms.locality." + a.name + "." + b.name;
        try {
          LocalityReport r = locality_order(m, a.vector, b.vector, 2 * m.cutoff() + 2);
          Record rec = Record::exact_check(name, "locality", true);
          rec.window = {{"cutoff", m.cutoff()}, {"max_level_tested", r.max_level_tested}};
          rec.details = {{"order", r.order}, {"checks", r.checks}};
          return std::vector<Record>{rec};
        } catch (const Error& e) {
          return std::vector<Record>{failed(name, "locality", e)};
        }
      });
    }
  tasks.push_back([&m] {
    VirasoroReport r = check_virasoro(m, m.conformal_vector());
    bool ok = r.is_virasoro && r.l0_is_grading && r.lminus1_is_translation && r.c == m.central_charge();
    Record rec = Record::exact_check("axioms.conformal_vector", "Virasoro relations", ok);
    rec.window = cutoff_window(m);
    rec.details = {{"c", r.c.str()},
                   {"l0_is_grading", r.l0_is_grading},
                   {"lminus1_is_translation", r.lminus1_is_translation},
                   {"checks", r.checks}};
    if (!r.reason.empty()) rec.details["reason"] = r.reason;
    return std::vector<Record>{rec};
  });
  tasks.push_back([&m] {
    Record rec = Record::exact_check("axioms.quasi_primary_decomposition", "quasi-primary decomposition", true);
    rec.window = cutoff_window(m);
    json per = json::array();
    for (int l = 0; l <= m.cutoff(); ++l) {
      QuasiPrimaryDecomposition q = quasi_primary_basis(m, l);
      rec.pass = rec.pass && q.direct_sum && q.orthogonal;
      per.push_back({{"level", l}, {"quasi_primary", q.quasi_primary.size()}, {"descendants", q.descendants.size()}});
    }
    rec.details["levels"] = per;
    return std::vector<Record>{rec};
  });
  return tasks;
}

std::vector<Task> unitarity_suite(const VOAModel& m, const SuiteOptions&) {
  std::vector<Task> tasks;
  tasks.push_back([&m] {
    std::vector<Record> out;
    auto add = [&](const std::string& name, const std::string& id, bool ok) {
      Record r = Record::exact_check("unitarity." + name, id, ok);
      r.window = cutoff_window(m);
      out.push_back(r);
      return &out.back();
    };
    BilinearForm form;
    try {
      form = invariant_form(m);
    } catch (const Error& e) {
      out.push_back(failed("unitarity.invariant_form", "invariant bilinear form", e));
      return out;
    }
    InvarianceReport ir = check_invariant_form(m, form);
    Record* r = add("invariant_form", "invariant bilinear form", ir.symmetric && ir.invariant && ir.normalized);
    json forms = json::array();
    for (const auto& f : form.levels) forms.push_back(matrix_json(f));
    r->details = {{"symmetric", ir.symmetric}, {"invariant", ir.invariant}, {"normalized", ir.normalized},
                  {"checks", ir.checks}, {"form", forms}};
    if (!ir.first_failure.empty()) r->details["first_failure"] = ir.first_failure;
    PCTOperator th;
    try {
      th = pct_operator(m, form);
    } catch (const Error& e) {
      out.push_back(failed("unitarity.pct.exists_unique", "PCT operator", e));
      return out;
    }
    json thetas = json::array();
    for (const auto& t : th.levels) thetas.push_back(matrix_json(t));
    add("pct.exists_unique", "PCT operator", th.unique)->details = {{"theta", thetas}, {"antilinear", th.antilinear}};
    add("pct.involution", "theta squared is the identity", th.involution);
    add("pct.fixes_vacuum", "theta fixes the vacuum", th.fixes_vacuum);
    add("pct.fixes_conformal", "theta fixes the conformal vector", th.fixes_conformal);
    add("pct.antiunitary", "theta antiunitary", th.antiunitary);
    Record* au = add("pct.automorphism", "theta antilinear automorphism", th.automorphism);
    au->details = {{"checks", th.automorphism_checks}};
    if (!th.first_failure.empty()) au->details["first_failure"] = th.first_failure;
    AdjointReport ar = check_adjoint_modes(m, th);
    Record* adj = add("adjoint_modes", "adjoint vertex operator modes", ar.matches);
    adj->details = {{"checks", ar.checks}};
    if (!ar.first_failure.empty()) adj->details["first_failure"] = ar.first_failure;
    bool herm = false;
    try {
      herm = hermitian_quasiprimary_check(m, m.conformal_vector());
    } catch (const Error&) {
    }
    add("hermitian_conformal", "Hermitian conformal field", herm);
    return out;
  });
  for (int l = 0; l <= m.cutoff(); ++l) {
    tasks.push_back([&m, l] {
      PositivityReport p = gram_positivity(m, l);
      Record r = Record::exact_check("unitarity.positivity." + level_name(l), "Gram positivity", p.positive);
      r.window = {{"level", l}};
      json minors = json::array();
      for (const auto& x : p.minors) minors.push_back(x.str());
      r.details = {{"minors", minors}};
      if (p.first_failure) r.details["first_non_positive_minor"] = *p.first_failure;
      return std::vector<Record>{r};
    });
  }
  return tasks;
}

std::vector<Task> subalgebra_suite(const VOAModel& m, const SuiteOptions&, const std::vector<GradedVector>& generators) {
  std::vector<Task> tasks;
  tasks.push_back([&m, generators] {
    std::vector<Record> out;
    std::vector<GradedVector> gens = generators;
    if (gens.empty() && !m.generators().empty()) gens.push_back(m.generators().front().vector);
    Subalgebra w;
    try {
      w = close_unitary_subalgebra(m, gens);
    } catch (const Error& e) {
      out.push_back(failed("subalgebra.closure", "unitary subalgebra closure", e));
      return out;
    }
    SubalgebraReport vr = verify_subalgebra(w);
    Record rc = Record::exact_check("subalgebra.closure", "unitary subalgebra closure", vr.ok());
    rc.window = cutoff_window(m);
    rc.details = {{"level_dims", w.level_dims()}, {"window_limited", w.window_limited}, {"skipped_products", w.skipped},
                  {"checks", vr.checks}};
    if (!w.window_note.empty()) rc.details["window_note"] = w.window_note;
    if (!vr.first_failure.empty()) rc.details["first_failure"] = vr.first_failure;
    out.push_back(rc);

    ProjectedConformal pc = projected_conformal_vector(w);
    Record rp = Record::exact_check("subalgebra.projected_conformal", "projected conformal vector",
                                    pc.virasoro.is_virasoro && pc.restricts_on_w);
    rp.window = cutoff_window(m);
    rp.details = {{"c_w", pc.c_w.str()}, {"nu_w", vector_json(pc.nu_w)}};
    out.push_back(rp);

    Subalgebra wc = coset_subalgebra(w);
    SubalgebraReport cr = verify_subalgebra(wc);
    Record ri = Record::exact_check("subalgebra.coset.invariants", "coset subalgebra", cr.ok());
    ri.window = cutoff_window(m);
    ri.details = {{"level_dims", wc.level_dims()}, {"window_limited", wc.window_limited}};
    if (!wc.window_note.empty()) ri.details["window_note"] = wc.window_note;
    if (!cr.first_failure.empty()) ri.details["first_failure"] = cr.first_failure;
    out.push_back(ri);

    CosetSplit cs = coset_split(w, wc);
    Record rs = Record::exact_check("subalgebra.coset.split", "conformal vector splitting",
                                    cs.sum_exact && cs.central_charges_add && cs.spectra_nonnegative);
    rs.window = cutoff_window(m);
    rs.details = {{"c_w", cs.w.c_w.str()}, {"c_wc", cs.wc.c_w.str()}, {"c", m.central_charge().str()},
                  {"sum_exact", cs.sum_exact}, {"spectra_nonnegative", cs.spectra_nonnegative}};
    out.push_back(rs);
    return out;
  });
  return tasks;
}

Record smear_adjoint_record(const VOAModel& m, const GradedVector& a, const TestFunction& f) {
  PCTOperator th = pct_operator(m);
  SmearedAdjointReport ar = smeared_adjoint_residual(m, th, a, f);
  Record r = Record::numeric_check("smeared.adjoint", "smeared adjoint relation", ar.relative_residual, 1e-12);
  r.window = {{"cutoff", m.cutoff()}, {"fourier_window", f.window()}};
  return r;
}

Record smear_rotation_record(const VOAModel& m, const GradedVector& a, const TestFunction& f, double t) {
  RotationReport rr = rotation_covariance_residual(m, a, f, t);
  Record r = Record::numeric_check("smeared.rotation_covariance", "rotation covariance", rr.relative_residual, 1e-12);
  r.window = {{"cutoff", m.cutoff()}, {"fourier_window", f.window()}};
  r.details = {{"t", t}};
  return r;
}

Record smear_energy_record(const VOAModel& m, const GradedVector& a, const TestFunction& f, std::uint64_t seed) {
  EnergyBoundWitness w = energy_bound_witness(m, a, 2, 1, seed);
  CMatrix y = smeared_matrix(m, a, f);
  const double fs = fourier_norm(f, 2).value;
  double worst = 0;
  for (int l = 0; l <= m.cutoff(); ++l)
    for (int i = 0; i < m.dim(l); ++i) {
      CVector v = to_window(m, m.basis_vector(l, i));
      double lhs = window_norm(m, y * v);
      double rhs = w.M * fs * (l + 1) * window_norm(m, v);
      if (rhs > 0)
        worst = std::max(worst, lhs / rhs - 1);
      else if (lhs > 0)
        worst = INFINITY;
    }
  Record r = Record::numeric_check("smeared.energy_bound", "energy bounds for smeared fields", std::max(0.0, worst),
                                   1e-12);
  r.window = {{"cutoff", m.cutoff()}, {"fourier_window", f.window()}};
  r.details = {{"M", w.M}, {"s", 1}, {"k", 1}, {"samples", w.samples}, {"seed", seed}, {"smeared_norm_s1", fs},
               {"max_ratio_location", {{"n", w.max_ratio_location.first}, {"level", w.max_ratio_location.second}}}};
  return r;
}

Record smear_wightman_record(const VOAModel& m, const GradedVector& a, const TestFunction& f, const GradedVector& b,
                             const TestFunction& g, const GradedVector& c) {
  WightmanReport r1 = wightman_residual(m, a, f, b, g, c);
  const int W2 = 2 * std::max(f.window(), g.window());
  auto redo = [&](const TestFunction& h) {
    if (!h.support()) return h.with_window(W2);
    return TestFunction::bump(h.support()->first, h.support()->second, W2);
  };
  WightmanReport r2 = wightman_residual(m, a, redo(f), b, redo(g), c);
  bool decreasing = r2.residual <= 2 * r1.residual;
  Record r = Record::numeric_check("smeared.wightman_locality", "Wightman locality", r1.residual, 1e-8, decreasing);
  r.window = {{"cutoff", m.cutoff()}, {"fourier_window", r1.window}};
  r.details = {{"declared_bound", r1.declared_bound},
               {"locality_order", r1.locality_order},
               {"residual_doubled_window", r2.residual},
               {"declared_bound_doubled_window", r2.declared_bound},
               {"decreasing_within_2x", decreasing}};
  return r;
}

Record smear_symplectic_record(int d, double norm_a, const std::vector<std::pair<TestFunction, TestFunction>>& pairs) {
  double worst = 0;
  json vals = json::array();
  int W = 0;
  for (const auto& [f1, f2] : pairs) {
    SymplecticReport s = symplectic_form(d, norm_a, f1, f2);
    worst = std::max(worst, s.relative_difference);
    vals.push_back({{"fourier", s.fourier}, {"direct", s.direct}, {"relative_difference", s.relative_difference}});
    W = std::max({W, f1.window(), f2.window()});
  }
  Record r = Record::numeric_check("smeared.symplectic.d" + std::to_string(d), "symplectic form, two evaluations", worst,
                                   1e-10);
  r.window = {{"fourier_window", W}};
  r.details = {{"values", vals}, {"norm_a_squared", norm_a}};
  return r;
}

Record smear_bw_record(int d, const TestFunction& f, int n_max) {
  TestFunction g = f.window() < n_max + d && f.support()
                       ? TestFunction::bump(f.support()->first, f.support()->second, n_max + d)
                       : f;
  BWReport b = bisognano_wichmann_residual(d, g, n_max);
  Record r = Record::numeric_check("smeared.bisognano_wichmann.d" + std::to_string(d), "modular reflection identity",
                                   b.residual, 1e-3, b.improvement >= 4);
  r.window = {{"n_max", n_max}, {"fourier_window", g.window()}};
  r.details = {{"residual_half", b.residual_half}, {"improvement", b.improvement}};
  return r;
}

GradedVector wightman_probe(const VOAModel& m) {
  GradedVector c = m.vacuum();
  for (int l = 1; l <= m.cutoff(); ++l)
    if (m.dim(l) > 0) c = c + m.basis_vector(l, 0);
  return c;
}

GradedVector default_field(const VOAModel& m, const SuiteOptions& opt) {
  if (opt.field) return resolve_field(m, *opt.field);
  for (const auto& g : m.generators())
    if (is_quasi_primary(m, g.vector)) return g.vector;
  throw InputError("model has no quasi-primary generator; pass --field");
}

std::vector<Task> smeared_suite(const VOAModel& m, const SuiteOptions& opt) {
  std::vector<Task> tasks;
  const GradedVector a = default_field(m, opt);
  if (a.is_zero() || !is_quasi_primary(m, a)) throw InputError("field must be quasi-primary");
  const int d = *a.weight();
  const int W = opt.window;

  tasks.push_back([&m, a, W] {
    TestFunction f = TestFunction::bump(0, kPi, W);
    return std::vector<Record>{smear_adjoint_record(m, a, f), smear_rotation_record(m, a, f, 0.7)};
  });

  if (m.central_charge().sign() > 0) {
    tasks.push_back([&m] {
      GoodmanWallachReport g = goodman_wallach_check(m);
      Record r = Record::exact_check("smeared.goodman_wallach", "Goodman-Wallach estimate", g.holds && g.operator_holds);
      r.window = {{"cutoff", m.cutoff()}};
      r.details = {{"bound_c_over_2", g.bound.str()},
                   {"worst_ratio", g.worst_ratio.str()},
                   {"worst_ratio_nonzero_n", g.worst_ratio_nonzero_n.str()},
                   {"operator_holds", g.operator_holds},
                   {"checks", g.checks}};
      if (g.first_violation)
        r.details["first_violation"] = {{"n", g.first_violation->first}, {"a", g.first_violation->second}};
      return std::vector<Record>{r};
    });
  }

  tasks.push_back([&m, a, W, seed = opt.seed] {
    return std::vector<Record>{smear_energy_record(m, a, TestFunction::bump(0, kPi, W), seed)};
  });

  tasks.push_back([&m, a, W] {
    const double gap = 0.3;
    TestFunction f = TestFunction::bump(gap, kPi - gap, W);
    TestFunction g = TestFunction::bump(kPi + gap, 2 * kPi - gap, W);
    return std::vector<Record>{smear_wightman_record(m, a, f, a, g, wightman_probe(m))};
  });

  tasks.push_back([W] {
    TestFunction up = TestFunction::bump(0, kPi, W), down = TestFunction::bump(kPi, 2 * kPi, W);
    std::vector<std::pair<TestFunction, TestFunction>> pairs{
        {TestFunction::cosine(1, W), TestFunction::sine(1, W)}, {up, down}, {up, up}};
    return std::vector<Record>{smear_symplectic_record(1, 1.0, pairs), smear_symplectic_record(2, 1.0, pairs)};
  });

  tasks.push_back([&m, a, d] {
    Record r = Record::exact_check("smeared.descendant_norms", "descendant norm formula", true);
    r.window = {{"cutoff", m.cutoff()}};
    const Scalar na = bilinear(*a.block(d), m.gram(d), *a.block(d));
    json per = json::array();
    GradedVector v = a;
    for (int n = 1; d + n <= m.cutoff(); ++n) {
      v = m.apply_virasoro(-1, v).scaled(Scalar(1, n));
      Scalar nv = bilinear(*v.block(d + n), m.gram(d + n), *v.block(d + n));
      Scalar expect = descendant_norm(d, n) * na;
      r.pass = r.pass && nv == expect;
      per.push_back({{"n", n}, {"norm_squared", nv.str()}, {"binomial", expect.str()}});
    }
    r.details = {{"d", d}, {"values", per}};
    return std::vector<Record>{r};
  });

  for (int dd = 1; dd <= 2; ++dd)
    tasks.push_back([dd, W, n_max = opt.n_max] {
      return std::vector<Record>{smear_bw_record(dd, TestFunction::bump(0, kPi, W), n_max)};
    });
  return tasks;
}

}  // namespace voa::cli
