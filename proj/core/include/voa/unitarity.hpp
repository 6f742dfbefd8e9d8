#pragma once

#include <optional>
#include <string>
#include <vector>

#include "voa/axioms.hpp"
#include "voa/model.hpp"

namespace voa {

// Per-level matrices F with (a,b) = a^T F b.
struct BilinearForm {
  std::vector<Matrix> levels;
  Scalar operator()(const GradedVector& a, const GradedVector& b) const;
};

// throws PreconditionError("no invariant form exists") when L_1 V_1 != 0
BilinearForm invariant_form(const VOAModel& model);

struct InvarianceReport {
  bool symmetric = true;
  bool block_diagonal = true;   // forms are stored per level, recorded for completeness
  bool normalized = true;
  bool invariant = true;
  long long checks = 0;
  std::string first_failure;
};

// (a_n b, c) = (-1)^{d_a} sum_j 1/j! (b, (L_1^j a)_{-n} c) on every in-window block
InvarianceReport check_invariant_form(const VOAModel& model, const BilinearForm& form);

// theta per level, acting on coordinates. Antilinear: with rational data the
// conjugation is trivial, the flag only matters for composition rules.
struct PCTOperator {
  std::vector<Matrix> levels;
  bool antilinear = true;

  bool unique = false;
  bool involution = false;
  bool fixes_vacuum = false;
  bool fixes_conformal = false;
  bool antiunitary = false;
  bool automorphism = false;
  long long automorphism_checks = 0;
  std::string first_failure;

  GradedVector apply(const GradedVector& v) const;
  bool ok() const { return unique && involution && fixes_vacuum && fixes_conformal && antiunitary && automorphism; }
};

// throws PreconditionError("inconsistent unitary structure") when the Gram
// matrix or the form is degenerate on some level
PCTOperator pct_operator(const VOAModel& model);
PCTOperator pct_operator(const VOAModel& model, const BilinearForm& form);

// A^+ = G_s^{-1} A^T G_t for A : V_s -> V_t
LevelMap gram_adjoint(const VOAModel& model, const LevelMap& a);

// a_n^+ = (-1)^{d_a} sum_j 1/j! (L_1^j theta a)_{-n}, acting on `source_level`
LevelMap adjoint_mode(const VOAModel& model, const PCTOperator& theta, const GradedVector& a, long n,
                      int source_level);

struct AdjointReport {
  bool matches = true;
  long long checks = 0;
  std::string first_failure;
};

// adjoint_mode against gram_adjoint(mode_matrix) for every basis a and legal (n, level)
AdjointReport check_adjoint_modes(const VOAModel& model, const PCTOperator& theta);

struct PositivityReport {
  int level = 0;
  bool positive = true;
  std::vector<Scalar> minors;
  std::optional<size_t> first_failure;   // 1-based order of the first non-positive minor
};

PositivityReport gram_positivity(const VOAModel& model, int level);

// true iff a_n^+ = a_{-n} on the whole window; throws PreconditionError if a
// is not quasi-primary
bool hermitian_quasiprimary_check(const VOAModel& model, const GradedVector& a);

// level-preserving linear map given per level (columns are images of basis vectors)
struct LevelwiseMap {
  std::vector<Matrix> levels;
  GradedVector apply(const GradedVector& v) const;
};

struct AutomorphismReport {
  bool invertible = true;
  bool automorphism = true;
  std::string first_failure;          // first failing (a, q, level) triple
  bool fixes_conformal = false;       // g nu = nu
  bool commutes_with_virasoro = false;  // [g, L_n] = 0 for n = -1, 0, 1
  bool preserves_form = false;        // g^T F g = F for the invariant form
  bool conditions_agree = false;
  bool unitary = false;               // g^T G g = G
  long long checks = 0;
};

AutomorphismReport unitary_automorphism_check(const VOAModel& model, const LevelwiseMap& g);

// exp(t a_0) for a in V_1 with a_0 nilpotent on every level; throws
// PreconditionError otherwise
LevelwiseMap zero_mode_exponential(const VOAModel& model, const GradedVector& a, const Scalar& t);

// Extends generator images through the model's constructions. Throws
// PreconditionError when the model has no constructions.
LevelwiseMap automorphism_from_generators(const VOAModel& model, const std::vector<GradedVector>& images);

LevelwiseMap compose(const LevelwiseMap& a, const LevelwiseMap& b);

}  // namespace voa
