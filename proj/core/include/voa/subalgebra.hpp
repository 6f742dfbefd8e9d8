#pragma once

#include <string>
#include <vector>

#include "voa/axioms.hpp"
#include "voa/model.hpp"
#include "voa/unitarity.hpp"

namespace voa {

// Graded subspace of a parent model. basis[l] holds reduced row-echelon
// coordinate rows; projection[l] is the orthogonal projection e_W for the
// parent scalar product.
struct Subalgebra {
  const VOAModel* parent = nullptr;
  std::vector<std::vector<Vec>> basis;
  std::vector<Matrix> projection;
  bool window_limited = false;
  std::string window_note;       // first product or mode that left the window
  long long skipped = 0;

  std::vector<int> level_dims() const;
  bool contains(const GradedVector& v) const;
  GradedVector project(const GradedVector& v) const;
  bool is_full() const;
};

// Builds the echelon basis and e_W from arbitrary spanning rows per level.
Subalgebra make_subalgebra(const VOAModel& model, const std::vector<std::vector<Vec>>& spanning);

// Smallest in-window subspace containing Omega and the generators, closed under
// products a_(n)b, theta, L_1 and L_{-1}. Products landing above the cutoff are
// skipped and counted, with the first recorded in window_note.
Subalgebra close_unitary_subalgebra(const VOAModel& model, const std::vector<GradedVector>& generators);

struct ProjectedConformal {
  GradedVector nu_w;
  Scalar c_w;
  VirasoroReport virasoro;
  bool restricts_on_w = false;   // L^W_n = L_n on W for n = -1, 0, 1
};

ProjectedConformal projected_conformal_vector(const Subalgebra& w);

// W^c: joint kernel of a_(j), a in W, j >= 0. Modes whose target exceeds the
// cutoff cannot be applied; the result is then marked window_limited.
Subalgebra coset_subalgebra(const Subalgebra& w);

// Joint fixed space; each element must be an automorphism on the window.
Subalgebra fixed_point_subalgebra(const VOAModel& model, const std::vector<LevelwiseMap>& group_elements);

struct SubalgebraReport {
  bool closed = true;              // a_(n) b in W for a, b in W, in-window
  bool theta_invariant = true;
  bool l1_invariant = true;
  bool lminus1_invariant = true;
  bool projection_idempotent = true;
  bool projection_selfadjoint = true;
  bool commutes_with_virasoro = true;   // [L_n, e_W] = 0, n = -1, 0, 1
  bool commutes_with_theta = true;
  bool compresses_fields = true;        // e_W Y(a) e_W = Y(e_W a) e_W
  long long checks = 0;
  std::string first_failure;
  bool ok() const {
    return closed && theta_invariant && l1_invariant && lminus1_invariant && projection_idempotent &&
           projection_selfadjoint && commutes_with_virasoro && commutes_with_theta && compresses_fields;
  }
};

SubalgebraReport verify_subalgebra(const Subalgebra& w);

struct CosetSplit {
  ProjectedConformal w, wc;
  bool sum_exact = false;            // nu = nu^W + nu^{W^c}
  bool central_charges_add = false;  // c_W + c_{W^c} = c
  bool spectra_nonnegative = false;  // L_0^W and L_0^{W^c} on the window
};

CosetSplit coset_split(const Subalgebra& w, const Subalgebra& wc);

}  // namespace voa
