#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "voa/model.hpp"

namespace voa {

// a_n : V_source -> V_{source-n}; non-homogeneous a is summed componentwise
LevelMap mode_matrix(const VOAModel& model, const GradedVector& a, long n, int source_level);

// LHS - RHS of the Borcherds identity for (a, b, c; m, n, k)
GradedVector borcherds_residual(const VOAModel& model, const GradedVector& a, const GradedVector& b,
                                const GradedVector& c, long m, long n, long k);

// sum_j C(m,j) (a_(j) b)_(m+k-j) c - [a_(m), b_(k)] c
GradedVector commutator_residual(const VOAModel& model, const GradedVector& a, const GradedVector& b,
                                 const GradedVector& c, long m, long k);

struct BorcherdsSweepReport {
  int cutoff = 0;
  int max_level = 0;
  long long instances = 0;        // (a, b, c, m, n, k) with c running over basis vectors
  long long operator_checks = 0;  // (a, b, level_c, m, n, k) matrix identities
  bool all_zero = true;
  std::string first_failure;
};

// Exhaustive sweep over basis a, b, c with every term inside levels <= max_level.
BorcherdsSweepReport borcherds_sweep(const VOAModel& model, int max_level = -1);

struct LocalityReport {
  std::string a_label, b_label;
  int order = 0;
  int max_level_tested = 0;
  long long checks = 0;
};

// throws Error("no N found ≤ max_N")
LocalityReport locality_order(const VOAModel& model, const GradedVector& a, const GradedVector& b, int max_N);

struct TranslationReport {
  bool exact_zero = true;
  long long checks = 0;
  std::string first_failure;
};

// [T, a_(n)] = -n a_(n-1) and (Ta)_(n) = -n a_(n-1) on every in-window block
TranslationReport check_translation(const VOAModel& model, const GradedVector& a);

struct VirasoroReport {
  bool is_virasoro = false;
  Scalar c;
  bool l0_is_grading = false;           // L_0 = level on every level
  bool lminus1_is_translation = false;  // L_{-1} b = b_(-2) Omega for every basis b
  long long checks = 0;
  std::optional<std::array<long, 3>> failure;  // (n, m, level)
  std::string reason;
};

VirasoroReport check_virasoro(const VOAModel& model, const GradedVector& v);

struct QuasiPrimaryDecomposition {
  std::vector<Vec> quasi_primary;
  std::vector<Vec> descendants;
  bool direct_sum = false;
  bool orthogonal = false;
};

QuasiPrimaryDecomposition quasi_primary_basis(const VOAModel& model, int level);

struct ConformalShiftReport {
  bool is_conformal = false;
  GradedVector shifted;       // nu + T a
  GradedVector recovered_a;   // L_1 nu~ / 2
  VirasoroReport virasoro;
};

// throws PreconditionError when a is not in V_1 or a_(0) != 0
ConformalShiftReport conformal_shift_check(const VOAModel& model, const GradedVector& a);

}  // namespace voa
