#include "voa/model.hpp"

#include <algorithm>

namespace voa {

VOAModel::VOAModel(ModelData data) : d_(std::move(data)) {
  const int L = d_.cutoff;
  if (L < 0 || int(d_.labels.size()) != L + 1 || int(d_.gram.size()) != L + 1)
    throw InputError("model data shape mismatch");
  offsets_.push_back(0);
  for (int l = 0; l <= L; ++l) {
    dims_.push_back(int(d_.labels[l].size()));
    offsets_.push_back(offsets_.back() + dims_.back());
    if (int(d_.gram[l].rows()) != dims_[l] || int(d_.gram[l].cols()) != dims_[l])
      throw InputError("gram shape mismatch at level " + std::to_string(l));
  }
  if (int(d_.modes.size()) != total_dim()) throw InputError("structure table size mismatch");
  for (int a = 0; a < total_dim(); ++a) {
    if (int(d_.modes[a].size()) != L + 1) throw InputError("structure table size mismatch");
    for (int s = 0; s <= L; ++s) {
      if (int(d_.modes[a][s].size()) != L + 1) throw InputError("structure table size mismatch");
      for (int t = 0; t <= L; ++t) {
        const auto& m = d_.modes[a][s][t];
        if (int(m.rows()) != dims_[t] || int(m.cols()) != dims_[s]) throw InputError("structure block shape mismatch");
      }
    }
  }
  for (int s = 0; s <= L; ++s) empty_targets_.emplace_back(0, dims_[s]);
  d_.conformal_vector = GradedVector(L) + d_.conformal_vector;
  virasoro_.resize(2 * L + 1);
  for (long n = -L; n <= L; ++n) {
    auto& row = virasoro_[n + L];
    for (int s = 0; s <= L; ++s) {
      int t = int(s - n);
      if (t < 0 || t > L) {
        row.emplace_back(0, dims_[s]);
        continue;
      }
      if (d_.conformal_vector.is_zero())
        row.emplace_back(dims_[t], dims_[s]);
      else
        row.push_back(paren_mode(d_.conformal_vector, n + 1, s));
    }
  }
}

std::pair<int, int> VOAModel::locate(int global) const {
  if (global < 0 || global >= total_dim()) throw std::out_of_range("basis index out of range");
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), global);
  int level = int(it - offsets_.begin()) - 1;
  return {level, global - offsets_[level]};
}

const std::string& VOAModel::label(int global) const {
  auto [l, i] = locate(global);
  return d_.labels[l][i];
}

GradedVector VOAModel::vacuum() const { return basis_vector(0, 0); }

GradedVector VOAModel::basis_vector(int level, int index) const {
  Vec v(dims_.at(level));
  v.at(index) = 1;
  return GradedVector::homogeneous(d_.cutoff, level, std::move(v));
}

GradedVector VOAModel::make(int level, Vec coords) const {
  if (int(coords.size()) != dim(level)) throw std::invalid_argument("coordinate length mismatch");
  return GradedVector::homogeneous(d_.cutoff, level, std::move(coords));
}

const SparseMatrix& VOAModel::paren_mode(int a_global, long q, int source) const {
  if (source < 0 || source > d_.cutoff) throw TruncationOverflow();
  int d = weight_of(a_global);
  int t = target_level(d, q, source);
  if (t < 0) return empty_targets_[source];
  if (t > d_.cutoff) throw TruncationOverflow();
  return d_.modes[a_global][source][t];
}

SparseMatrix VOAModel::paren_mode(const GradedVector& a, long q, int source) const {
  if (!a.is_homogeneous()) throw PreconditionError("mode of a non-homogeneous vector");
  if (source < 0 || source > d_.cutoff) throw TruncationOverflow();
  if (a.is_zero()) return SparseMatrix(0, dims_[source]);
  int d = *a.weight();
  int t = target_level(d, q, source);
  if (t < 0) return SparseMatrix(0, dims_[source]);
  if (t > d_.cutoff) throw TruncationOverflow();
  SparseMatrix m(dims_[t], dims_[source]);
  const Vec& c = *a.block(d);
  for (int i = 0; i < dims_[d]; ++i)
    if (!c[i].is_zero()) m.add_scaled(d_.modes[offsets_[d] + i][source][t], c[i]);
  return m;
}

SparseMatrix VOAModel::mode(const GradedVector& a, long n, int source) const {
  if (!a.is_homogeneous()) throw PreconditionError("mode of a non-homogeneous vector");
  if (source < 0 || source > d_.cutoff) throw TruncationOverflow();
  int t = int(source - n);
  if (t > d_.cutoff) throw TruncationOverflow();
  if (t < 0) return SparseMatrix(0, dims_[source]);
  if (a.is_zero()) return SparseMatrix(dims_[t], dims_[source]);
  return paren_mode(a, n + *a.weight() - 1, source);
}

const SparseMatrix& VOAModel::virasoro(long n, int source) const {
  const int L = d_.cutoff;
  if (source < 0 || source > L || source - n > L) throw TruncationOverflow();
  if (source - n < 0) return empty_targets_[source];
  return virasoro_[n + L][source];
}

Vec VOAModel::product(int a_global, long q, int b_global) const {
  auto [lb, ib] = locate(b_global);
  const SparseMatrix& m = paren_mode(a_global, q, lb);
  Vec out(m.rows());
  for (size_t r = 0; r < m.rows(); ++r) out[r] = m.at(r, ib);
  return out;
}

GradedVector VOAModel::product(const GradedVector& a, long q, const GradedVector& b) const {
  GradedVector out(d_.cutoff);
  for (const auto& [la, va] : a.blocks()) {
    for (const auto& [lb, vb] : b.blocks()) {
      int t = target_level(la, q, lb);
      if (t < 0) continue;
      if (t > d_.cutoff) throw TruncationOverflow();
      Vec acc(dims_[t]);
      for (int i = 0; i < dims_[la]; ++i) {
        if (va[i].is_zero()) continue;
        axpy(acc, va[i], d_.modes[offsets_[la] + i][lb][t].apply(vb));
      }
      out.add(t, acc);
    }
  }
  return out;
}

GradedVector VOAModel::apply_virasoro(long n, const GradedVector& b) const {
  GradedVector out(d_.cutoff);
  for (const auto& [l, v] : b.blocks()) {
    int t = int(l - n);
    if (t < 0) continue;
    if (t > d_.cutoff) throw TruncationOverflow();
    out.add(t, virasoro(n, l).apply(v));
  }
  return out;
}

}  // namespace voa
