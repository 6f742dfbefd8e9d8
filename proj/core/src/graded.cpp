#include "voa/graded.hpp"

namespace voa {

GradedVector GradedVector::homogeneous(int cutoff, int level, Vec coords) {
  GradedVector v(cutoff);
  v.set(level, std::move(coords));
  return v;
}

const Vec* GradedVector::block(int level) const {
  auto it = blocks_.find(level);
  return it == blocks_.end() ? nullptr : &it->second;
}

Vec GradedVector::component(int level, size_t dim) const {
  const Vec* b = block(level);
  return b ? *b : Vec(dim);
}

void GradedVector::set(int level, Vec coords) {
  if (level < 0 || level > cutoff_) throw std::out_of_range("graded level outside cutoff");
  if (voa::is_zero(coords))
    blocks_.erase(level);
  else
    blocks_[level] = std::move(coords);
}

void GradedVector::add(int level, const Vec& coords, const Scalar& s) {
  if (s.is_zero() || voa::is_zero(coords)) return;
  auto it = blocks_.find(level);
  if (it == blocks_.end()) {
    set(level, voa::scale(coords, s));
    return;
  }
  axpy(it->second, s, coords);
  if (voa::is_zero(it->second)) blocks_.erase(it);
}

std::optional<int> GradedVector::weight() const {
  if (blocks_.size() != 1) return std::nullopt;
  return blocks_.begin()->first;
}

int GradedVector::min_level() const { return blocks_.empty() ? 0 : blocks_.begin()->first; }
int GradedVector::max_level() const { return blocks_.empty() ? 0 : blocks_.rbegin()->first; }

GradedVector GradedVector::operator+(const GradedVector& o) const {
  GradedVector r = *this;
  r.cutoff_ = std::max(cutoff_, o.cutoff_);
  for (const auto& [l, v] : o.blocks_) r.add(l, v);
  return r;
}

GradedVector GradedVector::operator-(const GradedVector& o) const { return *this + o.scaled(-1); }

GradedVector GradedVector::scaled(const Scalar& s) const {
  GradedVector r(cutoff_);
  if (s.is_zero()) return r;
  for (const auto& [l, v] : blocks_) r.blocks_[l] = voa::scale(v, s);
  return r;
}

}  // namespace voa
