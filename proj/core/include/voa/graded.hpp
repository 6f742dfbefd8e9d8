#pragma once

#include <map>
#include <optional>

#include "voa/linalg.hpp"

namespace voa {

// Element of a truncated graded space: coordinates per level relative to a
// model's level bases. Zero blocks are never stored.
class GradedVector {
 public:
  GradedVector() = default;
  explicit GradedVector(int cutoff) : cutoff_(cutoff) {}
  static GradedVector homogeneous(int cutoff, int level, Vec coords);

  int cutoff() const { return cutoff_; }
  const std::map<int, Vec>& blocks() const { return blocks_; }
  // coordinates at a level, or nullptr when that component is zero
  const Vec* block(int level) const;
  Vec component(int level, size_t dim) const;

  void set(int level, Vec coords);
  void add(int level, const Vec& coords, const Scalar& s = Scalar(1));

  bool is_zero() const { return blocks_.empty(); }
  bool is_homogeneous() const { return blocks_.size() <= 1; }
  // level of a nonzero homogeneous vector
  std::optional<int> weight() const;
  int min_level() const;
  int max_level() const;

  GradedVector operator+(const GradedVector& o) const;
  GradedVector operator-(const GradedVector& o) const;
  GradedVector scaled(const Scalar& s) const;
  friend bool operator==(const GradedVector& a, const GradedVector& b) { return a.blocks_ == b.blocks_; }

 private:
  int cutoff_ = 0;
  std::map<int, Vec> blocks_;
};

// Block of an operator between two graded components.
struct LevelMap {
  int source_level = 0;
  int target_level = 0;
  SparseMatrix matrix;
};

}  // namespace voa
