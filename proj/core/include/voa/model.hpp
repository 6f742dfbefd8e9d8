#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "voa/errors.hpp"
#include "voa/graded.hpp"

namespace voa {

// How a basis vector arises from lower data: used to extend a map given on
// generators to the whole truncation.
struct Construction {
  enum class Kind { Vacuum, Generator, Product };
  Kind kind = Kind::Vacuum;
  int generator = -1;       // Kind::Generator
  GradedVector left;        // Kind::Product: basis = left_(q) right
  long q = 0;
  GradedVector right;
};

struct NamedVector {
  std::string name;
  GradedVector vector;
};

struct ModelData {
  std::string name;
  int cutoff = 0;
  Scalar central_charge;
  std::vector<std::vector<std::string>> labels;   // per level
  std::vector<Matrix> gram;                       // scalar product per level
  GradedVector conformal_vector;
  // modes[a][source][target] = matrix of a_(q), q = d_a + source - target - 1
  std::vector<std::vector<std::vector<SparseMatrix>>> modes;
  std::map<std::string, std::string> metadata;
  std::vector<NamedVector> generators;
  std::vector<Construction> constructions;        // per global basis index, may be empty
};

class VOAModel {
 public:
  explicit VOAModel(ModelData data);

  const std::string& name() const { return d_.name; }
  int cutoff() const { return d_.cutoff; }
  const Scalar& central_charge() const { return d_.central_charge; }
  const std::vector<int>& level_dims() const { return dims_; }
  int dim(int level) const { return level >= 0 && level <= d_.cutoff ? dims_[level] : 0; }
  int total_dim() const { return offsets_.back(); }
  int offset(int level) const { return offsets_[level]; }
  std::pair<int, int> locate(int global) const;
  int weight_of(int global) const { return locate(global).first; }
  const std::vector<std::string>& labels(int level) const { return d_.labels[level]; }
  const std::string& label(int global) const;

  const Matrix& gram(int level) const { return d_.gram[level]; }
  const GradedVector& conformal_vector() const { return d_.conformal_vector; }
  GradedVector vacuum() const;
  GradedVector basis_vector(int level, int index) const;
  GradedVector zero() const { return GradedVector(d_.cutoff); }
  GradedVector make(int level, Vec coords) const;

  const std::map<std::string, std::string>& metadata() const { return d_.metadata; }
  const std::vector<NamedVector>& generators() const { return d_.generators; }
  const std::vector<Construction>& constructions() const { return d_.constructions; }
  const ModelData& data() const { return d_; }

  // target level of a_(q) acting on level `source` for a of weight d
  static int target_level(int d, long q, int source) { return int(d + source - q - 1); }

  // Matrix of basis_a_(q) from `source` to its target level. A negative
  // target gives the zero map into nothing; above the cutoff throws.
  const SparseMatrix& paren_mode(int a_global, long q, int source) const;
  // Same for a homogeneous vector a.
  SparseMatrix paren_mode(const GradedVector& a, long q, int source) const;
  // homogeneous convention a_n = a_(n + d - 1)
  SparseMatrix mode(const GradedVector& a, long n, int source) const;
  // L_n from the stored conformal vector, cached
  const SparseMatrix& virasoro(long n, int source) const;

  Vec product(int a_global, long q, int b_global) const;
  // a_(q) b extended bilinearly; components landing above the cutoff throw
  GradedVector product(const GradedVector& a, long q, const GradedVector& b) const;
  GradedVector apply_virasoro(long n, const GradedVector& b) const;

 private:
  ModelData d_;
  std::vector<int> dims_;
  std::vector<int> offsets_;
  std::vector<SparseMatrix> empty_targets_;                // 0 x dim(source)
  std::vector<std::vector<SparseMatrix>> virasoro_;        // [n + cutoff][source]
};

using ModelPtr = std::shared_ptr<const VOAModel>;

}  // namespace voa
