#pragma once

// PBW engine: vacuum modules of mode algebras, their contravariant forms and
// the vertex-algebra products computed from the iterate formula.

#include <array>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "voa/linalg.hpp"
#include "voa/model.hpp"

namespace voa::detail {

// (-depth, generator): a creation operator x_{-depth}. Canonical monomials
// keep these sorted ascending, i.e. deepest mode leftmost.
using OpKey = std::pair<int, int>;

struct Monomial {
  int sector = 0;
  std::vector<OpKey> ops;
  auto operator<=>(const Monomial&) const = default;
};

using Combo = std::map<Monomial, Scalar>;

struct BracketTerm {
  int gen;
  Scalar coeff;
};

class Family {
 public:
  virtual ~Family() = default;
  virtual int generator_count() const = 0;
  virtual int weight(int g) const = 0;
  virtual int min_depth(int g) const = 0;
  virtual std::string symbol(int g) const = 0;
  virtual int adjoint(int g) const { return g; }
  // [x^{g1}_{m1}, x^{g2}_{m2}] = sum terms (gen)_{m1+m2} + central
  virtual void bracket(int g1, long m1, int g2, long m2, std::vector<BracketTerm>& terms, Scalar& central) const = 0;
  virtual Scalar zero_mode(int, int) const { return Scalar(0); }
  virtual std::vector<int> sectors(int max_level) const {
    (void)max_level;
    return {0};
  }
  virtual int sector_level(int) const { return 0; }
  virtual std::string sector_label(int) const { return "|0>"; }
};

class Engine {
 public:
  explicit Engine(std::unique_ptr<Family> family) : fam_(std::move(family)) {}
  virtual ~Engine() = default;

  const Family& family() const { return *fam_; }

  struct Level {
    std::vector<Monomial> pbw;
    std::map<Monomial, int> index;
    Matrix pbw_gram;
    RadicalQuotient quotient;
    std::vector<Monomial> basis;   // pivot monomials
    Matrix gram;                   // induced form on the quotient
  };

  const Level& level(int l);
  int dim(int l) { return l < 0 ? 0 : int(level(l).basis.size()); }
  int level_of(const Monomial& m) const;

  const Combo& apply(int g, long m, const Monomial& mono);
  Combo apply(int g, long m, const Combo& c);
  Vec project(int l, const Combo& c);
  Vec project(const Monomial& m) { return project(level_of(m), Combo{{m, Scalar(1)}}); }

  // homogeneous mode x^g_m on quotient coordinates at level l
  Vec gen_mode(int g, long m, int l, const Vec& v);
  const Vec& product(int la, int ia, long q, int lc, int ic);
  Vec product(int la, const Vec& a, long q, int lc, const Vec& c);

  std::string label(const Monomial& m) const;

  // generator bookkeeping used for constructions
  void set_generator_state(int gen, int index) { gen_state_[gen] = index; }
  void set_sector_generator(int sector, int index) { sector_gen_[sector] = index; }
  virtual Construction construction(int l, int i, int cutoff);

  ModelData build(const std::string& name, int cutoff, const Scalar& c, const Combo& conformal,
                  const std::vector<std::pair<std::string, Combo>>& generators,
                  std::map<std::string, std::string> metadata);

 protected:
  virtual Vec sector_vertex(int sector, long q, int lc, int ic);
  void enumerate(int sector, int fock_level, std::vector<Monomial>& out);

  std::unique_ptr<Family> fam_;
  std::map<int, Level> levels_;
  std::map<std::tuple<int, long, Monomial>, Combo> apply_memo_;
  std::map<std::array<long, 4>, Vec> gen_memo_;
  std::map<std::array<long, 5>, Vec> prod_memo_;
  std::map<int, int> gen_state_;
  std::map<int, int> sector_gen_;
  std::vector<GradedVector> generator_vectors_;
};

std::unique_ptr<Family> make_virasoro_family(const Scalar& c);
std::unique_ptr<Family> make_heisenberg_family();
std::unique_ptr<Family> make_affine_sl2_family(int k);
std::unique_ptr<Engine> make_lattice_engine(int two_n);

}  // namespace voa::detail
