#pragma once

#include <string>
#include <vector>

#include "voa/model.hpp"

namespace voa {

VOAModel build_virasoro(const Scalar& c, int cutoff);
VOAModel build_heisenberg(int cutoff);
VOAModel build_affine_sl2(int k, int cutoff);
VOAModel build_lattice_rank1(int two_n, int cutoff);
VOAModel tensor_product(const VOAModel& a, const VOAModel& b);

struct Character {
  std::vector<long long> coefficients;
  // "1 + 3q + 4q² + 7q³"; terms up to max_power (all when negative)
  std::string q_series(int max_power = -1) const;
};

Character character(const VOAModel& model);

}  // namespace voa
