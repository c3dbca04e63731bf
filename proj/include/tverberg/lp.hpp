#pragma once

#include "tverberg/rational.hpp"

#include <utility>
#include <vector>

namespace tverberg {

// Equality system A x = b over variables constrained to x >= 0.
struct LinearSystem {
  int num_vars = 0;
  std::vector<RatVec> rows;
  RatVec rhs;
  std::vector<std::pair<int, int>> var_labels;  // optional (face, vertex) tags

  void add_row(RatVec coeffs, Rat rhs_value);
  void validate() const;
};

// Feasible carries a satisfying assignment; infeasible carries Farkas row
// multipliers y with y^T A <= 0 componentwise and y^T b > 0, which certifies
// that no nonnegative solution exists.
struct FeasibilityResult {
  bool feasible = false;
  RatVec assignment;
  RatVec certificate;
};

// Phase-1 simplex over exact rationals. Bland's least-index pivoting, so
// termination is guaranteed; identical inputs give identical outputs.
FeasibilityResult lp_feasible(const LinearSystem& system);

bool check_feasible_point(const LinearSystem& system, const RatVec& x);
bool check_infeasibility_certificate(const LinearSystem& system, const RatVec& y);

}  // namespace tverberg
