#pragma once

#include "tverberg/model.hpp"

#include <map>
#include <optional>
#include <vector>

namespace tverberg {

struct CommonPoint {
  RatVec point;
  std::vector<std::map<int, Rat>> coefficients;  // per face: vertex -> weight
};

// Exact convex-hull intersection: a point lying in every
// conv{points[v] : v in face}, with per-face convex coefficients, or nullopt
// when the hulls have no common point. Which point of a fat intersection is
// returned depends on the pivot order; only validity is contractual.
std::optional<CommonPoint> common_point(const Family& faces, const Instance& instance);

// True iff no d+1 of the points are affinely dependent (exact determinants).
bool general_position_check(const std::vector<RatVec>& points, int d);

}  // namespace tverberg
