#include "tverberg/geometry.hpp"

#include "tverberg/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace tverberg {

namespace {

Rat determinant(std::vector<RatVec> m) {
  const int n = static_cast<int>(m.size());
  Rat result = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int row = col; row < n; ++row)
      if (m[row][col] != 0) {
        piv = row;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      result = -result;
    }
    result *= m[col][col];
    for (int row = col + 1; row < n; ++row) {
      if (m[row][col] == 0) continue;
      const Rat factor = m[row][col] / m[col][col];
      for (int j = col; j < n; ++j) m[row][j] -= factor * m[col][j];
    }
  }
  return result;
}

}  // namespace

bool general_position_check(const std::vector<RatVec>& points, int d) {
  if (d < 1) throw std::invalid_argument("dimension d must be at least 1");
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != d)
      throw std::invalid_argument("point dimension != d");
  const int n = static_cast<int>(points.size());
  const int k = d + 1;
  if (n < k) return true;

  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    // d+1 points are affinely dependent iff det[1 | p] vanishes
    std::vector<RatVec> m(k, RatVec(k));
    for (int row = 0; row < k; ++row) {
      m[row][0] = 1;
      for (int c = 0; c < d; ++c) m[row][c + 1] = points[idx[row]][c];
    }
    if (determinant(std::move(m)) == 0) return false;

    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
  return true;
}

std::optional<CommonPoint> common_point(const Family& faces, const Instance& instance) {
  instance.validate();
  if (faces.empty()) throw std::invalid_argument("no faces given");
  const int n = instance.num_vertices();
  const int d = instance.d;

  Family sorted = faces;
  for (auto& face : sorted) {
    if (face.empty()) throw std::invalid_argument("empty face");
    std::sort(face.begin(), face.end());
    for (int v : face)
      if (v < 0 || v >= n)
        throw std::out_of_range("face vertex " + std::to_string(v) + " out of range");
  }

  // Exact interval prefilter: per coordinate, the hulls live inside their
  // min/max boxes; an empty box intersection settles the answer for free.
  for (int k = 0; k < d; ++k) {
    const Rat* lo = nullptr;
    const Rat* hi = nullptr;
    for (const auto& face : sorted) {
      const Rat* flo = &instance.points[face[0]][k];
      const Rat* fhi = flo;
      for (int v : face) {
        const Rat& x = instance.points[v][k];
        if (x < *flo) flo = &x;
        if (x > *fhi) fhi = &x;
      }
      if (!lo || *flo > *lo) lo = flo;
      if (!hi || *fhi < *hi) hi = fhi;
    }
    if (*lo > *hi) return std::nullopt;
  }

  // Variables: one convex coefficient per (face, vertex). Rows: coefficients
  // of each face sum to 1; the weighted point of face 0 equals that of every
  // other face, coordinate by coordinate.
  LinearSystem sys;
  std::vector<int> offset(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    offset[i] = sys.num_vars;
    for (int v : sorted[i]) sys.var_labels.emplace_back(static_cast<int>(i), v);
    sys.num_vars += static_cast<int>(sorted[i].size());
  }
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    RatVec row(sys.num_vars, Rat(0));
    for (std::size_t j = 0; j < sorted[i].size(); ++j) row[offset[i] + j] = 1;
    sys.add_row(std::move(row), Rat(1));
  }
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    for (int k = 0; k < d; ++k) {
      RatVec row(sys.num_vars, Rat(0));
      for (std::size_t j = 0; j < sorted[0].size(); ++j)
        row[offset[0] + j] = instance.points[sorted[0][j]][k];
      for (std::size_t j = 0; j < sorted[i].size(); ++j)
        row[offset[i] + j] = -instance.points[sorted[i][j]][k];
      sys.add_row(std::move(row), Rat(0));
    }
  }

  const FeasibilityResult lp = lp_feasible(sys);
  if (!lp.feasible) return std::nullopt;

  CommonPoint result;
  result.point.assign(d, Rat(0));
  for (std::size_t j = 0; j < sorted[0].size(); ++j)
    for (int k = 0; k < d; ++k)
      result.point[k] += lp.assignment[offset[0] + j] * instance.points[sorted[0][j]][k];
  result.coefficients.resize(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = 0; j < sorted[i].size(); ++j)
      result.coefficients[i][sorted[i][j]] = lp.assignment[offset[i] + j];
  return result;
}

}  // namespace tverberg
