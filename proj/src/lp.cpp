#include "tverberg/lp.hpp"

#include <set>
#include <stdexcept>

namespace tverberg {

void LinearSystem::add_row(RatVec coeffs, Rat rhs_value) {
  rows.push_back(std::move(coeffs));
  rhs.push_back(std::move(rhs_value));
}

void LinearSystem::validate() const {
  if (rows.size() != rhs.size()) throw std::invalid_argument("rows/rhs length mismatch");
  for (const auto& row : rows)
    if (static_cast<int>(row.size()) != num_vars)
      throw std::invalid_argument("ragged row in linear system");
  if (!var_labels.empty()) {
    if (static_cast<int>(var_labels.size()) != num_vars)
      throw std::invalid_argument("var_labels length mismatch");
    std::set<std::pair<int, int>> uniq(var_labels.begin(), var_labels.end());
    if (static_cast<int>(uniq.size()) != num_vars)
      throw std::invalid_argument("duplicate variable labels");
  }
}

namespace {

void pivot(std::vector<RatVec>& tableau, RatVec& cost_row, std::vector<int>& basis,
           int pivot_row, int pivot_col) {
  RatVec& prow = tableau[pivot_row];
  const Rat pivot_value = prow[pivot_col];
  for (auto& x : prow)
    if (x != 0) x /= pivot_value;
  prow[pivot_col] = 1;
  const int width = static_cast<int>(prow.size());
  for (std::size_t i = 0; i < tableau.size(); ++i) {
    if (static_cast<int>(i) == pivot_row) continue;
    const Rat factor = tableau[i][pivot_col];
    if (factor == 0) continue;
    for (int j = 0; j < width; ++j)
      if (prow[j] != 0) tableau[i][j] -= factor * prow[j];
    tableau[i][pivot_col] = 0;
  }
  const Rat factor = cost_row[pivot_col];
  if (factor != 0) {
    for (int j = 0; j < width; ++j)
      if (prow[j] != 0) cost_row[j] -= factor * prow[j];
    cost_row[pivot_col] = 0;
  }
  basis[pivot_row] = pivot_col;
}

}  // namespace

FeasibilityResult lp_feasible(const LinearSystem& system) {
  system.validate();
  const int m = static_cast<int>(system.rows.size());
  const int n = system.num_vars;
  const int cols = n + m;  // artificial variable i lives in column n+i

  // Rows scaled to nonnegative right-hand sides; remember the flips so the
  // certificate can be expressed against the original rows.
  std::vector<int> sign(m, 1);
  std::vector<RatVec> tableau(m, RatVec(cols + 1));
  for (int i = 0; i < m; ++i) {
    const bool flip = system.rhs[i] < 0;
    sign[i] = flip ? -1 : 1;
    for (int j = 0; j < n; ++j)
      tableau[i][j] = flip ? Rat(-system.rows[i][j]) : system.rows[i][j];
    tableau[i][n + i] = 1;
    tableau[i][cols] = flip ? Rat(-system.rhs[i]) : system.rhs[i];
  }

  // Minimize the sum of artificials. cost_row[j] holds the reduced cost of
  // column j; cost_row[cols] holds minus the current objective.
  RatVec cost_row(cols + 1);
  for (int j = 0; j <= cols; ++j) {
    Rat colsum = 0;
    for (int i = 0; i < m; ++i) colsum += tableau[i][j];
    if (j >= n && j < cols)
      cost_row[j] = Rat(1) - colsum;
    else
      cost_row[j] = -colsum;
  }

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  for (;;) {
    int enter = -1;
    for (int j = 0; j < cols; ++j)
      if (cost_row[j] < 0) {
        enter = j;  // Bland: lowest eligible index
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    Rat best_ratio;
    for (int i = 0; i < m; ++i) {
      if (tableau[i][enter] <= 0) continue;
      Rat ratio = tableau[i][cols] / tableau[i][enter];
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0)
      throw std::logic_error("phase-1 objective unbounded; broken tableau");
    pivot(tableau, cost_row, basis, leave, enter);
  }

  FeasibilityResult result;
  const Rat objective = -cost_row[cols];
  if (objective > 0) {
    result.feasible = false;
    result.certificate.resize(m);
    // Dual multipliers come off the artificial columns: their reduced cost
    // at optimum is 1 - y_i.
    for (int i = 0; i < m; ++i)
      result.certificate[i] = sign[i] * (Rat(1) - cost_row[n + i]);
  } else {
    result.feasible = true;
    result.assignment.assign(n, Rat(0));
    for (int i = 0; i < m; ++i)
      if (basis[i] < n) result.assignment[basis[i]] = tableau[i][cols];
  }
  return result;
}

bool check_feasible_point(const LinearSystem& system, const RatVec& x) {
  if (static_cast<int>(x.size()) != system.num_vars) return false;
  for (const auto& xi : x)
    if (xi < 0) return false;
  for (std::size_t i = 0; i < system.rows.size(); ++i) {
    Rat acc = 0;
    for (int j = 0; j < system.num_vars; ++j) acc += system.rows[i][j] * x[j];
    if (acc != system.rhs[i]) return false;
  }
  return true;
}

bool check_infeasibility_certificate(const LinearSystem& system, const RatVec& y) {
  if (y.size() != system.rows.size()) return false;
  for (int j = 0; j < system.num_vars; ++j) {
    Rat combo = 0;
    for (std::size_t i = 0; i < system.rows.size(); ++i) combo += y[i] * system.rows[i][j];
    if (combo > 0) return false;
  }
  Rat value = 0;
  for (std::size_t i = 0; i < system.rows.size(); ++i) value += y[i] * system.rhs[i];
  return value > 0;
}

}  // namespace tverberg
