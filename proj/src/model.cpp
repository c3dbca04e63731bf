#include "tverberg/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace tverberg {

Coloring Coloring::from_class_of(std::vector<int> class_of) {
  const int n = static_cast<int>(class_of.size());
  int num_classes = 0;
  for (int c : class_of) {
    if (c < 0) throw std::invalid_argument("negative class index");
    num_classes = std::max(num_classes, c + 1);
  }
  std::vector<std::vector<int>> classes(num_classes);
  for (int v = 0; v < n; ++v) classes[class_of[v]].push_back(v);
  for (int c = 0; c < num_classes; ++c)
    if (classes[c].empty())
      throw std::invalid_argument("class " + std::to_string(c) + " is empty");
  Coloring col;
  col.class_of_ = std::move(class_of);
  col.classes_ = std::move(classes);
  return col;
}

Coloring Coloring::from_classes(std::vector<std::vector<int>> classes) {
  int n = 0;
  for (const auto& cls : classes) n += static_cast<int>(cls.size());
  std::vector<int> class_of(n, -1);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (classes[c].empty())
      throw std::invalid_argument("class " + std::to_string(c) + " is empty");
    for (int v : classes[c]) {
      if (v < 0 || v >= n) throw std::invalid_argument("vertex index out of range");
      if (class_of[v] != -1)
        throw std::invalid_argument("vertex " + std::to_string(v) + " colored twice");
      class_of[v] = static_cast<int>(c);
    }
    std::sort(classes[c].begin(), classes[c].end());
  }
  Coloring col;
  col.class_of_ = std::move(class_of);
  col.classes_ = std::move(classes);
  return col;
}

int Coloring::class_of(int vertex) const {
  if (vertex < 0 || vertex >= num_vertices())
    throw std::out_of_range("vertex " + std::to_string(vertex) + " out of range");
  return class_of_[vertex];
}

const std::vector<int>& Coloring::class_members(int cls) const {
  if (cls < 0 || cls >= num_classes())
    throw std::out_of_range("class " + std::to_string(cls) + " out of range");
  return classes_[cls];
}

std::vector<int> Coloring::class_sizes() const {
  std::vector<int> sizes;
  sizes.reserve(classes_.size());
  for (const auto& cls : classes_) sizes.push_back(static_cast<int>(cls.size()));
  return sizes;
}

Classification validate_coloring(const Coloring& coloring, int r, int d) {
  if (r < 2) return {ColoringKind::Invalid, "multiplicity r must be at least 2"};
  if (d < 1) return {ColoringKind::Invalid, "dimension d must be at least 1"};
  const auto sizes = coloring.class_sizes();
  for (std::size_t i = 0; i < sizes.size(); ++i)
    if (sizes[i] > r - 1)
      return {ColoringKind::Invalid, "class " + std::to_string(i) + " exceeds r-1"};
  const long want = static_cast<long>(d + 1) * (r - 1) + 1;
  if (coloring.num_vertices() != want)
    return {ColoringKind::Invalid,
            "vertex count " + std::to_string(coloring.num_vertices()) +
                " != (d+1)(r-1)+1 = " + std::to_string(want)};
  int singletons = 0;
  int full = 0;
  for (int s : sizes) {
    if (s == 1) ++singletons;
    if (s == r - 1) ++full;
  }
  const bool special = coloring.num_classes() == d + 2 &&
                       (r == 2 ? singletons == d + 2 : (singletons == 1 && full == d + 1));
  return {special ? ColoringKind::Special : ColoringKind::General, ""};
}

void Instance::validate() const {
  if (d < 1) throw std::invalid_argument("dimension d must be at least 1");
  if (r < 2) throw std::invalid_argument("multiplicity r must be at least 2");
  if (coloring.num_vertices() == 0) throw std::invalid_argument("instance has no vertices");
  if (static_cast<int>(points.size()) != coloring.num_vertices())
    throw std::invalid_argument("points/coloring vertex count mismatch");
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != d)
      throw std::invalid_argument("point dimension != d");
}

bool rainbow_check(const Face& face, const Coloring& coloring) {
  std::vector<char> used(coloring.num_classes(), 0);
  for (int v : face) {
    const int c = coloring.class_of(v);  // throws on out-of-range vertex
    if (used[c]) return false;
    used[c] = 1;
  }
  return true;
}

Family canonical_family(Family faces) {
  for (auto& face : faces) std::sort(face.begin(), face.end());
  std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
    if (a.empty() || b.empty()) return b.empty() && !a.empty();
    return a.front() < b.front();
  });
  std::vector<int> seen;
  for (const auto& face : faces)
    for (int v : face) seen.push_back(v);
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw std::invalid_argument("faces overlap");
  return faces;
}

std::optional<std::string> witness_error(const Instance& instance, const TverbergWitness& w) {
  try {
    instance.validate();
  } catch (const std::exception& e) {
    return std::string(e.what());
  }
  const int n = instance.num_vertices();
  if (static_cast<int>(w.faces.size()) != instance.r)
    return "expected " + std::to_string(instance.r) + " faces, got " +
           std::to_string(w.faces.size());
  if (static_cast<int>(w.point.size()) != instance.d) return "common point dimension != d";
  if (w.coefficients.size() != w.faces.size()) return "coefficient blocks != face count";

  std::vector<char> taken(n, 0);
  for (std::size_t i = 0; i < w.faces.size(); ++i) {
    const Face& face = w.faces[i];
    if (face.empty()) return "face " + std::to_string(i) + " is empty";
    for (std::size_t j = 0; j < face.size(); ++j) {
      const int v = face[j];
      if (v < 0 || v >= n) return "face vertex " + std::to_string(v) + " out of range";
      if (j > 0 && face[j - 1] >= v)
        return "face " + std::to_string(i) + " not strictly increasing";
      if (taken[v]) return "faces overlap at vertex " + std::to_string(v);
      taken[v] = 1;
    }
    if (!rainbow_check(face, instance.coloring))
      return "face " + std::to_string(i) + " is not rainbow";
  }

  for (std::size_t i = 0; i < w.faces.size(); ++i) {
    const Face& face = w.faces[i];
    Rat sum = 0;
    for (const auto& [v, coeff] : w.coefficients[i]) {
      if (!std::binary_search(face.begin(), face.end(), v))
        return "coefficient on vertex " + std::to_string(v) + " outside face " +
               std::to_string(i);
      if (coeff < 0)
        return "negative coefficient on vertex " + std::to_string(v);
      sum += coeff;
    }
    if (sum != 1)
      return "coefficients of face " + std::to_string(i) + " sum to " + rat_str(sum);
    for (int k = 0; k < instance.d; ++k) {
      Rat acc = 0;
      for (const auto& [v, coeff] : w.coefficients[i]) acc += coeff * instance.points[v][k];
      if (acc != w.point[k])
        return "face " + std::to_string(i) + " does not reconstruct the common point";
    }
  }
  return std::nullopt;
}

bool witness_valid(const Instance& instance, const TverbergWitness& witness) {
  return !witness_error(instance, witness).has_value();
}

}  // namespace tverberg
