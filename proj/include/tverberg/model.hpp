#pragma once

#include "tverberg/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tverberg {

using Face = std::vector<int>;     // strictly increasing vertex indices
using Family = std::vector<Face>;  // faces ordered by their minimum vertex

// Partition of the vertex set {0..n-1} into nonempty color classes.
// Immutable after construction; construction validates consistency.
class Coloring {
 public:
  Coloring() = default;

  static Coloring from_class_of(std::vector<int> class_of);
  static Coloring from_classes(std::vector<std::vector<int>> classes);

  int num_vertices() const { return static_cast<int>(class_of_.size()); }
  int num_classes() const { return static_cast<int>(classes_.size()); }
  int class_of(int vertex) const;
  const std::vector<int>& class_members(int cls) const;
  const std::vector<int>& class_of_all() const { return class_of_; }
  std::vector<int> class_sizes() const;

  bool operator==(const Coloring&) const = default;

 private:
  std::vector<int> class_of_;
  std::vector<std::vector<int>> classes_;  // each sorted ascending
};

enum class ColoringKind { Special, General, Invalid };

struct Classification {
  ColoringKind kind = ColoringKind::Invalid;
  std::string reason;  // first violated rule, set when Invalid
  bool ok() const { return kind != ColoringKind::Invalid; }
};

// Special: d+2 classes, d+1 of size r-1 plus one singleton.
// General: every class size <= r-1 on (d+1)(r-1)+1 vertices.
// Special colorings satisfy the general rules and are reported as Special.
Classification validate_coloring(const Coloring& coloring, int r, int d);

// A colored point configuration: vertex i of the simplex maps to points[i].
struct Instance {
  int d = 0;
  int r = 0;
  std::vector<RatVec> points;
  Coloring coloring;

  int num_vertices() const { return coloring.num_vertices(); }
  void validate() const;  // structural checks; throws std::invalid_argument

  bool operator==(const Instance&) const = default;
};

// True iff no two vertices of the face share a color class.
bool rainbow_check(const Face& face, const Coloring& coloring);

// Sorts each face ascending and orders faces by minimum vertex.
// Throws std::invalid_argument when faces overlap.
Family canonical_family(Family faces);

struct TverbergWitness {
  Family faces;
  RatVec point;
  std::vector<std::map<int, Rat>> coefficients;  // per face: vertex -> weight

  bool operator==(const TverbergWitness&) const = default;
};

// Full recheck of every witness invariant against the instance, in exact
// arithmetic: disjoint nonempty rainbow faces, convex coefficients summing
// to one, exact reconstruction of the common point. nullopt when valid.
std::optional<std::string> witness_error(const Instance& instance, const TverbergWitness& witness);
bool witness_valid(const Instance& instance, const TverbergWitness& witness);

}  // namespace tverberg
