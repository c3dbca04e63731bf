#pragma once

#include "tverberg/model.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tverberg {

struct LiftStep {
  std::vector<std::pair<int, int>> paddings;  // (class, vertices added) this layer
  bool fresh_class_created = false;
  std::vector<int> batch;  // the r-1 new vertex indices of this layer
  int target_axis = 0;     // 1-based coordinate the batch maps to (base_d + s)

  bool operator==(const LiftStep&) const = default;
};

// Recipe turning a generally-colored instance into a specially-colored one
// in a higher dimension: pad color classes with fresh vertices, one batch of
// r-1 new vertices per step, each batch sent to its own coordinate axis.
struct LiftPlan {
  int base_d = 0;
  int base_r = 0;
  std::vector<int> original_class_sizes;
  std::vector<LiftStep> steps;
  int final_d = 0;
  int final_n = 0;
  Coloring lifted_coloring;

  bool identity() const { return steps.empty(); }

  bool operator==(const LiftPlan&) const = default;
};

enum class TransformKind {
  SplitSingleton,      // one vertex moved out of a class into a new singleton
  SplitChunk,          // q vertices moved into one new class, 2 <= q <= r-2
  SplitTwoClasses,     // one vertex from each of two classes, one new class
  SplitTwoSingletons,  // two vertices from one class into two new singletons
  GeneralChain,        // arbitrary general coloring, multi-step chain
};

struct Transform {
  TransformKind kind = TransformKind::GeneralChain;
  int chunk_size = 0;  // q, used by SplitChunk only
};

// A layer audit failed during pullback. This is either an implementation bug
// or a counterexample to the reduction argument; it is never repaired.
struct AssertionBreach : std::runtime_error {
  int layer;
  AssertionBreach(int layer_, const std::string& what_);
};

// Identity plan for special colorings; otherwise one fresh singleton class
// plus padding of every class up to size r-1, batched into steps of r-1 new
// vertices in class-then-index order.
LiftPlan plan_lift(const Coloring& coloring, int d, int r);

// Single-step (or two-step) plans for colorings of the specific shapes the
// incremental transforms handle; GeneralChain delegates to plan_lift.
// Throws std::invalid_argument on a shape mismatch.
LiftPlan named_transform(const Transform& transform, const Coloring& coloring, int d, int r);

// Original vertex images zero-padded to final_d coordinates; each new vertex
// maps to the unit vector of its batch's target axis. Output always carries
// a special coloring.
Instance lift_instance(const Instance& instance, const LiftPlan& plan);

// Peels lift layers from the top. Per layer it asserts: (a) some face avoids
// the top batch (pigeonhole), (b) the common point's top coordinate is
// exactly zero, (c) every face's coefficient mass on the batch is exactly
// zero. Then batch vertices are dropped and the point truncated. The result
// is re-verified against the original instance in full.
TverbergWitness pullback(const TverbergWitness& lifted_witness, const Instance& lifted_instance,
                         const LiftPlan& plan, const Instance& original,
                         std::vector<std::string>* audit_log = nullptr);

// Independent full recheck of a witness against an instance.
bool verify_reduction(const Instance& original, const TverbergWitness& witness);

// Text table: class sizes before/after, per-step batches and axes.
std::string plan_summary(const LiftPlan& plan);

}  // namespace tverberg
