#include "tverberg/reduction.hpp"

#include "test_util.hpp"
#include "tverberg/io.hpp"
#include "tverberg/solver.hpp"

#include <doctest.h>

#include <algorithm>

using namespace tverberg;
using tvtest::make_instance;

namespace {

Coloring coloring_of_sizes(const std::vector<int>& sizes) {
  std::vector<int> class_of;
  for (std::size_t j = 0; j < sizes.size(); ++j)
    for (int t = 0; t < sizes[j]; ++t) class_of.push_back(static_cast<int>(j));
  return Coloring::from_class_of(class_of);
}

Instance random_instance(int d, int r, const char* profile, std::uint64_t seed) {
  return generate_instance({d, r, profile, seed, 40, false});
}

void check_plan_invariants(const LiftPlan& plan) {
  CHECK(plan.final_n == (plan.final_d + 1) * (plan.base_r - 1));
  CHECK(plan.lifted_coloring.num_vertices() == plan.final_n + 1);
  CHECK(validate_coloring(plan.lifted_coloring, plan.base_r, plan.final_d).kind ==
        ColoringKind::Special);
  for (std::size_t s = 0; s < plan.steps.size(); ++s) {
    const LiftStep& step = plan.steps[s];
    CHECK(step.batch.size() == static_cast<std::size_t>(plan.base_r - 1));
    CHECK(step.target_axis == plan.base_d + static_cast<int>(s) + 1);
    int padded = 0;
    for (const auto& [cls, count] : step.paddings) {
      CHECK(count >= 1);
      padded += count;
    }
    CHECK(padded == plan.base_r - 1);
  }
}

}  // namespace

TEST_CASE("special colorings get the identity plan") {
  const Coloring special = coloring_of_sizes({2, 2, 2, 1});
  const LiftPlan plan = plan_lift(special, 2, 3);
  CHECK(plan.identity());
  CHECK(plan.final_d == 2);
  CHECK(plan.final_n == 6);
  CHECK(plan.lifted_coloring == special);
}

TEST_CASE("lift plan for d=1 r=3 sizes [2,1,1,1]") {
  const LiftPlan plan = plan_lift(coloring_of_sizes({2, 1, 1, 1}), 1, 3);
  CHECK(plan.final_d == 3);
  CHECK(plan.final_n == 8);
  CHECK(plan.steps.size() == 2);
  int new_vertices = 0;
  for (const auto& step : plan.steps) new_vertices += static_cast<int>(step.batch.size());
  CHECK(new_vertices == 4);
  CHECK(plan.lifted_coloring.class_sizes() == std::vector<int>{2, 2, 2, 2, 1});
  check_plan_invariants(plan);
}

TEST_CASE("lift plan for d=1 r=3 singletons") {
  const LiftPlan plan = plan_lift(coloring_of_sizes({1, 1, 1, 1, 1}), 1, 3);
  CHECK(plan.final_d == 4);
  CHECK(plan.final_n == 10);
  CHECK(plan.steps.size() == 3);
  CHECK(plan.steps[0].target_axis == 2);
  CHECK(plan.steps[1].target_axis == 3);
  CHECK(plan.steps[2].target_axis == 4);
  CHECK(plan.steps[2].fresh_class_created);
  CHECK_FALSE(plan.steps[0].fresh_class_created);
  check_plan_invariants(plan);
}

TEST_CASE("plan_lift rejects invalid colorings") {
  CHECK_THROWS_AS(plan_lift(coloring_of_sizes({3, 2, 1, 1}), 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(plan_lift(coloring_of_sizes({2, 2, 1}), 2, 3), std::invalid_argument);
}

TEST_CASE("plan invariants hold over random general colorings") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance inst = random_instance(seed % 2 ? 1 : 2, seed % 3 ? 3 : 2, "random", seed);
    const LiftPlan plan = plan_lift(inst.coloring, inst.d, inst.r);
    check_plan_invariants(plan);
    // class count determines the lift depth
    const int c = inst.coloring.num_classes();
    if (validate_coloring(inst.coloring, inst.r, inst.d).kind == ColoringKind::General &&
        !plan.identity())
      CHECK(plan.final_d == c - 1);
  }
}

TEST_CASE("lift_instance pads originals with zeros and sends batches to axes") {
  std::vector<std::vector<long>> coords = {{0}, {0}, {0}, {0}, {0}};
  Instance inst = make_instance(1, 3, coords, {0, 0, 1, 2, 3});
  inst.points[0][0] = make_rat(3, 2);
  const LiftPlan plan = plan_lift(inst.coloring, 1, 3);
  REQUIRE(plan.steps.size() == 2);

  const Instance lifted = lift_instance(inst, plan);
  CHECK(lifted.d == 3);
  CHECK(lifted.num_vertices() == 9);
  CHECK(lifted.points[0] == RatVec{make_rat(3, 2), Rat(0), Rat(0)});
  const int first_batch1 = plan.steps[0].batch[0];
  const int first_batch2 = plan.steps[1].batch[0];
  CHECK(lifted.points[first_batch1] == RatVec{Rat(0), Rat(1), Rat(0)});
  CHECK(lifted.points[first_batch2] == RatVec{Rat(0), Rat(0), Rat(1)});
  CHECK(validate_coloring(lifted.coloring, lifted.r, lifted.d).kind == ColoringKind::Special);

  // identity lift returns the instance unchanged
  const Instance special = random_instance(2, 3, "special", 4);
  const LiftPlan id = plan_lift(special.coloring, 2, 3);
  CHECK(lift_instance(special, id) == special);

  // mismatched plan is rejected
  const Instance other = make_instance(1, 3, coords, {0, 1, 1, 2, 3});
  CHECK_THROWS_AS(lift_instance(other, plan), std::invalid_argument);
}

TEST_CASE("lifted instances always classify special with the right size") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = random_instance(1, 3, "random", seed);
    const LiftPlan plan = plan_lift(inst.coloring, inst.d, inst.r);
    const Instance lifted = lift_instance(inst, plan);
    CHECK(validate_coloring(lifted.coloring, lifted.r, lifted.d).kind ==
          ColoringKind::Special);
    CHECK(lifted.num_vertices() == (lifted.d + 1) * (lifted.r - 1) + 1);
  }
}

TEST_CASE("restricting a lifted rainbow face to original vertices stays rainbow") {
  Rng rng(555);
  for (int trial = 0; trial < 40; ++trial) {
    const Instance inst = random_instance(1, 3, "random", rng.next());
    const LiftPlan plan = plan_lift(inst.coloring, inst.d, inst.r);
    const Instance lifted = lift_instance(inst, plan);
    const int n0 = inst.num_vertices();
    // random rainbow face of the lifted coloring: at most one per class
    Face face;
    for (int c = 0; c < lifted.coloring.num_classes(); ++c) {
      const auto& members = lifted.coloring.class_members(c);
      if (rng.uniform(0, 1))
        face.push_back(members[rng.uniform(0, static_cast<long>(members.size()) - 1)]);
    }
    std::sort(face.begin(), face.end());
    REQUIRE(rainbow_check(face, lifted.coloring));
    Face restricted;
    for (int v : face)
      if (v < n0) restricted.push_back(v);
    CHECK(rainbow_check(restricted, inst.coloring));
  }
}

TEST_CASE("end-to-end pullback on the collinear singleton line") {
  const Instance inst = make_instance(1, 3, {{0}, {1}, {2}, {3}, {4}}, {0, 1, 2, 3, 4});
  const LiftPlan plan = plan_lift(inst.coloring, 1, 3);
  const Instance lifted = lift_instance(inst, plan);
  const auto lifted_witness = solve(lifted);
  REQUIRE(lifted_witness.has_value());

  std::vector<std::string> audit;
  const TverbergWitness back = pullback(*lifted_witness, lifted, plan, inst, &audit);
  CHECK(audit.size() == plan.steps.size());
  CHECK(verify_reduction(inst, back));
  // faces shrink to original vertices, the point to d coordinates
  for (const Face& face : back.faces)
    for (int v : face) CHECK(v < inst.num_vertices());
  CHECK(back.point.size() == 1);

  // existence agreement with the direct solve
  CHECK(solve(inst).has_value());
}

TEST_CASE("pullback rejects witnesses that do not match the lifted instance") {
  const Instance inst = make_instance(1, 3, {{0}, {1}, {2}, {3}, {4}}, {0, 1, 2, 3, 4});
  const LiftPlan plan = plan_lift(inst.coloring, 1, 3);
  const Instance lifted = lift_instance(inst, plan);
  const auto w = solve(lifted);
  REQUIRE(w.has_value());

  TverbergWitness tampered = *w;
  tampered.coefficients[0].begin()->second += make_rat(1, 1000000);
  CHECK_THROWS_AS(pullback(tampered, lifted, plan, inst), std::invalid_argument);

  // pullback against a different original is refused
  Instance other = inst;
  other.points[0][0] = Rat(99);
  CHECK_THROWS_AS(pullback(*w, lifted, plan, other), std::invalid_argument);
}

TEST_CASE("verify_reduction accepts pullback output and rejects corruption") {
  const Instance inst = make_instance(1, 3, {{0}, {2}, {5}, {7}, {9}}, {0, 1, 2, 3, 4});
  const LiftPlan plan = plan_lift(inst.coloring, 1, 3);
  const Instance lifted = lift_instance(inst, plan);
  const auto w = solve(lifted);
  REQUIRE(w.has_value());
  const TverbergWitness back = pullback(*w, lifted, plan, inst);
  CHECK(verify_reduction(inst, back));

  TverbergWitness bad = back;
  bad.coefficients[0].begin()->second += make_rat(1, 1000000);
  CHECK_FALSE(verify_reduction(inst, bad));

  TverbergWitness overlap = back;
  overlap.faces[0].push_back(overlap.faces[1][0]);
  std::sort(overlap.faces[0].begin(), overlap.faces[0].end());
  CHECK_FALSE(verify_reduction(inst, overlap));
}

TEST_CASE("round-trip over random instances and colorings") {
  struct Case {
    int d, r, trials;
  };
  for (const Case c : {Case{1, 2, 10}, Case{1, 3, 8}, Case{2, 2, 10}, Case{2, 3, 3}}) {
    for (int t = 0; t < c.trials; ++t) {
      const Instance inst = random_instance(c.d, c.r, "random", 1000 * c.d + 100 * c.r + t);
      const LiftPlan plan = plan_lift(inst.coloring, c.d, c.r);
      const Instance lifted = lift_instance(inst, plan);
      const auto lw = solve(lifted);
      // r prime here, so the lifted special instance always has a witness
      REQUIRE(lw.has_value());
      const TverbergWitness back = pullback(*lw, lifted, plan, inst);
      CHECK(verify_reduction(inst, back));
      // existence transfer: direct solve agrees
      CHECK(solve(inst).has_value());
    }
  }
}

TEST_CASE("named transform: moving one vertex into a fresh singleton") {
  // d=2 r=3, special shape with one class short by one plus an extra singleton
  const Coloring col = coloring_of_sizes({1, 2, 2, 1, 1});
  const LiftPlan plan = named_transform({TransformKind::SplitSingleton, 0}, col, 2, 3);
  CHECK(plan.steps.size() == 1);
  CHECK(plan.final_d == 3);
  CHECK(plan.steps[0].batch.size() == 2);
  CHECK(plan.steps[0].paddings ==
        std::vector<std::pair<int, int>>{{0, 1}, {4, 1}});
  check_plan_invariants(plan);

  CHECK_THROWS_AS(named_transform({TransformKind::SplitSingleton, 0},
                                  coloring_of_sizes({2, 2, 2, 1}), 2, 3),
                  std::invalid_argument);
}

TEST_CASE("named transform: chunk size boundaries") {
  const Coloring col = coloring_of_sizes({2, 4, 1, 2});  // d=1, r=5, q=2 shape
  // q outside [2, r-2] is a shape mismatch
  CHECK_THROWS_AS(named_transform({TransformKind::SplitChunk, 1}, col, 1, 5),
                  std::invalid_argument);
  CHECK_THROWS_AS(named_transform({TransformKind::SplitChunk, 4}, col, 1, 5),
                  std::invalid_argument);
  // q=2 on the matching shape: |C0| = r-1-q = 2, |C_new| = q = 2
  const LiftPlan plan = named_transform({TransformKind::SplitChunk, 2}, col, 1, 5);
  CHECK(plan.steps.size() == 1);
  CHECK(plan.final_d == 2);
  check_plan_invariants(plan);
}

TEST_CASE("named transform: two classes each losing one vertex") {
  const Coloring col = coloring_of_sizes({1, 1, 2, 1, 2});  // d=2 r=3
  const LiftPlan plan = named_transform({TransformKind::SplitTwoClasses, 0}, col, 2, 3);
  CHECK(plan.steps.size() == 1);
  CHECK(plan.final_d == 3);
  CHECK(plan.steps[0].paddings ==
        std::vector<std::pair<int, int>>{{0, 1}, {1, 1}});
  check_plan_invariants(plan);
}

TEST_CASE("named transform: two fresh singletons need two steps") {
  const Coloring col = coloring_of_sizes({1, 3, 3, 1, 1, 1});  // d=2 r=4
  const LiftPlan plan = named_transform({TransformKind::SplitTwoSingletons, 0}, col, 2, 4);
  CHECK(plan.steps.size() == 2);
  CHECK(plan.final_d == 4);
  CHECK(plan.steps[0].batch.size() == 3);
  CHECK(plan.steps[1].batch.size() == 3);
  check_plan_invariants(plan);

  CHECK_THROWS_AS(named_transform({TransformKind::SplitTwoSingletons, 0},
                                  coloring_of_sizes({1, 2, 2, 1, 1}), 2, 3),
                  std::invalid_argument);
}

TEST_CASE("general chain delegates to plan_lift") {
  const Coloring col = coloring_of_sizes({1, 1, 1, 1, 1});
  CHECK(named_transform({TransformKind::GeneralChain, 0}, col, 1, 3) == plan_lift(col, 1, 3));
}

TEST_CASE("named transforms round-trip end to end") {
  Rng rng(9009);
  auto run = [&](TransformKind kind, int q, const std::vector<int>& sizes, int d, int r) {
    std::vector<std::vector<long>> coords;
    std::vector<int> class_of;
    int n = 0;
    for (int s : sizes) n += s;
    for (int v = 0; v < n; ++v) {
      std::vector<long> p;
      for (int k = 0; k < d; ++k) p.push_back(rng.uniform(-30, 30));
      coords.push_back(p);
    }
    for (std::size_t j = 0; j < sizes.size(); ++j)
      for (int t = 0; t < sizes[j]; ++t) class_of.push_back(static_cast<int>(j));
    const Instance inst = make_instance(d, r, coords, class_of);
    const LiftPlan plan = named_transform({kind, q}, inst.coloring, d, r);
    const Instance lifted = lift_instance(inst, plan);
    const auto lw = solve(lifted);
    if (!lw) return;  // existence is only guaranteed at prime r
    const TverbergWitness back = pullback(*lw, lifted, plan, inst);
    CHECK(verify_reduction(inst, back));
  };
  for (int t = 0; t < 4; ++t) {
    run(TransformKind::SplitSingleton, 0, {1, 2, 2, 1, 1}, 2, 3);
    run(TransformKind::SplitTwoClasses, 0, {1, 1, 2, 1, 2}, 2, 3);
  }
  run(TransformKind::SplitChunk, 2, {1, 3, 1, 2}, 1, 4);
  run(TransformKind::SplitTwoSingletons, 0, {1, 3, 1, 1, 1}, 1, 4);  // smallest r=4 shape
}
