#include "tverberg/solver.hpp"

#include "test_util.hpp"
#include "tverberg/io.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace tverberg;
using tvtest::make_instance;

namespace {

// Independent oracle: walk every assignment {unused, part 0..r-1}^n with a
// plain odometer and keep the valid ones (parts nonempty, rainbow, minima
// increasing so each family is represented once).
std::vector<Family> brute_force_families(const Instance& inst, bool require_all) {
  const int n = inst.num_vertices();
  const int r = inst.r;
  const int lo = require_all ? 0 : -1;
  std::vector<int> a(n, lo);
  std::vector<Family> out;
  for (;;) {
    Family parts(r);
    for (int v = 0; v < n; ++v)
      if (a[v] >= 0) parts[a[v]].push_back(v);
    bool ok = true;
    for (int i = 0; i < r && ok; ++i)
      if (parts[i].empty() || !rainbow_check(parts[i], inst.coloring)) ok = false;
    for (int i = 0; i + 1 < r && ok; ++i)
      if (parts[i].front() > parts[i + 1].front()) ok = false;
    if (ok) out.push_back(parts);
    int pos = n - 1;
    while (pos >= 0 && a[pos] == r - 1) a[pos--] = lo;
    if (pos < 0) break;
    ++a[pos];
  }
  std::sort(out.begin(), out.end());
  return out;
}

Instance random_small_instance(Rng& rng, int max_n = 7) {
  const int d = static_cast<int>(rng.uniform(1, 2));
  const int r = static_cast<int>(rng.uniform(2, 3));
  const int n = static_cast<int>(rng.uniform(r, max_n));
  std::vector<std::vector<long>> coords;
  std::vector<int> colors(n);
  for (int v = 0; v < n; ++v) {
    std::vector<long> p;
    for (int k = 0; k < d; ++k) p.push_back(rng.uniform(-8, 8));
    coords.push_back(p);
  }
  const int classes = static_cast<int>(rng.uniform(1, n));
  for (int v = 0; v < n; ++v) colors[v] = static_cast<int>(rng.uniform(0, classes - 1));
  std::vector<int> remap(classes, -1);
  int next_id = 0;
  for (int& c : colors) {
    if (remap[c] < 0) remap[c] = next_id++;
    c = remap[c];
  }
  return make_instance(d, r, coords, colors);
}

}  // namespace

TEST_CASE("enumeration of three distinctly colored vertices at r=2") {
  const Instance inst = make_instance(1, 2, {{0}, {1}, {2}}, {0, 1, 2});
  const auto families = enumerate_rainbow_families(inst);
  const std::vector<Family> expected = {
      {{0, 1}, {2}}, {{0, 2}, {1}}, {{0}, {1, 2}}, {{0}, {1}}, {{0}, {2}}, {{1}, {2}},
  };
  CHECK(families == expected);

  auto sorted = families;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == brute_force_families(inst, false));
}

TEST_CASE("two vertices of one color at r=2 admit only the singleton pair") {
  const Instance inst = make_instance(1, 2, {{0}, {1}}, {0, 0});
  CHECK(enumerate_rainbow_families(inst) == std::vector<Family>{{{0}, {1}}});
}

TEST_CASE("two vertices cannot form three disjoint faces") {
  const Instance inst = make_instance(1, 3, {{0}, {1}}, {0, 1});
  CHECK(enumerate_rainbow_families(inst).empty());
}

TEST_CASE("enumeration matches the brute-force oracle on random instances") {
  Rng rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    const Instance inst = random_small_instance(rng);
    for (bool require_all : {false, true}) {
      SearchConfig cfg;
      cfg.require_all_vertices_used = require_all;
      auto families = enumerate_rainbow_families(inst, cfg);
      const std::set<Family> dedup(families.begin(), families.end());
      CHECK(dedup.size() == families.size());
      if (require_all)
        for (const auto& fam : families) {
          std::size_t used = 0;
          for (const auto& face : fam) used += face.size();
          CHECK(used == static_cast<std::size_t>(inst.num_vertices()));
        }
      std::sort(families.begin(), families.end());
      CHECK(families == brute_force_families(inst, require_all));
    }
  }
}

TEST_CASE("solve finds the diagonal Radon partition of the square") {
  const auto witness = solve(tvtest::square_instance());
  REQUIRE(witness.has_value());
  CHECK(witness->faces == Family{{0, 2}, {1, 3}});
  CHECK(witness->point == RatVec{Rat(1), Rat(1)});
  CHECK(witness_valid(tvtest::square_instance(), *witness));
}

TEST_CASE("solve_all lists the diagonal family among the square's witnesses") {
  const auto all = solve_all(tvtest::square_instance());
  REQUIRE_FALSE(all.empty());
  const bool has_diagonals = std::any_of(all.begin(), all.end(), [](const TverbergWitness& w) {
    return w.faces == Family{{0, 2}, {1, 3}};
  });
  CHECK(has_diagonals);
  for (const auto& w : all) CHECK(witness_valid(tvtest::square_instance(), w));
}

TEST_CASE("coincident points form a witness at their shared coordinate") {
  const Instance inst = make_instance(1, 2, {{5}, {5}}, {0, 1});
  const auto all = solve_all(inst);
  REQUIRE_FALSE(all.empty());
  CHECK(all.front().faces == Family{{0}, {1}});
  CHECK(all.front().point == RatVec{Rat(5)});
}

TEST_CASE("seven moment-curve points admit a witness at r=3") {
  const auto witness = solve(tvtest::moment_instance(7));
  REQUIRE(witness.has_value());
  CHECK(witness_valid(tvtest::moment_instance(7), *witness));
  // golden family: first hit in canonical order, frozen for regressions
  CHECK(witness->faces == Family{{0, 3, 5}, {1, 4}, {2, 6}});
}

TEST_CASE("six moment-curve points admit no witness at r=3") {
  CHECK_FALSE(solve(tvtest::moment_instance(6)).has_value());
  CHECK(solve_all(tvtest::moment_instance(6)).empty());
}

TEST_CASE("prefix-LP pruning never changes the witness list") {
  Rng rng(1312);
  for (int trial = 0; trial < 25; ++trial) {
    const Instance inst = random_small_instance(rng);
    SearchConfig with;
    with.prune_with_prefix_lp = true;
    SearchConfig without;
    without.prune_with_prefix_lp = false;
    CHECK(solve_all(inst, with) == solve_all(inst, without));
  }
}

TEST_CASE("max_solutions caps the list to a prefix") {
  const Instance inst = tvtest::moment_instance(7);
  SearchConfig capped;
  capped.max_solutions = 3;
  const auto some = solve_all(inst, capped);
  const auto all = solve_all(inst);
  REQUIRE(all.size() >= 3);
  CHECK(some.size() == 3);
  CHECK(std::equal(some.begin(), some.end(), all.begin()));
}

TEST_CASE("relabeling vertices permutes the witness family set") {
  Rng rng(31337);
  for (int trial = 0; trial < 15; ++trial) {
    const Instance inst = random_small_instance(rng, 6);
    const int n = inst.num_vertices();
    std::vector<int> perm(n);
    for (int v = 0; v < n; ++v) perm[v] = v;
    rng.shuffle(perm);  // perm[old] = new index

    Instance relabeled = inst;
    for (int v = 0; v < n; ++v) relabeled.points[perm[v]] = inst.points[v];
    std::vector<int> colors(n);
    for (int v = 0; v < n; ++v) colors[perm[v]] = inst.coloring.class_of(v);
    std::vector<int> remap(inst.coloring.num_classes(), -1);
    int next_id = 0;
    for (int& c : colors) {
      if (remap[c] < 0) remap[c] = next_id++;
      c = remap[c];
    }
    relabeled.coloring = Coloring::from_class_of(colors);

    std::set<Family> original_families;
    for (const auto& w : solve_all(inst)) original_families.insert(w.faces);
    std::set<Family> mapped_back;
    for (const auto& w : solve_all(relabeled)) {
      Family fam = w.faces;
      for (auto& face : fam)
        for (int& v : face) {
          const auto it = std::find(perm.begin(), perm.end(), v);
          v = static_cast<int>(it - perm.begin());
        }
      mapped_back.insert(canonical_family(fam));
    }
    CHECK(original_families == mapped_back);
  }
}

TEST_CASE("parallel search returns exactly the serial results") {
  Rng rng(8086);
  for (int trial = 0; trial < 10; ++trial) {
    const Instance inst = random_small_instance(rng);
    SearchConfig serial_cfg;
    SearchConfig parallel_cfg;
    parallel_cfg.parallel = true;
    CHECK(solve_all(inst, serial_cfg) == solve_all(inst, parallel_cfg));
    CHECK(solve(inst, serial_cfg) == solve(inst, parallel_cfg));
  }
  // and on a bigger instance where the split actually happens
  const Instance big = tvtest::moment_instance(7);
  SearchConfig par;
  par.parallel = true;
  CHECK(solve_all(big) == solve_all(big, par));
  CHECK(solve(big) == solve(big, par));
}

TEST_CASE("solver rejects broken configs and instances") {
  SearchConfig cfg;
  cfg.max_solutions = 0;
  CHECK_THROWS_AS(solve(tvtest::square_instance(), cfg), std::invalid_argument);

  Instance bad = tvtest::square_instance();
  bad.points.pop_back();
  CHECK_THROWS_AS(solve(bad), std::invalid_argument);
}
