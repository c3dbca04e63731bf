#pragma once

#include "tverberg/model.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace tverberg {

struct SearchConfig {
  bool require_all_vertices_used = false;
  std::optional<long> max_solutions;  // >= 1 when present
  bool prune_with_prefix_lp = true;
  bool parallel = false;  // same results either way, subtrees split across threads
};

// Every family of r pairwise-disjoint nonempty rainbow faces, each exactly
// once. Canonical order: vertices assigned in increasing index, parts tried
// in order, part relabeling broken by requiring part minima increasing.
// Visitor returns false to stop early.
void for_each_rainbow_family(const Instance& instance, const SearchConfig& config,
                             const std::function<bool(const Family&)>& visit);

std::vector<Family> enumerate_rainbow_families(const Instance& instance,
                                               const SearchConfig& config = {});

// First family in canonical order whose face hulls share a point, packaged
// as a fully verified witness; nullopt when no family admits one.
std::optional<TverbergWitness> solve(const Instance& instance, const SearchConfig& config = {});

// All witnesses in canonical order, capped by config.max_solutions.
std::vector<TverbergWitness> solve_all(const Instance& instance, const SearchConfig& config = {});

}  // namespace tverberg
