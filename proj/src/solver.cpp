#include "tverberg/solver.hpp"

#include "tverberg/geometry.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tverberg {

namespace {

constexpr int kUnassigned = -2;
constexpr int kUnused = -1;

struct BoxUndo {
  int part;
  int coord;
  bool is_lo;
  Rat old;
};

// Any common point x satisfies, per coordinate k,
//   max_i min(face_i) =: L_k <= x_k <= H_k := min_i max(face_i).
// When a face's minimum already sits at H_k, x_k is pinned to H_k and every
// coefficient on a vertex strictly above H_k must vanish (symmetrically at
// L_k). Dropping those vertices changes nothing about feasibility, and the
// LP answer then only depends on the reduced family, which makes it worth
// caching: families that differ in zero-coefficient passengers share one LP.
class LeafOracle {
 public:
  explicit LeafOracle(const Instance& inst) : inst_(inst) {}

  // CommonPoint for the full family (dropped vertices carry coefficient 0).
  std::optional<CommonPoint> full(const Family& family) {
    bool dead = false;
    const Family reduced = reduce(family, dead);
    if (dead) return std::nullopt;
    const auto& cp = reduced_lp(reduced);
    if (!cp) return std::nullopt;
    CommonPoint out = *cp;
    for (std::size_t i = 0; i < family.size(); ++i)
      for (int v : family[i])
        if (!out.coefficients[i].count(v)) out.coefficients[i][v] = 0;
    return out;
  }

  bool feasible(const Family& family) {
    bool dead = false;
    const Family reduced = reduce(family, dead);
    if (dead) return false;
    return reduced_lp(reduced).has_value();
  }

 private:
  const std::optional<CommonPoint>& reduced_lp(const Family& reduced) {
    auto it = cache_.find(reduced);
    if (it == cache_.end())
      it = cache_.emplace(reduced, common_point(reduced, inst_)).first;
    return it->second;
  }

  Family reduce(const Family& family, bool& dead) const {
    const int d = inst_.d;
    Family cur = family;
    for (;;) {
      std::vector<RatVec> lo(cur.size(), RatVec(d)), hi(cur.size(), RatVec(d));
      for (std::size_t i = 0; i < cur.size(); ++i)
        for (int k = 0; k < d; ++k) {
          lo[i][k] = hi[i][k] = inst_.points[cur[i][0]][k];
          for (int v : cur[i]) {
            const Rat& x = inst_.points[v][k];
            if (x < lo[i][k]) lo[i][k] = x;
            if (x > hi[i][k]) hi[i][k] = x;
          }
        }
      bool changed = false;
      for (int k = 0; k < d; ++k) {
        const Rat* band_lo = &lo[0][k];
        const Rat* band_hi = &hi[0][k];
        for (std::size_t i = 1; i < cur.size(); ++i) {
          if (lo[i][k] > *band_lo) band_lo = &lo[i][k];
          if (hi[i][k] < *band_hi) band_hi = &hi[i][k];
        }
        if (*band_lo > *band_hi) {
          dead = true;
          return {};
        }
        for (std::size_t i = 0; i < cur.size(); ++i) {
          const bool pin_hi = lo[i][k] >= *band_hi;  // x_k pinned to H_k for this face
          const bool pin_lo = hi[i][k] <= *band_lo;
          if (!pin_hi && !pin_lo) continue;
          Face kept;
          for (int v : cur[i]) {
            const Rat& x = inst_.points[v][k];
            if ((pin_hi && x > *band_hi) || (pin_lo && x < *band_lo))
              changed = true;
            else
              kept.push_back(v);
          }
          if (kept.empty()) {  // cannot happen: the pinned value is attained
            dead = true;
            return {};
          }
          cur[i] = std::move(kept);
        }
        if (changed) break;  // boxes are stale, recompute
      }
      if (!changed) return cur;
    }
  }

  const Instance& inst_;
  std::map<Family, std::optional<CommonPoint>> cache_;
};

// Backtracking over vertex assignments: vertex v joins one of the r parts or
// stays unused, parts must stay rainbow and open in index order (so part
// minima increase and each family shows up exactly once). In witness mode
// two always-sound prunes run on top: an exact box prune and, when enabled,
// an LP on parts that can no longer grow.
class Searcher {
 public:
  Searcher(const Instance& inst, const SearchConfig& cfg, bool witness_mode)
      : inst_(inst),
        cfg_(cfg),
        witness_mode_(witness_mode),
        n_(inst.num_vertices()),
        r_(inst.r),
        d_(inst.d),
        nc_(inst.coloring.num_classes()),
        class_of_(inst.coloring.class_of_all()) {
    parts_.resize(r_);
    used_.assign(r_, std::vector<char>(nc_, 0));
    assign_.assign(n_, kUnassigned);
    empty_parts_ = r_;
    if (witness_mode_) {
      build_suffix_boxes();
      build_suffix_class_counts();
      box_lo_.assign(r_, RatVec(d_));
      box_hi_.assign(r_, RatVec(d_));
      undo_.resize(n_);
    }
  }

  void set_oracle(LeafOracle* oracle) { oracle_ = oracle; }

  // visit returns false to stop the search; replay() rebuilds a prefix.
  void run(const std::function<bool(const Family&)>& visit, int start_depth = 0) {
    visit_ = &visit;
    descend(start_depth, 0);
    visit_ = nullptr;
  }

  void run_prefixes(int depth, const std::function<void(const std::vector<int>&)>& emit) {
    prefix_depth_ = depth;
    prefix_emit_ = &emit;
    descend(0, 0);
    prefix_depth_ = -1;
    prefix_emit_ = nullptr;
  }

  void replay(const std::vector<int>& prefix) {
    for (std::size_t v = 0; v < prefix.size(); ++v) {
      if (prefix[v] == kUnused)
        assign_[v] = kUnused;
      else
        push(static_cast<int>(v), prefix[v]);
    }
  }

 private:
  bool descend(int v, int lp_checked_mask) {
    if (v == prefix_depth_) {
      (*prefix_emit_)(std::vector<int>(assign_.begin(), assign_.begin() + v));
      return true;
    }
    if (v == n_) return emit_leaf();
    const int cls = class_of_[v];
    const int remaining_after = n_ - v - 1;
    for (int part = 0; part < r_; ++part) {
      const bool opens = parts_[part].empty();
      if (opens && part > 0 && parts_[part - 1].empty()) break;  // open parts in order
      if (used_[part][cls]) continue;
      if (empty_parts_ - (opens ? 1 : 0) > remaining_after) continue;
      push(v, part);
      bool keep_going = true;
      int mask = lp_checked_mask;
      if (!pruned(v + 1, mask)) keep_going = descend(v + 1, mask);
      pop(v, part);
      if (!keep_going) return false;
    }
    if (!cfg_.require_all_vertices_used && empty_parts_ <= remaining_after) {
      assign_[v] = kUnused;
      bool keep_going = true;
      int mask = lp_checked_mask;
      if (!pruned(v + 1, mask)) keep_going = descend(v + 1, mask);
      assign_[v] = kUnassigned;
      if (!keep_going) return false;
    }
    return true;
  }

  bool emit_leaf() {
    if (empty_parts_ != 0) return true;
    return (*visit_)(parts_);
  }

  bool pruned(int v, int& lp_checked_mask) {
    if (!witness_mode_) return false;
    if (box_pruned(v)) return true;
    if (oracle_ && passenger_pruned(v)) return true;
    if (cfg_.prune_with_prefix_lp && lp_pruned(v, lp_checked_mask)) return true;
    return false;
  }

  // When every remaining vertex would be a zero-coefficient passenger in any
  // part it could still join, the subtree's feasibility equals that of the
  // current parts: one cached LP settles the whole subtree.
  //
  // Forced-zero needs bounds valid for every completion F. Per coordinate,
  // H(F) = min_i max(face_i) is at most Hbar: each part's final max is
  // max(current hi, coords it receives) and remaining vertices split across
  // parts, so the best the adversary can do is hand the largest remaining
  // coords to the parts with the lowest current maxima (L(F) symmetric).
  bool passenger_pruned(int v) {
    if (v >= n_ || empty_parts_ != 0) return false;
    std::vector<const Rat*> hbar(d_), lbar(d_);
    std::vector<const Rat*> own(r_), got(r_);
    for (int k = 0; k < d_; ++k) {
      // Hbar_k: pair part maxima (ascending) with remaining coords (descending)
      for (int i = 0; i < r_; ++i) own[i] = &box_hi_[i][k];
      std::sort(own.begin(), own.end(), [](const Rat* a, const Rat* b) { return *a < *b; });
      top_remaining(v, k, /*largest=*/true, got);
      const Rat* hb = nullptr;
      for (int i = 0; i < r_; ++i) {
        const Rat* reach = (got[i] && *got[i] > *own[i]) ? got[i] : own[i];
        if (!hb || *reach < *hb) hb = reach;
      }
      hbar[k] = hb;
      // Lbar_k: part minima (descending) against smallest remaining coords
      for (int i = 0; i < r_; ++i) own[i] = &box_lo_[i][k];
      std::sort(own.begin(), own.end(), [](const Rat* a, const Rat* b) { return *b < *a; });
      top_remaining(v, k, /*largest=*/false, got);
      const Rat* lb = nullptr;
      for (int i = 0; i < r_; ++i) {
        const Rat* reach = (got[i] && *got[i] < *own[i]) ? got[i] : own[i];
        if (!lb || *reach > *lb) lb = reach;
      }
      lbar[k] = lb;
    }
    for (int u = v; u < n_; ++u) {
      const int cls = class_of_[u];
      for (int i = 0; i < r_; ++i) {
        if (used_[i][cls]) continue;
        bool forced = false;
        for (int k = 0; k < d_ && !forced; ++k) {
          const Rat& x = inst_.points[u][k];
          if (x > *hbar[k]) {
            // face i's final minimum never drops below its potential minimum
            const Rat& plo =
                (box_lo_[i][k] < suffix_lo_[v][k]) ? box_lo_[i][k] : suffix_lo_[v][k];
            if (plo >= *hbar[k]) forced = true;
          } else if (x < *lbar[k]) {
            const Rat& phi =
                (box_hi_[i][k] > suffix_hi_[v][k]) ? box_hi_[i][k] : suffix_hi_[v][k];
            if (phi <= *lbar[k]) forced = true;
          }
        }
        if (!forced) return false;
      }
    }
    return !oracle_->feasible(parts_);
  }

  // The r largest (or smallest) coordinates among unassigned vertices,
  // as pointers sorted extreme-first; missing entries are null.
  void top_remaining(int v, int k, bool largest, std::vector<const Rat*>& out) const {
    std::fill(out.begin(), out.end(), nullptr);
    for (int u = v; u < n_; ++u) {
      const Rat* x = &inst_.points[u][k];
      for (int i = 0; i < r_; ++i) {
        if (!out[i]) {
          out[i] = x;
          break;
        }
        if (largest ? (*x > *out[i]) : (*x < *out[i])) {
          std::swap(x, out[i]);
        }
      }
    }
  }

  // conv(final sigma_i) lies inside box(part_i ∪ {images of vertices >= v});
  // if those boxes have empty intersection no completion can work.
  bool box_pruned(int v) const {
    const bool have_suffix = v < n_;
    for (int k = 0; k < d_; ++k) {
      const Rat* max_lo = nullptr;
      const Rat* min_hi = nullptr;
      for (int i = 0; i < r_; ++i) {
        const Rat* lo;
        const Rat* hi;
        if (parts_[i].empty()) {
          if (!have_suffix) return true;  // empty part, nothing left to fill it
          lo = &suffix_lo_[v][k];
          hi = &suffix_hi_[v][k];
        } else if (have_suffix) {
          lo = (box_lo_[i][k] < suffix_lo_[v][k]) ? &box_lo_[i][k] : &suffix_lo_[v][k];
          hi = (box_hi_[i][k] > suffix_hi_[v][k]) ? &box_hi_[i][k] : &suffix_hi_[v][k];
        } else {
          lo = &box_lo_[i][k];
          hi = &box_hi_[i][k];
        }
        if (!max_lo || *lo > *max_lo) max_lo = lo;
        if (!min_hi || *hi < *min_hi) min_hi = hi;
      }
      if (*max_lo > *min_hi) return true;
    }
    return false;
  }

  // A part is closed once every class still present among unassigned
  // vertices is already used by it; closed parts are final faces, so an
  // empty hull intersection among them kills the whole subtree.
  bool lp_pruned(int v, int& lp_checked_mask) {
    int mask = 0;
    int count = 0;
    for (int i = 0; i < r_; ++i) {
      if (parts_[i].empty()) continue;
      if (part_closed(i, v)) {
        mask |= 1 << i;
        ++count;
      }
    }
    if (count < 2 || mask == lp_checked_mask) return false;
    Family closed;
    for (int i = 0; i < r_; ++i)
      if (mask & (1 << i)) closed.push_back(parts_[i]);
    if (!common_point(closed, inst_).has_value()) return true;
    lp_checked_mask = mask;
    return false;
  }

  bool part_closed(int part, int v) const {
    const int* suffix = &suffix_cls_[static_cast<std::size_t>(v) * nc_];
    for (int c = 0; c < nc_; ++c)
      if (suffix[c] > 0 && !used_[part][c]) return false;
    return true;
  }

  void push(int v, int part) {
    assign_[v] = part;
    if (parts_[part].empty()) --empty_parts_;
    parts_[part].push_back(v);
    used_[part][class_of_[v]] = 1;
    if (!witness_mode_) return;
    auto& undo = undo_[v];
    undo.clear();
    const RatVec& p = inst_.points[v];
    if (parts_[part].size() == 1) {
      for (int k = 0; k < d_; ++k) {
        box_lo_[part][k] = p[k];
        box_hi_[part][k] = p[k];
      }
    } else {
      for (int k = 0; k < d_; ++k) {
        if (p[k] < box_lo_[part][k]) {
          undo.push_back({part, k, true, box_lo_[part][k]});
          box_lo_[part][k] = p[k];
        }
        if (p[k] > box_hi_[part][k]) {
          undo.push_back({part, k, false, box_hi_[part][k]});
          box_hi_[part][k] = p[k];
        }
      }
    }
  }

  void pop(int v, int part) {
    if (witness_mode_) {
      for (auto it = undo_[v].rbegin(); it != undo_[v].rend(); ++it) {
        if (it->is_lo)
          box_lo_[it->part][it->coord] = it->old;
        else
          box_hi_[it->part][it->coord] = it->old;
      }
      undo_[v].clear();
    }
    used_[part][class_of_[v]] = 0;
    parts_[part].pop_back();
    if (parts_[part].empty()) ++empty_parts_;
    assign_[v] = kUnassigned;
  }

  void build_suffix_boxes() {
    suffix_lo_.assign(n_, RatVec(d_));
    suffix_hi_.assign(n_, RatVec(d_));
    for (int v = n_ - 1; v >= 0; --v) {
      for (int k = 0; k < d_; ++k) {
        const Rat& x = inst_.points[v][k];
        if (v == n_ - 1) {
          suffix_lo_[v][k] = x;
          suffix_hi_[v][k] = x;
        } else {
          suffix_lo_[v][k] = std::min(x, suffix_lo_[v + 1][k]);
          suffix_hi_[v][k] = std::max(x, suffix_hi_[v + 1][k]);
        }
      }
    }
  }

  void build_suffix_class_counts() {
    suffix_cls_.assign(static_cast<std::size_t>(n_ + 1) * nc_, 0);
    for (int v = n_ - 1; v >= 0; --v) {
      for (int c = 0; c < nc_; ++c)
        suffix_cls_[static_cast<std::size_t>(v) * nc_ + c] =
            suffix_cls_[static_cast<std::size_t>(v + 1) * nc_ + c];
      suffix_cls_[static_cast<std::size_t>(v) * nc_ + class_of_[v]] += 1;
    }
  }

  const Instance& inst_;
  const SearchConfig& cfg_;
  bool witness_mode_;
  int n_, r_, d_, nc_;
  const std::vector<int>& class_of_;

  std::vector<Face> parts_;
  std::vector<std::vector<char>> used_;
  std::vector<int> assign_;
  int empty_parts_ = 0;

  std::vector<RatVec> box_lo_, box_hi_;
  std::vector<RatVec> suffix_lo_, suffix_hi_;
  std::vector<int> suffix_cls_;
  std::vector<std::vector<BoxUndo>> undo_;

  LeafOracle* oracle_ = nullptr;
  const std::function<bool(const Family&)>* visit_ = nullptr;
  int prefix_depth_ = -1;
  const std::function<void(const std::vector<int>&)>* prefix_emit_ = nullptr;
};

TverbergWitness package_witness(const Instance& inst, const Family& family,
                                const CommonPoint& cp) {
  TverbergWitness w{family, cp.point, cp.coefficients};
  if (auto err = witness_error(inst, w))
    throw std::logic_error("solver produced an invalid witness: " + *err);
  return w;
}

void check_config(const SearchConfig& cfg) {
  if (cfg.max_solutions && *cfg.max_solutions < 1)
    throw std::invalid_argument("max_solutions must be at least 1");
}

std::vector<TverbergWitness> solve_all_serial(const Instance& inst, const SearchConfig& cfg,
                                              Searcher& searcher, int start_depth) {
  LeafOracle oracle(inst);
  searcher.set_oracle(&oracle);
  std::vector<TverbergWitness> out;
  searcher.run(
      [&](const Family& family) {
        auto cp = oracle.full(family);
        if (!cp) return true;
        out.push_back(package_witness(inst, family, *cp));
        return !(cfg.max_solutions &&
                 static_cast<long>(out.size()) >= *cfg.max_solutions);
      },
      start_depth);
  return out;
}

std::optional<TverbergWitness> solve_serial(const Instance& inst, Searcher& searcher,
                                            int start_depth) {
  LeafOracle oracle(inst);
  searcher.set_oracle(&oracle);
  std::optional<TverbergWitness> found;
  searcher.run(
      [&](const Family& family) {
        auto cp = oracle.full(family);
        if (!cp) return true;
        found = package_witness(inst, family, *cp);
        return false;
      },
      start_depth);
  return found;
}

#ifdef _OPENMP

// Live assignment prefixes at the shallowest depth that yields enough of
// them to keep the threads busy. Prefix order is the canonical search order,
// so prefix-indexed merges reproduce the serial output exactly.
std::vector<std::vector<int>> collect_prefixes(const Instance& inst, const SearchConfig& cfg,
                                               int& depth_out) {
  const int n = inst.num_vertices();
  const int want = std::max(32, 8 * omp_get_max_threads());
  std::vector<std::vector<int>> prefixes;
  for (int depth = 1; depth <= std::min(n, 10); ++depth) {
    prefixes.clear();
    Searcher s(inst, cfg, /*witness_mode=*/false);
    s.run_prefixes(depth, [&](const std::vector<int>& p) { prefixes.push_back(p); });
    depth_out = depth;
    if (static_cast<int>(prefixes.size()) >= want) break;
  }
  return prefixes;
}

std::vector<TverbergWitness> solve_all_parallel(const Instance& inst, const SearchConfig& cfg) {
  int depth = 0;
  const auto prefixes = collect_prefixes(inst, cfg, depth);
  std::vector<std::vector<TverbergWitness>> buckets(prefixes.size());
  std::exception_ptr error = nullptr;

#pragma omp parallel for schedule(dynamic, 1)
  for (long p = 0; p < static_cast<long>(prefixes.size()); ++p) {
    try {
      Searcher s(inst, cfg, /*witness_mode=*/true);
      s.replay(prefixes[p]);
      buckets[p] = solve_all_serial(inst, cfg, s, depth);
    } catch (...) {
#pragma omp critical(tv_solver_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  std::vector<TverbergWitness> out;
  for (auto& bucket : buckets)
    for (auto& w : bucket) {
      out.push_back(std::move(w));
      if (cfg.max_solutions && static_cast<long>(out.size()) >= *cfg.max_solutions)
        return out;
    }
  return out;
}

std::optional<TverbergWitness> solve_parallel(const Instance& inst, const SearchConfig& cfg) {
  int depth = 0;
  const auto prefixes = collect_prefixes(inst, cfg, depth);
  std::atomic<long> best_index{std::numeric_limits<long>::max()};
  std::optional<TverbergWitness> best;
  std::exception_ptr error = nullptr;

#pragma omp parallel for schedule(dynamic, 1)
  for (long p = 0; p < static_cast<long>(prefixes.size()); ++p) {
    try {
      if (p > best_index.load(std::memory_order_relaxed)) continue;
      Searcher s(inst, cfg, /*witness_mode=*/true);
      s.replay(prefixes[p]);
      auto found = solve_serial(inst, s, depth);
      if (found) {
#pragma omp critical(tv_solver_best)
        if (p < best_index.load()) {
          best_index.store(p);
          best = std::move(found);
        }
      }
    } catch (...) {
#pragma omp critical(tv_solver_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return best;
}

#endif  // _OPENMP

}  // namespace

void for_each_rainbow_family(const Instance& instance, const SearchConfig& config,
                             const std::function<bool(const Family&)>& visit) {
  instance.validate();
  check_config(config);
  Searcher s(instance, config, /*witness_mode=*/false);
  s.run(visit);
}

std::vector<Family> enumerate_rainbow_families(const Instance& instance,
                                               const SearchConfig& config) {
  std::vector<Family> out;
  for_each_rainbow_family(instance, config, [&](const Family& family) {
    out.push_back(family);
    return true;
  });
  return out;
}

std::optional<TverbergWitness> solve(const Instance& instance, const SearchConfig& config) {
  instance.validate();
  check_config(config);
#ifdef _OPENMP
  if (config.parallel && omp_get_max_threads() > 1) return solve_parallel(instance, config);
#endif
  Searcher s(instance, config, /*witness_mode=*/true);
  return solve_serial(instance, s, 0);
}

std::vector<TverbergWitness> solve_all(const Instance& instance, const SearchConfig& config) {
  instance.validate();
  check_config(config);
#ifdef _OPENMP
  if (config.parallel && omp_get_max_threads() > 1)
    return solve_all_parallel(instance, config);
#endif
  Searcher s(instance, config, /*witness_mode=*/true);
  return solve_all_serial(instance, config, s, 0);
}

}  // namespace tverberg
