#include "tverberg/reduction.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tverberg {

AssertionBreach::AssertionBreach(int layer_, const std::string& what_)
    : std::runtime_error("pullback audit breach at layer " + std::to_string(layer_) + ": " +
                         what_),
      layer(layer_) {}

namespace {

// Appends the new vertices (class-then-index order), slices them into
// batches of r-1 and fills in the derived plan fields.
void build_steps(LiftPlan& plan, const Coloring& base, const std::vector<int>& new_classes) {
  const int r = plan.base_r;
  const int n0 = base.num_vertices();
  const int base_classes = base.num_classes();
  if (new_classes.size() % static_cast<std::size_t>(r - 1) != 0)
    throw std::logic_error("new vertex count is not a multiple of r-1");
  const int steps = static_cast<int>(new_classes.size()) / (r - 1);

  std::vector<int> lifted_class_of = base.class_of_all();
  lifted_class_of.insert(lifted_class_of.end(), new_classes.begin(), new_classes.end());
  plan.lifted_coloring = Coloring::from_class_of(std::move(lifted_class_of));

  for (int s = 1; s <= steps; ++s) {
    LiftStep step;
    step.target_axis = plan.base_d + s;
    for (int t = 0; t < r - 1; ++t) {
      const int idx = (s - 1) * (r - 1) + t;
      step.batch.push_back(n0 + idx);
      const int cls = new_classes[idx];
      if (cls >= base_classes) step.fresh_class_created = true;
      if (!step.paddings.empty() && step.paddings.back().first == cls)
        ++step.paddings.back().second;
      else
        step.paddings.emplace_back(cls, 1);
    }
    plan.steps.push_back(std::move(step));
  }
  plan.final_d = plan.base_d + steps;
  plan.final_n = (plan.final_d + 1) * (r - 1);

  if (plan.lifted_coloring.num_vertices() != plan.final_n + 1)
    throw std::logic_error("lifted vertex count mismatch");
  if (validate_coloring(plan.lifted_coloring, r, plan.final_d).kind != ColoringKind::Special)
    throw std::logic_error("lifted coloring is not special");
}

[[noreturn]] void shape_mismatch(const std::string& what) {
  throw std::invalid_argument("transform shape mismatch: " + what);
}

int find_first_of_size(const std::vector<int>& sizes, int size, const std::vector<int>& skip) {
  for (int i = 0; i < static_cast<int>(sizes.size()); ++i)
    if (sizes[i] == size && std::find(skip.begin(), skip.end(), i) == skip.end()) return i;
  return -1;
}

int find_last_of_size(const std::vector<int>& sizes, int size, const std::vector<int>& skip) {
  for (int i = static_cast<int>(sizes.size()) - 1; i >= 0; --i)
    if (sizes[i] == size && std::find(skip.begin(), skip.end(), i) == skip.end()) return i;
  return -1;
}

// The classes not playing a named role must be full_wanted classes of size
// r-1 plus exactly one singleton (the surviving special singleton). Callers
// guarantee r >= 3, so the two sizes are distinct.
void check_residual(const std::vector<int>& sizes, const std::vector<int>& taken, int r,
                    int full_wanted) {
  int singles = 0;
  int full = 0;
  for (int i = 0; i < static_cast<int>(sizes.size()); ++i) {
    if (std::find(taken.begin(), taken.end(), i) != taken.end()) continue;
    if (sizes[i] == 1)
      ++singles;
    else if (sizes[i] == r - 1)
      ++full;
    else
      shape_mismatch("class " + std::to_string(i) + " has unexpected size " +
                     std::to_string(sizes[i]));
  }
  if (singles != 1 || full != full_wanted)
    shape_mismatch("class size profile does not match the transform");
}

}  // namespace

LiftPlan plan_lift(const Coloring& coloring, int d, int r) {
  const Classification cls = validate_coloring(coloring, r, d);
  if (!cls.ok()) throw std::invalid_argument("coloring not liftable: " + cls.reason);

  LiftPlan plan;
  plan.base_d = d;
  plan.base_r = r;
  plan.original_class_sizes = coloring.class_sizes();
  if (cls.kind == ColoringKind::Special) {
    plan.final_d = d;
    plan.final_n = (d + 1) * (r - 1);
    plan.lifted_coloring = coloring;
    return plan;
  }

  // One fresh singleton class, every original class padded to r-1.
  const int c = coloring.num_classes();
  std::vector<int> new_classes;
  for (int j = 0; j < c; ++j)
    for (int t = plan.original_class_sizes[j]; t < r - 1; ++t) new_classes.push_back(j);
  new_classes.push_back(c);
  if (static_cast<int>(new_classes.size()) != (c - 1 - d) * (r - 1))
    throw std::logic_error("lift arithmetic broken");
  build_steps(plan, coloring, new_classes);
  return plan;
}

LiftPlan named_transform(const Transform& transform, const Coloring& coloring, int d, int r) {
  if (transform.kind == TransformKind::GeneralChain) return plan_lift(coloring, d, r);

  const Classification cls = validate_coloring(coloring, r, d);
  if (!cls.ok()) throw std::invalid_argument("coloring not liftable: " + cls.reason);
  const std::vector<int> sizes = coloring.class_sizes();
  const int c = static_cast<int>(sizes.size());

  std::map<int, int> pad;  // class -> vertices added
  switch (transform.kind) {
    case TransformKind::SplitSingleton: {
      if (r < 3) shape_mismatch("requires r >= 3");
      if (c != d + 3) shape_mismatch("expected d+3 classes");
      const int c0 = find_first_of_size(sizes, r - 2, {});
      if (c0 < 0) shape_mismatch("no class of size r-2");
      const int cnew = find_last_of_size(sizes, 1, {c0});
      if (cnew < 0) shape_mismatch("no singleton class to absorb the split vertex");
      check_residual(sizes, {c0, cnew}, r, d);
      pad[c0] = 1;
      pad[cnew] = r - 2;
      break;
    }
    case TransformKind::SplitChunk: {
      const int q = transform.chunk_size;
      if (q < 2 || q > r - 2) shape_mismatch("chunk size q outside [2, r-2]");
      if (c != d + 3) shape_mismatch("expected d+3 classes");
      const int c0 = find_first_of_size(sizes, r - 1 - q, {});
      if (c0 < 0) shape_mismatch("no class of size r-1-q");
      const int cnew = find_last_of_size(sizes, q, {c0});
      if (cnew < 0) shape_mismatch("no class of size q");
      check_residual(sizes, {c0, cnew}, r, d);
      pad[c0] = q;
      pad[cnew] = r - 1 - q;
      break;
    }
    case TransformKind::SplitTwoClasses: {
      if (r < 3) shape_mismatch("requires r >= 3");
      if (c != d + 3) shape_mismatch("expected d+3 classes");
      const int c0 = find_first_of_size(sizes, r - 2, {});
      if (c0 < 0) shape_mismatch("no class of size r-2");
      const int c1 = find_first_of_size(sizes, r - 2, {c0});
      if (c1 < 0) shape_mismatch("only one class of size r-2");
      const int cnew = find_last_of_size(sizes, 2, {c0, c1});
      if (cnew < 0) shape_mismatch("no class of size 2");
      check_residual(sizes, {c0, c1, cnew}, r, d - 1);
      pad[c0] = 1;
      pad[c1] = 1;
      if (r > 3) pad[cnew] = r - 3;
      break;
    }
    case TransformKind::SplitTwoSingletons: {
      if (r < 4) shape_mismatch("requires r >= 4");
      if (c != d + 4) shape_mismatch("expected d+4 classes");
      const int c0 = find_first_of_size(sizes, r - 3, {});
      if (c0 < 0) shape_mismatch("no class of size r-3");
      const int cnew2 = find_last_of_size(sizes, 1, {c0});
      const int cnew1 = cnew2 < 0 ? -1 : find_last_of_size(sizes, 1, {c0, cnew2});
      if (cnew1 < 0) shape_mismatch("need two singleton classes to absorb the split");
      check_residual(sizes, {c0, cnew1, cnew2}, r, d);
      pad[c0] = 2;
      pad[cnew1] = r - 2;
      pad[cnew2] = r - 2;
      break;
    }
    case TransformKind::GeneralChain:
      break;  // handled above
  }

  std::vector<int> new_classes;
  for (const auto& [cls_idx, count] : pad)
    for (int i = 0; i < count; ++i) new_classes.push_back(cls_idx);

  LiftPlan plan;
  plan.base_d = d;
  plan.base_r = r;
  plan.original_class_sizes = sizes;
  build_steps(plan, coloring, new_classes);
  return plan;
}

Instance lift_instance(const Instance& instance, const LiftPlan& plan) {
  instance.validate();
  if (instance.d != plan.base_d || instance.r != plan.base_r)
    throw std::invalid_argument("plan parameters do not match the instance");
  const auto& base_cls = instance.coloring.class_of_all();
  const auto& lifted_cls = plan.lifted_coloring.class_of_all();
  if (base_cls.size() > lifted_cls.size() ||
      !std::equal(base_cls.begin(), base_cls.end(), lifted_cls.begin()))
    throw std::invalid_argument("plan was not built from this instance's coloring");

  if (plan.identity()) return instance;

  Instance out;
  out.d = plan.final_d;
  out.r = instance.r;
  out.coloring = plan.lifted_coloring;
  out.points.reserve(plan.final_n + 1);
  for (const auto& p : instance.points) {
    RatVec q = p;
    q.resize(plan.final_d, Rat(0));
    out.points.push_back(std::move(q));
  }
  for (const auto& step : plan.steps)
    for (int v : step.batch) {
      if (v != static_cast<int>(out.points.size()))
        throw std::logic_error("batch indices are not consecutive");
      RatVec q(plan.final_d, Rat(0));
      q[step.target_axis - 1] = 1;
      out.points.push_back(std::move(q));
    }
  out.validate();
  if (validate_coloring(out.coloring, out.r, out.d).kind != ColoringKind::Special)
    throw std::logic_error("lifted instance is not specially colored");
  return out;
}

TverbergWitness pullback(const TverbergWitness& lifted_witness, const Instance& lifted_instance,
                         const LiftPlan& plan, const Instance& original,
                         std::vector<std::string>* audit_log) {
  if (auto err = witness_error(lifted_instance, lifted_witness))
    throw std::invalid_argument("lifted witness invalid for lifted instance: " + *err);
  if (!(lift_instance(original, plan) == lifted_instance))
    throw std::invalid_argument("lifted instance does not equal the plan applied to the original");

  TverbergWitness w = lifted_witness;
  for (int s = static_cast<int>(plan.steps.size()); s >= 1; --s) {
    const LiftStep& step = plan.steps[s - 1];
    const int coord = step.target_axis - 1;
    if (coord != static_cast<int>(w.point.size()) - 1)
      throw std::logic_error("axis bookkeeping broken");

    // (a) r disjoint faces, r-1 batch vertices: some face avoids the batch
    int touched = 0;
    for (const Face& face : w.faces) {
      const bool hit = std::any_of(face.begin(), face.end(), [&](int v) {
        return std::binary_search(step.batch.begin(), step.batch.end(), v);
      });
      if (hit) ++touched;
    }
    if (touched >= static_cast<int>(w.faces.size()))
      throw AssertionBreach(s, "every face meets the top batch");

    // (b) the common point cannot leave the hyperplane of the lower layers
    if (w.point[coord] != 0)
      throw AssertionBreach(s, "common point has nonzero top coordinate " +
                                   rat_str(w.point[coord]));

    // (c) batch coefficients are exactly zero, so dropping them keeps each
    // face nonempty with coefficients still summing to one
    for (std::size_t i = 0; i < w.faces.size(); ++i) {
      Face kept;
      for (int v : w.faces[i]) {
        if (std::binary_search(step.batch.begin(), step.batch.end(), v)) {
          auto it = w.coefficients[i].find(v);
          if (it != w.coefficients[i].end()) {
            if (it->second != 0)
              throw AssertionBreach(s, "face " + std::to_string(i) +
                                           " carries coefficient mass on the top batch");
            w.coefficients[i].erase(it);
          }
        } else {
          kept.push_back(v);
        }
      }
      if (kept.empty())
        throw AssertionBreach(s, "face " + std::to_string(i) + " emptied by the peel");
      Rat sum = 0;
      for (const auto& [v, coeff] : w.coefficients[i]) sum += coeff;
      if (sum != 1)
        throw AssertionBreach(s, "face " + std::to_string(i) +
                                     " coefficients no longer sum to 1");
      w.faces[i] = std::move(kept);
    }
    w.point.pop_back();
    if (audit_log)
      audit_log->push_back("layer " + std::to_string(s) +
                           ": clean face, zero top coordinate, zero batch mass");
  }

  if (auto err = witness_error(original, w))
    throw AssertionBreach(0, "pulled-back witness fails verification: " + *err);
  return w;
}

bool verify_reduction(const Instance& original, const TverbergWitness& witness) {
  return witness_valid(original, witness);
}

std::string plan_summary(const LiftPlan& plan) {
  std::ostringstream out;
  auto sizes_str = [](const std::vector<int>& sizes) {
    std::string s = "[";
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(sizes[i]);
    }
    return s + "]";
  };
  out << "base: d=" << plan.base_d << " r=" << plan.base_r << " classes "
      << sizes_str(plan.original_class_sizes) << "\n";
  if (plan.identity()) {
    out << "identity plan (coloring already special)\n";
    return out.str();
  }
  out << "lifted: D=" << plan.final_d << " N=" << plan.final_n << " classes "
      << sizes_str(plan.lifted_coloring.class_sizes()) << "\n";
  out << "steps: " << plan.steps.size() << " (batch size " << plan.base_r - 1 << ")\n";
  for (std::size_t s = 0; s < plan.steps.size(); ++s) {
    const LiftStep& step = plan.steps[s];
    out << "  step " << s + 1 << ": batch [";
    for (std::size_t i = 0; i < step.batch.size(); ++i) {
      if (i) out << ",";
      out << step.batch[i];
    }
    out << "] -> axis " << step.target_axis << ", pads";
    for (const auto& [cls, count] : step.paddings) out << " " << cls << ":+" << count;
    if (step.fresh_class_created) out << " (fresh class)";
    out << "\n";
  }
  return out.str();
}

}  // namespace tverberg
