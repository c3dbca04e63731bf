#include "tverberg/geometry.hpp"
#include "tverberg/io.hpp"
#include "tverberg/lp.hpp"
#include "tverberg/model.hpp"
#include "tverberg/reduction.hpp"
#include "tverberg/solver.hpp"
#include "tverberg/svg.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

using namespace tverberg;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Output is produced in full before anything touches the filesystem, so a
// failed run never leaves a partial file behind.
void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << content) || !out.flush()) {
    out.close();
    std::remove(path.c_str());
    throw std::runtime_error("cannot write " + path);
  }
}

struct CommonFlags {
  std::string instance_file;
  std::string out;
  bool parallel = false;
};

SearchConfig search_config(const CommonFlags& flags, std::optional<long> limit = {}) {
  SearchConfig cfg;
  cfg.parallel = flags.parallel;
  cfg.max_solutions = limit;
  return cfg;
}

int cmd_gen(const GenParams& params, const std::string& out) {
  const Instance inst = generate_instance(params);
  Json metadata;
  metadata["generator"] = params.profile;
  metadata["seed"] = params.seed;
  metadata["bound"] = params.bound;
  write_output(out, serialize_instance(inst, metadata));
  return 0;
}

int cmd_solve(const CommonFlags& flags, bool all, std::optional<long> limit) {
  const Instance inst = parse_instance(read_file(flags.instance_file));
  if (all) {
    const auto witnesses = solve_all(inst, search_config(flags, limit));
    Json doc = Json::array();
    for (const auto& w : witnesses) doc.push_back(witness_to_json(w));
    write_output(flags.out, doc.dump(2) + "\n");
    return witnesses.empty() ? 1 : 0;
  }
  const auto witness = solve(inst, search_config(flags));
  if (!witness) {
    std::cerr << "no witness: no family of disjoint rainbow faces has a common point\n";
    return 1;
  }
  write_output(flags.out, serialize_witness(*witness));
  return 0;
}

int cmd_lift(const CommonFlags& flags) {
  const Instance inst = parse_instance(read_file(flags.instance_file));
  const LiftPlan plan = plan_lift(inst.coloring, inst.d, inst.r);
  std::cerr << plan_summary(plan);
  Json metadata;
  metadata["generator"] = "lift";
  write_output(flags.out, serialize_instance(lift_instance(inst, plan), metadata));
  return 0;
}

int cmd_pullback(const CommonFlags& flags, const std::string& witness_file) {
  const Instance original = parse_instance(read_file(flags.instance_file));
  const TverbergWitness lifted_witness = parse_witness(read_file(witness_file));
  const LiftPlan plan = plan_lift(original.coloring, original.d, original.r);
  const Instance lifted = lift_instance(original, plan);
  if (auto err = witness_error(lifted, lifted_witness)) {
    std::cerr << "witness invalid for the lifted instance: " << *err << "\n";
    return 1;
  }
  std::vector<std::string> audit;
  const TverbergWitness back = pullback(lifted_witness, lifted, plan, original, &audit);
  for (const auto& line : audit) std::cerr << line << "\n";
  write_output(flags.out, serialize_witness(back));
  return 0;
}

int cmd_roundtrip(const CommonFlags& flags) {
  const Instance inst = parse_instance(read_file(flags.instance_file));
  const LiftPlan plan = plan_lift(inst.coloring, inst.d, inst.r);
  std::cout << plan_summary(plan);

  const Instance lifted = lift_instance(inst, plan);
  const auto lifted_witness = solve(lifted, search_config(flags));
  if (!lifted_witness) {
    std::cout << "lifted solve: no witness found\n";
    std::cout << "verdict: FAILED\n";
    return 1;
  }
  std::cout << "lifted solve: witness with " << lifted_witness->faces.size() << " faces\n";

  std::vector<std::string> audit;
  const TverbergWitness back = pullback(*lifted_witness, lifted, plan, inst, &audit);
  for (const auto& line : audit) std::cout << "audit " << line << "\n";

  if (!verify_reduction(inst, back)) {  // pullback already re-verified; belt and braces
    std::cout << "verdict: FAILED\n";
    return 1;
  }
  std::cout << "pulled-back witness: faces";
  for (const auto& face : back.faces) {
    std::cout << " {";
    for (std::size_t i = 0; i < face.size(); ++i) std::cout << (i ? "," : "") << face[i];
    std::cout << "}";
  }
  std::cout << ", point " << point_str(back.point) << "\n";
  std::cout << "verdict: VERIFIED\n";
  if (!flags.out.empty()) write_output(flags.out, serialize_witness(back));
  return 0;
}

int cmd_verify(const CommonFlags& flags, const std::string& witness_file) {
  const Instance inst = parse_instance(read_file(flags.instance_file));
  const TverbergWitness witness = parse_witness(read_file(witness_file));
  // universe mismatches are input errors, not failed verification
  for (const auto& face : witness.faces)
    for (int v : face)
      if (v < 0 || v >= inst.num_vertices())
        throw ParseError("witness vertex " + std::to_string(v) +
                         " outside the instance's vertex range");
  if (static_cast<int>(witness.point.size()) != inst.d)
    throw ParseError("witness point dimension does not match the instance");
  if (auto err = witness_error(inst, witness)) {
    std::cerr << "invalid witness: " << *err << "\n";
    return 1;
  }
  std::cout << "witness valid\n";
  return 0;
}

int cmd_plot(const CommonFlags& flags, const std::string& witness_file) {
  const Instance inst = parse_instance(read_file(flags.instance_file));
  std::optional<TverbergWitness> witness;
  if (!witness_file.empty()) witness = parse_witness(read_file(witness_file));
  write_output(flags.out, render_svg(inst, witness ? &*witness : nullptr));
  return 0;
}

int cmd_selftest() {
  int failures = 0;
  const auto check = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "[ ok ] " : "[FAIL] ") << name << "\n";
    if (!ok) ++failures;
  };

  {
    Instance square;
    square.d = 2;
    square.r = 2;
    square.points = {{Rat(0), Rat(0)}, {Rat(2), Rat(0)}, {Rat(2), Rat(2)}, {Rat(0), Rat(2)}};
    square.coloring = Coloring::from_class_of({0, 1, 2, 3});
    const auto w = solve(square);
    check("square Radon partition is the diagonal pair",
          w && w->faces == Family{{0, 2}, {1, 3}} && w->point == RatVec{Rat(1), Rat(1)} &&
              witness_valid(square, *w));
  }

  const auto moment = [](int count) {
    Instance inst;
    inst.d = 2;
    inst.r = 3;
    std::vector<int> colors;
    for (int t = 1; t <= count; ++t) {
      inst.points.push_back({Rat(t), Rat(t * t)});
      colors.push_back(t - 1);
    }
    inst.coloring = Coloring::from_class_of(colors);
    return inst;
  };
  {
    const auto w = solve(moment(7));
    check("seven moment-curve points admit a verified witness",
          w && witness_valid(moment(7), *w));
    check("six moment-curve points admit none (tightness)", !solve(moment(6)).has_value());
    SearchConfig par;
    par.parallel = true;
    check("parallel search equals serial search", solve_all(moment(7)) == solve_all(moment(7), par));
  }

  {
    const Instance inst = generate_instance({1, 3, "singletons", 11, 50, false});
    const LiftPlan plan = plan_lift(inst.coloring, inst.d, inst.r);
    const Instance lifted = lift_instance(inst, plan);
    const auto lw = solve(lifted);
    bool ok = lw.has_value();
    if (ok) {
      const TverbergWitness back = pullback(*lw, lifted, plan, inst);
      ok = verify_reduction(inst, back);
    }
    check("lift, solve, pullback round-trip verifies", ok);
  }

  {
    Rng rng(5150);
    bool ok = true;
    for (int trial = 0; trial < 50 && ok; ++trial) {
      LinearSystem sys;
      sys.num_vars = static_cast<int>(rng.uniform(1, 6));
      const int m = static_cast<int>(rng.uniform(1, 4));
      for (int i = 0; i < m; ++i) {
        RatVec row;
        for (int j = 0; j < sys.num_vars; ++j) row.push_back(Rat(rng.uniform(-5, 5)));
        sys.add_row(std::move(row), Rat(rng.uniform(-5, 5)));
      }
      const auto res = lp_feasible(sys);
      ok = res.feasible ? check_feasible_point(sys, res.assignment)
                        : check_infeasibility_certificate(sys, res.certificate);
    }
    check("LP feasibility answers re-verify exactly", ok);
  }

  {
    Rng rng(660);
    bool ok = true;
    for (int trial = 0; trial < 100 && ok; ++trial) {
      Instance inst;
      inst.d = 1;
      inst.r = 2;
      Family family(2);
      std::vector<int> colors;
      long lo = -100, hi = 100;
      for (int i = 0; i < 2; ++i) {
        long flo = 100, fhi = -100;
        const int size = static_cast<int>(rng.uniform(1, 3));
        for (int j = 0; j < size; ++j) {
          const long x = rng.uniform(-9, 9);
          family[i].push_back(static_cast<int>(inst.points.size()));
          inst.points.push_back({Rat(x)});
          colors.push_back(static_cast<int>(colors.size()));
          flo = std::min(flo, x);
          fhi = std::max(fhi, x);
        }
        lo = std::max(lo, flo);
        hi = std::min(hi, fhi);
      }
      inst.coloring = Coloring::from_class_of(colors);
      ok = common_point(family, inst).has_value() == (lo <= hi);
    }
    check("interval oracle agrees with the exact LP on a line", ok);
  }

  {
    const Instance inst = generate_instance({2, 3, "random", 99, 100, false});
    check("instance documents round-trip byte-exactly",
          parse_instance(serialize_instance(inst)) == inst &&
              serialize_instance(inst) == serialize_instance(inst));
  }

  std::cout << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"colored Tverberg solver: exact rainbow-partition witnesses, lifts and pullbacks"};
  app.require_subcommand(1);

  GenParams gen_params;
  CommonFlags flags;
  std::string witness_file;
  std::optional<long> limit;
  bool all = false;

  auto* gen = app.add_subcommand("gen", "generate a colored instance");
  gen->add_option("--d", gen_params.d, "ambient dimension");
  gen->add_option("--r", gen_params.r, "multiplicity (number of faces)");
  gen->add_option("--profile", gen_params.profile, "special | singletons | random | bl")
      ->check(CLI::IsMember({"special", "singletons", "random", "bl"}));
  gen->add_option("--seed", gen_params.seed, "RNG seed");
  gen->add_option("--bound", gen_params.bound, "coordinate bound B: integers in [-B, B]");
  gen->add_option("-o,--output", flags.out, "output file (stdout if omitted)");

  auto* solve_cmd = app.add_subcommand("solve", "find the first witness of an instance");
  solve_cmd->add_option("instance", flags.instance_file, "instance file")->required();
  solve_cmd->add_option("-o,--output", flags.out, "witness output file");
  solve_cmd->add_flag("--parallel", flags.parallel, "split the search across threads");
  solve_cmd->add_flag("--all", all, "exhaustive: list every witness");
  solve_cmd->add_option("--limit", limit, "cap the number of witnesses (with --all)");

  auto* solve_all_cmd = app.add_subcommand("solve-all", "list every witness of an instance");
  solve_all_cmd->add_option("instance", flags.instance_file, "instance file")->required();
  solve_all_cmd->add_option("-o,--output", flags.out, "output file");
  solve_all_cmd->add_flag("--parallel", flags.parallel, "split the search across threads");
  solve_all_cmd->add_option("--limit", limit, "cap the number of witnesses");

  auto* lift = app.add_subcommand("lift", "lift to a specially colored instance");
  lift->add_option("instance", flags.instance_file, "instance file")->required();
  lift->add_option("-o,--output", flags.out, "lifted instance output file");

  auto* pullback_cmd =
      app.add_subcommand("pullback", "pull a lifted witness back to the original instance");
  pullback_cmd->add_option("instance", flags.instance_file, "original instance file")
      ->required();
  pullback_cmd->add_option("witness", witness_file, "witness file for the lifted instance")
      ->required();
  pullback_cmd->add_option("-o,--output", flags.out, "pulled-back witness output file");

  auto* roundtrip =
      app.add_subcommand("roundtrip", "lift, solve, pull back and verify in one run");
  roundtrip->add_option("instance", flags.instance_file, "instance file")->required();
  roundtrip->add_option("-o,--output", flags.out, "final witness output file");
  roundtrip->add_flag("--parallel", flags.parallel, "split the search across threads");

  auto* verify = app.add_subcommand("verify", "check a witness against an instance");
  verify->add_option("instance", flags.instance_file, "instance file")->required();
  verify->add_option("witness", witness_file, "witness file")->required();

  auto* plot = app.add_subcommand("plot", "render a planar instance (and witness) as SVG");
  plot->add_option("instance", flags.instance_file, "instance file")->required();
  plot->add_option("witness", witness_file, "witness file (optional)");
  plot->add_option("-o,--output", flags.out, "SVG output file");

  app.add_subcommand("selftest", "run the built-in checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_params, flags.out);
    if (solve_cmd->parsed()) return cmd_solve(flags, all, limit);
    if (solve_all_cmd->parsed()) return cmd_solve(flags, true, limit);
    if (lift->parsed()) return cmd_lift(flags);
    if (pullback_cmd->parsed()) return cmd_pullback(flags, witness_file);
    if (roundtrip->parsed()) return cmd_roundtrip(flags);
    if (verify->parsed()) return cmd_verify(flags, witness_file);
    if (plot->parsed()) return cmd_plot(flags, witness_file);
    return cmd_selftest();
  } catch (const AssertionBreach& e) {
    std::cerr << "AUDIT BREACH: " << e.what() << "\n"
              << "this indicates a solver bug or a broken reduction argument\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
