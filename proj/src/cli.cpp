#include "mfas/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>

#include "mfas/covering.hpp"
#include "mfas/error.hpp"
#include "mfas/generator.hpp"
#include "mfas/oracle.hpp"
#include "mfas/repair.hpp"

namespace mfas {
namespace {

class Report {
 public:
  explicit Report(std::ostream& out) : out_(out) {}

  template <typename T>
  Report& kv(std::string_view key, const T& value) {
    out_ << key << '=' << value << '\n';
    return *this;
  }
  Report& flag(std::string_view key, bool value) { return kv(key, value ? "true" : "false"); }

 private:
  std::ostream& out_;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::kFormat, "cannot write " + path);
  f << text;
  if (!f) fail(ErrorCode::kFormat, "write failed for " + path);
}

Rational parse_eps(const std::string& text) {
  const Rational eps = parse_decimal_rational(text);
  if (eps <= 0 || eps >= 1) fail(ErrorCode::kFormat, "eps must lie in (0,1)");
  return eps;
}

void header(Report& r, const Instance& inst) {
  r.kv("engine", kEngine).kv("instance_digest", instance_digest(inst)).kv("n", inst.size());
}

// `pair x1 y1 x2 y2` / `triple x1 y1 x2 y2 x3 y3`, one row per line.
std::string dump_constraints(const Instance& inst) {
  std::string text;
  for (const CoverConstraint& c : enumerate_constraints(inst)) {
    text += c.is_triple() ? "triple" : "pair";
    for (const Arc& a : c.arc_span()) text += ' ' + std::to_string(a.from) + ' ' + std::to_string(a.to);
    text += '\n';
  }
  return text;
}

struct Options {
  std::string instance;
  std::string solution;
  std::string trace;
  std::string constraints;
  std::string out;
  std::string eps = "0.05";
  std::string formulation;
  int k = 0;
  int max_cycle = 3;
  bool bound = false;
  bool cover = false;
  std::uint64_t max_iterations = 0;

  // gen
  std::string name;
  Vertex n = 8;
  std::uint64_t seed = 1;
  std::string density = "0";
  std::string lo = "0";
  std::string hi = "1";
  std::string grain = "0.001";
  std::string mode = "hemimetric_closure";
  bool witness = false;
  std::uint64_t budget = 1'000'000;
  std::string solution_out;
};

int cmd_validate(const Options& o, std::ostream& out) {
  const Instance inst = read_instance_file(o.instance);
  Report r(out);
  header(r, inst);
  r.kv("poset_pairs", inst.poset().pair_count());
  const ValidationReport h = validate_hemimetric(inst);
  r.flag("hemimetric", h.is_hemimetric).kv("hemimetric_violations", h.violations.size());
  if (!h.violations.empty()) {
    const auto& v = h.violations.front();
    r.kv("first_violation", std::to_string(v[0]) + "," + std::to_string(v[1]) + "," + std::to_string(v[2]));
  }
  r.flag("probability_constraints", satisfies_probability_constraints(inst));
  bool ok = h.is_hemimetric;
  if (o.k != 0) {
    const ValidationReport g = validate_kgonal(inst, o.k);
    r.kv("kgonal_k", o.k).flag("kgonal", g.is_hemimetric).kv("kgonal_mode", g.sampled ? "sampled" : "exhaustive");
    if (g.seed) r.kv("kgonal_seed", *g.seed);
    r.kv("kgonal_sequences", g.sequences_checked).kv("kgonal_violations", g.violations.size());
    ok = ok && g.is_hemimetric;
  }
  return ok ? 0 : 1;
}

int cmd_solve(const Options& o, std::ostream& out) {
  const Instance inst = read_instance_file(o.instance);
  SolveOptions opts;
  opts.with_bound = o.bound;
  opts.eps = parse_eps(o.eps);
  const SolveReport s = solve_pipeline(inst, opts);
  Report r(out);
  header(r, inst);
  r.kv("order", to_string(s.order))
      .kv("total_cost", s.total_cost.to_string())
      .kv("variable_cost", s.variable_cost.to_string())
      .kv("fixed_cost", s.fixed_cost.to_string())
      .kv("cover_cost", s.cover_cost.to_string())
      .kv("minimal_cover_cost", s.minimal_cover_cost.to_string())
      .kv("contradicting_initial", s.contradicting_initial)
      .kv("iterations", s.iterations)
      .kv("alpha_guarantee", s.alpha_guarantee);
  if (s.lower_bound) {
    r.kv("eps", format_exact(*s.eps))
        .kv("lower_bound", format_rational(*s.lower_bound, Rounding::kFloor))
        .kv("fractional_value", format_exact(*s.fractional_value));
    if (s.ratio_vs_bound) r.kv("ratio_vs_bound", format_rational(*s.ratio_vs_bound, Rounding::kCeil));
    r.flag("guarantee_certified", *s.guarantee_certified);
  }
  if (!o.trace.empty()) write_file(o.trace, serialize_trace(s.trace));
  if (!o.constraints.empty()) write_file(o.constraints, dump_constraints(inst));
  return 0;
}

int cmd_exact(const Options& o, std::ostream& out) {
  const Instance inst = read_instance_file(o.instance);
  const OracleResult best = exact_min_extension(inst);
  Report r(out);
  header(r, inst);
  r.kv("order", to_string(best.best_perm))
      .kv("total_cost", best.best_total_cost.to_string())
      .kv("variable_cost", best.best_variable_cost.to_string())
      .kv("fixed_cost", inst.fixed_cost().to_string())
      .kv("states_explored", best.explored);
  if (o.cover) {
    const CoverOracleResult c = exact_min_cover(inst);
    r.kv("cover_variable_cost", c.variable_cost.to_string()).kv("cover_nodes", c.explored);
  }
  return 0;
}

int cmd_bound(const Options& o, std::ostream& out) {
  const Instance inst = read_instance_file(o.instance);
  MwuOptions mo;
  mo.max_iterations = o.max_iterations;
  const FractionalBound b = mwu_fractional_cover(inst, parse_eps(o.eps), mo);
  Report r(out);
  header(r, inst);
  r.kv("eps", format_exact(b.eps))
      .kv("lower_bound", format_rational(b.lower_bound, Rounding::kFloor))
      .kv("fractional_value", format_exact(b.primal_value))
      .kv("fixed_cost", inst.fixed_cost().to_string())
      .kv("iterations", b.iterations);
  return 0;
}

int cmd_repair(const Options& o, std::ostream& out) {
  const Instance inst = read_instance_file(o.instance);
  const DeltaSolution input = read_solution_file(o.solution, inst);
  const CoverSystem system(inst);
  if (!validate_hemimetric(inst, 1).is_hemimetric) fail(ErrorCode::kNotHemimetric, "instance violates the triangle inequality");
  const RepairResult res = repair(input, system);
  const Cost fixed = inst.fixed_cost();
  Report r(out);
  header(r, inst);
  r.kv("input_total_cost", (variable_cost(input, inst) + fixed).to_string())
      .kv("contradicting_initial", contradicting_count(input))
      .kv("iterations", res.trace.iterations.size())
      .kv("order", to_string(permutation_from_delta(res.delta, inst)))
      .kv("total_cost", (variable_cost(res.delta, inst) + fixed).to_string())
      .kv("variable_cost", variable_cost(res.delta, inst).to_string())
      .kv("fixed_cost", fixed.to_string());
  if (!o.trace.empty()) write_file(o.trace, serialize_trace(res.trace));
  if (!o.out.empty()) write_file(o.out, serialize_solution(res.delta));
  return 0;
}

int cmd_check(const Options& o, std::ostream& out) {
  const Instance inst = read_instance_file(o.instance);
  const DeltaSolution delta = read_solution_file(o.solution, inst);
  std::vector<Violation> found;
  if (o.formulation == "fas") {
    found = check_fas_feasible(delta, inst);
  } else if (o.formulation == "cover") {
    found = check_cover_feasible(delta, inst);
  } else {
    found = check_alternating_cycles(delta, inst, o.max_cycle);
  }
  const CostBreakdown c = cost(delta, inst);
  Report r(out);
  header(r, inst);
  r.kv("formulation", o.formulation);
  if (o.formulation == "cycles") r.kv("max_cycle", o.max_cycle);
  r.flag("integral", delta.is_integral())
      .kv("variable_cost", format_exact(c.variable_cost))
      .kv("fixed_cost", c.fixed_cost.to_string())
      .kv("total_cost", format_exact(c.total_cost))
      .flag("feasible", found.empty())
      .kv("violations", found.size());
  for (const Violation& v : found) r.kv("violation", to_string(v));
  return found.empty() ? 0 : 1;
}

int cmd_gen(const Options& o, std::ostream& out) {
  if (!o.name.empty()) {
    const Instance inst = bundled_instance(o.name);
    if (o.out.empty()) out << serialize_instance(inst);
    else write_file(o.out, serialize_instance(inst));
    if (!o.solution_out.empty()) {
      if (o.name != "appendix_a") fail(ErrorCode::kUnknownName, "no bundled solution for " + o.name);
      write_file(o.solution_out, serialize_solution(appendix_a_cover()));
    }
    return 0;
  }
  GenSpec spec;
  spec.n = o.n;
  spec.seed = o.seed;
  spec.poset_density = parse_decimal_rational(o.density);
  spec.lo = Weight::parse(o.lo);
  spec.hi = Weight::parse(o.hi);
  spec.grain = Weight::parse(o.grain);
  spec.mode = parse_gen_mode(o.mode);
  if (o.k != 0) spec.k = o.k;
  validate_spec(spec);
  if (!o.witness) {
    const Instance inst = generate(spec);
    if (o.out.empty()) out << serialize_instance(inst);
    else write_file(o.out, serialize_instance(inst));
    return 0;
  }
  const auto w = search_cycle_witness(spec, o.budget);
  Report r(out);
  r.kv("engine", kEngine).kv("seed", spec.seed).kv("budget", o.budget).flag("found", w.has_value());
  if (!w) return 1;
  r.kv("instance_digest", instance_digest(w->instance))
      .kv("trial", w->trial)
      .kv("delta_total_cost", w->check.delta_total.to_string())
      .kv("optimum_total_cost", w->check.optimum_total.to_string())
      .kv("cover_violations", w->check.cover_violations);
  if (!o.out.empty()) write_file(o.out, serialize_instance(w->instance));
  if (!o.solution_out.empty()) write_file(o.solution_out, serialize_solution(w->delta));
  return 0;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Precedence-constrained minimum feedback arc set on hemimetric weights", "mfas"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  auto instance_arg = [&](CLI::App* sub) { sub->add_option("instance", o.instance, "MFAS v1 instance file")->required(); };

  auto* v = app.add_subcommand("validate", "Format, triangle and optional k-gonal checks");
  instance_arg(v);
  v->add_option("--k", o.k, "Also check the k-gonal inequality")->check(CLI::Range(3, 64));
  v->callback([&] { action = [&] { return cmd_validate(o, out); }; });

  auto* s = app.add_subcommand("solve", "Primal-dual cover, repair and the resulting order");
  instance_arg(s);
  s->add_flag("--bound", o.bound, "Add the certified fractional lower bound");
  s->add_option("--eps", o.eps, "Accuracy of the lower bound");
  s->add_option("--trace", o.trace, "Write the repair trace here");
  s->add_option("--dump-constraints", o.constraints, "Write the covering rows here");
  s->callback([&] { action = [&] { return cmd_solve(o, out); }; });

  auto* e = app.add_subcommand("exact", "Optimal linear extension (n <= 20)");
  instance_arg(e);
  e->add_flag("--cover", o.cover, "Also solve the covering relaxation exactly");
  e->callback([&] { action = [&] { return cmd_exact(o, out); }; });

  auto* b = app.add_subcommand("bound", "Certified fractional lower bound");
  instance_arg(b);
  b->add_option("--eps", o.eps, "Relative accuracy in (0,1)");
  b->add_option("--max-iterations", o.max_iterations, "Iteration budget (0 = automatic)");
  b->callback([&] { action = [&] { return cmd_bound(o, out); }; });

  auto* rp = app.add_subcommand("repair", "Repair a cover into a linear extension");
  instance_arg(rp);
  rp->add_option("--solution", o.solution, "Solution file v1")->required();
  rp->add_option("--trace", o.trace, "Write the repair trace here");
  rp->add_option("--out", o.out, "Write the repaired solution here");
  rp->callback([&] { action = [&] { return cmd_repair(o, out); }; });

  auto* c = app.add_subcommand("check", "Check a solution against a formulation");
  instance_arg(c);
  c->add_option("--solution", o.solution, "Solution file v1")->required();
  c->add_option("--formulation", o.formulation, "fas, cover or cycles")
      ->required()
      ->check(CLI::IsMember({"fas", "cover", "cycles"}));
  c->add_option("--max-cycle", o.max_cycle, "Longest alternating cycle checked");
  c->callback([&] { action = [&] { return cmd_check(o, out); }; });

  auto* g = app.add_subcommand("gen", "Generate or dump an instance");
  g->add_option("--name", o.name, "Bundled instance: appendix_a or k3_demo");
  g->add_option("--n", o.n, "Vertex count");
  g->add_option("--seed", o.seed, "Seed");
  g->add_option("--density", o.density, "Poset density in [0,1]");
  g->add_option("--lo", o.lo, "Lowest weight");
  g->add_option("--hi", o.hi, "Highest weight");
  g->add_option("--grain", o.grain, "Weight step");
  g->add_option("--mode", o.mode, "hemimetric_closure, interval_kgonal or probability_like");
  g->add_option("--k", o.k, "k for interval_kgonal");
  g->add_flag("--witness", o.witness, "Search for a poset-free relaxation gap instead");
  g->add_option("--budget", o.budget, "Witness search trials");
  g->add_option("-o,--out", o.out, "Output instance file (default stdout)");
  g->add_option("--solution-out", o.solution_out, "Output file for the witness or bundled cover solution");
  g->callback([&] { action = [&] { return cmd_gen(o, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& ex) {
    err << "error=UsageError\nmessage=" << ex.what() << '\n';
    return 2;
  }
  return action();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const InternalAssertion& ex) {
    err << "error=" << to_string(ex.code()) << "\nmessage=" << ex.what() << "\n" << ex.dump();
    if (!ex.dump().empty() && ex.dump().back() != '\n') err << '\n';
    return exit_code(ex.code());
  } catch (const Error& ex) {
    err << "error=" << to_string(ex.code()) << "\nmessage=" << ex.what() << '\n';
    return exit_code(ex.code());
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace mfas
