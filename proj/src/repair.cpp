#include "mfas/repair.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "mfas/error.hpp"

namespace mfas {

std::string_view to_string(RepairSide side) { return side == RepairSide::kS ? "S" : "E"; }

namespace {

void require_integral(const DeltaSolution& delta) {
  if (!delta.is_integral()) fail(ErrorCode::kNotIntegral, "solution has fractional values");
}

bool on(const DeltaSolution& d, const Poset& p, Vertex i, Vertex j) { return effective(d, p, i, j) != 0; }

std::string dump_state(const Instance& inst, const DeltaSolution& delta, const std::string& detail) {
  std::string out = "--- instance\n" + serialize_instance(inst);
  out += "--- solution\n" + serialize_solution(delta);
  out += "--- detail\n" + detail + "\n";
  return out;
}

}  // namespace

std::vector<std::pair<Vertex, Vertex>> contradicting_pairs(const DeltaSolution& delta) {
  require_integral(delta);
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex i = 0; i < delta.size(); ++i) {
    for (Vertex j = i + 1; j < delta.size(); ++j) {
      if (delta.arc(i, j) && delta.arc(j, i)) out.emplace_back(i, j);
    }
  }
  return out;
}

std::size_t contradicting_count(const DeltaSolution& delta) {
  std::size_t count = 0;
  for (Vertex i = 0; i < delta.size(); ++i) {
    for (Vertex j = i + 1; j < delta.size(); ++j) {
      if (delta.arc(i, j) && delta.arc(j, i)) ++count;
    }
  }
  return count;
}

std::vector<BasicTriple> basic_triples(const DeltaSolution& delta, const Instance& inst) {
  require_integral(delta);
  const Poset& p = inst.poset();
  const Vertex n = delta.size();
  std::vector<BasicTriple> out;
  // Only contradicting pairs can serve as (a, b).
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = 0; b < n; ++b) {
      if (a == b || !delta.arc(a, b) || !delta.arc(b, a)) continue;
      for (Vertex c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        if (on(delta, p, a, c) && on(delta, p, c, b) && !on(delta, p, c, a) && !on(delta, p, b, c)) {
          out.push_back({a, c, b});
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SMESets sme_sets(const std::vector<BasicTriple>& triples, Vertex v) {
  SMESets sets;
  sets.v = v;
  for (const BasicTriple& t : triples) {
    if (t.a == v) sets.S.push_back({t.c, t.b});
    if (t.c == v) sets.M.push_back({t.b, t.a});
    if (t.b == v) sets.E.push_back({t.a, t.c});
  }
  for (auto* s : {&sets.S, &sets.M, &sets.E}) {
    std::sort(s->begin(), s->end());
    s->erase(std::unique(s->begin(), s->end()), s->end());
  }
  auto disjoint = [](const std::vector<Arc>& x, const std::vector<Arc>& y) {
    return std::none_of(x.begin(), x.end(), [&](Arc a) { return std::binary_search(y.begin(), y.end(), a); });
  };
  if (!disjoint(sets.S, sets.M) || !disjoint(sets.S, sets.E) || !disjoint(sets.M, sets.E)) {
    throw InternalAssertion(ErrorCode::kLemmaViolated, "S/M/E sets of vertex " + std::to_string(v) + " overlap", "");
  }
  return sets;
}

SMESets sme_sets(const DeltaSolution& delta, const Instance& inst, Vertex v) {
  return sme_sets(basic_triples(delta, inst), v);
}

DeltaSolution build_candidate(const DeltaSolution& delta, const SMESets& sets, RepairSide side, const CoverSystem& system) {
  const Instance& inst = system.instance();
  require_integral(delta);
  DeltaSolution out = delta;
  const Poset& p = inst.poset();
  auto check_variable = [&](Arc a) {
    if (p.comparable(a.from, a.to)) {
      throw InternalAssertion(ErrorCode::kLemmaViolated, "drop/reverse set contains comparable arc " + to_string(a),
                              dump_state(inst, delta, "v=" + std::to_string(sets.v)));
    }
  };
  for (const Arc& a : sets.M) {
    check_variable(a);
    out.set(a, false);
  }
  for (const Arc& a : side == RepairSide::kS ? sets.S : sets.E) {
    check_variable(a);
    out.set(a, false);
    out.set(a.reversed(), true);
  }
  const auto bad = system.violations(out);
  if (!bad.empty()) {
    std::ostringstream detail;
    detail << "v=" << sets.v << " X=" << to_string(side) << "\ncandidate:\n"
           << serialize_solution(out) << "violated: " << to_string(bad.front());
    throw InternalAssertion(ErrorCode::kLemmaViolated, "candidate solution is not cover-feasible",
                            dump_state(inst, delta, detail.str()));
  }
  return out;
}

DeltaSolution build_candidate(const DeltaSolution& delta, const Instance& inst, Vertex v, RepairSide side) {
  const CoverSystem system(inst);
  return build_candidate(delta, sme_sets(delta, inst, v), side, system);
}

std::vector<Lemma1Counterexample> check_lemma1(const DeltaSolution& delta, const Instance& inst) {
  require_integral(delta);
  const Poset& p = inst.poset();
  const Vertex n = inst.size();
  std::vector<Lemma1Counterexample> out;
  for (Vertex j = 0; j < n; ++j) {
    for (Vertex k = 0; k < n; ++k) {
      if (j == k || !on(delta, p, j, k) || on(delta, p, k, j)) continue;
      for (Vertex i = 0; i < n; ++i) {
        if (!p.in_order(i, j)) continue;
        for (Vertex l = 0; l < n; ++l) {
          if (l == i || !p.in_order(k, l)) continue;
          if (!on(delta, p, i, l) || on(delta, p, l, i)) out.push_back({i, j, k, l});
        }
      }
    }
  }
  return out;
}

std::string serialize_trace(const RepairTrace& trace) {
  std::string out;
  for (std::size_t k = 0; k < trace.iterations.size(); ++k) {
    const auto& it = trace.iterations[k];
    out += "iteration=" + std::to_string(k + 1);
    out += " cost_before=" + it.cost_before.to_string();
    out += " cost_after=" + it.cost_after.to_string();
    out += " contradicting_before=" + std::to_string(it.contradicting_before);
    out += " contradicting_after=" + std::to_string(it.contradicting_after);
    out += " chosen_v=" + (it.chosen_v ? std::to_string(*it.chosen_v) : std::string("none"));
    out += " chosen_X=" + (it.chosen_side ? std::string(to_string(*it.chosen_side)) : std::string("none"));
    out += " triples=" + std::to_string(it.triples);
    out += " raw_contradicting=" + (it.raw_contradicting ? std::to_string(*it.raw_contradicting) : std::string("none"));
    out += '\n';
  }
  return out;
}

RepairResult repair(const DeltaSolution& delta, const CoverSystem& system) {
  const Instance& inst = system.instance();
  if (!validate_hemimetric(inst, 1).is_hemimetric) {
    fail(ErrorCode::kNotHemimetric, "repair needs weights satisfying the triangle inequality");
  }
  require_compatible(delta, inst);
  require_integral(delta);
  const DeltaSolution start = delta.to_integral();
  if (!system.feasible(start)) fail(ErrorCode::kNotFeasible, "repair needs a cover-feasible input");

  RepairResult result{start, {}};
  if (check_fas_feasible(start, inst).empty()) return result;

  const Vertex n = inst.size();
  const std::size_t cap = 2 * static_cast<std::size_t>(n) * n;
  DeltaSolution current = start;
  for (std::size_t round = 0; round < cap; ++round) {
    RepairIteration it;
    it.cost_before = variable_cost(current, inst);
    it.contradicting_before = contradicting_count(current);

    const DeltaSolution minimal = minimalize(current, system);
    const Cost minimal_cost = variable_cost(minimal, inst);
    const std::size_t minimal_contradicting = contradicting_count(minimal);
    if (minimal_contradicting == 0) {
      it.cost_after = minimal_cost;
      result.trace.iterations.push_back(it);
      result.delta = minimal;
      return result;
    }

    const auto triples = basic_triples(minimal, inst);
    it.triples = triples.size();
    if (triples.empty()) {
      throw InternalAssertion(ErrorCode::kLemmaViolated, "minimal solution with contradicting pairs has no basic triple",
                              dump_state(inst, minimal, "round=" + std::to_string(round + 1)));
    }

    struct Ranked {
      std::size_t contradicting;
      Cost cost;
      Vertex v;
      RepairSide side;
      std::size_t raw_contradicting;
      DeltaSolution delta;
    };
    std::optional<Ranked> best;
    bool any_admissible = false;
    for (Vertex v = 0; v < n; ++v) {
      const SMESets sets = sme_sets(triples, v);
      if (sets.empty()) continue;
      for (RepairSide side : {RepairSide::kS, RepairSide::kE}) {
        DeltaSolution raw = build_candidate(minimal, sets, side, system);
        if (variable_cost(raw, inst) > minimal_cost) continue;
        any_admissible = true;
        DeltaSolution reduced = minimalize(raw, system);
        Ranked cand{contradicting_count(reduced), variable_cost(reduced, inst), v, side, contradicting_count(raw),
                    std::move(reduced)};
        auto rank = [](const Ranked& r) { return std::tuple(r.contradicting, r.cost, r.v, r.side == RepairSide::kE); };
        if (!best || rank(cand) < rank(*best)) best = std::move(cand);
      }
    }
    if (!any_admissible) {
      throw InternalAssertion(ErrorCode::kLemmaViolated, "no drop-and-reverse candidate is as cheap as the current solution",
                              dump_state(inst, minimal, "round=" + std::to_string(round + 1)));
    }
    if (best->contradicting >= minimal_contradicting) {
      throw InternalAssertion(ErrorCode::kLemmaViolated, "best admissible candidate does not reduce contradicting pairs",
                              dump_state(inst, minimal,
                                         "round=" + std::to_string(round + 1) + " v=" + std::to_string(best->v) +
                                             " X=" + std::string(to_string(best->side))));
    }
    it.cost_after = best->cost;
    it.contradicting_after = best->contradicting;
    it.chosen_v = best->v;
    it.chosen_side = best->side;
    it.raw_contradicting = best->raw_contradicting;
    if (best->raw_contradicting >= minimal_contradicting) ++result.trace.raw_nondecreasing;
    result.trace.iterations.push_back(it);
    current = std::move(best->delta);
  }
  throw InternalAssertion(ErrorCode::kNonTermination, "repair exceeded 2 n^2 rounds",
                          dump_state(inst, current, serialize_trace(result.trace)));
}

RepairResult repair(const DeltaSolution& delta, const Instance& inst) {
  const CoverSystem system(inst);
  return repair(delta, system);
}

SolveReport solve_pipeline(const Instance& inst, const SolveOptions& opts) {
  if (!validate_hemimetric(inst, 1).is_hemimetric) {
    fail(ErrorCode::kNotHemimetric, "the pipeline needs weights satisfying the triangle inequality");
  }
  const CoverSystem system(inst);
  SolveReport report;
  report.instance_digest = instance_digest(inst);
  const DeltaSolution cover = primal_dual_cover(system);
  report.cover_cost = variable_cost(cover, inst);
  const DeltaSolution minimal = minimalize(cover, system);
  report.minimal_cover_cost = variable_cost(minimal, inst);
  report.contradicting_initial = contradicting_count(cover);

  RepairResult repaired = repair(cover, system);
  report.order = permutation_from_delta(repaired.delta, inst);
  report.variable_cost = variable_cost(repaired.delta, inst);
  report.fixed_cost = inst.fixed_cost();
  report.total_cost = report.variable_cost + report.fixed_cost;
  report.iterations = repaired.trace.iterations.size();
  report.trace = std::move(repaired.trace);

  if (opts.with_bound) {
    const FractionalBound bound = mwu_fractional_cover(inst, opts.eps);
    report.lower_bound = bound.lower_bound;
    report.fractional_value = bound.primal_value;
    report.eps = opts.eps;
    const Rational variable = report.variable_cost.to_rational();
    if (bound.lower_bound > 0) report.ratio_vs_bound = variable / bound.lower_bound;
    report.guarantee_certified = variable <= 3 * (1 + opts.eps) * bound.lower_bound;
  }
  return report;
}

}  // namespace mfas
