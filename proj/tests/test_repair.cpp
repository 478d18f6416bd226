#include <doctest.h>

#include "mfas/error.hpp"
#include "mfas/oracle.hpp"
#include "mfas/random.hpp"
#include "mfas/repair.hpp"
#include "support.hpp"

using namespace mfas;
using namespace mfas::test;

namespace {

const DeltaSolution kDoubled = arcs(3, {{0, 1}, {1, 2}, {0, 2}, {2, 0}});

DeltaSolution all_ones(const Instance& inst) {
  DeltaSolution d(inst.size());
  for (const Arc& a : incomparable_pairs(inst.poset())) d.set(a, true);
  return d;
}

}  // namespace

TEST_SUITE("repair") {

TEST_CASE("contradicting pairs") {
  using P = std::pair<Vertex, Vertex>;
  CHECK(contradicting_pairs(all_ones(k3())) == std::vector<P>{{0, 1}, {0, 2}, {1, 2}});
  CHECK(contradicting_pairs(arcs(3, {{0, 1}, {0, 2}, {1, 2}})).empty());
  CHECK(contradicting_pairs(kDoubled) == std::vector<P>{{0, 2}});
  DeltaSolution frac(3, 2);
  frac.set_numerator({0, 1}, 1);
  CHECK_THROWS_AS(contradicting_pairs(frac), Error);
}

TEST_CASE("basic triples") {
  const Instance inst = k3();
  CHECK(basic_triples(kDoubled, inst) == std::vector<BasicTriple>{{0, 1, 2}});
  CHECK(basic_triples(arcs(3, {{0, 1}, {0, 2}, {1, 2}}), inst).empty());
  CHECK(basic_triples(all_ones(inst), inst).empty());
}

TEST_CASE("S, M and E sets") {
  const Instance inst = k3();
  const SMESets s0 = sme_sets(kDoubled, inst, 0);
  CHECK(s0.S == std::vector<Arc>{{1, 2}});
  CHECK(s0.M.empty());
  CHECK(s0.E.empty());
  const SMESets s1 = sme_sets(kDoubled, inst, 1);
  CHECK(s1.S.empty());
  CHECK(s1.M == std::vector<Arc>{{2, 0}});
  CHECK(s1.E.empty());
  const SMESets s2 = sme_sets(kDoubled, inst, 2);
  CHECK(s2.S.empty());
  CHECK(s2.M.empty());
  CHECK(s2.E == std::vector<Arc>{{0, 1}});
}

TEST_CASE("S, M and E are disjoint on random solutions") {
  Rng rng(3);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = gen_hemimetric(spec(6, seed, Rational(seed % 3, 5)));
    const DeltaSolution d = random_cover(inst, rng, DeltaSolution(inst.size()), true);
    const auto t = basic_triples(d, inst);
    for (Vertex v = 0; v < inst.size(); ++v) {
      const SMESets s = sme_sets(t, v);
      std::set<Arc> all;
      for (const auto* x : {&s.S, &s.M, &s.E}) all.insert(x->begin(), x->end());
      CHECK(all.size() == s.S.size() + s.M.size() + s.E.size());
    }
  }
}

TEST_CASE("candidate construction") {
  const Instance inst = k3();
  const DeltaSolution s = build_candidate(kDoubled, inst, 0, RepairSide::kS);
  CHECK(s.support() == std::vector<Arc>{{0, 1}, {0, 2}, {2, 0}, {2, 1}});
  CHECK(check_cover_feasible(s, inst).empty());
  CHECK(variable_cost(s, inst) == Cost(Weight::units(6)));

  const DeltaSolution e = build_candidate(kDoubled, inst, 2, RepairSide::kE);
  CHECK(e.support() == std::vector<Arc>{{0, 2}, {1, 0}, {1, 2}, {2, 0}});
  CHECK(variable_cost(e, inst) == Cost(Weight::units(6)));

  const DeltaSolution id = arcs(3, {{0, 1}, {0, 2}, {1, 2}});
  CHECK(build_candidate(id, inst, 1, RepairSide::kS) == id);
}

TEST_CASE("chain closure holds on minimal covers") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Instance inst = gen_hemimetric(spec(static_cast<Vertex>(4 + seed % 6), seed, Rational(1 + seed % 3, 5)));
    CHECK(check_lemma1(minimalize(primal_dual_cover(inst), inst), inst).empty());
  }
  CHECK(check_lemma1(all_ones(k3()), k3()).empty());  // empty poset: only the reflexive case
}

TEST_CASE("chain closure can fail off minimal covers") {
  // 0<1 and 2<3 with (1,2) on and (3,0) on: the closure claim wants (0,3).
  const Instance inst = instance_of({"0 1 1 1", "1 0 1 1", "1 1 0 1", "1 1 1 0"}, {{0, 1}, {2, 3}});
  const auto bad = check_lemma1(arcs(4, {{1, 2}, {3, 0}, {0, 2}, {2, 0}, {1, 3}, {3, 1}}), inst);
  REQUIRE_FALSE(bad.empty());
  auto has = [&](Vertex i, Vertex j, Vertex k, Vertex l) {
    return std::any_of(bad.begin(), bad.end(), [&](const auto& b) { return b.i == i && b.j == j && b.k == k && b.l == l; });
  };
  CHECK(has(0, 1, 2, 3));  // (0,3) missing
  CHECK(has(0, 1, 2, 2));  // (0,2) on but (2,0) too
}

TEST_CASE("repair examples") {
  const Instance inst = k3();
  const RepairResult r = repair(kDoubled, inst);
  CHECK(permutation_from_delta(r.delta, inst).order == std::vector<Vertex>{0, 1, 2});
  CHECK(variable_cost(r.delta, inst) == Cost(Weight::units(4)));
  REQUIRE(r.trace.iterations.size() == 1);
  CHECK_FALSE(r.trace.iterations[0].chosen_v.has_value());

  const RepairResult o = repair(all_ones(inst), inst);
  CHECK(permutation_from_delta(o.delta, inst).order == std::vector<Vertex>{2, 0, 1});
  CHECK(variable_cost(o.delta, inst) == Cost(Weight::units(4)));
  CHECK(o.trace.iterations.front().contradicting_before == 3);
  CHECK(o.trace.iterations.back().contradicting_after == 0);

  const DeltaSolution order = arcs(3, {{1, 0}, {1, 2}, {0, 2}});
  const RepairResult f = repair(order, inst);
  CHECK(f.delta == order);
  CHECK(f.trace.iterations.empty());
}

TEST_CASE("repair needs a cover on a hemimetric instance") {
  const Instance inst = k3();
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kFormat;
  };
  CHECK(code([&] { repair(arcs(3, {{0, 1}}), inst); }) == ErrorCode::kNotFeasible);
  DeltaSolution frac(3, 2);
  for (const Arc& a : incomparable_pairs(inst.poset())) frac.set_numerator(a, 1);
  CHECK(code([&] { repair(frac, inst); }) == ErrorCode::kNotIntegral);
  const Instance a = bundled_instance("appendix_a");
  CHECK(code([&] { repair(appendix_a_cover(), a); }) == ErrorCode::kNotHemimetric);
  CHECK(code([&] { solve_pipeline(a); }) == ErrorCode::kNotHemimetric);
}

TEST_CASE("repair on random covers") {
  Rng rng(17);
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const Vertex n = static_cast<Vertex>(4 + seed % 9);
    const Instance inst = gen_hemimetric(spec(n, seed, Rational(seed % 3, 4)));
    const CoverSystem system(inst);
    const DeltaSolution base = primal_dual_cover(system);
    for (int k = 0; k < 3; ++k) {
      const DeltaSolution in = k == 0 ? base : random_cover(inst, rng, base, k == 2);
      const RepairResult r = repair(in, system);
      CHECK(check_fas_feasible(r.delta, inst).empty());
      CHECK(variable_cost(r.delta, inst) <= variable_cost(minimalize(in, system), inst));
      const auto& it = r.trace.iterations;
      CHECK(it.size() <= static_cast<std::size_t>(n) * n);
      for (const auto& step : it) {
        CHECK(step.cost_after <= step.cost_before);
        if (step.chosen_v) CHECK(step.contradicting_after < step.contradicting_before);
      }
    }
  }
}

TEST_CASE("trace serialization") {
  const RepairResult o = repair(all_ones(k3()), k3());
  const std::string text = serialize_trace(o.trace);
  CHECK(std::count(text.begin(), text.end(), '\n') == static_cast<long>(o.trace.iterations.size()));
  CHECK(text.rfind("iteration=1 cost_before=", 0) == 0);
  CHECK(text.find("chosen_X=") != std::string::npos);
}

TEST_CASE("solve pipeline") {
  const SolveReport k = solve_pipeline(k3());
  CHECK(k.total_cost == Cost(Weight::units(4)));
  CHECK(k.total_cost == k.variable_cost + k.fixed_cost);
  CHECK(k.alpha_guarantee == 3);
  CHECK_FALSE(k.lower_bound.has_value());

  const Instance chain = instance_of({"0 1 1", "1 0 1", "1 1 0"}, {{1, 0}, {0, 2}});
  const SolveReport c = solve_pipeline(chain);
  CHECK(c.order.order == std::vector<Vertex>{1, 0, 2});
  CHECK(c.variable_cost == Cost());

  SolveOptions with;
  with.with_bound = true;
  const SolveReport b = solve_pipeline(gen_hemimetric(spec(8, 4, Rational(1, 5))), with);
  REQUIRE(b.lower_bound.has_value());
  CHECK(*b.guarantee_certified);
  CHECK(*b.ratio_vs_bound >= 1);
  CHECK(b.variable_cost.to_rational() <= 3 * (1 + *b.eps) * *b.lower_bound);
}

}
