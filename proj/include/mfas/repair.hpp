#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mfas/covering.hpp"
#include "mfas/fixed_point.hpp"
#include "mfas/instance.hpp"
#include "mfas/solution.hpp"

namespace mfas {

/// (a, c, b) with δ(a,c) = δ(c,b) = δ(a,b) = δ(b,a) = 1 and
/// δ(c,a) = δ(b,c) = 0: the contradicting pair {a,b} is held in place by
/// the path a -> c -> b.
struct BasicTriple {
  Vertex a = 0;
  Vertex c = 0;
  Vertex b = 0;

  constexpr auto operator<=>(const BasicTriple&) const = default;
};

/// Drop-and-reverse arc sets of one vertex v over the basic triples T:
/// S = {(i,j) : (v,i,j) in T}, M = {(i,j) : (j,v,i) in T},
/// E = {(i,j) : (i,j,v) in T}. All three are sorted.
struct SMESets {
  Vertex v = 0;
  std::vector<Arc> S;
  std::vector<Arc> M;
  std::vector<Arc> E;

  bool empty() const { return S.empty() && M.empty() && E.empty(); }
};

enum class RepairSide { kS, kE };
std::string_view to_string(RepairSide side);

/// Unordered pairs {i,j}, i < j, with δ(i,j) = δ(j,i) = 1. Throws NotIntegral.
std::vector<std::pair<Vertex, Vertex>> contradicting_pairs(const DeltaSolution& delta);
std::size_t contradicting_count(const DeltaSolution& delta);

/// Basic triples of an integral δ, lexicographic (poset arcs at their
/// fixed values). Throws NotIntegral.
std::vector<BasicTriple> basic_triples(const DeltaSolution& delta, const Instance& inst);

SMESets sme_sets(const std::vector<BasicTriple>& triples, Vertex v);
SMESets sme_sets(const DeltaSolution& delta, const Instance& inst, Vertex v);

/// δ^X for X in {S_v, E_v}: arcs of M_v set to 0, arcs of X reversed.
/// Throws LemmaViolated if the result is not cover-feasible.
DeltaSolution build_candidate(const DeltaSolution& delta, const SMESets& sets, RepairSide side, const CoverSystem& system);
DeltaSolution build_candidate(const DeltaSolution& delta, const Instance& inst, Vertex v, RepairSide side);

/// A quadruple breaking: δ(j,k)=1, δ(k,j)=0, (i,j),(k,l) in P  =>
/// δ(i,l)=1, δ(l,i)=0.
struct Lemma1Counterexample {
  Vertex i, j, k, l;
};

std::vector<Lemma1Counterexample> check_lemma1(const DeltaSolution& delta, const Instance& inst);

struct RepairIteration {
  Cost cost_before;
  Cost cost_after;
  std::size_t contradicting_before = 0;
  std::size_t contradicting_after = 0;
  std::optional<Vertex> chosen_v;  // empty when minimalization alone finished
  std::optional<RepairSide> chosen_side;
  std::size_t triples = 0;
  /// Contradicting pairs of the chosen candidate before re-minimalization.
  std::optional<std::size_t> raw_contradicting;
};

struct RepairTrace {
  std::vector<RepairIteration> iterations;
  /// Iterations whose chosen raw candidate kept the contradicting count.
  std::size_t raw_nondecreasing = 0;
};

/// One line per iteration, `key=value` fields in declaration order.
std::string serialize_trace(const RepairTrace& trace);

struct RepairResult {
  DeltaSolution delta;
  RepairTrace trace;
};

/// Turns an integral cover-feasible δ into a linear extension of no larger
/// cost on a hemimetric instance.
///
/// Each round minimalizes the current solution, stops when no pair is
/// contradicting, and otherwise builds δ^S and δ^E for every vertex with
/// non-empty S/M/E sets. Candidates no more expensive than the current
/// solution are minimalized and ranked by (contradicting pairs, cost, v,
/// S before E); the winner must have strictly fewer contradicting pairs.
///
/// Throws NotHemimetric, NotIntegral, NotFeasible (input not a cover),
/// LemmaViolated (no basic triple, no admissible candidate, no progress or
/// an infeasible candidate) and NonTermination (more than 2 n^2 rounds).
RepairResult repair(const DeltaSolution& delta, const Instance& inst);
RepairResult repair(const DeltaSolution& delta, const CoverSystem& system);

struct SolveOptions {
  bool with_bound = false;
  Rational eps = Rational(1, 20);
};

struct SolveReport {
  std::string instance_digest;
  Permutation order;
  Cost total_cost;
  Cost variable_cost;
  Cost fixed_cost;
  Cost cover_cost;            // primal-dual cover before repair
  Cost minimal_cover_cost;    // after the first minimalization
  std::optional<Rational> lower_bound;
  std::optional<Rational> fractional_value;
  std::optional<Rational> eps;
  std::optional<Rational> ratio_vs_bound;  // variable_cost / lower_bound
  /// variable_cost <= 3 (1 + eps) lower_bound, when a bound was computed.
  std::optional<bool> guarantee_certified;
  std::size_t iterations = 0;
  std::size_t contradicting_initial = 0;
  int alpha_guarantee = 3;
  RepairTrace trace;
};

/// Primal-dual cover, repair, then the encoded order. Throws NotHemimetric.
SolveReport solve_pipeline(const Instance& inst, const SolveOptions& opts = {});

}  // namespace mfas
