#include "mfas/generator.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "mfas/error.hpp"
#include "mfas/oracle.hpp"
#include "mfas/random.hpp"

namespace mfas {

std::string_view to_string(GenMode mode) {
  switch (mode) {
    case GenMode::kHemimetricClosure: return "hemimetric_closure";
    case GenMode::kIntervalKgonal: return "interval_kgonal";
    case GenMode::kProbabilityLike: return "probability_like";
  }
  return "?";
}

GenMode parse_gen_mode(std::string_view text) {
  for (GenMode m : {GenMode::kHemimetricClosure, GenMode::kIntervalKgonal, GenMode::kProbabilityLike}) {
    if (text == to_string(m)) return m;
  }
  fail(ErrorCode::kUnknownName, "unknown generator mode: " + std::string(text));
}

void validate_spec(const GenSpec& spec) {
  if (spec.n < 1 || spec.n > kMaxVertices) fail(ErrorCode::kFormat, "n out of range");
  if (spec.lo > spec.hi) fail(ErrorCode::kFormat, "weight range has lo > hi");
  if (spec.grain.is_zero()) fail(ErrorCode::kFormat, "grain must be positive");
  if (spec.poset_density < 0 || spec.poset_density > 1) fail(ErrorCode::kFormat, "poset density outside [0,1]");
  if (spec.k < 3) fail(ErrorCode::kFormat, "k must be at least 3");
}

namespace {

// Independent streams so the poset does not shift with weight draws.
constexpr std::uint64_t kPosetStream = 0x9e3779b97f4a7c15ULL;

bool draw(Rng& rng, const Rational& p) {
  if (p <= 0) return false;
  if (p >= 1) return true;
  const BigInt num = numerator(p), den = denominator(p);
  if (den > BigInt(std::numeric_limits<std::uint64_t>::max())) {
    fail(ErrorCode::kFormat, "poset density denominator too large");
  }
  return rng.chance(num.convert_to<std::uint64_t>(), den.convert_to<std::uint64_t>());
}

Weight draw_weight(Rng& rng, Weight lo, Weight hi, Weight grain) {
  const std::int64_t steps = (hi.nanos() - lo.nanos()) / grain.nanos();
  return Weight::from_nanos(lo.nanos() + grain.nanos() * rng.between(0, steps));
}

Poset draw_poset(Vertex n, const Rational& density, Rng& rng) {
  std::vector<Vertex> label(n);
  std::iota(label.begin(), label.end(), 0);
  for (Vertex i = n - 1; i > 0; --i) {
    std::swap(label[i], label[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  }
  std::vector<Arc> pairs;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      if (draw(rng, density)) pairs.push_back({label[a], label[b]});
    }
  }
  return Poset::from_pairs(n, pairs);
}

std::vector<Weight> closed_weights(Vertex n, Weight lo, Weight hi, Weight grain, Rng& rng) {
  std::vector<std::int64_t> d(static_cast<std::size_t>(n) * n, 0);
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = 0; j < n; ++j) {
      if (i != j) d[static_cast<std::size_t>(i) * n + j] = draw_weight(rng, lo, hi, grain).nanos();
    }
  }
  for (Vertex k = 0; k < n; ++k) {
    for (Vertex i = 0; i < n; ++i) {
      const std::int64_t ik = d[static_cast<std::size_t>(i) * n + k];
      for (Vertex j = 0; j < n; ++j) {
        auto& ij = d[static_cast<std::size_t>(i) * n + j];
        ij = std::min(ij, ik + d[static_cast<std::size_t>(k) * n + j]);
      }
    }
  }
  std::vector<Weight> w(d.size());
  std::transform(d.begin(), d.end(), w.begin(), Weight::from_nanos);
  return w;
}

}  // namespace

Poset gen_poset(const GenSpec& spec) {
  validate_spec(spec);
  Rng rng(spec.seed ^ kPosetStream);
  return draw_poset(spec.n, spec.poset_density, rng);
}

Instance gen_hemimetric(const GenSpec& spec) {
  validate_spec(spec);
  Rng rng(spec.seed);
  return Instance(spec.n, closed_weights(spec.n, spec.lo, spec.hi, spec.grain, rng), gen_poset(spec));
}

Instance gen_interval_kgonal(const GenSpec& spec, int k) {
  GenSpec s = spec;
  s.k = k;
  validate_spec(s);
  Rng rng(s.seed);
  const Weight lo = Weight::units(1), hi = Weight::units(k - 1);
  std::vector<Weight> w(static_cast<std::size_t>(s.n) * s.n);
  for (Vertex i = 0; i < s.n; ++i) {
    for (Vertex j = 0; j < s.n; ++j) {
      if (i != j) w[static_cast<std::size_t>(i) * s.n + j] = draw_weight(rng, lo, hi, s.grain);
    }
  }
  return Instance(s.n, std::move(w), gen_poset(s));
}

Instance gen_probability_like(const GenSpec& spec) {
  validate_spec(spec);
  Rng rng(spec.seed);
  const Vertex n = spec.n;
  std::vector<Weight> w(static_cast<std::size_t>(n) * n);
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      const Weight x = draw_weight(rng, Weight::from_nanos(0), Weight::units(1), spec.grain);
      w[static_cast<std::size_t>(i) * n + j] = x;
      w[static_cast<std::size_t>(j) * n + i] = Weight::from_nanos(kScale - x.nanos());
    }
  }
  return Instance(n, std::move(w), gen_poset(spec));
}

Instance generate(const GenSpec& spec) {
  switch (spec.mode) {
    case GenMode::kHemimetricClosure: return gen_hemimetric(spec);
    case GenMode::kIntervalKgonal: return gen_interval_kgonal(spec, spec.k);
    case GenMode::kProbabilityLike: return gen_probability_like(spec);
  }
  fail(ErrorCode::kFormat, "bad generator mode");
}

namespace {

// Vertex labels 1..8 of the drawing map to 0..7.
Instance appendix_a() {
  constexpr Vertex n = 8;
  std::vector<Weight> w(n * n);
  auto set = [&](int a, int b, std::int64_t nanos_ab) {
    w[(a - 1) * n + (b - 1)] = Weight::from_nanos(nanos_ab);
    w[(b - 1) * n + (a - 1)] = Weight::from_nanos(kScale - nanos_ab);
  };
  auto forward = [&](std::initializer_list<int> from, std::initializer_list<int> to) {
    for (int a : from) {
      for (int b : to) set(a, b, 0);
    }
  };
  forward({2, 3}, {4, 5, 6});
  forward({4, 5, 6}, {7, 8});
  forward({7, 8}, {1});
  forward({1}, {2, 3});
  forward({2}, {3});
  forward({4}, {5, 6});
  forward({5}, {6});
  forward({7}, {8});
  for (int a : {2, 3}) {
    for (int b : {7, 8}) set(a, b, kScale);
  }
  for (int b : {4, 5, 6}) set(1, b, kScale / 2);
  return Instance(n, std::move(w), Poset(n));
}

Instance k3_demo() {
  const std::int64_t u = kScale;
  std::vector<Weight> w = {
      Weight::from_nanos(0),     Weight::from_nanos(u),     Weight::from_nanos(2 * u),
      Weight::from_nanos(2 * u), Weight::from_nanos(0),     Weight::from_nanos(u),
      Weight::from_nanos(u),     Weight::from_nanos(2 * u), Weight::from_nanos(0),
  };
  return Instance(3, std::move(w), Poset(3));
}

}  // namespace

Instance bundled_instance(std::string_view name) {
  if (name == "appendix_a") return appendix_a();
  if (name == "k3_demo") return k3_demo();
  fail(ErrorCode::kUnknownName, "unknown bundled instance: " + std::string(name));
}

DeltaSolution appendix_a_cover() {
  const Instance inst = appendix_a();
  DeltaSolution d(8);
  for (Vertex i = 0; i < 8; ++i) {
    for (Vertex j = 0; j < 8; ++j) {
      if (i != j && inst.w(i, j).is_zero()) d.set({i, j}, true);
    }
  }
  // Both directions of the weight-1 pairs {2,3}x{7,8} and the 0.5 pairs {1}x{4,5,6}.
  for (Vertex a : {1, 2}) {
    for (Vertex b : {6, 7}) d.set({a, b}, true);
  }
  for (Vertex b : {3, 4, 5}) {
    d.set({0, b}, true);
    d.set({b, 0}, true);
  }
  return d;
}

WitnessCheck verify_cycle_witness(const Instance& inst, const DeltaSolution& delta) {
  WitnessCheck c;
  c.hemimetric = validate_hemimetric(inst, 1).is_hemimetric;
  c.relaxed_feasible = check_unconstrained_cover(delta, inst).empty();
  c.fas_infeasible = !check_fas_feasible(delta, inst).empty();
  c.cover_violations = check_cover_feasible(delta, inst).size();
  c.delta_total = variable_cost(delta, inst) + inst.fixed_cost();
  c.optimum_total = exact_min_extension(inst).best_total_cost;
  return c;
}

namespace {

Poset two_chains() {
  const Arc pairs[] = {{0, 1}, {2, 3}};
  return Poset::from_pairs(4, pairs);
}

// Four-cycle 1 -> 2 -> 3 -> 0 -> 1 closed by the poset arcs, both
// diagonals in both directions.
DeltaSolution template_delta() {
  DeltaSolution d(4);
  for (Arc a : {Arc{1, 2}, Arc{3, 0}, Arc{0, 2}, Arc{2, 0}, Arc{1, 3}, Arc{3, 1}}) d.set(a, true);
  return d;
}

}  // namespace

std::optional<CycleWitness> search_cycle_witness(const GenSpec& spec, std::uint64_t budget) {
  validate_spec(spec);
  Rng rng(spec.seed);
  const Vertex max_n = std::clamp<Vertex>(spec.n, 4, 6);
  const Rational density = spec.poset_density > 0 ? spec.poset_density : Rational(1, 2);
  const Poset chains = two_chains();
  const DeltaSolution fixed = template_delta();

  for (std::uint64_t trial = 0; trial < budget; ++trial) {
    std::optional<Instance> inst;
    DeltaSolution delta;
    if (trial < kTemplateTrials) {
      inst.emplace(4, closed_weights(4, spec.lo, spec.hi, spec.grain, rng), chains);
      delta = fixed;
    } else {
      const Vertex n = static_cast<Vertex>(rng.between(4, max_n));
      Poset p = draw_poset(n, density, rng);
      inst.emplace(n, closed_weights(n, spec.lo, spec.hi, spec.grain, rng), std::move(p));
      const OracleResult best = exact_min_extension(*inst);
      const auto rows = unconstrained_rows(*inst);
      const CoverOracleResult relaxed =
          exact_min_cover_rows(*inst, rows, delta_from_permutation(best.best_perm, *inst));
      if (relaxed.variable_cost >= best.best_variable_cost) continue;
      delta = relaxed.delta;
    }
    WitnessCheck check = verify_cycle_witness(*inst, delta);
    if (check.ok()) return CycleWitness{std::move(*inst), std::move(delta), check, trial};
  }
  return std::nullopt;
}

}  // namespace mfas
