#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "mfas/fixed_point.hpp"
#include "mfas/instance.hpp"
#include "mfas/solution.hpp"

namespace mfas {

enum class GenMode { kHemimetricClosure, kIntervalKgonal, kProbabilityLike };

std::string_view to_string(GenMode mode);
/// Throws UnknownName.
GenMode parse_gen_mode(std::string_view text);

struct GenSpec {
  Vertex n = 8;
  std::uint64_t seed = 1;
  Rational poset_density = 0;
  Weight lo = Weight::from_nanos(0);
  Weight hi = Weight::from_nanos(kScale);
  Weight grain = Weight::from_nanos(kScale / 1000);  // weights are multiples of this above lo
  GenMode mode = GenMode::kHemimetricClosure;
  int k = 3;  // interval_kgonal only
};

/// Throws FormatError for n outside [1, kMaxVertices], lo > hi, a zero
/// grain, a density outside [0,1] or k < 3.
void validate_spec(const GenSpec& spec);

Poset gen_poset(const GenSpec& spec);

/// Uniform weights in [lo, hi] replaced by their min-plus closure.
Instance gen_hemimetric(const GenSpec& spec);

/// Uniform weights in [1, k-1]; lo and hi are ignored.
Instance gen_interval_kgonal(const GenSpec& spec, int k);

/// w(i,j) uniform in [0,1], w(j,i) = 1 - w(i,j).
Instance gen_probability_like(const GenSpec& spec);

/// Dispatches on spec.mode.
Instance generate(const GenSpec& spec);

/// "appendix_a" or "k3_demo". Throws UnknownName.
Instance bundled_instance(std::string_view name);

/// The eight-vertex cover of value 7 on appendix_a.
DeltaSolution appendix_a_cover();

struct WitnessCheck {
  bool hemimetric = false;
  bool relaxed_feasible = false;  // poset-free pair / triangle rows hold
  bool fas_infeasible = false;
  std::size_t cover_violations = 0;
  Cost delta_total;
  Cost optimum_total;

  bool ok() const { return hemimetric && relaxed_feasible && fas_infeasible && delta_total < optimum_total; }
};

WitnessCheck verify_cycle_witness(const Instance& inst, const DeltaSolution& delta);

struct CycleWitness {
  Instance instance;
  DeltaSolution delta;
  WitnessCheck check;
  std::uint64_t trial = 0;
};

/// Trials probing four-vertex instances with the fixed two-chain template
/// before the search switches to random posets.
inline constexpr std::uint64_t kTemplateTrials = 1000;

/// Seeded search for a hemimetric instance with a δ that satisfies the
/// poset-free rows yet costs less than every linear extension. The first
/// kTemplateTrials trials keep the template δ on two chains 0<1, 2<3 and
/// redraw weights; later trials draw n in [4, min(spec.n, 6)] and a poset
/// from spec.poset_density (1/2 when zero) and take the exact relaxed
/// optimum. Returns the first witness within `budget` trials.
std::optional<CycleWitness> search_cycle_witness(const GenSpec& spec, std::uint64_t budget);

}  // namespace mfas
