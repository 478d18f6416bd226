#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mfas/fixed_point.hpp"
#include "mfas/instance.hpp"
#include "mfas/solution.hpp"

namespace mfas {

/// One row δ(a1) + δ(a2) [+ δ(a3)] >= 1 of the poset covering relaxation.
///
/// Pair rows are certified by (x2,y1), (x1,y2) in P; triple rows by
/// (x2,y1), (x3,y2), (x1,y3) in P (reflexive pairs allowed). Arcs are
/// stored starting from the lexicographically smallest one.
struct CoverConstraint {
  std::array<Arc, 3> arcs{};
  std::array<Arc, 3> witnesses{};
  std::uint8_t size = 0;

  std::span<const Arc> arc_span() const { return {arcs.data(), size}; }
  std::span<const Arc> witness_span() const { return {witnesses.data(), size}; }
  bool is_triple() const { return size == 3; }
  Violation to_violation() const;
};

inline constexpr Vertex kDefaultConstraintCap = 64;

/// All pair rows (lexicographic) followed by all triple rows, each row
/// appearing once per arc set. Throws CapExceeded for n above `cap`.
std::vector<CoverConstraint> enumerate_constraints(const Instance& inst, Vertex cap = kDefaultConstraintCap);

/// Constraint rows plus an arc -> rows incidence index.
class CoverSystem {
 public:
  explicit CoverSystem(const Instance& inst, Vertex cap = kDefaultConstraintCap);

  const Instance& instance() const { return *inst_; }
  const std::vector<CoverConstraint>& constraints() const { return rows_; }
  std::span<const std::uint32_t> rows_containing(Arc a) const;

  /// Number of rows with δ sum below 1.
  std::size_t violated_count(const DeltaSolution& delta) const;
  bool feasible(const DeltaSolution& delta) const { return violated_count(delta) == 0; }
  std::vector<Violation> violations(const DeltaSolution& delta) const;

 private:
  std::size_t arc_index(Arc a) const { return static_cast<std::size_t>(a.from) * inst_->size() + a.to; }

  const Instance* inst_;
  std::vector<CoverConstraint> rows_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> incidence_;
};

/// Local-ratio cover over the rows in enumeration order: an uncovered row
/// lowers the residual weight of all its arcs by their minimum, and arcs
/// reaching zero residual join the cover. Cost <= 3 * LP optimum.
DeltaSolution primal_dual_cover(const CoverSystem& system);
DeltaSolution primal_dual_cover(const Instance& inst);

/// Drops supported arcs one at a time (heaviest first, ties by arc) while
/// the solution stays cover-feasible. Throws NotIntegral / NotFeasible.
DeltaSolution minimalize(const DeltaSolution& delta, const CoverSystem& system);
DeltaSolution minimalize(const DeltaSolution& delta, const Instance& inst);

struct FractionalBound {
  DeltaSolution x;  // denominator 1e9
  Rational primal_value;
  Rational lower_bound;
  Rational eps;
  std::uint64_t iterations = 0;
};

struct MwuOptions {
  /// 0 selects ceil(8 m ln(m+1) / eps^2) + 10'000 with m rows.
  std::uint64_t max_iterations = 0;
  Vertex cap = kDefaultConstraintCap;
};

/// (1+eps)-certified fractional cover via multiplicative weights on the
/// dual packing LP. Throws BudgetExhausted if no certificate is reached.
FractionalBound mwu_fractional_cover(const Instance& inst, const Rational& eps, const MwuOptions& opts = {});

}  // namespace mfas
