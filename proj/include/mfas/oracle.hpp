#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mfas/fixed_point.hpp"
#include "mfas/instance.hpp"
#include "mfas/solution.hpp"

namespace mfas {

struct OracleResult {
  Permutation best_perm;
  Cost best_total_cost;
  Cost best_variable_cost;  // total minus the poset's fixed cost
  std::uint64_t explored = 0;  // down-closed vertex sets evaluated
};

inline constexpr Vertex kExtensionGuard = 20;

/// Minimum-cost linear extension by dynamic programming over placed
/// prefixes. Among optimal orders the lexicographically smallest is
/// returned. Throws GuardExceeded for n > guard.
OracleResult exact_min_extension(const Instance& inst, Vertex guard = kExtensionGuard);

struct CoverOracleResult {
  DeltaSolution delta;
  Cost variable_cost;
  std::uint64_t explored = 0;  // search nodes
};

/// Variables (positive-weight arcs) the cover search accepts.
inline constexpr std::size_t kCoverGuard = 32;

/// Minimum-cost integral solution of the poset covering relaxation, by
/// branch and bound. Zero-weight arcs are fixed to 1, so the guard counts
/// positive-weight incomparable arcs only. The result is minimal.
CoverOracleResult exact_min_cover(const Instance& inst, std::size_t guard = kCoverGuard);

/// Rows of the pair / directed-triangle relaxation that ignores poset
/// witnesses: poset arcs take their fixed values, rows already satisfied
/// by a poset arc are skipped.
std::vector<std::vector<Arc>> unconstrained_rows(const Instance& inst);

/// Branch and bound over an explicit row set. Returns `incumbent` unless a
/// strictly cheaper cover exists.
CoverOracleResult exact_min_cover_rows(const Instance& inst, std::span<const std::vector<Arc>> rows,
                                       const DeltaSolution& incumbent, std::size_t guard = kCoverGuard);

}  // namespace mfas
