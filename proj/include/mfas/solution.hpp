#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mfas/fixed_point.hpp"
#include "mfas/instance.hpp"

namespace mfas {

/// Arc variables δ(i,j) over the incomparable pairs of an instance.
///
/// Values are stored as numerators over a common denominator (1 for 0/1
/// solutions). Entries on comparable pairs are never stored: those arcs are
/// fixed to 1 along the order and 0 against it, see `effective`.
class DeltaSolution {
 public:
  DeltaSolution() = default;
  explicit DeltaSolution(Vertex n, std::int64_t denominator = 1);

  static DeltaSolution from_arcs(Vertex n, std::span<const Arc> arcs);

  Vertex size() const { return n_; }
  std::int64_t denominator() const { return den_; }

  std::int64_t numerator(Vertex i, Vertex j) const { return num_[index(i, j)]; }
  std::int64_t numerator(Arc a) const { return numerator(a.from, a.to); }
  void set_numerator(Arc a, std::int64_t value);

  /// δ(i,j) == 1.
  bool arc(Vertex i, Vertex j) const { return num_[index(i, j)] == den_; }
  bool arc(Arc a) const { return arc(a.from, a.to); }
  void set(Arc a, bool on) { num_[index(a.from, a.to)] = on ? den_ : 0; }

  Rational value(Arc a) const { return Rational(numerator(a), den_); }

  bool is_integral() const;
  /// Same values over denominator 1; throws NotIntegral.
  DeltaSolution to_integral() const;

  /// Arcs with δ > 0, lexicographic.
  std::vector<Arc> support() const;
  std::size_t support_size() const;

  bool operator==(const DeltaSolution& o) const = default;

 private:
  std::size_t index(Vertex i, Vertex j) const { return static_cast<std::size_t>(i) * n_ + j; }

  Vertex n_ = 0;
  std::int64_t den_ = 1;
  std::vector<std::int64_t> num_;
};

/// Throws DimensionMismatch / PosetViolated unless `delta` lives on inc(P).
void require_compatible(const DeltaSolution& delta, const Instance& inst);

/// δ(i,j) as a numerator over delta.denominator(), with poset arcs fixed.
inline std::int64_t effective(const DeltaSolution& delta, const Poset& poset, Vertex i, Vertex j) {
  if (poset.precedes(i, j)) return delta.denominator();
  if (poset.precedes(j, i)) return 0;
  return delta.numerator(i, j);
}

struct Permutation {
  std::vector<Vertex> order;

  bool operator==(const Permutation&) const = default;
};

/// Throws FormatError unless `perm` is a permutation of 0..n-1.
void require_permutation(const Permutation& perm, Vertex n);
bool respects(const Permutation& perm, const Poset& poset);
std::string to_string(const Permutation& perm);

struct CostBreakdown {
  Rational variable_cost;
  Cost fixed_cost;
  Rational total_cost;
};

CostBreakdown cost(const DeltaSolution& delta, const Instance& inst);
/// Fast path for 0/1 solutions (no check that delta is integral).
Cost variable_cost(const DeltaSolution& delta, const Instance& inst);
/// Σ over i before j of w(i,j).
Cost permutation_cost(const Permutation& perm, const Instance& inst);

/// Decimal if the value is a multiple of 1e-9, else "p/q".
std::string format_exact(const Rational& value);

enum class ViolationKind { kPair, kTriple, kPosetPair, kPosetTriple, kAlternatingCycle };
std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind = ViolationKind::kPair;
  std::vector<Arc> arcs;       // variable arcs, canonical rotation
  std::vector<Arc> witnesses;  // poset pairs certifying the constraint

  std::vector<Arc> arc_set() const;  // sorted copy of arcs
};

std::string to_string(const Violation& v);

/// Constraints of the ordering formulation: exactly one of δ(i,j), δ(j,i)
/// for every pair and no reversed triangle. Empty iff δ encodes a linear
/// extension. Throws NotIntegral.
std::vector<Violation> check_fas_feasible(const DeltaSolution& delta, const Instance& inst);

/// Violated constraints of the poset covering relaxation (pairs and
/// triples with reflexive-or-poset witnesses).
std::vector<Violation> check_cover_feasible(const DeltaSolution& delta, const Instance& inst);

/// Violated constraints of the pair / directed-triangle relaxation that
/// ignores poset witnesses, with poset arcs at their fixed values.
std::vector<Violation> check_unconstrained_cover(const DeltaSolution& delta, const Instance& inst);

inline constexpr int kDefaultMaxCycle = 6;

/// Violated alternating-cycle constraints (x1,y1)..(xc,yc) with
/// (xi, y(i+1)) in P cyclically, 2 <= c <= max_c. Throws CapExceeded for
/// max_c outside [2, cap].
std::vector<Violation> check_alternating_cycles(const DeltaSolution& delta, const Instance& inst, int max_c,
                                                int cap = kDefaultMaxCycle);

/// Order encoded by a FAS-feasible δ. Throws NotFeasible.
Permutation permutation_from_delta(const DeltaSolution& delta, const Instance& inst);
/// Throws PosetViolated when perm contradicts the poset.
DeltaSolution delta_from_permutation(const Permutation& perm, const Instance& inst);

// Solution file format v1.
DeltaSolution parse_solution(std::istream& in, const Instance& inst);
DeltaSolution parse_solution_text(std::string_view text, const Instance& inst);
DeltaSolution read_solution_file(const std::string& path, const Instance& inst);
std::string serialize_solution(const DeltaSolution& delta);

}  // namespace mfas
