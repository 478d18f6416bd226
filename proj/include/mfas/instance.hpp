#pragma once

#include <compare>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "mfas/fixed_point.hpp"

namespace mfas {

using Vertex = std::int32_t;

inline constexpr Vertex kMaxVertices = 4096;

/// An ordered vertex pair; as a variable it is the arc from -> to.
struct Arc {
  Vertex from = 0;
  Vertex to = 0;

  constexpr auto operator<=>(const Arc&) const = default;
  constexpr Arc reversed() const { return {to, from}; }
};

std::string to_string(Arc a);

/// A strict partial order, stored as its transitive closure.
///
/// `precedes(x, y)` is the strict relation. `in_order(x, y)` additionally
/// accepts x == y, which is the reflexive relation used by every witness
/// condition of the covering constraints.
class Poset {
 public:
  Poset() = default;
  explicit Poset(Vertex n);

  /// Builds the closure of the stated pairs. Throws PosetError when a pair
  /// is reflexive or the closure contains a cycle.
  static Poset from_pairs(Vertex n, std::span<const Arc> pairs);

  Vertex size() const { return n_; }
  bool precedes(Vertex x, Vertex y) const { return succ_[x].test(y); }
  bool in_order(Vertex x, Vertex y) const { return x == y || succ_[x].test(y); }
  bool comparable(Vertex x, Vertex y) const { return precedes(x, y) || precedes(y, x); }

  /// Strict successors / predecessors as bitsets over vertices.
  const boost::dynamic_bitset<>& successors(Vertex x) const { return succ_[x]; }
  const boost::dynamic_bitset<>& predecessors(Vertex x) const { return pred_[x]; }

  /// All pairs of the closure, lexicographic.
  std::vector<Arc> pairs() const;
  /// Covering pairs (transitive reduction), lexicographic.
  std::vector<Arc> reduction() const;
  std::size_t pair_count() const;

  bool operator==(const Poset& o) const { return n_ == o.n_ && succ_ == o.succ_; }

 private:
  Vertex n_ = 0;
  std::vector<boost::dynamic_bitset<>> succ_;
  std::vector<boost::dynamic_bitset<>> pred_;
};

/// inc(P): ordered pairs x != y that are comparable in neither direction.
std::vector<Arc> incomparable_pairs(const Poset& poset);

class Instance {
 public:
  Instance() = default;
  /// `weights` is row-major n*n. Throws WeightError for a negative
  /// entry or a non-zero diagonal, DimensionMismatch on size errors.
  Instance(Vertex n, std::vector<Weight> weights, Poset poset);

  Vertex size() const { return n_; }
  Weight w(Vertex i, Vertex j) const { return weights_[static_cast<std::size_t>(i) * n_ + j]; }
  Weight w(Arc a) const { return w(a.from, a.to); }
  const Poset& poset() const { return poset_; }
  std::span<const Weight> weights() const { return weights_; }

  /// Σ w(i,j) over (i,j) in P: paid by every linear extension.
  Cost fixed_cost() const;

  bool operator==(const Instance& o) const = default;

 private:
  Vertex n_ = 0;
  std::vector<Weight> weights_;
  Poset poset_;
};

// MFAS text format v1.
Instance parse_instance(std::istream& in);
Instance parse_instance_text(std::string_view text);
Instance read_instance_file(const std::string& path);
std::string serialize_instance(const Instance& inst);
/// FNV-1a 64 of the canonical serialization, as 16 hex digits.
std::string instance_digest(const Instance& inst);

struct ValidationReport {
  bool is_hemimetric = true;  // for a k-gonal check: whether it holds
  std::vector<std::vector<Vertex>> violations;
  std::optional<int> checked_k;
  bool sampled = false;
  std::optional<std::uint64_t> seed;
  std::uint64_t sequences_checked = 0;
};

/// Exhaustive triangle-inequality check over all ordered triples.
/// Violations are (i, j, k) with w(i,k) > w(i,j) + w(j,k).
ValidationReport validate_hemimetric(const Instance& inst, std::size_t max_violations = 64);

struct KgonalOptions {
  enum class Mode { kAuto, kExhaustive, kSampled };
  Mode mode = Mode::kAuto;
  /// Largest n checked exhaustively; 0 picks the default for k
  /// (256 for k=3, 48 for k=4, 12 for k>=5).
  Vertex exhaustive_cap = 0;
  std::uint64_t samples = 200'000;
  std::uint64_t seed = 0x6b676f6e616c;
  std::size_t max_violations = 64;
};

Vertex default_kgonal_cap(int k);

/// Checks w(a1,ak) <= w(a1,a2) + ... + w(a(k-1),ak) over sequences of k
/// distinct vertices. Throws CapExceeded for an exhaustive request beyond
/// the cap and FormatError for k < 3.
ValidationReport validate_kgonal(const Instance& inst, int k, const KgonalOptions& opts = {});

/// w(i,j) + w(j,i) == 1 for all distinct pairs.
bool satisfies_probability_constraints(const Instance& inst);

}  // namespace mfas
