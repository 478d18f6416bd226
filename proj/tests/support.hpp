#pragma once

// Brute-force reference implementations, written straight from the
// definitions and kept independent of the library's algorithms.

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "mfas/covering.hpp"
#include "mfas/generator.hpp"
#include "mfas/instance.hpp"
#include "mfas/solution.hpp"

namespace mfas::test {

inline std::string data_path(const std::string& file) { return std::string(MFAS_DATA_DIR) + "/" + file; }

/// Rows are whitespace-separated decimals.
inline Instance instance_of(const std::vector<std::string>& rows, const std::vector<Arc>& prec = {}) {
  std::string text = "mfas 1\nn " + std::to_string(rows.size()) + "\n";
  for (const Arc& a : prec) text += "prec " + std::to_string(a.from) + " " + std::to_string(a.to) + "\n";
  text += "weights\n";
  for (const auto& r : rows) text += r + "\n";
  text += "end\n";
  return parse_instance_text(text);
}

inline Instance k3() { return bundled_instance("k3_demo"); }

inline DeltaSolution arcs(Vertex n, std::initializer_list<Arc> list) {
  const std::vector<Arc> v(list);
  return DeltaSolution::from_arcs(n, v);
}

inline Cost total(const DeltaSolution& d, const Instance& inst) { return variable_cost(d, inst) + inst.fixed_cost(); }

struct BruteExtension {
  Cost best;
  std::vector<Vertex> order;
  std::size_t extensions = 0;
};

/// Every permutation, filtered by the poset, summing w(i,j) for i before j.
inline BruteExtension brute_min_extension(const Instance& inst) {
  const Vertex n = inst.size();
  std::vector<Vertex> p(n);
  std::iota(p.begin(), p.end(), 0);
  BruteExtension out;
  bool first = true;
  do {
    bool ok = true;
    for (Vertex a = 0; a < n && ok; ++a) {
      for (Vertex b = a + 1; b < n && ok; ++b) ok = !inst.poset().precedes(p[b], p[a]);
    }
    if (!ok) continue;
    ++out.extensions;
    Cost c;
    for (Vertex a = 0; a < n; ++a) {
      for (Vertex b = a + 1; b < n; ++b) c += inst.w(p[a], p[b]);
    }
    if (first || c < out.best) {
      out.best = c;
      out.order = p;
      first = false;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Arc sets of the covering rows, scanned over all ordered pairs and
/// triples of incomparable arcs.
inline std::set<std::vector<Arc>> brute_constraint_sets(const Instance& inst) {
  const Poset& p = inst.poset();
  const std::vector<Arc> inc = incomparable_pairs(p);
  std::set<std::vector<Arc>> rows;
  for (const Arc& a : inc) {
    for (const Arc& b : inc) {
      if (a == b) continue;
      if (p.in_order(b.from, a.to) && p.in_order(a.from, b.to)) {
        std::vector<Arc> s = {a, b};
        std::sort(s.begin(), s.end());
        rows.insert(s);
      }
      for (const Arc& c : inc) {
        if (c == a || c == b) continue;
        if (p.in_order(b.from, a.to) && p.in_order(c.from, b.to) && p.in_order(a.from, c.to)) {
          std::vector<Arc> s = {a, b, c};
          std::sort(s.begin(), s.end());
          rows.insert(s);
        }
      }
    }
  }
  return rows;
}

/// Minimum variable cost over all 0/1 assignments of inc(P) feasible for
/// the covering rows. Only for |inc(P)| <= 20.
inline Cost brute_min_cover(const Instance& inst) {
  const std::vector<Arc> inc = incomparable_pairs(inst.poset());
  const auto rows = brute_constraint_sets(inst);
  std::vector<std::vector<std::size_t>> idx;
  for (const auto& r : rows) {
    std::vector<std::size_t> v;
    for (const Arc& a : r) v.push_back(static_cast<std::size_t>(std::find(inc.begin(), inc.end(), a) - inc.begin()));
    idx.push_back(v);
  }
  Cost best;
  bool found = false;
  for (std::uint32_t mask = 0; mask < (1u << inc.size()); ++mask) {
    bool ok = true;
    for (const auto& r : idx) {
      bool hit = false;
      for (std::size_t k : r) hit = hit || (mask >> k & 1u);
      if (!hit) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    Cost c;
    for (std::size_t k = 0; k < inc.size(); ++k) {
      if (mask >> k & 1u) c += inst.w(inc[k]);
    }
    if (!found || c < best) best = c, found = true;
  }
  return best;
}

inline std::set<std::vector<Arc>> arc_sets(const std::vector<Violation>& vs) {
  std::set<std::vector<Arc>> s;
  for (const auto& v : vs) s.insert(v.arc_set());
  return s;
}

/// A random cover: `base` plus each incomparable arc with probability
/// 1/3, or (when `from_scratch`) a random half of the arcs with every
/// still-violated row patched by one random arc of it.
template <typename Rng>
DeltaSolution random_cover(const Instance& inst, Rng& rng, const DeltaSolution& base, bool from_scratch) {
  DeltaSolution d = from_scratch ? DeltaSolution(inst.size()) : base;
  for (const Arc& a : incomparable_pairs(inst.poset())) {
    if (rng.chance(1, from_scratch ? 2 : 3)) d.set(a, true);
  }
  for (const CoverConstraint& c : enumerate_constraints(inst)) {
    const auto a = c.arc_span();
    if (std::none_of(a.begin(), a.end(), [&](Arc x) { return d.arc(x); })) d.set(a[rng.below(a.size())], true);
  }
  return d;
}

inline GenSpec spec(Vertex n, std::uint64_t seed, Rational density = 0) {
  GenSpec g;
  g.n = n;
  g.seed = seed;
  g.poset_density = density;
  return g;
}

}  // namespace mfas::test
