#include "mfas/solution.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "mfas/covering.hpp"
#include "mfas/error.hpp"

namespace mfas {

DeltaSolution::DeltaSolution(Vertex n, std::int64_t denominator)
    : n_(n), den_(denominator), num_(static_cast<std::size_t>(n) * n, 0) {
  if (denominator < 1) fail(ErrorCode::kFormat, "solution denominator must be positive");
}

DeltaSolution DeltaSolution::from_arcs(Vertex n, std::span<const Arc> arcs) {
  DeltaSolution d(n);
  for (const Arc& a : arcs) {
    if (a.from < 0 || a.to < 0 || a.from >= n || a.to >= n || a.from == a.to) {
      fail(ErrorCode::kFormat, "arc " + to_string(a) + " is not a pair of distinct vertices");
    }
    d.set(a, true);
  }
  return d;
}

void DeltaSolution::set_numerator(Arc a, std::int64_t value) {
  if (value < 0 || value > den_) fail(ErrorCode::kFormat, "arc value outside [0,1] at " + to_string(a));
  num_[index(a.from, a.to)] = value;
}

bool DeltaSolution::is_integral() const {
  return std::all_of(num_.begin(), num_.end(), [this](std::int64_t v) { return v == 0 || v == den_; });
}

DeltaSolution DeltaSolution::to_integral() const {
  if (!is_integral()) fail(ErrorCode::kNotIntegral, "solution has fractional values");
  DeltaSolution d(n_);
  for (std::size_t k = 0; k < num_.size(); ++k) d.num_[k] = num_[k] == den_ ? 1 : 0;
  return d;
}

std::vector<Arc> DeltaSolution::support() const {
  std::vector<Arc> out;
  for (Vertex i = 0; i < n_; ++i) {
    for (Vertex j = 0; j < n_; ++j) {
      if (num_[index(i, j)] > 0) out.push_back({i, j});
    }
  }
  return out;
}

std::size_t DeltaSolution::support_size() const {
  return static_cast<std::size_t>(std::count_if(num_.begin(), num_.end(), [](std::int64_t v) { return v > 0; }));
}

void require_compatible(const DeltaSolution& delta, const Instance& inst) {
  if (delta.size() != inst.size()) fail(ErrorCode::kDimensionMismatch, "solution and instance sizes differ");
  const Poset& p = inst.poset();
  for (Vertex i = 0; i < inst.size(); ++i) {
    if (delta.numerator(i, i) != 0) fail(ErrorCode::kFormat, "solution sets a diagonal arc");
    for (Vertex j = 0; j < inst.size(); ++j) {
      if (i != j && p.comparable(i, j) && delta.numerator(i, j) != 0) {
        fail(ErrorCode::kPosetViolated, "solution sets comparable arc " + to_string(Arc{i, j}));
      }
    }
  }
}

void require_permutation(const Permutation& perm, Vertex n) {
  if (perm.order.size() != static_cast<std::size_t>(n)) fail(ErrorCode::kDimensionMismatch, "permutation length differs from n");
  std::vector<bool> seen(n, false);
  for (Vertex v : perm.order) {
    if (v < 0 || v >= n || seen[v]) fail(ErrorCode::kFormat, "not a permutation of 0..n-1");
    seen[v] = true;
  }
}

bool respects(const Permutation& perm, const Poset& poset) {
  std::vector<std::size_t> pos(perm.order.size());
  for (std::size_t k = 0; k < perm.order.size(); ++k) pos[perm.order[k]] = k;
  for (const Arc& a : poset.pairs()) {
    if (pos[a.from] > pos[a.to]) return false;
  }
  return true;
}

std::string to_string(const Permutation& perm) {
  std::string out;
  for (std::size_t k = 0; k < perm.order.size(); ++k) {
    if (k != 0) out += ',';
    out += std::to_string(perm.order[k]);
  }
  return out;
}

CostBreakdown cost(const DeltaSolution& delta, const Instance& inst) {
  require_compatible(delta, inst);
  BigInt weighted = 0;
  for (const Arc& a : delta.support()) {
    weighted += BigInt(delta.numerator(a)) * inst.w(a).nanos();
  }
  CostBreakdown out;
  out.variable_cost = Rational(weighted, BigInt(delta.denominator()) * kScale);
  out.fixed_cost = inst.fixed_cost();
  out.total_cost = out.variable_cost + out.fixed_cost.to_rational();
  return out;
}

Cost variable_cost(const DeltaSolution& delta, const Instance& inst) {
  Cost total;
  const Vertex n = inst.size();
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = 0; j < n; ++j) {
      if (delta.numerator(i, j) != 0) total += inst.w(i, j);
    }
  }
  return total;
}

Cost permutation_cost(const Permutation& perm, const Instance& inst) {
  Cost total;
  const auto& o = perm.order;
  for (std::size_t a = 0; a < o.size(); ++a) {
    for (std::size_t b = a + 1; b < o.size(); ++b) total += inst.w(o[a], o[b]);
  }
  return total;
}

std::string format_exact(const Rational& value) {
  if (is_fixed_point(value)) return format_rational(value, Rounding::kFloor);
  return boost::multiprecision::numerator(value).str() + "/" + boost::multiprecision::denominator(value).str();
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kPair: return "pair";
    case ViolationKind::kTriple: return "triple";
    case ViolationKind::kPosetPair: return "poset_pair";
    case ViolationKind::kPosetTriple: return "poset_triple";
    case ViolationKind::kAlternatingCycle: return "alternating_cycle";
  }
  return "unknown";
}

std::vector<Arc> Violation::arc_set() const {
  std::vector<Arc> out = arcs;
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(const Violation& v) {
  std::string out(to_string(v.kind));
  out += " arcs=";
  for (std::size_t k = 0; k < v.arcs.size(); ++k) out += (k ? "," : "") + to_string(v.arcs[k]);
  out += " witnesses=";
  for (std::size_t k = 0; k < v.witnesses.size(); ++k) out += (k ? "," : "") + to_string(v.witnesses[k]);
  return out;
}

namespace {

// Rotates a cyclic arc sequence (and its parallel witness list) so the
// smallest arc comes first.
void canonical_rotation(std::vector<Arc>& arcs, std::vector<Arc>& witnesses) {
  const auto first = std::min_element(arcs.begin(), arcs.end()) - arcs.begin();
  std::rotate(arcs.begin(), arcs.begin() + first, arcs.end());
  if (witnesses.size() == arcs.size()) std::rotate(witnesses.begin(), witnesses.begin() + first, witnesses.end());
}

// Kind of a covering row from its arc set alone: reflexive witnesses exist
// exactly when the arcs are a 2-cycle or a directed triangle.
ViolationKind kind_of_cycle(const std::vector<Arc>& arcs) {
  if (arcs.size() == 2) {
    return arcs[0] == arcs[1].reversed() ? ViolationKind::kPair : ViolationKind::kPosetPair;
  }
  if (arcs.size() == 3) {
    // Directed triangle: every head is the tail of another arc, on 3 vertices.
    std::set<Vertex> vs;
    for (const Arc& a : arcs) {
      vs.insert(a.from);
      vs.insert(a.to);
    }
    bool chained = vs.size() == 3;
    for (const Arc& a : arcs) {
      chained = chained && std::any_of(arcs.begin(), arcs.end(), [&](const Arc& b) { return b.from == a.to; });
    }
    return chained ? ViolationKind::kTriple : ViolationKind::kPosetTriple;
  }
  return ViolationKind::kAlternatingCycle;
}

void require_integral(const DeltaSolution& delta) {
  if (!delta.is_integral()) fail(ErrorCode::kNotIntegral, "solution has fractional values");
}

// Pair and directed-triangle rows over all vertices with fixed poset arcs.
// `exact_pairs` selects the equality δ(i,j)+δ(j,i)=1 instead of >= 1.
std::vector<Violation> scan_pairs_and_triangles(const DeltaSolution& delta, const Instance& inst, bool exact_pairs) {
  std::vector<Violation> out;
  const Poset& p = inst.poset();
  const Vertex n = inst.size();
  const std::int64_t one = delta.denominator();
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      if (p.comparable(i, j)) continue;
      const std::int64_t s = delta.numerator(i, j) + delta.numerator(j, i);
      if (s < one || (exact_pairs && s != one)) {
        out.push_back({ViolationKind::kPair, {{i, j}, {j, i}}, {{j, j}, {i, i}}});
      }
    }
  }
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      for (Vertex k = i + 1; k < n; ++k) {
        if (k == j) continue;
        // Triangle i -> j -> k -> i, with i the smallest vertex.
        const std::array<Arc, 3> tri{{{i, j}, {j, k}, {k, i}}};
        std::int64_t s = 0;
        for (const Arc& a : tri) s += effective(delta, p, a.from, a.to);
        if (s >= one) continue;
        Violation v;
        v.kind = ViolationKind::kTriple;
        for (const Arc& a : tri) {
          if (p.comparable(a.from, a.to)) {
            v.witnesses.push_back(a.reversed());  // the poset pair forcing this arc to 0
          } else {
            v.arcs.push_back(a);
          }
        }
        if (!v.witnesses.empty()) v.kind = ViolationKind::kPosetTriple;
        std::vector<Arc> none;
        canonical_rotation(v.arcs, none);
        out.push_back(std::move(v));
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Violation> check_fas_feasible(const DeltaSolution& delta, const Instance& inst) {
  require_compatible(delta, inst);
  require_integral(delta);
  return scan_pairs_and_triangles(delta, inst, true);
}

std::vector<Violation> check_cover_feasible(const DeltaSolution& delta, const Instance& inst) {
  require_compatible(delta, inst);
  const CoverSystem system(inst);
  return system.violations(delta);
}

std::vector<Violation> check_unconstrained_cover(const DeltaSolution& delta, const Instance& inst) {
  require_compatible(delta, inst);
  return scan_pairs_and_triangles(delta, inst, false);
}

namespace {

// Depth-first growth of alternating cycles whose first arc is the smallest
// arc of the cycle; stops a branch once its δ sum reaches 1.
struct CycleSearch {
  const DeltaSolution& delta;
  const Poset& poset;
  int max_c;
  Vertex n;
  std::vector<Arc> arcs;
  std::vector<Arc> witnesses;
  std::set<std::vector<Arc>> seen;
  std::vector<Violation> found;

  void extend(std::int64_t sum) {
    const Arc last = arcs.back();
    const Arc first = arcs.front();
    if (arcs.size() >= 2 && poset.in_order(last.from, first.to)) {
      record(Arc{last.from, first.to});
    }
    if (static_cast<int>(arcs.size()) == max_c) return;
    // Next arc (x, y) needs (last.from, y) in P.
    for (Vertex y = 0; y < n; ++y) {
      if (!poset.in_order(last.from, y)) continue;
      for (Vertex x = 0; x < n; ++x) {
        if (x == y || poset.comparable(x, y)) continue;
        const Arc next{x, y};
        if (!(first < next)) continue;
        if (std::find(arcs.begin(), arcs.end(), next) != arcs.end()) continue;
        const std::int64_t s = sum + delta.numerator(next);
        if (s >= delta.denominator()) continue;
        arcs.push_back(next);
        witnesses.push_back({last.from, y});
        extend(s);
        witnesses.pop_back();
        arcs.pop_back();
      }
    }
  }

  void record(Arc closing) {
    std::vector<Arc> key = arcs;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) return;
    Violation v;
    v.arcs = arcs;
    v.witnesses = witnesses;
    v.witnesses.push_back(closing);
    v.kind = kind_of_cycle(v.arcs);
    found.push_back(std::move(v));
  }
};

}  // namespace

std::vector<Violation> check_alternating_cycles(const DeltaSolution& delta, const Instance& inst, int max_c, int cap) {
  require_compatible(delta, inst);
  if (max_c < 2 || max_c > cap) {
    fail(ErrorCode::kCapExceeded, "cycle length bound " + std::to_string(max_c) + " outside [2, " + std::to_string(cap) + "]");
  }
  CycleSearch search{delta, inst.poset(), max_c, inst.size(), {}, {}, {}, {}};
  for (const Arc& start : incomparable_pairs(inst.poset())) {
    if (delta.numerator(start) >= delta.denominator()) continue;
    search.arcs = {start};
    search.witnesses.clear();
    search.extend(delta.numerator(start));
  }
  return std::move(search.found);
}

Permutation permutation_from_delta(const DeltaSolution& delta, const Instance& inst) {
  if (!check_fas_feasible(delta, inst).empty()) fail(ErrorCode::kNotFeasible, "solution does not encode a linear extension");
  const Vertex n = inst.size();
  std::vector<std::pair<int, Vertex>> outdeg;
  for (Vertex i = 0; i < n; ++i) {
    int count = 0;
    for (Vertex j = 0; j < n; ++j) {
      if (i != j && effective(delta, inst.poset(), i, j) != 0) ++count;
    }
    outdeg.emplace_back(-count, i);
  }
  std::sort(outdeg.begin(), outdeg.end());
  Permutation perm;
  for (const auto& [neg, v] : outdeg) perm.order.push_back(v);
  return perm;
}

DeltaSolution delta_from_permutation(const Permutation& perm, const Instance& inst) {
  require_permutation(perm, inst.size());
  if (!respects(perm, inst.poset())) fail(ErrorCode::kPosetViolated, "permutation contradicts the poset");
  DeltaSolution d(inst.size());
  const auto& o = perm.order;
  for (std::size_t a = 0; a < o.size(); ++a) {
    for (std::size_t b = a + 1; b < o.size(); ++b) {
      if (!inst.poset().comparable(o[a], o[b])) d.set({o[a], o[b]}, true);
    }
  }
  return d;
}

DeltaSolution parse_solution(std::istream& in, const Instance& inst) {
  std::string line;
  std::size_t line_no = 0;
  auto next = [&](const char* expecting) {
    if (!std::getline(in, line)) fail(ErrorCode::kFormat, std::string("unexpected end of solution, expecting ") + expecting);
    ++line_no;
    std::istringstream ls(line);
    std::vector<std::string> t;
    for (std::string tok; ls >> tok;) t.push_back(tok);
    return t;
  };
  auto where = [&] { return "solution line " + std::to_string(line_no) + ": "; };
  auto t = next("header");
  if (t.size() != 2 || t[0] != "delta" || t[1] != "1") fail(ErrorCode::kFormat, "solution line 1: expected 'delta 1'");

  struct Entry {
    Arc arc;
    std::int64_t nanos;
  };
  std::vector<Entry> entries;
  bool fractional = false;
  const Vertex n = inst.size();
  while (true) {
    t = next("arc or 'end'");
    if (t.size() == 1 && t[0] == "end") break;
    if (t.size() != 2 && t.size() != 3) fail(ErrorCode::kFormat, where() + "expected '<i> <j> [value]'");
    long ij[2];
    for (int k = 0; k < 2; ++k) {
      auto [ptr, ec] = std::from_chars(t[k].data(), t[k].data() + t[k].size(), ij[k]);
      if (ec != std::errc() || ptr != t[k].data() + t[k].size() || ij[k] < 0 || ij[k] >= n) {
        fail(ErrorCode::kFormat, where() + "bad vertex '" + t[k] + "'");
      }
    }
    const Arc a{static_cast<Vertex>(ij[0]), static_cast<Vertex>(ij[1])};
    if (a.from == a.to) fail(ErrorCode::kFormat, where() + "diagonal arc");
    if (inst.poset().comparable(a.from, a.to)) fail(ErrorCode::kPosetViolated, where() + "arc on comparable pair " + to_string(a));
    std::int64_t nanos = kScale;
    if (t.size() == 3) {
      const Weight v = Weight::parse(t[2]);
      if (v.nanos() > kScale) fail(ErrorCode::kFormat, where() + "value above 1");
      nanos = v.nanos();
      if (nanos != kScale && nanos != 0) fractional = true;
    }
    for (const Entry& e : entries) {
      if (e.arc == a) fail(ErrorCode::kFormat, where() + "duplicate arc " + to_string(a));
    }
    entries.push_back({a, nanos});
  }
  while (std::getline(in, line)) {
    if (!line.empty()) fail(ErrorCode::kFormat, "trailing content after 'end' in solution");
  }
  DeltaSolution d(n, fractional ? kScale : 1);
  for (const Entry& e : entries) d.set_numerator(e.arc, fractional ? e.nanos : (e.nanos == kScale ? 1 : 0));
  return d;
}

DeltaSolution parse_solution_text(std::string_view text, const Instance& inst) {
  std::istringstream in{std::string(text)};
  return parse_solution(in, inst);
}

DeltaSolution read_solution_file(const std::string& path, const Instance& inst) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kFormat, "cannot open solution file '" + path + "'");
  return parse_solution(in, inst);
}

std::string serialize_solution(const DeltaSolution& delta) {
  std::string out = "delta 1\n";
  for (const Arc& a : delta.support()) {
    out += std::to_string(a.from) + " " + std::to_string(a.to);
    if (!delta.arc(a)) out += " " + format_exact(delta.value(a));
    out += '\n';
  }
  out += "end\n";
  return out;
}

}  // namespace mfas
