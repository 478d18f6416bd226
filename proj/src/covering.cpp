#include "mfas/covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_set>

#include "mfas/error.hpp"

namespace mfas {

Violation CoverConstraint::to_violation() const {
  Violation v;
  v.arcs.assign(arcs.begin(), arcs.begin() + size);
  v.witnesses.assign(witnesses.begin(), witnesses.begin() + size);
  if (size == 2) {
    v.kind = arcs[0] == arcs[1].reversed() ? ViolationKind::kPair : ViolationKind::kPosetPair;
  } else {
    const bool reflexive = std::all_of(v.witnesses.begin(), v.witnesses.end(), [](Arc w) { return w.from == w.to; });
    v.kind = reflexive ? ViolationKind::kTriple : ViolationKind::kPosetTriple;
  }
  return v;
}

namespace {

using Bits = boost::dynamic_bitset<>;

struct ArcSetHash {
  std::size_t operator()(const std::array<Arc, 3>& a) const {
    std::size_t h = 0;
    for (const Arc& x : a) h = h * 1000003u + static_cast<std::size_t>(x.from) * 8191u + static_cast<std::size_t>(x.to);
    return h;
  }
};

}  // namespace

std::vector<CoverConstraint> enumerate_constraints(const Instance& inst, Vertex cap) {
  const Vertex n = inst.size();
  if (n > cap) fail(ErrorCode::kCapExceeded, "constraint enumeration for n=" + std::to_string(n) + " above cap " + std::to_string(cap));
  const Poset& p = inst.poset();

  // inc_row[x]: y with (x,y) incomparable; down[y] = {x : x <= y}; up[x] = {y : x <= y}.
  std::vector<Bits> inc_row(n, Bits(n)), down(n, Bits(n)), up(n, Bits(n));
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = 0; y < n; ++y) {
      if (x != y && !p.comparable(x, y)) inc_row[x].set(y);
      if (p.in_order(x, y)) {
        up[x].set(y);
        down[y].set(x);
      }
    }
  }
  const auto npos = Bits::npos;
  std::vector<CoverConstraint> pairs;
  std::vector<CoverConstraint> triples;

  const std::vector<Arc> inc = incomparable_pairs(p);
  for (const Arc a1 : inc) {
    const Vertex x1 = a1.from, y1 = a1.to;
    for (auto x2 = down[y1].find_first(); x2 != npos; x2 = down[y1].find_next(x2)) {
      const Bits cand = up[x1] & inc_row[x2];
      for (auto y2 = cand.find_first(); y2 != npos; y2 = cand.find_next(y2)) {
        const Arc a2{static_cast<Vertex>(x2), static_cast<Vertex>(y2)};
        if (!(a1 < a2)) continue;
        CoverConstraint c;
        c.size = 2;
        c.arcs = {a1, a2, Arc{}};
        c.witnesses = {Arc{a2.from, y1}, Arc{x1, a2.to}, Arc{}};
        pairs.push_back(c);
      }
    }
  }

  std::unordered_set<std::array<Arc, 3>, ArcSetHash> seen;
  for (const Arc a1 : inc) {
    const Vertex x1 = a1.from, y1 = a1.to;
    for (auto x2 = down[y1].find_first(); x2 != npos; x2 = down[y1].find_next(x2)) {
      const Bits& row2 = inc_row[x2];
      for (auto y2 = row2.find_first(); y2 != npos; y2 = row2.find_next(y2)) {
        const Arc a2{static_cast<Vertex>(x2), static_cast<Vertex>(y2)};
        if (!(a1 < a2)) continue;
        for (auto x3 = down[y2].find_first(); x3 != npos; x3 = down[y2].find_next(x3)) {
          const Bits cand = inc_row[x3] & up[x1];
          for (auto y3 = cand.find_first(); y3 != npos; y3 = cand.find_next(y3)) {
            const Arc a3{static_cast<Vertex>(x3), static_cast<Vertex>(y3)};
            if (!(a1 < a3) || a3 == a2) continue;
            std::array<Arc, 3> key{a1, a2, a3};
            std::sort(key.begin(), key.end());
            if (!seen.insert(key).second) continue;
            CoverConstraint c;
            c.size = 3;
            c.arcs = {a1, a2, a3};
            c.witnesses = {Arc{a2.from, y1}, Arc{a3.from, a2.to}, Arc{x1, a3.to}};
            triples.push_back(c);
          }
        }
      }
    }
  }
  pairs.insert(pairs.end(), triples.begin(), triples.end());
  return pairs;
}

CoverSystem::CoverSystem(const Instance& inst, Vertex cap) : inst_(&inst), rows_(enumerate_constraints(inst, cap)) {
  const std::size_t arcs = static_cast<std::size_t>(inst.size()) * inst.size();
  std::vector<std::uint32_t> degree(arcs, 0);
  for (const auto& row : rows_) {
    for (const Arc& a : row.arc_span()) ++degree[arc_index(a)];
  }
  offsets_.assign(arcs + 1, 0);
  for (std::size_t k = 0; k < arcs; ++k) offsets_[k + 1] = offsets_[k] + degree[k];
  incidence_.resize(offsets_.back());
  std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::uint32_t r = 0; r < rows_.size(); ++r) {
    for (const Arc& a : rows_[r].arc_span()) incidence_[fill[arc_index(a)]++] = r;
  }
}

std::span<const std::uint32_t> CoverSystem::rows_containing(Arc a) const {
  const std::size_t k = arc_index(a);
  return {incidence_.data() + offsets_[k], incidence_.data() + offsets_[k + 1]};
}

std::size_t CoverSystem::violated_count(const DeltaSolution& delta) const {
  std::size_t count = 0;
  for (const auto& row : rows_) {
    std::int64_t sum = 0;
    for (const Arc& a : row.arc_span()) sum += delta.numerator(a);
    if (sum < delta.denominator()) ++count;
  }
  return count;
}

std::vector<Violation> CoverSystem::violations(const DeltaSolution& delta) const {
  if (delta.size() != inst_->size()) fail(ErrorCode::kDimensionMismatch, "solution and instance sizes differ");
  std::vector<Violation> out;
  for (const auto& row : rows_) {
    std::int64_t sum = 0;
    for (const Arc& a : row.arc_span()) sum += delta.numerator(a);
    if (sum < delta.denominator()) out.push_back(row.to_violation());
  }
  return out;
}

DeltaSolution primal_dual_cover(const CoverSystem& system) {
  const Instance& inst = system.instance();
  const Vertex n = inst.size();
  std::vector<std::int64_t> residual(inst.weights().size());
  for (std::size_t k = 0; k < residual.size(); ++k) residual[k] = inst.weights()[k].nanos();
  DeltaSolution cover(n);
  auto idx = [n](Arc a) { return static_cast<std::size_t>(a.from) * n + a.to; };
  for (const auto& row : system.constraints()) {
    const auto arcs = row.arc_span();
    if (std::any_of(arcs.begin(), arcs.end(), [&](Arc a) { return cover.arc(a); })) continue;
    std::int64_t step = std::numeric_limits<std::int64_t>::max();
    for (const Arc& a : arcs) step = std::min(step, residual[idx(a)]);
    for (const Arc& a : arcs) {
      residual[idx(a)] -= step;
      if (residual[idx(a)] == 0) cover.set(a, true);
    }
  }
  return cover;
}

DeltaSolution primal_dual_cover(const Instance& inst) {
  const CoverSystem system(inst);
  return primal_dual_cover(system);
}

DeltaSolution minimalize(const DeltaSolution& input, const CoverSystem& system) {
  const Instance& inst = system.instance();
  require_compatible(input, inst);
  DeltaSolution delta = input.to_integral();
  const auto& rows = system.constraints();
  std::vector<std::uint8_t> ones(rows.size(), 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const Arc& a : rows[r].arc_span()) ones[r] += delta.arc(a) ? 1 : 0;
    if (ones[r] == 0) fail(ErrorCode::kNotFeasible, "minimalize needs a cover-feasible input");
  }
  std::vector<Arc> order = delta.support();
  std::stable_sort(order.begin(), order.end(), [&](Arc a, Arc b) { return inst.w(a) > inst.w(b); });
  for (const Arc& a : order) {
    const auto touching = system.rows_containing(a);
    if (std::all_of(touching.begin(), touching.end(), [&](std::uint32_t r) { return ones[r] >= 2; })) {
      delta.set(a, false);
      for (std::uint32_t r : touching) --ones[r];
    }
  }
  return delta;
}

DeltaSolution minimalize(const DeltaSolution& delta, const Instance& inst) {
  const CoverSystem system(inst);
  return minimalize(delta, system);
}

FractionalBound mwu_fractional_cover(const Instance& inst, const Rational& eps, const MwuOptions& opts) {
  if (eps <= 0 || eps >= 1) fail(ErrorCode::kFormat, "eps must lie in (0,1)");
  const CoverSystem system(inst, opts.cap);
  const Vertex n = inst.size();
  const auto& all_rows = system.constraints();

  FractionalBound out;
  out.eps = eps;
  out.x = DeltaSolution(n, kScale);
  // Zero-weight arcs are free: fix them to 1 and drop the rows they cover.
  for (const Arc& a : incomparable_pairs(inst.poset())) {
    if (inst.w(a).is_zero()) out.x.set(a, true);
  }
  std::vector<std::uint32_t> rows;
  for (std::uint32_t r = 0; r < all_rows.size(); ++r) {
    const auto arcs = all_rows[r].arc_span();
    if (std::none_of(arcs.begin(), arcs.end(), [&](Arc a) { return inst.w(a).is_zero(); })) rows.push_back(r);
  }
  if (rows.empty()) {
    out.primal_value = 0;
    out.lower_bound = 0;
    return out;
  }

  // Variables: positive arcs used by the remaining rows.
  std::vector<int> var_of(static_cast<std::size_t>(n) * n, -1);
  std::vector<Arc> vars;
  std::vector<std::array<int, 3>> row_vars(rows.size());
  std::vector<std::uint8_t> row_size(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto arcs = all_rows[rows[r]].arc_span();
    row_size[r] = static_cast<std::uint8_t>(arcs.size());
    for (std::size_t k = 0; k < arcs.size(); ++k) {
      const std::size_t id = static_cast<std::size_t>(arcs[k].from) * n + arcs[k].to;
      if (var_of[id] < 0) {
        var_of[id] = static_cast<int>(vars.size());
        vars.push_back(arcs[k]);
      }
      row_vars[r][k] = var_of[id];
    }
  }
  const std::size_t m = rows.size();
  const std::size_t nv = vars.size();
  std::vector<std::vector<std::uint32_t>> var_rows(nv);
  for (std::uint32_t r = 0; r < m; ++r) {
    for (int k = 0; k < row_size[r]; ++k) var_rows[row_vars[r][k]].push_back(r);
  }
  std::vector<double> c(nv);
  for (std::size_t e = 0; e < nv; ++e) c[e] = static_cast<double>(inst.w(vars[e]).nanos()) / static_cast<double>(kScale);

  const double eps_d = eps.convert_to<double>();
  const double step = eps_d / 4.0;
  const std::uint64_t budget =
      opts.max_iterations > 0
          ? opts.max_iterations
          : static_cast<std::uint64_t>(std::ceil(8.0 * static_cast<double>(m) * std::log(static_cast<double>(m) + 1.0) /
                                                 (eps_d * eps_d))) + 10'000;

  std::vector<double> len(nv), load(nv, 0.0), y(m, 0.0), key(m);
  for (std::size_t e = 0; e < nv; ++e) len[e] = 1.0 / c[e];
  auto row_len = [&](std::uint32_t r) {
    double s = 0;
    for (int k = 0; k < row_size[r]; ++k) s += len[row_vars[r][k]];
    return s;
  };
  std::set<std::pair<double, std::uint32_t>> queue;
  auto rebuild = [&] {
    queue.clear();
    for (std::uint32_t r = 0; r < m; ++r) {
      key[r] = row_len(r);
      queue.insert({key[r], r});
    }
  };
  rebuild();

  auto certify = [&]() -> bool {
    const double alpha = queue.begin()->first;
    // Primal: x = min(1, len / alpha), rounded up to 1e-9.
    DeltaSolution x = out.x;
    for (std::size_t e = 0; e < nv; ++e) {
      const double v = std::min(1.0, len[e] / alpha * (1.0 + 1e-12));
      x.set_numerator(vars[e], std::min<std::int64_t>(kScale, static_cast<std::int64_t>(std::ceil(v * kScale))));
    }
    for (std::uint32_t r = 0; r < m; ++r) {
      std::int64_t sum = 0;
      for (int k = 0; k < row_size[r]; ++k) sum += x.numerator(vars[row_vars[r][k]]);
      for (int k = 0; k < row_size[r] && sum < kScale; ++k) {
        const Arc a = vars[row_vars[r][k]];
        const std::int64_t add = std::min(kScale - x.numerator(a), kScale - sum);
        x.set_numerator(a, x.numerator(a) + add);
        sum += add;
      }
    }
    BigInt weighted = 0;
    for (std::size_t e = 0; e < nv; ++e) weighted += BigInt(x.numerator(vars[e])) * inst.w(vars[e]).nanos();
    const Rational primal(weighted, BigInt(kScale) * kScale);

    // Dual: y scaled to unit congestion, floored to 1e-9, then divided by
    // its exact congestion.
    double congestion = 0;
    for (std::size_t e = 0; e < nv; ++e) congestion = std::max(congestion, load[e] / c[e]);
    if (congestion <= 0) return false;
    std::vector<std::int64_t> yn(m);
    BigInt ysum = 0;
    for (std::uint32_t r = 0; r < m; ++r) {
      yn[r] = static_cast<std::int64_t>(std::floor(y[r] / congestion * kScale));
      ysum += yn[r];
    }
    Rational worst = 0;
    for (std::size_t e = 0; e < nv; ++e) {
      BigInt total = 0;
      for (std::uint32_t r : var_rows[e]) total += yn[r];
      const Rational ratio(total, BigInt(inst.w(vars[e]).nanos()));
      if (ratio > worst) worst = ratio;
    }
    if (worst <= 0) return false;
    const Rational lower = Rational(ysum) / worst / kScale;
    if (primal > (1 + eps) * lower) return false;
    out.x = std::move(x);
    out.primal_value = primal;
    out.lower_bound = lower;
    return true;
  };

  const std::uint64_t check_every = std::max<std::uint64_t>(1, m / 8);
  for (std::uint64_t it = 1; it <= budget; ++it) {
    const std::uint32_t r = queue.begin()->second;
    double bottleneck = std::numeric_limits<double>::infinity();
    for (int k = 0; k < row_size[r]; ++k) bottleneck = std::min(bottleneck, c[row_vars[r][k]]);
    y[r] += bottleneck;
    bool overflow = false;
    for (int k = 0; k < row_size[r]; ++k) {
      const int e = row_vars[r][k];
      load[e] += bottleneck;
      len[e] *= 1.0 + step * bottleneck / c[e];
      overflow = overflow || len[e] > 1e200;
      for (std::uint32_t q : var_rows[e]) {
        queue.erase({key[q], q});
        key[q] = row_len(q);
        queue.insert({key[q], q});
      }
    }
    if (overflow) {
      for (double& l : len) l *= 1e-200;
      rebuild();
    }
    if (it % check_every == 0) {
      // Cheap floating-point screen before the exact certificate.
      const double alpha = queue.begin()->first;
      double primal = 0, congestion = 0, ysum = 0;
      for (std::size_t e = 0; e < nv; ++e) {
        primal += c[e] * std::min(1.0, len[e] / alpha);
        congestion = std::max(congestion, load[e] / c[e]);
      }
      for (double v : y) ysum += v;
      if (congestion > 0 && primal <= (1.0 + eps_d) * (ysum / congestion) * (1.0 - 1e-9) && certify()) {
        out.iterations = it;
        return out;
      }
    }
  }
  fail(ErrorCode::kBudgetExhausted, "multiplicative weights loop reached its iteration budget without a certificate");
}

}  // namespace mfas
