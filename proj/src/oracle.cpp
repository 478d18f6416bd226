#include "mfas/oracle.hpp"

#include <algorithm>
#include <limits>

#include "mfas/covering.hpp"
#include "mfas/error.hpp"

namespace mfas {

OracleResult exact_min_extension(const Instance& inst, Vertex guard) {
  const Vertex n = inst.size();
  if (n > guard) fail(ErrorCode::kGuardExceeded, "exact extension oracle limited to n <= " + std::to_string(guard));
  const std::uint32_t full = (1u << n) - 1;
  std::vector<std::uint32_t> preds(n, 0);
  for (const Arc& a : inst.poset().pairs()) preds[a.to] |= 1u << a.from;

  constexpr Cost::Rep kUnset = std::numeric_limits<Cost::Rep>::max();
  std::vector<Cost::Rep> rest(std::size_t{full} + 1, kUnset);  // cheapest completion from a placed set
  OracleResult result;

  // Cost of placing j now: it precedes every still-unplaced vertex.
  auto placement = [&](std::uint32_t placed, Vertex j) {
    Cost::Rep c = 0;
    for (Vertex k = 0; k < n; ++k) {
      if (k != j && !(placed >> k & 1u)) c += inst.w(j, k).nanos();
    }
    return c;
  };
  auto placeable = [&](std::uint32_t placed, Vertex j) {
    return !(placed >> j & 1u) && (preds[j] & ~placed) == 0;
  };

  rest[full] = 0;
  for (std::uint32_t s = full; s-- > 0;) {
    bool down_closed = true;
    for (Vertex j = 0; j < n && down_closed; ++j) {
      if ((s >> j & 1u) && (preds[j] & ~s) != 0) down_closed = false;
    }
    if (!down_closed) continue;
    ++result.explored;
    Cost::Rep best = kUnset;
    for (Vertex j = 0; j < n; ++j) {
      if (!placeable(s, j)) continue;
      const Cost::Rep tail = rest[s | 1u << j];
      if (tail == kUnset) continue;
      best = std::min(best, placement(s, j) + tail);
    }
    rest[s] = best;
  }
  ++result.explored;  // the full set

  std::uint32_t placed = 0;
  while (placed != full) {
    for (Vertex j = 0; j < n; ++j) {
      if (!placeable(placed, j)) continue;
      const Cost::Rep tail = rest[placed | 1u << j];
      if (tail != kUnset && placement(placed, j) + tail == rest[placed]) {
        result.best_perm.order.push_back(j);
        placed |= 1u << j;
        break;
      }
    }
  }
  result.best_total_cost = Cost::from_nanos(rest[0]);
  result.best_variable_cost = result.best_total_cost - inst.fixed_cost();
  return result;
}

std::vector<std::vector<Arc>> unconstrained_rows(const Instance& inst) {
  const Poset& p = inst.poset();
  const Vertex n = inst.size();
  std::vector<std::vector<Arc>> rows;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      if (!p.comparable(i, j)) rows.push_back({{i, j}, {j, i}});
    }
  }
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      for (Vertex k = i + 1; k < n; ++k) {
        if (k == j) continue;
        const Arc tri[3] = {{i, j}, {j, k}, {k, i}};
        std::vector<Arc> row;
        bool satisfied = false;
        for (const Arc& a : tri) {
          if (p.precedes(a.from, a.to)) satisfied = true;
          else if (!p.precedes(a.to, a.from)) row.push_back(a);
        }
        if (!satisfied) rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

namespace {

class CoverSearch {
 public:
  CoverSearch(const Instance& inst, std::span<const std::vector<Arc>> rows, std::size_t guard) : inst_(inst) {
    const Vertex n = inst.size();
    std::vector<int> var_of(static_cast<std::size_t>(n) * n, -1);
    for (const auto& row : rows) {
      if (row.empty()) fail(ErrorCode::kNotFeasible, "covering row with no variable arc");
      if (std::any_of(row.begin(), row.end(), [&](Arc a) { return inst.w(a).is_zero(); })) {
        for (const Arc& a : row) {
          if (inst.w(a).is_zero()) free_arcs_.push_back(a);
        }
        continue;
      }
      std::vector<int> vs;
      for (const Arc& a : row) {
        int& id = var_of[static_cast<std::size_t>(a.from) * n + a.to];
        if (id < 0) {
          id = static_cast<int>(vars_.size());
          vars_.push_back(a);
        }
        vs.push_back(id);
      }
      rows_.push_back(std::move(vs));
    }
    if (vars_.size() > guard) {
      fail(ErrorCode::kGuardExceeded, "cover oracle limited to " + std::to_string(guard) + " positive-weight arcs, got " +
                                          std::to_string(vars_.size()));
    }
    weight_.resize(vars_.size());
    for (std::size_t v = 0; v < vars_.size(); ++v) weight_[v] = inst.w(vars_[v]).nanos();
    var_rows_.resize(vars_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      // Cheap arcs first inside a row, so branching tries them first.
      std::stable_sort(rows_[r].begin(), rows_[r].end(), [&](int a, int b) { return weight_[a] < weight_[b]; });
      for (int v : rows_[r]) var_rows_[v].push_back(r);
    }
    state_.assign(vars_.size(), kUnset);
    ones_.assign(rows_.size(), 0);
    free_.resize(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) free_[r] = static_cast<int>(rows_[r].size());
  }

  void run(Cost::Rep incumbent) {
    best_ = incumbent;
    search(0);
  }

  bool improved() const { return found_; }
  std::uint64_t explored() const { return explored_; }
  Cost::Rep best() const { return best_; }

  DeltaSolution best_solution() const {
    DeltaSolution d(inst_.size());
    for (const Arc& a : free_arcs_) d.set(a, true);
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      if (best_state_[v] == kOne) d.set(vars_[v], true);
    }
    return d;
  }

 private:
  static constexpr std::int8_t kUnset = -1, kZero = 0, kOne = 1;

  void assign(int v, std::int8_t value) {
    state_[v] = value;
    for (std::size_t r : var_rows_[v]) {
      --free_[r];
      if (value == kOne) ++ones_[r];
    }
  }
  void unassign(int v) {
    for (std::size_t r : var_rows_[v]) {
      ++free_[r];
      if (state_[v] == kOne) --ones_[r];
    }
    state_[v] = kUnset;
  }

  // Disjoint uncovered rows each need their own arc.
  Cost::Rep packing_bound() {
    Cost::Rep bound = 0;
    mark_.assign(vars_.size(), 0);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (ones_[r] > 0) continue;
      Cost::Rep cheapest = std::numeric_limits<Cost::Rep>::max();
      bool clash = false;
      for (int v : rows_[r]) {
        if (state_[v] != kUnset) continue;
        clash = clash || mark_[v];
        cheapest = std::min<Cost::Rep>(cheapest, weight_[v]);
      }
      if (clash || free_[r] == 0) continue;
      for (int v : rows_[r]) mark_[v] = 1;
      bound += cheapest;
    }
    return bound;
  }

  void search(Cost::Rep cost) {
    ++explored_;
    int pick = -1;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (ones_[r] > 0) continue;
      if (free_[r] == 0) return;  // dead row
      if (pick < 0 || free_[r] < free_[pick]) pick = static_cast<int>(r);
    }
    if (pick < 0) {
      if (cost < best_) {
        best_ = cost;
        best_state_ = state_;
        found_ = true;
      }
      return;
    }
    if (cost + packing_bound() >= best_) return;
    std::vector<int> zeroed;
    for (int v : rows_[pick]) {
      if (state_[v] != kUnset) continue;
      assign(v, kOne);
      search(cost + weight_[v]);
      unassign(v);
      assign(v, kZero);  // later branches exclude this arc
      zeroed.push_back(v);
    }
    for (auto it = zeroed.rbegin(); it != zeroed.rend(); ++it) unassign(*it);
  }

  const Instance& inst_;
  std::vector<Arc> vars_;
  std::vector<Arc> free_arcs_;
  std::vector<std::vector<int>> rows_;
  std::vector<std::vector<std::size_t>> var_rows_;
  std::vector<std::int64_t> weight_;
  std::vector<std::int8_t> state_, best_state_;
  std::vector<int> ones_, free_;
  std::vector<std::uint8_t> mark_;
  Cost::Rep best_ = 0;
  bool found_ = false;
  std::uint64_t explored_ = 0;
};

}  // namespace

CoverOracleResult exact_min_cover_rows(const Instance& inst, std::span<const std::vector<Arc>> rows,
                                       const DeltaSolution& incumbent, std::size_t guard) {
  CoverSearch search(inst, rows, guard);
  const Cost start = variable_cost(incumbent, inst);
  search.run(start.nanos());
  CoverOracleResult out;
  out.explored = search.explored();
  if (search.improved()) {
    out.delta = search.best_solution();
  } else {
    out.delta = incumbent;
  }
  out.variable_cost = variable_cost(out.delta, inst);
  return out;
}

CoverOracleResult exact_min_cover(const Instance& inst, std::size_t guard) {
  const CoverSystem system(inst);
  std::vector<std::vector<Arc>> rows;
  rows.reserve(system.constraints().size());
  for (const auto& c : system.constraints()) rows.emplace_back(c.arc_span().begin(), c.arc_span().end());
  const DeltaSolution incumbent = minimalize(primal_dual_cover(system), system);
  CoverOracleResult out = exact_min_cover_rows(inst, rows, incumbent, guard);
  out.delta = minimalize(out.delta, system);
  out.variable_cost = variable_cost(out.delta, inst);
  return out;
}

}  // namespace mfas
