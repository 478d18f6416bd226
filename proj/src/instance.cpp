#include "mfas/instance.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mfas/error.hpp"
#include "mfas/random.hpp"

namespace mfas {

std::string to_string(Arc a) { return "(" + std::to_string(a.from) + "," + std::to_string(a.to) + ")"; }

Poset::Poset(Vertex n) : n_(n), succ_(n, boost::dynamic_bitset<>(n)), pred_(n, boost::dynamic_bitset<>(n)) {}

Poset Poset::from_pairs(Vertex n, std::span<const Arc> pairs) {
  Poset p(n);
  for (const Arc& a : pairs) {
    if (a.from < 0 || a.to < 0 || a.from >= n || a.to >= n) {
      fail(ErrorCode::kFormat, "precedence pair " + to_string(a) + " out of range");
    }
    if (a.from == a.to) fail(ErrorCode::kPoset, "reflexive precedence pair " + to_string(a));
    p.succ_[a.from].set(a.to);
  }
  // Warshall on bit rows.
  for (Vertex k = 0; k < n; ++k) {
    for (Vertex i = 0; i < n; ++i) {
      if (p.succ_[i].test(k)) p.succ_[i] |= p.succ_[k];
    }
  }
  for (Vertex i = 0; i < n; ++i) {
    if (p.succ_[i].test(i)) {
      fail(ErrorCode::kPoset, "precedence pairs contain a cycle through vertex " + std::to_string(i));
    }
  }
  for (Vertex i = 0; i < n; ++i) {
    for (auto j = p.succ_[i].find_first(); j != boost::dynamic_bitset<>::npos; j = p.succ_[i].find_next(j)) {
      p.pred_[j].set(i);
    }
  }
  return p;
}

std::vector<Arc> Poset::pairs() const {
  std::vector<Arc> out;
  for (Vertex i = 0; i < n_; ++i) {
    for (auto j = succ_[i].find_first(); j != boost::dynamic_bitset<>::npos; j = succ_[i].find_next(j)) {
      out.push_back({i, static_cast<Vertex>(j)});
    }
  }
  return out;
}

std::vector<Arc> Poset::reduction() const {
  std::vector<Arc> out;
  for (const Arc& a : pairs()) {
    if (!succ_[a.from].intersects(pred_[a.to])) out.push_back(a);
  }
  return out;
}

std::size_t Poset::pair_count() const {
  std::size_t count = 0;
  for (const auto& row : succ_) count += row.count();
  return count;
}

std::vector<Arc> incomparable_pairs(const Poset& poset) {
  std::vector<Arc> out;
  const Vertex n = poset.size();
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = 0; j < n; ++j) {
      if (i != j && !poset.comparable(i, j)) out.push_back({i, j});
    }
  }
  return out;
}

Instance::Instance(Vertex n, std::vector<Weight> weights, Poset poset)
    : n_(n), weights_(std::move(weights)), poset_(std::move(poset)) {
  if (n < 1 || n > kMaxVertices) fail(ErrorCode::kFormat, "vertex count out of range");
  if (weights_.size() != static_cast<std::size_t>(n) * n) {
    fail(ErrorCode::kDimensionMismatch, "weight matrix is not n x n");
  }
  if (poset_.size() != n) fail(ErrorCode::kDimensionMismatch, "poset size differs from instance size");
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = 0; j < n; ++j) {
      const Weight x = w(i, j);
      if (x.nanos() < 0) fail(ErrorCode::kWeight, "negative weight at " + to_string(Arc{i, j}));
      if (i == j && !x.is_zero()) fail(ErrorCode::kWeight, "non-zero diagonal at vertex " + std::to_string(i));
    }
  }
}

Cost Instance::fixed_cost() const {
  Cost total;
  for (const Arc& a : poset_.pairs()) total += w(a);
  return total;
}

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    if (pos == line.size()) break;
    const auto end = line.find(' ', pos);
    out.push_back(line.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
    pos = end == std::string_view::npos ? line.size() : end;
  }
  return out;
}

long parse_int(std::string_view tok, std::size_t line_no) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    fail(ErrorCode::kFormat, "line " + std::to_string(line_no) + ": expected integer, got '" + std::string(tok) + "'");
  }
  return value;
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::string next(const char* expecting) {
    std::string line;
    if (!std::getline(in_, line)) {
      fail(ErrorCode::kFormat, std::string("unexpected end of input, expecting ") + expecting);
    }
    ++line_no_;
    return line;
  }
  std::size_t line_no() const { return line_no_; }
  bool at_end() {
    std::string rest;
    while (std::getline(in_, rest)) {
      ++line_no_;
      if (!rest.empty()) return false;
    }
    return true;
  }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

}  // namespace

Instance parse_instance(std::istream& in) {
  LineReader reader(in);
  {
    const auto line = reader.next("header");
    const auto t = tokens(line);
    if (t.size() != 2 || t[0] != "mfas" || t[1] != "1") fail(ErrorCode::kFormat, "line 1: expected 'mfas 1'");
  }
  long n = 0;
  {
    const auto line = reader.next("'n <N>'");
    const auto t = tokens(line);
    if (t.size() != 2 || t[0] != "n") fail(ErrorCode::kFormat, "line 2: expected 'n <N>'");
    n = parse_int(t[1], 2);
    if (n < 1 || n > kMaxVertices) fail(ErrorCode::kFormat, "line 2: N must be in [1, 4096]");
  }
  std::vector<Arc> prec;
  while (true) {
    const auto line = reader.next("'prec' or 'weights'");
    const auto t = tokens(line);
    if (t.size() == 1 && t[0] == "weights") break;
    if (t.size() != 3 || t[0] != "prec") {
      fail(ErrorCode::kFormat, "line " + std::to_string(reader.line_no()) + ": expected 'prec <a> <b>' or 'weights'");
    }
    const long a = parse_int(t[1], reader.line_no());
    const long b = parse_int(t[2], reader.line_no());
    if (a < 0 || b < 0 || a >= n || b >= n) {
      fail(ErrorCode::kFormat, "line " + std::to_string(reader.line_no()) + ": vertex out of range");
    }
    prec.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
  }
  const auto nv = static_cast<Vertex>(n);
  std::vector<Weight> weights;
  weights.reserve(static_cast<std::size_t>(n) * n);
  for (Vertex i = 0; i < nv; ++i) {
    const auto line = reader.next("weight row");
    const auto t = tokens(line);
    if (t.size() != static_cast<std::size_t>(n)) {
      fail(ErrorCode::kFormat, "line " + std::to_string(reader.line_no()) + ": weight row must have N entries");
    }
    for (Vertex j = 0; j < nv; ++j) {
      const Weight x = Weight::parse(t[j]);
      if (i == j && !x.is_zero()) fail(ErrorCode::kWeight, "non-zero diagonal at vertex " + std::to_string(i));
      weights.push_back(x);
    }
  }
  {
    const auto line = reader.next("'end'");
    const auto t = tokens(line);
    if (t.size() != 1 || t[0] != "end") fail(ErrorCode::kFormat, "line " + std::to_string(reader.line_no()) + ": expected 'end'");
  }
  if (!reader.at_end()) fail(ErrorCode::kFormat, "trailing content after 'end'");
  Poset poset = Poset::from_pairs(nv, prec);
  return Instance(nv, std::move(weights), std::move(poset));
}

Instance parse_instance_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_instance(in);
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kFormat, "cannot open instance file '" + path + "'");
  return parse_instance(in);
}

std::string serialize_instance(const Instance& inst) {
  std::string out = "mfas 1\nn " + std::to_string(inst.size()) + "\n";
  for (const Arc& a : inst.poset().reduction()) {
    out += "prec " + std::to_string(a.from) + " " + std::to_string(a.to) + "\n";
  }
  out += "weights\n";
  for (Vertex i = 0; i < inst.size(); ++i) {
    for (Vertex j = 0; j < inst.size(); ++j) {
      if (j != 0) out += ' ';
      out += inst.w(i, j).to_string();
    }
    out += '\n';
  }
  out += "end\n";
  return out;
}

std::string instance_digest(const Instance& inst) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_instance(inst)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ValidationReport validate_hemimetric(const Instance& inst, std::size_t max_violations) {
  ValidationReport report;
  report.checked_k = 3;
  const Vertex n = inst.size();
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = 0; j < n; ++j) {
      if (j == i) continue;
      const Cost wij = inst.w(i, j);
      for (Vertex k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        ++report.sequences_checked;
        if (Cost(inst.w(i, k)) > wij + inst.w(j, k)) {
          report.is_hemimetric = false;
          if (report.violations.size() < max_violations) report.violations.push_back({i, j, k});
        }
      }
    }
  }
  return report;
}

Vertex default_kgonal_cap(int k) {
  if (k <= 3) return 256;
  if (k == 4) return 48;
  return 12;
}

namespace {

// Depth-first over simple paths a1..ak; records paths whose summed weight
// is below the direct weight w(a1, ak).
struct KgonalScan {
  const Instance& inst;
  int k;
  std::size_t max_violations;
  ValidationReport& report;
  std::vector<Vertex> path;
  std::vector<bool> used;

  void extend(Cost sum) {
    const Vertex n = inst.size();
    if (static_cast<int>(path.size()) == k) {
      ++report.sequences_checked;
      if (Cost(inst.w(path.front(), path.back())) > sum) record(path);
      return;
    }
    const Vertex last = path.back();
    for (Vertex v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      path.push_back(v);
      extend(sum + inst.w(last, v));
      path.pop_back();
      used[v] = false;
    }
  }

  void record(const std::vector<Vertex>& seq) {
    report.is_hemimetric = false;
    if (report.violations.size() < max_violations) report.violations.push_back(seq);
  }
};

}  // namespace

ValidationReport validate_kgonal(const Instance& inst, int k, const KgonalOptions& opts) {
  if (k < 3) fail(ErrorCode::kFormat, "k-gonal check needs k >= 3");
  ValidationReport report;
  report.checked_k = k;
  const Vertex n = inst.size();
  if (n < k) return report;  // no sequence of k distinct vertices
  const Vertex cap = opts.exhaustive_cap > 0 ? opts.exhaustive_cap : default_kgonal_cap(k);
  bool exhaustive = opts.mode == KgonalOptions::Mode::kExhaustive ||
                    (opts.mode == KgonalOptions::Mode::kAuto && n <= cap);
  if (opts.mode == KgonalOptions::Mode::kExhaustive && n > cap) {
    fail(ErrorCode::kCapExceeded, "exhaustive k-gonal check requested for n=" + std::to_string(n) +
                                      " above cap " + std::to_string(cap));
  }
  if (exhaustive) {
    KgonalScan scan{inst, k, opts.max_violations, report, {}, std::vector<bool>(n, false)};
    for (Vertex a = 0; a < n; ++a) {
      scan.used[a] = true;
      scan.path = {a};
      scan.extend(Cost{});
      scan.used[a] = false;
    }
    return report;
  }
  report.sampled = true;
  report.seed = opts.seed;
  Rng rng(opts.seed);
  std::vector<Vertex> pool(n);
  for (std::uint64_t s = 0; s < opts.samples; ++s) {
    for (Vertex v = 0; v < n; ++v) pool[v] = v;
    // Partial Fisher-Yates for the first k entries.
    for (int t = 0; t < k; ++t) {
      const auto pick = t + static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n - t)));
      std::swap(pool[t], pool[pick]);
    }
    Cost sum;
    for (int t = 0; t + 1 < k; ++t) sum += inst.w(pool[t], pool[t + 1]);
    ++report.sequences_checked;
    if (Cost(inst.w(pool[0], pool[k - 1])) > sum) {
      report.is_hemimetric = false;
      if (report.violations.size() < opts.max_violations) {
        report.violations.emplace_back(pool.begin(), pool.begin() + k);
      }
    }
  }
  return report;
}

bool satisfies_probability_constraints(const Instance& inst) {
  const Vertex n = inst.size();
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      if (Cost(inst.w(i, j)) + inst.w(j, i) != Cost(Weight::units(1))) return false;
    }
  }
  return true;
}

}  // namespace mfas
