#include "knead/growth.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace knead {

GrowthTable enumerate_ball(const Automaton& a, const WeightAssignment& wts,
                           long radius, uint64_t settle_cap,
                           std::vector<StateId> generator_order) {
  if (radius < 0) throw DomainError("radius must be non-negative");
  LengthOracle oracle(a, wts, settle_cap, std::move(generator_order));
  GrowthTable t;
  t.complete = oracle.explore(Rat(radius));
  t.rows.resize(radius + 1);
  for (long n = 0; n <= radius; ++n) t.rows[n].radius = n;
  for (const auto& [e, d] : oracle.settled()) {
    long n = 0;
    while (Rat(n) < d) ++n;  // first integer radius containing d
    if (n > radius) continue;
    t.rows[n].sphere++;
  }
  uint64_t running = 0;
  for (auto& row : t.rows) {
    running += row.sphere;
    row.ball = running;
  }
  return t;
}

std::string growth_table_csv(const GrowthTable& t) {
  std::ostringstream out;
  out << "n,b_n,cumulative,log2_ratio\n";
  for (const auto& row : t.rows) {
    out << row.radius << ',' << row.sphere << ',' << row.ball << ',';
    if (row.radius > 0 && row.ball > 0) {
      double ratio = std::log2(static_cast<double>(row.ball)) / row.radius;
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6f", ratio);
      out << buf;
    }
    out << '\n';
  }
  if (!t.complete) out << "# truncated: step budget exhausted\n";
  return out.str();
}

namespace {

// Aho-Corasick over words in the non-identity states. A path dies as soon
// as any pattern is completed.
class SubwordScanner {
 public:
  SubwordScanner(int alphabet_states, const std::vector<GroupWord>& patterns)
      : fanout_(alphabet_states) {
    nodes_.push_back(Node(fanout_));
    for (const GroupWord& p : patterns) {
      if (p.empty()) throw DomainError("empty pattern");
      int cur = 0;
      for (StateId s : p.letters) {
        if (nodes_[cur].next[s] < 0) {
          nodes_[cur].next[s] = static_cast<int>(nodes_.size());
          nodes_.push_back(Node(fanout_));
        }
        cur = nodes_[cur].next[s];
      }
      nodes_[cur].accept = true;
    }
    // breadth-first failure links
    std::deque<int> queue;
    for (int s = 0; s < fanout_; ++s) {
      int v = nodes_[0].next[s];
      if (v < 0) {
        nodes_[0].next[s] = 0;
      } else {
        nodes_[v].fail = 0;
        queue.push_back(v);
      }
    }
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      nodes_[u].accept = nodes_[u].accept || nodes_[nodes_[u].fail].accept;
      for (int s = 0; s < fanout_; ++s) {
        int v = nodes_[u].next[s];
        if (v < 0) {
          nodes_[u].next[s] = nodes_[nodes_[u].fail].next[s];
        } else {
          nodes_[v].fail = nodes_[nodes_[u].fail].next[s];
          queue.push_back(v);
        }
      }
    }
  }

  int size() const { return static_cast<int>(nodes_.size()); }

  // -1 when a pattern completes along the way.
  int advance(int node, StateId s) const {
    int v = nodes_[node].next[s];
    return nodes_[v].accept ? -1 : v;
  }
  int advance_word(int node, const GroupWord& w) const {
    for (StateId s : w.letters) {
      node = advance(node, s);
      if (node < 0) return -1;
    }
    return node;
  }

 private:
  struct Node {
    explicit Node(int fanout) : next(fanout, -1) {}
    std::vector<int> next;
    int fail = 0;
    bool accept = false;
  };
  int fanout_;
  std::vector<Node> nodes_;
};

StateId active_of(const Automaton& a) {
  StateId found = -1;
  for (int s = 0; s < a.num_states(); ++s)
    if (a.is_active(s)) {
      if (found >= 0) throw DomainError("need exactly one active state");
      found = s;
    }
  if (found < 0) throw DomainError("need exactly one active state");
  return found;
}

std::vector<GroupWord> interior_choices(const Transversal& T) {
  std::vector<GroupWord> out;
  for (const GroupWord& w : T.reps())
    if (!w.empty()) out.push_back(w);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

BadWordReport count_bad_words(const Automaton& a,
                              const std::vector<GroupWord>& U,
                              const Transversal& T, long max_blocks) {
  if (max_blocks < 1) throw DomainError("need at least one block");
  StateId t = active_of(a);
  SubwordScanner ac(a.num_states(), U);
  std::vector<GroupWord> choices = interior_choices(T);

  // Per node: where feeding "choice t" leads (-1 dead), the number of
  // admissible trailing affixes, and the start distribution per leading
  // affix. Distributions count words, which the deterministic scanner keeps
  // in bijection with paths.
  int n = ac.size();
  std::vector<std::vector<int>> step(n, std::vector<int>(choices.size(), -1));
  GroupWord just_t(std::vector<StateId>{t});
  for (int q = 0; q < n; ++q)
    for (size_t c = 0; c < choices.size(); ++c) {
      int v = ac.advance_word(q, choices[c]);
      if (v >= 0) v = ac.advance(v, t);
      step[q][c] = v;
    }
  std::vector<uint64_t> tail_mult(n, 1);  // empty trailing affix always works
  for (int q = 0; q < n; ++q)
    for (const GroupWord& w : choices)
      if (ac.advance_word(q, w) >= 0) tail_mult[q]++;

  int start_internal = ac.advance_word(0, just_t);
  std::vector<uint64_t> dist_internal(n, 0);
  if (start_internal >= 0) dist_internal[start_internal] = 1;
  std::vector<uint64_t> dist_affixed(n, 0);
  if (start_internal >= 0) dist_affixed[start_internal] = 1;  // empty w0
  for (const GroupWord& w : choices) {
    int v = ac.advance_word(0, w);
    if (v >= 0) v = ac.advance(v, t);
    if (v >= 0) dist_affixed[v]++;
  }

  BadWordReport report;
  report.max_blocks = max_blocks;
  report.internal_counts.assign(max_blocks + 1, 0);
  report.affixed_counts.assign(max_blocks + 1, 0);
  auto advance_dist = [&](std::vector<uint64_t>& dist) {
    std::vector<uint64_t> next(n, 0);
    for (int q = 0; q < n; ++q) {
      if (!dist[q]) continue;
      for (size_t c = 0; c < choices.size(); ++c)
        if (step[q][c] >= 0) next[step[q][c]] += dist[q];
    }
    dist = std::move(next);
  };
  for (long m = 1; m <= max_blocks; ++m) {
    advance_dist(dist_internal);
    advance_dist(dist_affixed);
    uint64_t internal = 0, affixed = 0;
    for (int q = 0; q < n; ++q) {
      internal += dist_internal[q];
      affixed += dist_affixed[q] * tail_mult[q];
    }
    report.internal_counts[m] = internal;
    report.affixed_counts[m] = affixed;
    report.max_internal = std::max(report.max_internal, internal);
    report.max_affixed = std::max(report.max_affixed, affixed);
  }
  return report;
}

std::vector<std::vector<GroupWord>> bad_word_survivors(
    const Automaton& a, const std::vector<GroupWord>& U, const Transversal& T,
    long blocks, size_t limit) {
  StateId t = active_of(a);
  SubwordScanner ac(a.num_states(), U);
  std::vector<GroupWord> choices = interior_choices(T);
  std::vector<std::vector<GroupWord>> out;
  std::vector<GroupWord> current;
  GroupWord just_t(std::vector<StateId>{t});

  auto rec = [&](auto&& self, int node, long remaining) -> void {
    if (remaining == 0) {
      if (out.size() >= limit) throw CapExceeded("too many surviving words");
      out.push_back(current);
      return;
    }
    for (const GroupWord& w : choices) {
      int v = ac.advance_word(node, w);
      if (v >= 0) v = ac.advance(v, t);
      if (v < 0) continue;
      current.push_back(w);
      self(self, v, remaining - 1);
      current.pop_back();
    }
  };
  int start = ac.advance_word(0, just_t);
  if (start >= 0) rec(rec, start, blocks);
  return out;
}

nlohmann::json bad_word_report_to_json(const BadWordReport& r) {
  nlohmann::json j;
  j["schema"] = 1;
  j["max_blocks"] = r.max_blocks;
  nlohmann::json per_m = nlohmann::json::array();
  for (long m = 1; m <= r.max_blocks; ++m)
    per_m.push_back({{"m", m},
                     {"internal", r.internal_counts[m]},
                     {"affixed", r.affixed_counts[m]}});
  j["counts"] = per_m;
  j["max_internal"] = r.max_internal;
  j["max_affixed"] = r.max_affixed;
  return j;
}

Int eval_bad_bound(long r, const Rat& eps, const Int& M, const Int& U_size) {
  if (eps <= 0 || eps >= 1) throw DomainError("need 0 < eps < 1");
  if (r < 0) throw DomainError("radius must be non-negative");
  Int er = rat_floor(eps * r);
  unsigned long k = er.get_ui();
  return binomial(r + 1, k + 1) * int_pow(M, 1 + k) * int_pow(U_size, k);
}

BadBoundChain eval_bad_bound_chain(long n, const Rat& eps, const Int& M,
                                   const Int& U_size) {
  BadBoundChain chain;
  chain.total = 0;
  for (long r = 0; r <= n; ++r) {
    chain.terms.push_back(eval_bad_bound(r, eps, M, U_size));
    chain.total += chain.terms.back();
  }
  return chain;
}

}  // namespace knead
