#include "knead/lengthfunc.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cassert>

namespace knead {

namespace {

StateId unique_active_state(const Automaton& a) {
  StateId found = -1;
  for (int s = 0; s < a.num_states(); ++s) {
    if (a.is_active(s)) {
      if (found >= 0)
        throw DomainError("the word calculus needs exactly one active state");
      found = s;
    }
  }
  if (found < 0)
    throw DomainError("the word calculus needs exactly one active state");
  return found;
}

std::string word_key(const GroupWord& w) {
  std::string k;
  k.reserve(w.size());
  for (StateId s : w.letters) k += static_cast<char>(s + 1);
  return k;
}

bool contains_at(const GroupWord& hay, const GroupWord& needle, size_t at) {
  if (at + needle.size() > hay.size()) return false;
  return std::equal(needle.letters.begin(), needle.letters.end(),
                    hay.letters.begin() + at);
}

}  // namespace

WeightAssignment::WeightAssignment(const Automaton& a,
                                   const std::map<std::string, Rat>& by_name)
    : by_name_(by_name), by_state_(a.num_states()) {
  for (const auto& [name, w] : by_name) {
    auto s = a.state_by_name(name);
    if (!s) throw DomainError("weight for unknown state '" + name + "'");
    if (a.identity_state() && *s == *a.identity_state())
      throw DomainError("the identity state carries no weight");
    if (w <= 0) throw DomainError("weight of '" + name + "' must be positive");
    by_state_[*s] = w;
  }
  for (int s = 0; s < a.num_states(); ++s) {
    if (a.identity_state() && s == *a.identity_state()) continue;
    if (!by_state_[s])
      throw DomainError("state '" + a.state_name(s) + "' has no weight");
  }
}

WeightAssignment WeightAssignment::unit(const Automaton& a) {
  std::map<std::string, Rat> m;
  for (StateId s : a.nontrivial_states()) m[a.state_name(s)] = 1;
  return WeightAssignment(a, m);
}

const Rat& WeightAssignment::weight(StateId s) const {
  if (s < 0 || s >= static_cast<int>(by_state_.size()) || !by_state_[s])
    throw DomainError("letter without weight");
  return *by_state_[s];
}

Rat word_weight(const WeightAssignment& wts, const GroupWord& w) {
  Rat sum = 0;
  for (StateId s : w.letters) sum += wts.weight(s);
  return sum;
}

LengthOracle::LengthOracle(const Automaton& a, const WeightAssignment& wts,
                           uint64_t settle_cap,
                           std::vector<StateId> generator_order)
    : a_(a), wts_(wts), store_(a), settle_cap_(settle_cap), settled_up_to_(0) {
  generators_ =
      generator_order.empty() ? a.nontrivial_states() : std::move(generator_order);
  dist_.resize(1);
  pq_.push({Rat(0), store_.identity_id()});
}

bool LengthOracle::explore(const Rat& bound) {
  if (exhausted_) return true;
  while (!pq_.empty()) {
    if (cmp(pq_.top().dist, bound) > 0) return true;
    auto [d, e] = pq_.top();
    pq_.pop();
    if (dist_[e]) continue;  // stale queue entry
    if (settled_order_.size() >= settle_cap_) return false;
    dist_[e] = d;
    settled_order_.emplace_back(e, d);
    settled_up_to_ = d;
    GroupWord base = store_.representative(e);
    for (StateId g : generators_) {
      GroupWord next = base;
      next.push_back(g);
      Rat nd = d + wts_.weight(g);
      auto ne = store_.intern(next);
      if (dist_.size() < store_.size()) dist_.resize(store_.size());
      if (!dist_[ne]) pq_.push({nd, ne});
    }
  }
  exhausted_ = true;
  return true;
}

LengthResult LengthOracle::min_length(const GroupWord& w) {
  Rat bound = word_weight(wts_, w);
  bool complete = explore(bound);
  auto e = store_.intern(w);
  if (dist_.size() < store_.size()) dist_.resize(store_.size());
  if (dist_[e]) return {true, *dist_[e]};
  if (!complete) return {false, settled_up_to_};
  throw DomainError("length search missed its own word; automaton broken?");
}

Rat LengthOracle::min_length_exact(const GroupWord& w) {
  LengthResult r = min_length(w);
  if (!r.exact)
    throw CapExceeded("minimal length unknown above " + rat_to_string(r.value));
  return r.value;
}

const GroupWord& Transversal::rep_for_block(const GroupWord& block) const {
  auto e = store_->intern(block);
  if (e >= static_cast<int>(reps_.size()))
    throw DomainError("block is not a word over the non-active states");
  return reps_[e];
}

bool Transversal::is_rep(const GroupWord& w) const {
  for (StateId s : w.letters)
    if (std::find(s_order_.begin(), s_order_.end(), s) == s_order_.end())
      return false;
  return rep_for_block(w) == w;
}

Transversal build_transversal(const Automaton& a, const WeightAssignment& wts,
                              std::vector<StateId> lex_order,
                              uint64_t element_cap) {
  StateId active = unique_active_state(a);
  Transversal T;
  if (lex_order.empty()) {
    for (StateId s : a.nontrivial_states())
      if (s != active) lex_order.push_back(s);
  } else {
    std::vector<StateId> expected = a.nontrivial_states();
    std::erase(expected, active);
    auto sorted = lex_order;
    std::sort(sorted.begin(), sorted.end());
    std::sort(expected.begin(), expected.end());
    if (sorted != expected)
      throw DomainError("lex order must list the non-active states exactly");
  }
  T.s_order_ = lex_order;
  T.store_ = std::make_shared<ElementStore>(a);
  std::vector<int> rank(a.num_states(), -1);
  for (size_t i = 0; i < lex_order.size(); ++i) rank[lex_order[i]] = static_cast<int>(i);

  struct Entry {
    Rat weight;
    std::vector<int> ranks;
    GroupWord word;
  };
  auto entry_greater = [](const Entry& x, const Entry& y) {
    int c = cmp(x.weight, y.weight);
    if (c != 0) return c > 0;
    if (x.ranks.size() != y.ranks.size())
      return x.ranks.size() > y.ranks.size();
    return x.ranks > y.ranks;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(entry_greater)> pq(
      entry_greater);
  std::vector<bool> has_rep;
  pq.push({Rat(0), {}, GroupWord{}});
  while (!pq.empty()) {
    Entry e = pq.top();
    pq.pop();
    auto id = T.store_->intern(e.word);
    if (T.store_->size() > element_cap)
      throw CapExceeded("subgroup <S> not confirmed finite within cap");
    if (id < static_cast<int>(has_rep.size()) && has_rep[id])
      continue;  // a smaller-key word already represents this element
    if (id >= static_cast<int>(T.reps_.size())) {
      T.reps_.resize(id + 1);
      has_rep.resize(id + 1, false);
    }
    T.reps_[id] = e.word;
    has_rep[id] = true;
    for (size_t i = 0; i < lex_order.size(); ++i) {
      Entry child;
      child.weight = e.weight + wts.weight(lex_order[i]);
      child.ranks = e.ranks;
      child.ranks.push_back(static_cast<int>(i));
      child.word = e.word;
      child.word.push_back(lex_order[i]);
      pq.push(std::move(child));
    }
  }
  return T;
}

Production string_production(const Automaton& a, const GroupWord& w) {
  StateId active = unique_active_state(a);
  if (a.alphabet_size() != 2)
    throw DomainError("productions are defined over a two-letter alphabet");
  Production p;
  p.mode = ProductionMode::String;
  bool parity = false;
  for (StateId s : w.letters) {
    if (s == active) {
      parity = !parity;
      continue;
    }
    GroupWord single(std::vector<StateId>{s});
    GroupWord r0 = push_letter(a, single, 0).restriction;
    GroupWord r1 = push_letter(a, single, 1).restriction;
    GroupWord& first = parity ? r1 : r0;
    GroupWord& second = parity ? r0 : r1;
    p.left = p.left + first;
    p.right = p.right + second;
  }
  p.trailing_t = parity;
  return p;
}

std::vector<Block> block_decomposition(const Automaton& a, const GroupWord& w) {
  StateId active = unique_active_state(a);
  std::vector<Block> blocks;
  size_t i = 0;
  while (i < w.size()) {
    bool is_t = w[i] == active;
    size_t j = i;
    while (j < w.size() && (w[j] == active) == is_t) ++j;
    blocks.push_back({is_t, i, j - i});
    i = j;
  }
  return blocks;
}

Calculus::Calculus(const Automaton& a, WeightAssignment wts,
                   std::vector<StateId> lex_order, uint64_t element_cap,
                   uint64_t settle_cap)
    : a_(a),
      wts_(std::move(wts)),
      active_(unique_active_state(a)),
      T_(build_transversal(a, wts_, std::move(lex_order), element_cap)),
      oracle_(a, wts_, settle_cap),
      C_(oracle_.min_length_exact(GroupWord(std::vector<StateId>{active_}))) {}

GroupWord Calculus::weak_reduce(const GroupWord& w) const {
  GroupWord out;
  for (const Block& b : block_decomposition(a_, w)) {
    if (b.is_t) {
      for (size_t i = 0; i < b.length; ++i) out.push_back(active_);
    } else {
      out = out + T_.rep_for_block(w.subword(b.offset, b.length));
    }
  }
  return out;
}

bool Calculus::is_weak_reduced(const GroupWord& w) const {
  for (const Block& b : block_decomposition(a_, w))
    if (!b.is_t && !T_.is_rep(w.subword(b.offset, b.length))) return false;
  return true;
}

Production Calculus::reduced_prod(const GroupWord& w) const {
  Production p = string_production(a_, w);
  p.left = weak_reduce(p.left);
  p.right = weak_reduce(p.right);
  p.mode = ProductionMode::Reduced;
  return p;
}

Production Calculus::special_prod(const GroupWord& v) const {
  std::vector<Block> blocks = block_decomposition(a_, v);
  bool shape = !blocks.empty() && blocks.size() % 2 == 0;
  for (size_t i = 0; i < blocks.size() && shape; ++i) {
    if (i % 2 == 0)
      shape = blocks[i].is_t && blocks[i].length == 1;
    else
      shape = !blocks[i].is_t &&
              T_.is_rep(v.subword(blocks[i].offset, blocks[i].length));
  }
  if (!shape)
    throw DomainError(
        "special production requires the shape t w1 t w2 ... t wm with "
        "transversal blocks");
  Production p;
  p.mode = ProductionMode::Special;
  bool parity = false;
  for (const Block& b : blocks) {
    if (b.is_t) {
      parity = !parity;
      continue;
    }
    Production bp = reduced_prod(v.subword(b.offset, b.length));
    GroupWord& first = parity ? bp.right : bp.left;
    GroupWord& second = parity ? bp.left : bp.right;
    p.left = p.left + first;
    p.right = p.right + second;
  }
  p.trailing_t = parity;
  return p;
}

Production Calculus::production(const GroupWord& w, ProductionMode mode) const {
  switch (mode) {
    case ProductionMode::String:
      return string_prod(w);
    case ProductionMode::Reduced:
      return reduced_prod(w);
    case ProductionMode::Special:
      return special_prod(w);
  }
  throw DomainError("unknown production mode");
}

Rat Calculus::star_length(const GroupWord& w) const {
  if (!is_weak_reduced(w))
    throw DomainError("star length requires a weak reduced word");
  Rat total = 0;
  for (const Block& b : block_decomposition(a_, w)) {
    if (b.is_t)
      total += C_;
    else
      total += word_weight(wts_, w.subword(b.offset, b.length));
  }
  return total;
}

Calculus::AdmissibilityResult Calculus::is_admissible() {
  AdmissibilityResult res;
  Rat t_weight = wts_.weight(active_);
  for (const GroupWord& w : T_.reps()) {
    Production p = reduced_prod(w);
    Rat lhs = t_weight + word_weight(wts_, w);
    Rat rhs = word_weight(wts_, p.left) + word_weight(wts_, p.right);
    if (lhs < rhs) {
      res.admissible = false;
      res.violations.push_back(w);
    }
  }
  return res;
}

Calculus::Tri Calculus::reducing_core(const GroupWord& v) {
  std::string key = word_key(v);
  if (auto it = reducing_core_cache_.find(key);
      it != reducing_core_cache_.end())
    return it->second;
  auto memo = [&](Tri t) {
    reducing_core_cache_[key] = t;
    return t;
  };
  std::vector<Block> blocks = block_decomposition(a_, v);
  if (blocks.empty() || blocks.size() % 2 != 0) return memo(Tri::No);
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (i % 2 == 0) {
      if (!blocks[i].is_t || blocks[i].length != 1) return memo(Tri::No);
    } else {
      if (blocks[i].is_t) return memo(Tri::No);
      if (!T_.is_rep(v.subword(blocks[i].offset, blocks[i].length)))
        return memo(Tri::No);
    }
  }
  Rat star = star_length(v);
  Production p = reduced_prod(v);
  LengthResult r0 = oracle_.min_length(p.left);
  LengthResult r1 = oracle_.min_length(p.right);
  if (r0.exact && r1.exact)
    return memo(r0.value + r1.value < star ? Tri::Yes : Tri::No);
  // Unsettled lengths still exceed the explored radius, which can be enough
  // to refute the strict inequality.
  Rat lower = r0.value + r1.value;
  if (lower >= star) return memo(Tri::No);
  ++budget_limited_;
  return memo(Tri::Unknown);
}

bool Calculus::is_reducing(const GroupWord& w, size_t offset, size_t len) {
  if (offset + len > w.size() || len < 2) return false;
  // the reducing word must be followed immediately by a t in w
  if (offset + len >= w.size() || w[offset + len] != active_) return false;
  return reducing_core(w.subword(offset, len)) == Tri::Yes;
}

std::vector<std::pair<size_t, size_t>> Calculus::protected_subwords(
    const GroupWord& w) const {
  std::vector<size_t> tpos;
  for (size_t i = 0; i < w.size(); ++i)
    if (w[i] == active_) tpos.push_back(i);
  std::vector<std::pair<size_t, size_t>> out;
  for (size_t i = 0; i < tpos.size(); ++i)
    for (size_t j = i + 1; j < tpos.size(); ++j) {
      bool has_s = false;
      for (size_t k = tpos[i] + 1; k < tpos[j] && !has_s; ++k)
        has_s = w[k] != active_;
      if (has_s) out.emplace_back(tpos[i], tpos[j] - tpos[i] + 1);
    }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool is_protected(const GroupWord& w, StateId active) {
  if (w.size() < 3) return false;
  if (w.letters.front() != active || w.letters.back() != active) return false;
  for (StateId s : w.letters)
    if (s != active) return true;
  return false;
}

bool occurs_in(const GroupWord& needle, const GroupWord& hay) {
  if (needle.size() > hay.size()) return false;
  return std::search(hay.letters.begin(), hay.letters.end(),
                     needle.letters.begin(),
                     needle.letters.end()) != hay.letters.end();
}

}  // namespace

bool Calculus::precedes(const GroupWord& what, const GroupWord& w) const {
  if (!is_protected(what, active_)) return false;
  for (auto [off, len] : protected_subwords(w)) {
    Production p = reduced_prod(w.subword(off, len));
    if (occurs_in(what, p.left) || occurs_in(what, p.right)) return true;
  }
  return false;
}

std::optional<std::pair<size_t, size_t>> Calculus::scan_reducing(
    const GroupWord& w) {
  std::string key = word_key(w);
  auto it = reducing_cache_.find(key);
  if (it != reducing_cache_.end()) return it->second;
  std::optional<std::pair<size_t, size_t>> found;
  for (size_t off = 0; off < w.size() && !found; ++off) {
    if (w[off] != active_) continue;
    // the reducing word needs a following t, hence len <= size-off-1
    for (size_t len = 2; off + len + 1 <= w.size() && !found; ++len)
      if (is_reducing(w, off, len)) found = {off, len};
  }
  reducing_cache_[key] = found;
  return found;
}

const std::vector<Calculus::Successor>& Calculus::successors(
    const GroupWord& w) {
  std::string key = word_key(w);
  auto it = successor_cache_.find(key);
  if (it != successor_cache_.end()) return it->second;
  std::vector<Successor> out;
  for (auto [off, len] : protected_subwords(w)) {
    Production p = reduced_prod(w.subword(off, len));
    for (int coord = 0; coord < 2; ++coord) {
      const GroupWord& cw = coord == 0 ? p.left : p.right;
      for (auto [noff, nlen] : protected_subwords(cw)) {
        Successor s;
        s.word = cw.subword(noff, nlen);
        s.step = {off, len, coord, noff, nlen};
        out.push_back(std::move(s));
      }
    }
  }
  return successor_cache_.emplace(key, std::move(out)).first->second;
}

std::optional<Calculus::GoodnessCertificate> Calculus::search_within(
    const GroupWord& u, int budget) {
  std::string key = word_key(u);
  if (auto it = found_.find(key);
      it != found_.end() && it->second.depth() <= budget) {
    GoodnessCertificate cert = it->second;
    cert.word = u;
    return cert;
  }
  if (auto it = none_below_.find(key);
      it != none_below_.end() && it->second >= budget)
    return std::nullopt;
  if (auto red = scan_reducing(u)) {
    GoodnessCertificate cert;
    cert.word = u;
    cert.reducing_offset = red->first;
    cert.reducing_len = red->second;
    GroupWord v = u.subword(red->first, red->second);
    Production p = reduced_prod(v);
    Rat ell_sum =
        oracle_.min_length_exact(p.left) + oracle_.min_length_exact(p.right);
    cert.sigma_u = star_length(v);
    cert.c_u = ell_sum / cert.sigma_u;
    found_[key] = cert;
    return cert;
  }
  if (budget <= 0) {
    auto [it, fresh] = none_below_.emplace(key, budget);
    if (!fresh) it->second = std::max(it->second, budget);
    return std::nullopt;
  }
  for (const Successor& s : successors(u)) {
    if (auto sub = search_within(s.word, budget - 1)) {
      GoodnessCertificate cert;
      cert.word = u;
      cert.chain.push_back(s.word);
      cert.chain.insert(cert.chain.end(), sub->chain.begin(),
                        sub->chain.end());
      cert.steps.push_back(s.step);
      cert.steps.insert(cert.steps.end(), sub->steps.begin(),
                        sub->steps.end());
      cert.reducing_offset = sub->reducing_offset;
      cert.reducing_len = sub->reducing_len;
      cert.c_u = sub->c_u;
      cert.sigma_u = sub->sigma_u;
      auto it = found_.find(key);
      if (it == found_.end() || cert.depth() < it->second.depth())
        found_[key] = cert;
      return cert;
    }
  }
  auto [it, fresh] = none_below_.emplace(key, budget);
  if (!fresh) it->second = std::max(it->second, budget);
  return std::nullopt;
}

std::optional<Calculus::GoodnessCertificate> Calculus::search_goodness(
    const GroupWord& u, int max_depth) {
  if (max_depth < 0 || max_depth > 8)
    throw DomainError("goodness search depth must lie in [0, 8]");
  for (int target = 0; target <= max_depth; ++target)
    if (auto cert = search_within(u, target)) return cert;
  return std::nullopt;
}

Calculus::GoodnessCheck Calculus::verify_goodness(
    const GoodnessCertificate& cert) {
  GoodnessCheck out;
  if (cert.steps.size() != cert.chain.size()) {
    out.failed_step = 0;
    out.reason = "chain and step witness counts differ";
    return out;
  }
  const GroupWord* cur = &cert.word;
  for (size_t i = 0; i < cert.chain.size(); ++i) {
    const GoodnessStep& st = cert.steps[i];
    out.failed_step = static_cast<int>(i);
    if (st.protected_offset + st.protected_len > cur->size()) {
      out.reason = "protected subword out of range";
      return out;
    }
    GroupWord sub = cur->subword(st.protected_offset, st.protected_len);
    if (!is_protected(sub, active_)) {
      out.reason = "witness subword is not protected";
      return out;
    }
    Production p = reduced_prod(sub);
    const GroupWord& cw = st.coordinate == 0 ? p.left : p.right;
    if (st.next_offset + st.next_len > cw.size() ||
        !contains_at(cw, cert.chain[i], st.next_offset) ||
        cw.subword(st.next_offset, st.next_len) != cert.chain[i]) {
      out.reason = "chain word does not occur at the stated position";
      return out;
    }
    if (!is_protected(cert.chain[i], active_)) {
      out.reason = "chain word is not protected";
      return out;
    }
    cur = &cert.chain[i];
  }
  out.failed_step = static_cast<int>(cert.chain.size());
  if (cert.reducing_offset + cert.reducing_len > cur->size()) {
    out.reason = "reducing subword out of range";
    return out;
  }
  if (!is_reducing(*cur, cert.reducing_offset, cert.reducing_len)) {
    out.reason = "stated subword is not reducing";
    return out;
  }
  GroupWord v = cur->subword(cert.reducing_offset, cert.reducing_len);
  Production p = reduced_prod(v);
  Rat ell_sum =
      oracle_.min_length_exact(p.left) + oracle_.min_length_exact(p.right);
  Rat sigma = star_length(v);
  if (sigma != cert.sigma_u || ell_sum / sigma != cert.c_u) {
    out.reason = "certificate statistics do not match";
    return out;
  }
  out.valid = true;
  out.failed_step = -1;
  out.reason.clear();
  return out;
}

Rat Calculus::epsilon_cover(const GroupWord& w, const std::vector<GroupWord>& U,
                            bool assume_reduced) {
  struct Occ {
    size_t start, end;  // [start, end)
  };
  std::vector<Occ> occ;
  for (const GroupWord& u : U) {
    if (u.empty() || u.size() > w.size()) continue;
    for (size_t off = 0; off + u.size() <= w.size(); ++off)
      if (contains_at(w, u, off)) occ.push_back({off, off + u.size()});
  }
  std::sort(occ.begin(), occ.end(), [](const Occ& x, const Occ& y) {
    return x.end != y.end ? x.end < y.end : x.start < y.start;
  });
  std::vector<Rat> prefix(w.size() + 1);
  for (size_t i = 0; i < w.size(); ++i)
    prefix[i + 1] = prefix[i] + wts_.weight(w[i]);
  auto span_weight = [&](size_t from, size_t to) -> Rat {
    return Rat(prefix[to] - prefix[from]);
  };
  auto all_t = [&](size_t from, size_t to) {
    for (size_t i = from; i < to; ++i)
      if (w[i] != active_) return false;
    return true;
  };
  Rat best = 0;
  std::vector<Rat> dp(occ.size());
  for (size_t i = 0; i < occ.size(); ++i) {
    dp[i] = span_weight(occ[i].start, occ[i].end);
    for (size_t j = 0; j < i; ++j) {
      Rat cand;
      if (occ[j].end <= occ[i].start) {
        cand = dp[j] + span_weight(occ[i].start, occ[i].end);
      } else if (occ[j].start <= occ[i].start &&
                 all_t(occ[i].start, std::min(occ[j].end, occ[i].end))) {
        // occurrences may meet in blocks of t's only
        if (occ[j].end >= occ[i].end) continue;  // nested, nothing new
        cand = dp[j] + span_weight(occ[j].end, occ[i].end);
      } else {
        continue;
      }
      if (cand > dp[i]) dp[i] = cand;
    }
    if (dp[i] > best) best = dp[i];
  }
  if (best == 0) return 0;
  Rat denom = assume_reduced ? word_weight(wts_, w) : min_length_exact(w);
  if (denom == 0) throw DomainError("cover of the empty word is undefined");
  return best / denom;
}

nlohmann::json Calculus::certificate_to_json(
    const GoodnessCertificate& cert) const {
  nlohmann::json j;
  j["schema"] = 1;
  j["word"] = a_.word_display(cert.word);
  j["chain"] = nlohmann::json::array();
  for (const GroupWord& u : cert.chain) j["chain"].push_back(a_.word_display(u));
  j["steps"] = nlohmann::json::array();
  for (const GoodnessStep& s : cert.steps)
    j["steps"].push_back({{"protected", {s.protected_offset, s.protected_len}},
                          {"coordinate", s.coordinate},
                          {"next", {s.next_offset, s.next_len}}});
  j["reducing"] = {cert.reducing_offset, cert.reducing_len};
  j["c_u"] = rat_to_string(cert.c_u);
  j["sigma_u"] = rat_to_string(cert.sigma_u);
  return j;
}

Calculus::GoodnessCertificate Calculus::certificate_from_json(
    const nlohmann::json& j) const {
  GoodnessCertificate cert;
  cert.word = a_.word_from_string(j.at("word").get<std::string>());
  for (const auto& u : j.at("chain"))
    cert.chain.push_back(a_.word_from_string(u.get<std::string>()));
  for (const auto& s : j.at("steps")) {
    GoodnessStep step;
    step.protected_offset = s.at("protected")[0].get<size_t>();
    step.protected_len = s.at("protected")[1].get<size_t>();
    step.coordinate = s.at("coordinate").get<int>();
    step.next_offset = s.at("next")[0].get<size_t>();
    step.next_len = s.at("next")[1].get<size_t>();
    cert.steps.push_back(step);
  }
  cert.reducing_offset = j.at("reducing")[0].get<size_t>();
  cert.reducing_len = j.at("reducing")[1].get<size_t>();
  cert.c_u = parse_rational(j.at("c_u").get<std::string>());
  cert.sigma_u = parse_rational(j.at("sigma_u").get<std::string>());
  return cert;
}

}  // namespace knead
