#include "knead/automaton.hpp"

#include "knead/rational.hpp"
#include "knead/treeaction.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace knead {

Automaton::Automaton(std::vector<std::string> state_names, std::string alphabet,
                     std::vector<std::vector<Arrow>> tau,
                     std::optional<StateId> identity_state)
    : names_(std::move(state_names)),
      alphabet_(std::move(alphabet)),
      tau_(std::move(tau)),
      identity_(identity_state) {
  if (alphabet_.empty()) throw DomainError("empty alphabet");
  if (tau_.size() != names_.size())
    throw DomainError("transition table does not match state set");
  std::set<std::string> seen_names;
  for (const auto& n : names_) {
    if (n.empty() || !seen_names.insert(n).second)
      throw DomainError("state names must be distinct and non-empty");
  }
  for (const auto& row : tau_) {
    if (row.size() != alphabet_.size())
      throw DomainError("tau is not total on states x alphabet");
    for (const auto& arrow : row) {
      if (arrow.out_letter < 0 || arrow.out_letter >= alphabet_size() ||
          arrow.next_state < 0 || arrow.next_state >= num_states())
        throw DomainError("transition out of range");
    }
  }
  if (identity_) {
    for (int x = 0; x < alphabet_size(); ++x) {
      const Arrow& a = tau_[*identity_][x];
      if (a.out_letter != x || a.next_state != *identity_)
        throw DomainError("declared identity state has non-identity rows");
    }
  }
}

std::optional<StateId> Automaton::state_by_name(const std::string& name) const {
  for (int i = 0; i < num_states(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

int Automaton::letter_index(char c) const {
  auto pos = alphabet_.find(c);
  return pos == std::string::npos ? -1 : static_cast<int>(pos);
}

bool Automaton::is_active(StateId s) const {
  for (int x = 0; x < alphabet_size(); ++x)
    if (tau_[s][x].out_letter != x) return true;
  return false;
}

bool Automaton::is_invertible() const {
  for (int s = 0; s < num_states(); ++s) {
    std::vector<bool> hit(alphabet_size(), false);
    for (int x = 0; x < alphabet_size(); ++x) {
      int y = tau_[s][x].out_letter;
      if (hit[y]) return false;
      hit[y] = true;
    }
  }
  return true;
}

std::vector<StateId> Automaton::nontrivial_states() const {
  std::vector<StateId> out;
  for (int s = 0; s < num_states(); ++s)
    if (!identity_ || s != *identity_) out.push_back(s);
  return out;
}

GroupWord Automaton::word_from_string(const std::string& text) const {
  if (text == "1") return GroupWord{};
  GroupWord w;
  size_t pos = 0;
  while (pos < text.size()) {
    int best = -1;
    size_t best_len = 0;
    for (int s = 0; s < num_states(); ++s) {
      const std::string& n = names_[s];
      if (n.size() > best_len && text.compare(pos, n.size(), n) == 0) {
        best = s;
        best_len = n.size();
      }
    }
    if (best < 0)
      throw ParseError("no state name at position " + std::to_string(pos) +
                       " of '" + text + "'");
    if (identity_ && best == *identity_)
      throw ParseError("group words may not contain the identity state ('" +
                       names_[best] + "' at position " + std::to_string(pos) +
                       ")");
    w.push_back(best);
    pos += best_len;
  }
  return w;
}

std::string Automaton::word_to_string(const GroupWord& w) const {
  std::string out;
  for (StateId s : w.letters) out += names_[s];
  return out;
}

std::string Automaton::word_display(const GroupWord& w) const {
  return w.empty() ? "1" : word_to_string(w);
}

TreeWord Automaton::tree_word_from_string(const std::string& text) const {
  for (size_t i = 0; i < text.size(); ++i)
    if (letter_index(text[i]) < 0)
      throw ParseError("letter '" + std::string(1, text[i]) +
                       "' at position " + std::to_string(i) +
                       " is not in the alphabet");
  return text;
}

KneadingSequence parse_kneading_sequence(const std::string& text) {
  KneadingSequence ks;
  size_t pos = 0;
  while (pos < text.size() && (text[pos] == '0' || text[pos] == '1'))
    ks.pre_period += text[pos++];
  if (pos >= text.size() || text[pos] != '(')
    throw ParseError("expected '(' at position " + std::to_string(pos) +
                     " of '" + text + "'");
  ++pos;
  while (pos < text.size() && (text[pos] == '0' || text[pos] == '1'))
    ks.period += text[pos++];
  if (ks.period.empty())
    throw ParseError("empty period at position " + std::to_string(pos) +
                     " of '" + text + "'");
  if (pos >= text.size() || text[pos] != ')')
    throw ParseError("expected ')' at position " + std::to_string(pos) +
                     " of '" + text + "'");
  ++pos;
  if (pos != text.size())
    throw ParseError("stray characters at position " + std::to_string(pos) +
                     " of '" + text + "'");
  return ks;
}

namespace {

bool is_one_zero_k(const KneadingSequence& ks) {
  if (ks.pre_period != "1") return false;
  return ks.period.find('1') == std::string::npos;
}

}  // namespace

Automaton automaton_from_kneading_sequence(const KneadingSequence& ks) {
  if (ks.period.empty()) throw DomainError("kneading sequence needs a period");
  const std::string w = ks.pre_period + ks.period;
  const int p = static_cast<int>(ks.pre_period.size());
  const int n = static_cast<int>(w.size());
  // The circle-attachment state carries one arrow toward the sticker and one
  // around the circle; they need distinct input letters.
  if (p > 0 && ks.pre_period.back() == ks.period.back())
    throw DomainError(
        "unrealizable kneading sequence: pre-period and period end with the "
        "same letter");

  // Trace states s_0 = t, s_1, ..., s_{n-1}.
  std::vector<std::string> names(n + 1);
  const bool xnames = is_one_zero_k(ks);
  for (int i = 1; i < n; ++i) {
    if (xnames)
      names[i] = "x" + std::to_string(i - 1);
    else if (i <= 26)
      names[i] = std::string(1, static_cast<char>('a' + i - 1));
    else
      names[i] = "s" + std::to_string(i);
  }
  names[0] = "t";
  // Display order: trace order, then t, then id.
  std::vector<std::string> display;
  for (int i = 1; i < n; ++i) display.push_back(names[i]);
  display.push_back("t");
  display.push_back("id");
  auto display_index = [&](int trace_i) -> StateId {
    return trace_i == 0 ? n - 1 : trace_i - 1;
  };
  const StateId id_state = n;
  const StateId t_state = display_index(0);

  std::vector<std::vector<Automaton::Arrow>> tau(
      n + 1, std::vector<Automaton::Arrow>(2));
  std::vector<std::vector<bool>> assigned(n + 1, std::vector<bool>(2, false));
  auto set_arrow = [&](StateId s, int in, int out, StateId next) {
    if (assigned[s][in]) throw DomainError("conflicting kneading-trace arrows");
    tau[s][in] = {out, next};
    assigned[s][in] = true;
  };

  // Path edges: s_{i+1} -> s_i labelled with the diagonal letter w[i].
  for (int i = 0; i + 1 < n; ++i) {
    int letter = w[i] - '0';
    set_arrow(display_index(i + 1), letter, letter, display_index(i));
  }
  int closing = w[n - 1] - '0';
  if (p > 0) {
    // Circle closes from the attachment state s_p back to s_{n-1}; the
    // active state's arrows both go to the identity.
    set_arrow(display_index(p), closing, closing, display_index(n - 1));
    set_arrow(t_state, 0, 1, id_state);
    set_arrow(t_state, 1, 0, id_state);
  } else {
    // Periodic: the circle runs through the active state, whose arrow to
    // s_{n-1} is recorded by its input letter.
    set_arrow(t_state, closing, 1 - closing, display_index(n - 1));
    set_arrow(t_state, 1 - closing, closing, id_state);
  }
  for (int s = 0; s <= n; ++s)
    for (int x = 0; x < 2; ++x)
      if (!assigned[s][x]) tau[s][x] = {x, id_state};

  return Automaton(display, "01", std::move(tau), id_state);
}

namespace {

std::optional<StateId> behavioral_identity(const Automaton& a) {
  if (a.identity_state()) return a.identity_state();
  for (int s = 0; s < a.num_states(); ++s) {
    bool idrow = true;
    for (int x = 0; x < a.alphabet_size() && idrow; ++x) {
      const auto& arrow = a.step(s, x);
      idrow = arrow.out_letter == x && arrow.next_state == s;
    }
    if (idrow) return s;
  }
  return std::nullopt;
}

}  // namespace

GammaGraph gamma_graph(const Automaton& a) {
  GammaGraph g;
  auto id = behavioral_identity(a);
  for (int s = 0; s < a.num_states(); ++s) {
    if (id && s == *id) continue;
    g.vertices.push_back(s);
    for (int x = 0; x < a.alphabet_size(); ++x) {
      const auto& arrow = a.step(s, x);
      if (id && arrow.next_state == *id) continue;
      g.edges.push_back({s, arrow.next_state, x, arrow.out_letter});
    }
  }
  return g;
}

namespace {

// Moore-style partition refinement; returns block index per state.
std::vector<int> behavior_partition(const Automaton& a) {
  int n = a.num_states();
  std::vector<int> block(n);
  {
    std::map<std::vector<int>, int> sig_to_block;
    for (int s = 0; s < n; ++s) {
      std::vector<int> sig;
      for (int x = 0; x < a.alphabet_size(); ++x)
        sig.push_back(a.step(s, x).out_letter);
      auto [it, fresh] =
          sig_to_block.emplace(sig, static_cast<int>(sig_to_block.size()));
      block[s] = it->second;
    }
  }
  for (;;) {
    std::map<std::vector<int>, int> sig_to_block;
    std::vector<int> next(n);
    for (int s = 0; s < n; ++s) {
      std::vector<int> sig{block[s]};
      for (int x = 0; x < a.alphabet_size(); ++x)
        sig.push_back(block[a.step(s, x).next_state]);
      auto [it, fresh] =
          sig_to_block.emplace(sig, static_cast<int>(sig_to_block.size()));
      next[s] = it->second;
    }
    if (next == block) return block;
    block = next;
  }
}

}  // namespace

Automaton reduce_automaton(const Automaton& a) {
  if (!a.is_invertible())
    throw DomainError("reduce_automaton requires an invertible automaton");
  std::vector<int> block = behavior_partition(a);
  int n = a.num_states();
  // Representative of each block: its least state index, keeping that
  // state's name; blocks ordered by representative.
  std::vector<int> rep_of_block;
  std::vector<int> block_order;  // block -> new index
  {
    int nblocks = 0;
    for (int s = 0; s < n; ++s) nblocks = std::max(nblocks, block[s] + 1);
    rep_of_block.assign(nblocks, -1);
    for (int s = n - 1; s >= 0; --s) rep_of_block[block[s]] = s;
    std::vector<int> blocks_by_rep(nblocks);
    std::iota(blocks_by_rep.begin(), blocks_by_rep.end(), 0);
    std::sort(blocks_by_rep.begin(), blocks_by_rep.end(),
              [&](int b1, int b2) { return rep_of_block[b1] < rep_of_block[b2]; });
    block_order.assign(nblocks, 0);
    for (size_t i = 0; i < blocks_by_rep.size(); ++i)
      block_order[blocks_by_rep[i]] = static_cast<int>(i);
  }
  int m = static_cast<int>(rep_of_block.size());
  std::vector<std::string> names(m);
  std::vector<std::vector<Automaton::Arrow>> tau(
      m, std::vector<Automaton::Arrow>(a.alphabet_size()));
  std::optional<StateId> identity;
  for (int b = 0; b < m; ++b) {
    int rep = rep_of_block[b];
    int nb = block_order[b];
    names[nb] = a.state_name(rep);
    bool idrow = true;
    for (int x = 0; x < a.alphabet_size(); ++x) {
      const auto& arrow = a.step(rep, x);
      tau[nb][x] = {arrow.out_letter, block_order[block[arrow.next_state]]};
      idrow = idrow && arrow.out_letter == x && tau[nb][x].next_state == nb;
    }
    if (idrow) identity = nb;
  }
  return Automaton(std::move(names), a.alphabet(), std::move(tau), identity);
}

namespace {

// Backward trace from the active state; assumes the kneading shape was
// already checked.
KneadingSequence trace_kneading_sequence(const Automaton& a,
                                         std::optional<StateId> id,
                                         StateId active) {
  std::vector<std::pair<StateId, int>> pred(a.num_states(), {-1, -1});
  for (int s = 0; s < a.num_states(); ++s) {
    if (id && s == *id) continue;
    for (int x = 0; x < a.alphabet_size(); ++x) {
      StateId next = a.step(s, x).next_state;
      if (!id || next != *id) pred[next] = {s, x};
    }
  }
  std::string labels;
  std::vector<int> seen_at(a.num_states(), -1);
  StateId cur = active;
  seen_at[cur] = 0;
  int visited = 1;
  for (;;) {
    auto [p, in_letter] = pred[cur];
    if (p < 0) throw DomainError("kneading trace broke: missing predecessor");
    // Diagonal labels are abbreviated by their letter; an arrow out of the
    // active state (periodic circle only) is recorded by its input letter.
    labels += a.alphabet()[in_letter];
    if (seen_at[p] >= 0) {
      int j = seen_at[p];
      KneadingSequence ks;
      ks.pre_period = labels.substr(0, j);
      ks.period = labels.substr(j);
      return ks;
    }
    seen_at[p] = visited++;
    cur = p;
  }
}

}  // namespace

Classification classify(const Automaton& a) {
  Classification c;
  c.invertible = a.is_invertible();
  std::vector<int> block = behavior_partition(a);
  c.reduced =
      *std::max_element(block.begin(), block.end()) == a.num_states() - 1;
  for (int s = 0; s < a.num_states(); ++s)
    if (a.is_active(s)) c.active_states.push_back(a.state_name(s));

  if (!(c.invertible && c.reduced && a.alphabet_size() == 2 &&
        c.active_states.size() == 1)) {
    return c;
  }
  auto id = behavioral_identity(a);
  StateId active = *a.state_by_name(c.active_states.front());
  // Each non-identity state needs exactly one incoming arrow, and at most
  // one arrow out of the active state may lead to a non-identity state.
  std::vector<int> indegree(a.num_states(), 0);
  for (int s = 0; s < a.num_states(); ++s)
    for (int x = 0; x < a.alphabet_size(); ++x)
      indegree[a.step(s, x).next_state]++;
  int active_out = 0;
  for (int x = 0; x < a.alphabet_size(); ++x) {
    StateId next = a.step(active, x).next_state;
    if (!id || next != *id) active_out++;
  }
  bool kneading = active_out <= 1;
  for (int s = 0; s < a.num_states() && kneading; ++s) {
    if (id && s == *id) continue;
    kneading = indegree[s] == 1;
  }
  c.kneading = kneading;
  if (!kneading) return c;

  c.pre_periodic = active_out == 0;
  if (c.pre_periodic) {
    KneadingSequence ks = trace_kneading_sequence(a, id, active);
    const std::string& v = ks.period;
    // v is a proper power iff it occurs in (v+v) at an offset strictly
    // between 0 and |v|.
    std::string doubled = v + v;
    auto hit = doubled.find(v, 1);
    c.bad_isotropy = hit != std::string::npos && hit < v.size();
  }
  return c;
}

KneadingSequence kneading_sequence_of(const Automaton& a) {
  Classification c = classify(a);
  if (!c.kneading)
    throw DomainError("automaton is not a kneading automaton");
  return trace_kneading_sequence(a, behavioral_identity(a),
                                 *a.state_by_name(c.active_states.front()));
}

PlanarityResult is_planar(const Automaton& a) {
  Classification c = classify(a);
  if (a.alphabet_size() != 2 || !c.kneading)
    throw DomainError("planarity is defined for kneading automata over {0,1}");
  std::vector<StateId> states = a.nontrivial_states();
  if (states.size() > 8)
    throw DomainError("planarity search is capped at 8 nontrivial states");
  std::sort(states.begin(), states.end());
  auto is_rotation = [](const std::vector<StateId>& word,
                        const std::vector<StateId>& of) {
    if (word.size() != of.size()) return false;
    std::vector<StateId> doubled = of;
    doubled.insert(doubled.end(), of.begin(), of.end());
    for (size_t shift = 0; shift < of.size(); ++shift)
      if (std::equal(word.begin(), word.end(), doubled.begin() + shift))
        return true;
    return false;
  };
  std::vector<StateId> perm = states;
  do {
    GroupWord squared;
    for (StateId s : perm) squared.push_back(s);
    for (StateId s : perm) squared.push_back(s);
    bool ok = true;
    for (int x = 0; x < 2 && ok; ++x) {
      GroupWord restr = restrict_word(a, squared, std::string(1, a.alphabet()[x]));
      ok = is_rotation(restr.letters, perm);
    }
    if (ok) return {true, perm};
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {false, {}};
}

Automaton automaton_from_text(const std::string& text) {
  struct Line {
    std::string from, to;
    char in, out;
  };
  std::vector<Line> lines;
  // States appear in order of their first own row, so emitting and parsing
  // are mutually inverse on grouped-row texts.
  std::vector<std::string> state_order;
  std::set<char> letters;
  auto note_state = [&](const std::string& s) {
    if (std::find(state_order.begin(), state_order.end(), s) ==
        state_order.end())
      state_order.push_back(s);
  };
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::istringstream ls(raw);
    std::string from, inl, arrow, outl, to;
    if (!(ls >> from)) continue;  // blank line
    if (!(ls >> inl >> arrow >> outl >> to) || arrow != "->" ||
        inl.size() != 1 || outl.size() != 1)
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected 'state letter -> letter state'");
    std::string extra;
    if (ls >> extra)
      throw ParseError("line " + std::to_string(lineno) + ": trailing tokens");
    note_state(from);
    letters.insert(inl[0]);
    letters.insert(outl[0]);
    lines.push_back({from, to, inl[0], outl[0]});
  }
  if (lines.empty()) throw ParseError("no transitions in automaton text");
  for (const auto& l : lines)
    if (std::find(state_order.begin(), state_order.end(), l.to) ==
        state_order.end())
      throw ParseError("state '" + l.to + "' has no transitions");
  std::string alphabet(letters.begin(), letters.end());
  std::map<std::string, StateId> index;
  for (size_t i = 0; i < state_order.size(); ++i)
    index[state_order[i]] = static_cast<StateId>(i);
  std::vector<std::vector<Automaton::Arrow>> tau(
      state_order.size(), std::vector<Automaton::Arrow>(alphabet.size()));
  std::vector<std::vector<bool>> have(
      state_order.size(), std::vector<bool>(alphabet.size(), false));
  for (const auto& l : lines) {
    StateId s = index[l.from];
    int x = static_cast<int>(alphabet.find(l.in));
    if (have[s][x])
      throw ParseError("duplicate transition for (" + l.from + ", " + l.in +
                       ")");
    have[s][x] = true;
    tau[s][x] = {static_cast<int>(alphabet.find(l.out)), index[l.to]};
  }
  for (size_t s = 0; s < state_order.size(); ++s)
    for (size_t x = 0; x < alphabet.size(); ++x)
      if (!have[s][x])
        throw ParseError("missing transition for (" + state_order[s] + ", " +
                         alphabet[x] + ")");
  // The identity state, when present, is the one whose rows are all
  // (letter, itself).
  std::optional<StateId> identity;
  for (size_t s = 0; s < state_order.size(); ++s) {
    bool idrow = true;
    for (size_t x = 0; x < alphabet.size() && idrow; ++x)
      idrow = tau[s][x].out_letter == static_cast<int>(x) &&
              tau[s][x].next_state == static_cast<StateId>(s);
    if (idrow) {
      identity = static_cast<StateId>(s);
      break;
    }
  }
  return Automaton(state_order, alphabet, std::move(tau), identity);
}

std::string automaton_to_text(const Automaton& a) {
  std::ostringstream out;
  for (int s = 0; s < a.num_states(); ++s)
    for (int x = 0; x < a.alphabet_size(); ++x) {
      const auto& arrow = a.step(s, x);
      out << a.state_name(s) << ' ' << a.alphabet()[x] << " -> "
          << a.alphabet()[arrow.out_letter] << ' '
          << a.state_name(arrow.next_state) << '\n';
    }
  return out.str();
}

nlohmann::json automaton_to_json(const Automaton& a) {
  nlohmann::json j;
  j["schema"] = 1;
  j["states"] = a.state_names();
  std::vector<std::string> alpha;
  for (char ch : a.alphabet()) alpha.push_back(std::string(1, ch));
  j["alphabet"] = alpha;
  nlohmann::json trans = nlohmann::json::array();
  for (int s = 0; s < a.num_states(); ++s)
    for (int x = 0; x < a.alphabet_size(); ++x) {
      const auto& arrow = a.step(s, x);
      trans.push_back({{"from", a.state_name(s)},
                       {"in", std::string(1, a.alphabet()[x])},
                       {"out", std::string(1, a.alphabet()[arrow.out_letter])},
                       {"to", a.state_name(arrow.next_state)}});
    }
  j["transitions"] = trans;
  j["identity_state"] =
      a.identity_state() ? nlohmann::json(a.state_name(*a.identity_state()))
                         : nlohmann::json(nullptr);
  Classification c = classify(a);
  j["classification"] = {{"invertible", c.invertible},
                         {"reduced", c.reduced},
                         {"kneading", c.kneading},
                         {"pre_periodic", c.pre_periodic},
                         {"bad_isotropy", c.bad_isotropy},
                         {"active_states", c.active_states}};
  return j;
}

}  // namespace knead
