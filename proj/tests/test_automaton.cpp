#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "knead/automaton.hpp"
#include "knead/rational.hpp"
#include "knead/treeaction.hpp"

#include <nlohmann/json.hpp>

#include <set>

using namespace knead;

namespace {

// tau(from, in) == (out, to), all by name.
void check_arrow(const Automaton& a, const std::string& from, char in,
                 char out, const std::string& to) {
  auto s = a.state_by_name(from);
  REQUIRE(s);
  const auto& arrow = a.step(*s, a.letter_index(in));
  CHECK(a.alphabet()[arrow.out_letter] == out);
  CHECK(a.state_name(arrow.next_state) == to);
}

Automaton from_text_str(const std::string& s) { return automaton_from_text(s); }

// All realizable sequences with |uv| == n: u(v) needs u empty or
// u.back() != v.back().
std::vector<KneadingSequence> realizable_sequences(int n) {
  std::vector<KneadingSequence> out;
  for (int p = 0; p < n; ++p) {
    int q = n - p;
    for (int bits = 0; bits < (1 << n); ++bits) {
      std::string w;
      for (int i = 0; i < n; ++i) w += ((bits >> i) & 1) ? '1' : '0';
      KneadingSequence ks{w.substr(0, p), w.substr(p)};
      if (!ks.pre_period.empty() &&
          ks.pre_period.back() == ks.period.back())
        continue;
      out.push_back(ks);
    }
  }
  return out;
}

int count_cycles(const GammaGraph& g) {
  // Every vertex of a kneading automaton's graph has exactly one incoming
  // edge; walk predecessors and count distinct cycles.
  std::map<StateId, StateId> pred;
  for (const auto& e : g.edges) pred[e.to] = e.from;
  std::map<StateId, int> color;  // 0 unseen, 1 in progress+walk id, 2 done
  int cycles = 0;
  int walk = 0;
  for (StateId v : g.vertices) {
    if (color.count(v)) continue;
    ++walk;
    std::vector<StateId> path;
    StateId cur = v;
    while (pred.count(cur) && !color.count(cur)) {
      color[cur] = -walk;  // on current walk
      path.push_back(cur);
      cur = pred[cur];
    }
    if (pred.count(cur) && color[cur] == -walk) ++cycles;  // closed on itself
    for (StateId u : path) color[u] = 1;
  }
  return cycles;
}

}  // namespace

TEST_CASE("kneading sequence grammar") {
  KneadingSequence ks = parse_kneading_sequence("11(0)");
  CHECK(ks.pre_period == "11");
  CHECK(ks.period == "0");
  CHECK(ks.pre_periodic());

  ks = parse_kneading_sequence("(01)");
  CHECK(ks.pre_period == "");
  CHECK(ks.period == "01");
  CHECK(!ks.pre_periodic());

  CHECK_THROWS_AS(parse_kneading_sequence("1("), ParseError);
  CHECK_THROWS_AS(parse_kneading_sequence("1()"), ParseError);
  CHECK_THROWS_AS(parse_kneading_sequence("11"), ParseError);
  CHECK_THROWS_AS(parse_kneading_sequence("1(0)x"), ParseError);
  CHECK_THROWS_AS(parse_kneading_sequence("1(02)"), ParseError);
}

TEST_CASE("reconstruction of 11(0) matches the reference transition table") {
  Automaton a = automaton_from_kneading_sequence(parse_kneading_sequence("11(0)"));
  CHECK(a.state_names() == std::vector<std::string>{"a", "b", "t", "id"});
  check_arrow(a, "a", '0', '0', "id");
  check_arrow(a, "a", '1', '1', "t");
  check_arrow(a, "b", '0', '0', "b");
  check_arrow(a, "b", '1', '1', "a");
  check_arrow(a, "t", '0', '1', "id");
  check_arrow(a, "t", '1', '0', "id");
  check_arrow(a, "id", '0', '0', "id");
  check_arrow(a, "id", '1', '1', "id");
}

TEST_CASE("reconstruction of 0(011) and 01(10)") {
  Automaton a = automaton_from_kneading_sequence(parse_kneading_sequence("0(011)"));
  // a=(t,c), b=(a,1), c=(1,b), t = swap
  check_arrow(a, "a", '0', '0', "t");
  check_arrow(a, "a", '1', '1', "c");
  check_arrow(a, "b", '0', '0', "a");
  check_arrow(a, "b", '1', '1', "id");
  check_arrow(a, "c", '0', '0', "id");
  check_arrow(a, "c", '1', '1', "b");
  check_arrow(a, "t", '0', '1', "id");
  check_arrow(a, "t", '1', '0', "id");

  Automaton b = automaton_from_kneading_sequence(parse_kneading_sequence("01(10)"));
  // a=(t,1), b=(c,a), c=(1,b)
  check_arrow(b, "a", '0', '0', "t");
  check_arrow(b, "a", '1', '1', "id");
  check_arrow(b, "b", '0', '0', "c");
  check_arrow(b, "b", '1', '1', "a");
  check_arrow(b, "c", '0', '0', "id");
  check_arrow(b, "c", '1', '1', "b");
}

TEST_CASE("1(0^k) naming and wreath rows") {
  Automaton a = automaton_from_kneading_sequence(parse_kneading_sequence("1(0000)"));
  CHECK(a.state_names() ==
        std::vector<std::string>{"x0", "x1", "x2", "x3", "t", "id"});
  // x0 = (x3, t); xi = (x_{i-1}, 1)
  check_arrow(a, "x0", '0', '0', "x3");
  check_arrow(a, "x0", '1', '1', "t");
  check_arrow(a, "x1", '0', '0', "x0");
  check_arrow(a, "x1", '1', '1', "id");
  check_arrow(a, "x3", '0', '0', "x2");
}

TEST_CASE("kneading sequence read back") {
  for (const char* text : {"11(0)", "0(011)", "01(10)", "1(0000)", "(01)",
                           "(0)", "1(0)", "10(01)"}) {
    Automaton a = automaton_from_kneading_sequence(parse_kneading_sequence(text));
    CHECK(kneading_sequence_of(a).text() == text);
  }
}

TEST_CASE("unrealizable sequences are rejected") {
  CHECK_THROWS_AS(
      automaton_from_kneading_sequence(parse_kneading_sequence("1(1)")),
      DomainError);
  CHECK_THROWS_AS(
      automaton_from_kneading_sequence(parse_kneading_sequence("0(10)")),
      DomainError);
}

TEST_CASE("round-trip is the identity for all realizable sequences, |uv| <= 8") {
  for (int n = 1; n <= 8; ++n) {
    for (const KneadingSequence& ks : realizable_sequences(n)) {
      Automaton a = automaton_from_kneading_sequence(ks);
      CHECK(kneading_sequence_of(a) == ks);
      Classification c = classify(a);
      CHECK(c.kneading);
      CHECK(c.pre_periodic == ks.pre_periodic());
    }
  }
}

TEST_CASE("generated gamma graphs: one cycle, sticker ends at the active state") {
  for (int n = 1; n <= 6; ++n) {
    for (const KneadingSequence& ks : realizable_sequences(n)) {
      Automaton a = automaton_from_kneading_sequence(ks);
      GammaGraph g = gamma_graph(a);
      CHECK(g.edges.size() == g.vertices.size());
      CHECK(count_cycles(g) == 1);
      if (ks.pre_periodic()) {
        StateId t = *a.state_by_name("t");
        for (const auto& e : g.edges) CHECK(e.from != t);
      }
      // kneading implies in-degree exactly one on non-identity states
      std::map<StateId, int> indeg;
      for (const auto& e : g.edges) indeg[e.to]++;
      for (StateId v : g.vertices) CHECK(indeg[v] == 1);
    }
  }
}

TEST_CASE("classification of the named systems") {
  Classification c =
      classify(automaton_from_kneading_sequence(parse_kneading_sequence("11(0)")));
  CHECK(c.invertible);
  CHECK(c.reduced);
  CHECK(c.kneading);
  CHECK(c.pre_periodic);
  CHECK(!c.bad_isotropy);
  CHECK(c.active_states == std::vector<std::string>{"t"});

  c = classify(automaton_from_kneading_sequence(parse_kneading_sequence("1(00)")));
  CHECK(c.bad_isotropy);  // period 00 is a proper power

  c = classify(automaton_from_kneading_sequence(parse_kneading_sequence("0(011)")));
  CHECK(c.kneading);
  CHECK(!c.bad_isotropy);

  c = classify(automaton_from_kneading_sequence(parse_kneading_sequence("1(0000)")));
  CHECK(c.bad_isotropy);
}

TEST_CASE("reduction merges identity-behaving duplicates") {
  Automaton a = from_text_str(
      "p 0 -> 1 id1\n"
      "p 1 -> 0 id2\n"
      "id1 0 -> 0 id1\n"
      "id1 1 -> 1 id1\n"
      "id2 0 -> 0 id2\n"
      "id2 1 -> 1 id2\n");
  Automaton r = reduce_automaton(a);
  CHECK(r.num_states() == 2);
  CHECK(r.state_by_name("p"));
  CHECK(r.state_by_name("id1"));
  CHECK(!r.state_by_name("id2"));
  REQUIRE(r.identity_state());
  CHECK(r.state_name(*r.identity_state()) == "id1");

  // a state that routes everything into identity copies is itself trivial
  Automaton b = from_text_str(
      "p 0 -> 0 id1\n"
      "p 1 -> 1 id2\n"
      "id1 0 -> 0 id1\n"
      "id1 1 -> 1 id1\n"
      "id2 0 -> 0 id2\n"
      "id2 1 -> 1 id2\n");
  CHECK(reduce_automaton(b).num_states() == 1);
}

TEST_CASE("reduction fixes an already reduced automaton") {
  Automaton a = automaton_from_kneading_sequence(parse_kneading_sequence("11(0)"));
  Automaton r = reduce_automaton(a);
  CHECK(r.num_states() == a.num_states());
  CHECK(r.state_names() == a.state_names());
  CHECK(automaton_to_text(r) == automaton_to_text(a));
}

TEST_CASE("reduction merges a behavioral copy of b into b") {
  // 11(0) plus a self-referencing copy of state b.
  Automaton a = from_text_str(
      "a 0 -> 0 id\n"
      "a 1 -> 1 t\n"
      "b 0 -> 0 b\n"
      "b 1 -> 1 a\n"
      "t 0 -> 1 id\n"
      "t 1 -> 0 id\n"
      "id 0 -> 0 id\n"
      "id 1 -> 1 id\n"
      "b2 0 -> 0 b2\n"
      "b2 1 -> 1 a\n");
  Automaton r = reduce_automaton(a);
  CHECK(r.num_states() == 4);
  CHECK(!r.state_by_name("b2"));
  CHECK(r.state_by_name("b"));
}

TEST_CASE("reduction is idempotent and minimal") {
  for (const char* text : {"11(0)", "0(011)", "01(10)", "1(000)"}) {
    Automaton a = automaton_from_kneading_sequence(parse_kneading_sequence(text));
    Automaton r = reduce_automaton(a);
    Automaton rr = reduce_automaton(r);
    CHECK(automaton_to_text(rr) == automaton_to_text(r));
    // minimality oracle: depth-|A| portraits of distinct states differ
    std::set<std::string> keys;
    for (int s = 0; s < r.num_states(); ++s)
      keys.insert(portrait_key(r, GroupWord(std::vector<StateId>{s}),
                               r.num_states()));
    CHECK(static_cast<int>(keys.size()) == r.num_states());
    // and the map set is preserved
    std::set<std::string> original;
    for (int s = 0; s < a.num_states(); ++s)
      original.insert(portrait_key(a, GroupWord(std::vector<StateId>{s}),
                                   a.num_states()));
    CHECK(original == keys);
  }
}

TEST_CASE("planarity witnesses for the named systems") {
  Automaton a = automaton_from_kneading_sequence(parse_kneading_sequence("11(0)"));
  PlanarityResult p = is_planar(a);
  CHECK(p.planar);
  // the ordering a,b,t works: (abtabt)|0 = bta, (abtabt)|1 = tab
  GroupWord abt2 = a.word_from_string("abtabt");
  CHECK(a.word_to_string(restrict_word(a, abt2, "0")) == "bta");
  CHECK(a.word_to_string(restrict_word(a, abt2, "1")) == "tab");

  Automaton b = automaton_from_kneading_sequence(parse_kneading_sequence("0(011)"));
  PlanarityResult q = is_planar(b);
  CHECK(q.planar);
  GroupWord tacb2 = b.word_from_string("tacbtacb");
  CHECK(b.word_to_string(restrict_word(b, tacb2, "0")) == "cbta");
  CHECK(b.word_to_string(restrict_word(b, tacb2, "1")) == "tacb");
}

TEST_CASE("planarity of 01(10) agrees with a direct brute force") {
  Automaton a = automaton_from_kneading_sequence(parse_kneading_sequence("01(10)"));
  // independent oracle: raw tau rewriting, no library restrict
  auto raw_restrict = [&](const std::vector<StateId>& w, int x) {
    std::vector<StateId> out;
    int cur = x;
    for (size_t i = w.size(); i-- > 0;) {
      auto arrow = a.step(w[i], cur);
      cur = arrow.out_letter;
      if (arrow.next_state != *a.identity_state())
        out.insert(out.begin(), arrow.next_state);
    }
    return out;
  };
  std::vector<StateId> states = a.nontrivial_states();
  std::sort(states.begin(), states.end());
  bool oracle_planar = false;
  std::vector<StateId> perm = states;
  do {
    std::vector<StateId> doubled = perm;
    doubled.insert(doubled.end(), perm.begin(), perm.end());
    bool ok = true;
    for (int x = 0; x < 2 && ok; ++x) {
      std::vector<StateId> r = raw_restrict(doubled, x);
      bool rot = false;
      if (r.size() == perm.size()) {
        std::vector<StateId> two = perm;
        two.insert(two.end(), perm.begin(), perm.end());
        for (size_t s = 0; s < perm.size() && !rot; ++s)
          rot = std::equal(r.begin(), r.end(), two.begin() + s);
      }
      ok = rot;
    }
    if (ok) oracle_planar = true;
  } while (!oracle_planar && std::next_permutation(perm.begin(), perm.end()));

  PlanarityResult p = is_planar(a);
  CHECK(p.planar == oracle_planar);
}

TEST_CASE("text format round trip and errors") {
  Automaton a = automaton_from_kneading_sequence(parse_kneading_sequence("0(011)"));
  std::string text = automaton_to_text(a);
  Automaton b = automaton_from_text(text);

  // same rows (the parser orders states by first mention), and re-emitting
  // the parsed automaton is a fixpoint
  auto lines = [](const std::string& s) {
    std::multiset<std::string> out;
    size_t pos = 0;
    while (pos < s.size()) {
      size_t nl = s.find('\n', pos);
      out.insert(s.substr(pos, nl - pos));
      pos = nl + 1;
    }
    return out;
  };
  CHECK(lines(automaton_to_text(b)) == lines(text));
  CHECK(automaton_to_text(automaton_from_text(text)) == text);
  REQUIRE(b.identity_state());
  CHECK(b.state_name(*b.identity_state()) == "id");

  CHECK_THROWS_AS(automaton_from_text("a 0 -> 0\n"), ParseError);
  // partial: b is mentioned but has no rows of its own
  CHECK_THROWS_AS(automaton_from_text("a 0 -> 0 a\na 1 -> 1 b\n"), ParseError);
  // partial: a misses its letter-1 row
  CHECK_THROWS_AS(automaton_from_text("a 0 -> 0 a\nb 1 -> 1 b\nb 0 -> 0 b\n"),
                  ParseError);
  CHECK_THROWS_AS(automaton_from_text("# only a comment\n"), ParseError);
}

TEST_CASE("json export carries states, transitions and classification") {
  Automaton a = automaton_from_kneading_sequence(parse_kneading_sequence("11(0)"));
  nlohmann::json j = automaton_to_json(a);
  CHECK(j["schema"] == 1);
  CHECK(j["states"] == nlohmann::json({"a", "b", "t", "id"}));
  CHECK(j["identity_state"] == "id");
  CHECK(j["classification"]["kneading"] == true);
  CHECK(j["classification"]["bad_isotropy"] == false);
  CHECK(j["transitions"].size() == 8);
}

TEST_CASE("word parsing tokenizes by longest state name") {
  Automaton a = automaton_from_kneading_sequence(parse_kneading_sequence("1(000)"));
  GroupWord w = a.word_from_string("x0x2t");
  REQUIRE(w.size() == 3);
  CHECK(a.word_to_string(w) == "x0x2t");
  CHECK(a.word_from_string("1").empty());
  CHECK_THROWS_AS(a.word_from_string("x9"), ParseError);
  CHECK_THROWS_AS(a.word_from_string("x0id"), ParseError);
}
