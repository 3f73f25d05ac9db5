#ifndef KNEAD_AUTOMATON_HPP
#define KNEAD_AUTOMATON_HPP

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace knead {

using StateId = int;

// A word in the free monoid over the non-identity states of an automaton.
// Letters are state ids; the empty word is the unit of all rewriting.
struct GroupWord {
  std::vector<StateId> letters;

  GroupWord() = default;
  explicit GroupWord(std::vector<StateId> ls) : letters(std::move(ls)) {}

  bool empty() const { return letters.empty(); }
  size_t size() const { return letters.size(); }
  StateId operator[](size_t i) const { return letters[i]; }
  auto operator<=>(const GroupWord&) const = default;

  GroupWord operator+(const GroupWord& o) const {
    GroupWord r = *this;
    r.letters.insert(r.letters.end(), o.letters.begin(), o.letters.end());
    return r;
  }
  void push_back(StateId s) { letters.push_back(s); }
  GroupWord subword(size_t pos, size_t len) const {
    return GroupWord(std::vector<StateId>(letters.begin() + pos,
                                          letters.begin() + pos + len));
  }
};

// A vertex of the rooted tree X*: a finite string over the alphabet.
using TreeWord = std::string;

// Finite invertible-or-not automaton over an ordered alphabet of characters.
// tau(state, letter) = (letter, state). Immutable once built; all operations
// on it are pure functions.
class Automaton {
 public:
  struct Arrow {
    int out_letter;      // index into alphabet
    StateId next_state;
  };

  // states: display order; transitions indexed [state][letter].
  Automaton(std::vector<std::string> state_names, std::string alphabet,
            std::vector<std::vector<Arrow>> tau,
            std::optional<StateId> identity_state);

  int num_states() const { return static_cast<int>(names_.size()); }
  int alphabet_size() const { return static_cast<int>(alphabet_.size()); }
  const std::string& alphabet() const { return alphabet_; }
  const std::string& state_name(StateId s) const { return names_[s]; }
  const std::vector<std::string>& state_names() const { return names_; }
  std::optional<StateId> identity_state() const { return identity_; }

  const Arrow& step(StateId s, int letter) const { return tau_[s][letter]; }

  std::optional<StateId> state_by_name(const std::string& name) const;
  int letter_index(char c) const;  // -1 if not in alphabet

  bool is_active(StateId s) const;
  bool is_invertible() const;

  // Every state except the identity, in display order.
  std::vector<StateId> nontrivial_states() const;

  // Parses a group word written as concatenated state names, longest state
  // name first ("x0x1t" over states {t,x0,x1}). Identity-state names are
  // rejected: group words never contain the identity.
  GroupWord word_from_string(const std::string& text) const;
  std::string word_to_string(const GroupWord& w) const;
  // Display form: empty word prints as "1".
  std::string word_display(const GroupWord& w) const;

  TreeWord tree_word_from_string(const std::string& text) const;

 private:
  std::vector<std::string> names_;
  std::string alphabet_;
  std::vector<std::vector<Arrow>> tau_;
  std::optional<StateId> identity_;
};

// Kneading sequence u(v)^w: pre-period u (possibly empty) and period v.
struct KneadingSequence {
  std::string pre_period;
  std::string period;

  bool pre_periodic() const { return !pre_period.empty(); }
  std::string text() const { return pre_period + "(" + period + ")"; }
  auto operator<=>(const KneadingSequence&) const = default;
};

struct Classification {
  bool invertible = false;
  bool reduced = false;
  bool kneading = false;
  bool pre_periodic = false;
  bool bad_isotropy = false;
  std::vector<std::string> active_states;
};

// The Moore diagram with the identity state and all arrows into it removed.
struct GammaGraph {
  struct Edge {
    StateId from;
    StateId to;
    int in_letter;
    int out_letter;
  };
  std::vector<StateId> vertices;  // non-identity states
  std::vector<Edge> edges;
};

// Grammar: [01]* "(" [01]+ ")". Errors name the offending position.
KneadingSequence parse_kneading_sequence(const std::string& text);

// The unique kneading automaton whose kneading sequence is ks. States are
// named after the backward trace from the active state t: x0,x1,... for
// sequences 1(0^k), a,b,c,... otherwise. Every arrow not on the trace goes
// to the identity state "id" with matching in/out letter.
Automaton automaton_from_kneading_sequence(const KneadingSequence& ks);

// Inverse of the reconstruction on its image; diagonal labels abbreviated by
// their letter, and the active state's arrow (periodic case only) by its
// input letter. Throws DomainError when a is not a kneading automaton.
KneadingSequence kneading_sequence_of(const Automaton& a);

// Partition refinement (Moore/Hopcroft-style): merges states inducing equal
// tree maps. Output induces the same set of maps; requires invertibility.
Automaton reduce_automaton(const Automaton& a);

Classification classify(const Automaton& a);

GammaGraph gamma_graph(const Automaton& a);

// Planarity of a kneading automaton over {0,1}: brute force over all
// orderings of the nontrivial states (at most 8), looking for a1..am with
// ((a1..am)^2)|x a cyclic shift of a1..am for both letters. Restrictions are
// computed as strings over the non-identity states, without group reduction.
struct PlanarityResult {
  bool planar = false;
  std::vector<StateId> witness;  // ordering, empty when not planar
};
PlanarityResult is_planar(const Automaton& a);

// Text fixture format: one `state letter -> letter state` line per
// transition, '#' comments. The identity state is recognised by its rows.
Automaton automaton_from_text(const std::string& text);
std::string automaton_to_text(const Automaton& a);

nlohmann::json automaton_to_json(const Automaton& a);

}  // namespace knead

#endif
