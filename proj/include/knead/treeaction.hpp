#ifndef KNEAD_TREEACTION_HPP
#define KNEAD_TREEACTION_HPP

#include "knead/automaton.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace knead {

// Default exploration caps; every search that can in principle diverge takes
// one of these and fails loudly instead of guessing. KNEAD_CAP_STEPS (see
// cli) scales them globally.
inline constexpr uint64_t kDefaultBisimCap = 1u << 22;

// One rewriting step: pushes the group word through a single tree letter.
// Returns the output letter and the restriction w|x as a string over the
// non-identity states.
struct PushResult {
  int out_letter;
  GroupWord restriction;
};
PushResult push_letter(const Automaton& a, const GroupWord& w, int letter);

// Left action on the tree; the rightmost letter of w acts first.
TreeWord apply(const Automaton& a, const GroupWord& w, const TreeWord& s);

// Iterated restriction w|s, a string over the non-identity states with no
// group reduction applied. restrict_word(a, w, "") == w.
GroupWord restrict_word(const Automaton& a, const GroupWord& w,
                        const TreeWord& s);

// g = (g|0, ..., g|n-1) with a root permutation.
struct WreathDecomposition {
  std::vector<GroupWord> children;  // indexed by letter
  std::vector<int> root_perm;       // root_perm[x] = image of letter x
};
WreathDecomposition wreath_decompose(const Automaton& a, const GroupWord& w);

std::vector<int> root_permutation(const Automaton& a, const GroupWord& w);

// Word problem: do w1 and w2 induce the same map on the tree? Decided by
// bisimulation over restriction pairs; revisited pairs count as equal (tree
// automorphism equality is exactly bisimilarity). Throws CapExceeded when
// the pair space exceeds the cap.
bool elements_equal(const Automaton& a, const GroupWord& w1,
                    const GroupWord& w2, uint64_t pair_cap = kDefaultBisimCap);

// Does w fix every tree word of length <= n?
bool in_level_stabilizer(const Automaton& a, const GroupWord& w, int n);

// Action of an element truncated to a fixed depth. Fully determined by the
// induced action on tree words of length <= depth.
struct Portrait {
  int depth = 0;
  std::vector<int> root_perm;
  std::vector<Portrait> children;  // empty at depth 0

  bool trivial() const;
  bool operator==(const Portrait&) const = default;
};
Portrait portrait_of(const Automaton& a, const GroupWord& w, int depth);

// Breadth-first serialization of the depth-d portrait; equal keys iff equal
// portraits.
std::string portrait_key(const Automaton& a, const GroupWord& w, int depth);

// Identifies group elements behind canonical integer ids. Keys are
// adaptive-depth portraits; equality is always confirmed by bisimulation, so
// the key depth affects speed only.
class ElementStore {
 public:
  using ElementId = int;

  explicit ElementStore(const Automaton& a, int key_depth = 6,
                        uint64_t bisim_cap = kDefaultBisimCap);

  // Id of w's element; inserts a new element with representative w when no
  // known element equals w.
  ElementId intern(const GroupWord& w);

  const GroupWord& representative(ElementId e) const { return reps_[e]; }
  size_t size() const { return reps_.size(); }
  ElementId identity_id() const { return 0; }
  const Automaton& automaton() const { return a_; }

 private:
  void rebuild_buckets(int new_depth);

  const Automaton& a_;
  int key_depth_;
  uint64_t bisim_cap_;
  std::unordered_map<std::string, std::vector<ElementId>> buckets_;
  std::vector<GroupWord> reps_;
};

}  // namespace knead

#endif
