#include "knead/treeaction.hpp"

#include "knead/rational.hpp"

#include <algorithm>
#include <unordered_set>

namespace knead {

PushResult push_letter(const Automaton& a, const GroupWord& w, int letter) {
  if (letter < 0 || letter >= a.alphabet_size())
    throw DomainError("tree letter out of range");
  auto id = a.identity_state();
  std::vector<StateId> restr;
  restr.reserve(w.size());
  int cur = letter;
  for (size_t i = w.size(); i-- > 0;) {
    const auto& arrow = a.step(w[i], cur);
    cur = arrow.out_letter;
    if (!id || arrow.next_state != *id) restr.push_back(arrow.next_state);
  }
  std::reverse(restr.begin(), restr.end());
  return {cur, GroupWord(std::move(restr))};
}

TreeWord apply(const Automaton& a, const GroupWord& w, const TreeWord& s) {
  TreeWord out;
  out.reserve(s.size());
  GroupWord cur = w;
  for (char c : s) {
    int x = a.letter_index(c);
    if (x < 0)
      throw DomainError("tree word letter '" + std::string(1, c) +
                        "' outside the alphabet");
    PushResult r = push_letter(a, cur, x);
    out += a.alphabet()[r.out_letter];
    cur = std::move(r.restriction);
  }
  return out;
}

GroupWord restrict_word(const Automaton& a, const GroupWord& w,
                        const TreeWord& s) {
  GroupWord cur = w;
  for (char c : s) {
    int x = a.letter_index(c);
    if (x < 0)
      throw DomainError("position letter '" + std::string(1, c) +
                        "' outside the alphabet");
    cur = push_letter(a, cur, x).restriction;
  }
  return cur;
}

WreathDecomposition wreath_decompose(const Automaton& a, const GroupWord& w) {
  WreathDecomposition d;
  d.children.resize(a.alphabet_size());
  d.root_perm.resize(a.alphabet_size());
  for (int x = 0; x < a.alphabet_size(); ++x) {
    PushResult r = push_letter(a, w, x);
    d.root_perm[x] = r.out_letter;
    d.children[x] = std::move(r.restriction);
  }
  return d;
}

std::vector<int> root_permutation(const Automaton& a, const GroupWord& w) {
  std::vector<int> perm(a.alphabet_size());
  for (int x = 0; x < a.alphabet_size(); ++x) {
    int cur = x;
    for (size_t i = w.size(); i-- > 0;) cur = a.step(w[i], cur).out_letter;
    perm[x] = cur;
  }
  return perm;
}

namespace {

std::string pair_key(const GroupWord& u, const GroupWord& v) {
  std::string k;
  k.reserve(u.size() + v.size() + 1);
  for (StateId s : u.letters) k += static_cast<char>(s + 1);
  k += '\0';
  for (StateId s : v.letters) k += static_cast<char>(s + 1);
  return k;
}

}  // namespace

bool elements_equal(const Automaton& a, const GroupWord& w1,
                    const GroupWord& w2, uint64_t pair_cap) {
  if (w1 == w2) return true;
  std::unordered_set<std::string> seen;
  std::vector<std::pair<GroupWord, GroupWord>> stack;
  stack.emplace_back(w1, w2);
  seen.insert(pair_key(w1, w2));
  while (!stack.empty()) {
    auto [u, v] = std::move(stack.back());
    stack.pop_back();
    if (root_permutation(a, u) != root_permutation(a, v)) return false;
    for (int x = 0; x < a.alphabet_size(); ++x) {
      GroupWord ru = push_letter(a, u, x).restriction;
      GroupWord rv = push_letter(a, v, x).restriction;
      if (ru == rv) continue;
      std::string key = pair_key(ru, rv);
      if (seen.insert(std::move(key)).second) {
        if (seen.size() > pair_cap)
          throw CapExceeded("bisimulation pair cap exceeded");
        stack.emplace_back(std::move(ru), std::move(rv));
      }
    }
  }
  return true;
}

bool in_level_stabilizer(const Automaton& a, const GroupWord& w, int n) {
  if (n < 0) throw DomainError("level must be non-negative");
  if (n == 0) return true;
  for (int x = 0; x < a.alphabet_size(); ++x) {
    PushResult r = push_letter(a, w, x);
    if (r.out_letter != x) return false;
    if (!in_level_stabilizer(a, r.restriction, n - 1)) return false;
  }
  return true;
}

bool Portrait::trivial() const {
  for (size_t x = 0; x < root_perm.size(); ++x)
    if (root_perm[x] != static_cast<int>(x)) return false;
  for (const Portrait& c : children)
    if (!c.trivial()) return false;
  return true;
}

Portrait portrait_of(const Automaton& a, const GroupWord& w, int depth) {
  // A depth-d portrait pins the action on tree words of length <= d, so the
  // depth-0 portrait carries nothing.
  Portrait p;
  p.depth = depth;
  if (depth == 0) return p;
  p.root_perm = root_permutation(a, w);
  p.children.reserve(a.alphabet_size());
  for (int x = 0; x < a.alphabet_size(); ++x)
    p.children.push_back(
        portrait_of(a, push_letter(a, w, x).restriction, depth - 1));
  return p;
}

std::string portrait_key(const Automaton& a, const GroupWord& w, int depth) {
  std::string key;
  std::vector<GroupWord> level{w};
  for (int d = 0; d < depth; ++d) {
    std::vector<GroupWord> next;
    for (const GroupWord& u : level) {
      for (int x = 0; x < a.alphabet_size(); ++x) {
        PushResult r = push_letter(a, u, x);
        key += static_cast<char>(r.out_letter);
        if (d + 1 < depth) next.push_back(std::move(r.restriction));
      }
    }
    level = std::move(next);
  }
  return key;
}

ElementStore::ElementStore(const Automaton& a, int key_depth,
                           uint64_t bisim_cap)
    : a_(a), key_depth_(key_depth), bisim_cap_(bisim_cap) {
  intern(GroupWord{});
}

ElementStore::ElementId ElementStore::intern(const GroupWord& w) {
  std::string key = portrait_key(a_, w, key_depth_);
  auto& bucket = buckets_[key];
  for (ElementId e : bucket)
    if (elements_equal(a_, w, reps_[e], bisim_cap_)) return e;
  ElementId e = static_cast<ElementId>(reps_.size());
  reps_.push_back(w);
  bucket.push_back(e);
  // Crowded buckets mean the key depth no longer separates elements; double
  // it and rehash. Correctness never depends on the depth.
  if (bucket.size() > 8 && key_depth_ < 64) rebuild_buckets(key_depth_ * 2);
  return e;
}

void ElementStore::rebuild_buckets(int new_depth) {
  key_depth_ = new_depth;
  buckets_.clear();
  for (size_t e = 0; e < reps_.size(); ++e)
    buckets_[portrait_key(a_, reps_[e], key_depth_)].push_back(
        static_cast<ElementId>(e));
}

}  // namespace knead
