#ifndef KNEAD_LENGTHFUNC_HPP
#define KNEAD_LENGTHFUNC_HPP

#include "knead/automaton.hpp"
#include "knead/rational.hpp"
#include "knead/treeaction.hpp"

#include <nlohmann/json_fwd.hpp>

#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

namespace knead {

inline constexpr uint64_t kDefaultElementCap = 200000;
inline constexpr uint64_t kDefaultSettleCap = 300000;

// Strictly positive weight per non-identity state.
class WeightAssignment {
 public:
  WeightAssignment(const Automaton& a, const std::map<std::string, Rat>& by_name);
  static WeightAssignment unit(const Automaton& a);

  const Rat& weight(StateId s) const;
  const std::map<std::string, Rat>& by_name() const { return by_name_; }

 private:
  std::map<std::string, Rat> by_name_;
  std::vector<std::optional<Rat>> by_state_;
};

// |w| = sum of letter weights.
Rat word_weight(const WeightAssignment& wts, const GroupWord& w);

// ell(w) = min |v| over words v equal to w in the group, computed by a
// lowest-weight-first search over group elements. When the step budget runs
// out first the result is an explicit bound, never a guess.
struct LengthResult {
  bool exact;
  Rat value;  // ell(w) when exact; otherwise ell(w) > value
};

class LengthOracle {
 public:
  // generator_order defaults to the nontrivial states in display order; any
  // permutation of them gives the same lengths.
  LengthOracle(const Automaton& a, const WeightAssignment& wts,
               uint64_t settle_cap = kDefaultSettleCap,
               std::vector<StateId> generator_order = {});

  LengthResult min_length(const GroupWord& w);
  Rat min_length_exact(const GroupWord& w);  // throws CapExceeded if inexact

  // Settles every element of weight <= bound; false when the budget ran out.
  bool explore(const Rat& bound);
  const std::vector<std::pair<ElementStore::ElementId, Rat>>& settled() const {
    return settled_order_;
  }
  ElementStore& store() { return store_; }

 private:
  const Automaton& a_;
  const WeightAssignment& wts_;
  ElementStore store_;
  std::vector<std::optional<Rat>> dist_;
  std::vector<std::pair<ElementStore::ElementId, Rat>> settled_order_;
  struct QueueItem {
    Rat dist;
    ElementStore::ElementId elem;
    bool operator>(const QueueItem& o) const {
      int c = cmp(dist, o.dist);
      return c != 0 ? c > 0 : elem > o.elem;
    }
  };
  std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>> pq_;
  std::vector<StateId> generators_;
  uint64_t settle_cap_;
  Rat settled_up_to_;
  bool exhausted_ = false;  // no more frontier: the whole group is settled
};

// Minimal-weight representatives for the finite subgroup H generated by the
// non-active states. Ties go to the shortlex-least word under a fixed order
// of the S states (by default their display order).
class Transversal {
 public:
  size_t size() const { return reps_.size(); }
  const std::vector<GroupWord>& reps() const { return reps_; }
  const std::vector<StateId>& s_order() const { return s_order_; }

  // Representative of an S-word's element. The block may be any S-word.
  const GroupWord& rep_for_block(const GroupWord& block) const;
  bool is_rep(const GroupWord& w) const;

 private:
  friend Transversal build_transversal(const Automaton&,
                                       const WeightAssignment&,
                                       std::vector<StateId>, uint64_t);
  std::vector<GroupWord> reps_;  // indexed by element id of store_
  std::vector<StateId> s_order_;
  std::shared_ptr<ElementStore> store_;
};

// Enumerates H = <S> lowest-(weight, length, lex)-first. Throws CapExceeded
// when H is not confirmed finite within element_cap.
Transversal build_transversal(const Automaton& a, const WeightAssignment& wts,
                              std::vector<StateId> lex_order = {},
                              uint64_t element_cap = kDefaultElementCap);

enum class ProductionMode { String, Reduced, Special };

struct Production {
  GroupWord left, right;
  bool trailing_t = false;
  ProductionMode mode = ProductionMode::String;
};

// First-line string production: replace each non-active letter by its pair
// of restrictions and collect active-state letters at the end through
// t(a,b) = (b,a)t, multiplying coordinatewise with no reduction.
Production string_production(const Automaton& a, const GroupWord& w);

// Blocks of the active state alternate with maximal S-blocks.
struct Block {
  bool is_t;
  size_t offset, length;
};
std::vector<Block> block_decomposition(const Automaton& a, const GroupWord& w);

// Everything the word calculus of one weighted kneading system needs:
// weights, the transversal, and a shared length oracle. All methods are
// deterministic; caches only memoize pure results.
class Calculus {
 public:
  Calculus(const Automaton& a, WeightAssignment wts,
           std::vector<StateId> lex_order = {},
           uint64_t element_cap = kDefaultElementCap,
           uint64_t settle_cap = kDefaultSettleCap);

  const Automaton& automaton() const { return a_; }
  const WeightAssignment& weights() const { return wts_; }
  const Transversal& transversal() const { return T_; }
  StateId active() const { return active_; }
  const Rat& C() const { return C_; }  // ell(t), computed

  Rat weight(const GroupWord& w) const { return word_weight(wts_, w); }
  LengthResult min_length(const GroupWord& w) { return oracle_.min_length(w); }
  Rat min_length_exact(const GroupWord& w) {
    return oracle_.min_length_exact(w);
  }

  // r(w): every maximal S-block replaced by its representative; blocks of
  // t's untouched.
  GroupWord weak_reduce(const GroupWord& w) const;
  bool is_weak_reduced(const GroupWord& w) const;

  Production string_prod(const GroupWord& w) const {
    return string_production(a_, w);
  }
  Production reduced_prod(const GroupWord& w) const;
  Production special_prod(const GroupWord& v) const;
  Production production(const GroupWord& w, ProductionMode mode) const;

  // |w|* : each t-block collapses to a single C.
  Rat star_length(const GroupWord& w) const;

  struct AdmissibilityResult {
    bool admissible = true;
    std::vector<GroupWord> violations;  // transversal words, scan order
  };
  // |t| + |w| >= |w0| + |w1| for every transversal word.
  AdmissibilityResult is_admissible();

  // v = w[offset, offset+len) must have the shape t w1 t w2 ... t wm with
  // non-empty transversal blocks, be followed by a t in w, and satisfy
  // ell(v0) + ell(v1) < |v|*. A candidate whose comparison cannot be settled
  // within the length budget counts as not reducing and bumps
  // budget_limited_checks(); confirmed verdicts are always exact.
  bool is_reducing(const GroupWord& w, size_t offset, size_t len);
  uint64_t budget_limited_checks() const { return budget_limited_; }

  // All protected subwords (begin and end with t, contain an S letter) as
  // (offset, length), offset-major order.
  std::vector<std::pair<size_t, size_t>> protected_subwords(
      const GroupWord& w) const;

  // what <= w in the production preorder: some protected subword of w
  // produces a coordinate containing what as a protected subword.
  bool precedes(const GroupWord& what, const GroupWord& w) const;

  struct GoodnessStep {
    size_t protected_offset = 0, protected_len = 0;
    int coordinate = 0;
    size_t next_offset = 0, next_len = 0;
  };
  struct GoodnessCertificate {
    GroupWord word;
    std::vector<GroupWord> chain;      // u_1 ... u_m; depth == chain.size()
    std::vector<GoodnessStep> steps;   // one per chain entry
    size_t reducing_offset = 0, reducing_len = 0;
    Rat c_u, sigma_u;
    int depth() const { return static_cast<int>(chain.size()); }
  };
  struct GoodnessCheck {
    bool valid = false;
    int failed_step = -1;  // chain step index; chain size => reducing part
    std::string reason;
  };
  GoodnessCheck verify_goodness(const GoodnessCertificate& cert);

  // Iterative-deepening search for a minimal-depth certificate; deterministic
  // (leftmost protected subword, coordinate 0 first). Empty result when no
  // certificate exists within max_depth.
  std::optional<GoodnessCertificate> search_goodness(const GroupWord& u,
                                                     int max_depth);

  // Largest fraction of w's length covered by occurrences of U-words that
  // overlap at most in blocks of t's, by weighted interval scheduling. The
  // denominator is |w| when assume_reduced (the classification use case
  // requires |w| = ell(w)), else ell(w).
  Rat epsilon_cover(const GroupWord& w, const std::vector<GroupWord>& U,
                    bool assume_reduced = true);

  nlohmann::json certificate_to_json(const GoodnessCertificate& cert) const;
  GoodnessCertificate certificate_from_json(const nlohmann::json& j) const;

 private:
  enum class Tri { Yes, No, Unknown };
  // Shape and inequality for a standalone candidate (the following-t check
  // lives in is_reducing).
  Tri reducing_core(const GroupWord& v);
  std::optional<std::pair<size_t, size_t>> scan_reducing(const GroupWord& w);
  struct Successor {
    GroupWord word;
    GoodnessStep step;
  };
  const std::vector<Successor>& successors(const GroupWord& w);
  std::optional<GoodnessCertificate> search_within(const GroupWord& u,
                                                   int budget);

  const Automaton& a_;
  WeightAssignment wts_;
  StateId active_;
  Transversal T_;
  LengthOracle oracle_;
  Rat C_;

  std::unordered_map<std::string, Tri> reducing_core_cache_;
  std::unordered_map<std::string, std::optional<std::pair<size_t, size_t>>>
      reducing_cache_;
  std::unordered_map<std::string, std::vector<Successor>> successor_cache_;
  std::unordered_map<std::string, int> none_below_;  // word -> depth bound
  std::unordered_map<std::string, GoodnessCertificate> found_;
  uint64_t budget_limited_ = 0;
};

}  // namespace knead

#endif
