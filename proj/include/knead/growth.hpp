#ifndef KNEAD_GROWTH_HPP
#define KNEAD_GROWTH_HPP

#include "knead/automaton.hpp"
#include "knead/lengthfunc.hpp"
#include "knead/rational.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <vector>

namespace knead {

// Ball sizes of the group: counts of distinct elements, not words.
struct GrowthTable {
  struct Row {
    long radius;
    uint64_t sphere;  // elements with radius-1 < ell <= radius
    uint64_t ball;    // elements with ell <= radius
  };
  std::vector<Row> rows;
  bool complete = true;  // false when the step budget truncated the search
};

// Lowest-weight-first expansion over group elements, dedup by canonical
// keys with exact equality confirmation. A custom generator order must give
// identical counts; tests rely on that.
GrowthTable enumerate_ball(const Automaton& a, const WeightAssignment& wts,
                           long radius,
                           uint64_t settle_cap = kDefaultSettleCap,
                           std::vector<StateId> generator_order = {});

std::string growth_table_csv(const GrowthTable& t);

// Words of the normal form (w0) t w1 t ... t wm t (w_{m+1}) with blocks from
// T - {1} that avoid every word of U as a subword.
struct BadWordReport {
  long max_blocks = 0;
  std::vector<uint64_t> internal_counts;  // index m (1-based; [0] unused)
  std::vector<uint64_t> affixed_counts;
  uint64_t max_internal = 0;
  uint64_t max_affixed = 0;
};

BadWordReport count_bad_words(const Automaton& a,
                              const std::vector<GroupWord>& U,
                              const Transversal& T, long max_blocks);

// The surviving block sequences themselves, for small m. Throws CapExceeded
// when more than `limit` survive.
std::vector<std::vector<GroupWord>> bad_word_survivors(
    const Automaton& a, const std::vector<GroupWord>& U, const Transversal& T,
    long blocks, size_t limit = 100000);

nlohmann::json bad_word_report_to_json(const BadWordReport& r);

// C(r+1, floor(eps r)+1) * M^(1+floor(eps r)) * |U|^floor(eps r), exactly.
Int eval_bad_bound(long r, const Rat& eps, const Int& M, const Int& U_size);

struct BadBoundChain {
  std::vector<Int> terms;  // per radius r = 0..n
  Int total;               // their sum: the counting bound before asymptotics
};
BadBoundChain eval_bad_bound_chain(long n, const Rat& eps, const Int& M,
                                   const Int& U_size);

}  // namespace knead

#endif
