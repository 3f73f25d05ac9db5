#ifndef KNEAD_VERIFY_HPP
#define KNEAD_VERIFY_HPP

#include "knead/automaton.hpp"
#include "knead/lengthfunc.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

namespace knead {

// One machine-checked claim. Every verdict comes from library operations;
// the case runners contain the claim data and no independent mathematics.
struct Claim {
  enum class Verdict { Pass, Fail, Inconclusive };
  std::string id;           // stable identifier, e.g. "110.table.bab"
  std::string description;
  Verdict verdict = Verdict::Fail;
  std::string witness;      // value, counterexample, or search bound
};

struct CaseReport {
  std::string case_id;
  std::vector<Claim> claims;

  bool passed() const;        // every claim passes
  bool inconclusive() const;  // no failure, but some claim hit a cap
};

struct CaseParams {
  int k = 2;                      // cyclic-family parameter
  uint64_t seed = 20110831;       // randomized weight sweeps
  int random_weight_trials = 50;
  long max_blocks = 20;           // bad-word scan range
  long survivor_blocks = 12;      // explicit survivor enumeration size
  uint64_t element_cap = kDefaultElementCap;
  uint64_t settle_cap = kDefaultSettleCap;
};

// Case ids: "10k", "110", "0011", "0110". Unknown ids throw DomainError.
CaseReport run_case(const std::string& id, const CaseParams& params = {});

nlohmann::json case_report_to_json(const CaseReport& report);
std::string case_report_table(const CaseReport& report);

// The good-word families of the two headline systems with their stated
// search depths, box slots fully enumerated.
struct GoodFamily {
  std::string name;
  int stated_depth;
  std::vector<GroupWord> words;
};
std::vector<GoodFamily> good_families_110(const Automaton& a);
std::vector<GoodFamily> good_families_0011(const Automaton& a);

}  // namespace knead

#endif
