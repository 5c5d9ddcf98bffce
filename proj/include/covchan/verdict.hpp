#pragma once

#include <optional>
#include <string>
#include <vector>

#include "covchan/lts.hpp"

namespace covchan {

struct ConditionResult {
  bool ok = true;
  std::string detail;
  std::optional<Word> witness;
};

struct CovertVerdict {
  std::string kind;  // "control-flow" or "legitimate"
  bool holds = false;
  ConditionResult equivalence;  // (i) third parties cannot tell S' from S
  ConditionResult alphabets;    // (ii) u/v message sets not enlarged
  std::optional<ConditionResult> policy_containment;  // L(S') within L(S_sec)
  double capacity_variant = 0;
  std::optional<double> capacity_baseline;
  std::string failing_condition;  // "", "i", "ii", "iii", "policy", "capacity-difference"
  std::vector<std::string> notes;
};

// Best capacity of the half-duplex channels from sender to observer, over
// all witnesses whose extraction succeeds. nullopt when the system is not
// half-duplex (or no witness extracts); diagnostics go to `notes`.
std::optional<double> channel_capacity(const TransitionSystem& ts, int sender, int observer,
                                       std::vector<std::string>* notes = nullptr);

// The baseline's policy must forbid sender -> observer communication.
// Holds when third parties cannot distinguish the variant, the pair's
// message sets are unchanged, and the variant is half-duplex with
// positive capacity.
CovertVerdict verify_control_flow(const TransitionSystem& baseline,
                                  const TransitionSystem& variant, int sender, int observer,
                                  const TransitionSystem* policy_model = nullptr);

// For pairs allowed to communicate: holds when the variant strictly
// increases the channel capacity. The baseline capacity is computed from
// its own half-duplex structure; pass `baseline_capacity` when the
// baseline has none.
CovertVerdict verify_legitimate(const TransitionSystem& baseline,
                                const TransitionSystem& variant, int sender, int observer,
                                std::optional<double> baseline_capacity = std::nullopt,
                                const TransitionSystem* policy_model = nullptr);

// Candidate corrupted variants: the baseline with up to a few transitions
// added or removed, using only actions the pair executes, over the same
// state set. Candidates must validate and already satisfy condition (i).
// Deterministic order (fewest edits first); at most `budget` results.
std::vector<TransitionSystem> enumerate_variants(const TransitionSystem& baseline, int sender,
                                                 int observer, long long budget,
                                                 long long evaluation_cap = 200000);

}  // namespace covchan
