#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "covchan/automaton.hpp"
#include "covchan/lts.hpp"

namespace covchan {

// Positional strategy: per-state subset of the outgoing transitions a
// user allows. States absent from the map are unconstrained.
struct Strategy {
  std::map<int, std::vector<int>> allowed;  // state -> transition indices
};

// Language of the system from q after taking its outgoing transition t:
// the label of t concatenated with everything reachable from t's target.
LangHandle after_language(const TransitionSystem& ts, int state, int transition);

// Observable consequences of t for the given observer: the projection of
// the after-language onto the observer's alphabet, with the empty word
// dropped. Encoding requires these to be nonempty and pairwise disjoint.
LangHandle observable_consequences(const TransitionSystem& ts, int state, int transition,
                                   int observer);

// A pair of transitions executed by `sender` from `state` whose
// observable consequence sets for `observer` are nonempty and disjoint.
std::optional<std::pair<int, int>> is_encoding_state(const TransitionSystem& ts, int state,
                                                     int sender, int observer);

enum class Exhaustiveness { Full, BudgetExhausted };

struct DiscreteChannelVerdict {
  bool found = false;
  // Encoding states of the restricted system. Restriction only drops
  // transitions, so these are state indices of the input system.
  std::vector<int> encoding_states;
  Strategy f_sender;
  Strategy f_observer;
  Exhaustiveness exhaustiveness = Exhaustiveness::Full;
  long long pairs_evaluated = 0;
  // The system the verdict refers to (the input restricted by the two
  // strategies); equal to the input when the strategies are allow-all.
  TransitionSystem restricted;
};

// Phase 1 tests the allow-all strategies: the verdict is positive when
// some encoding state lies on a cycle reachable from the initial state.
// Phase 2 enumerates strategy pairs over the transitions the two users
// execute, fewest removals first, re-testing each restricted system,
// until `budget` pairs have been evaluated.
DiscreteChannelVerdict detect_discrete_channel(const TransitionSystem& ts, int sender,
                                               int observer, long long budget = 10000);

}  // namespace covchan
