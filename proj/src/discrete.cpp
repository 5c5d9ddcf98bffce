#include "covchan/discrete.hpp"

#include <algorithm>
#include <set>

namespace covchan {

LangHandle after_language(const TransitionSystem& ts, int state, int transition) {
  if (transition < 0 || transition >= static_cast<int>(ts.transitions.size()) ||
      ts.transitions[transition].src != state) {
    throw Error("transition is not outgoing from the given state");
  }
  const auto& t = ts.transitions[transition];
  LangHandle tail = LangHandle::from_lts(ts, t.dst);
  if (t.action == kTau) return tail;
  return tail.prefixed(ts.actions[t.action]);
}

LangHandle observable_consequences(const TransitionSystem& ts, int state, int transition,
                                   int observer) {
  std::vector<std::string> visible;
  for (int a : ts.actions_observed_by(observer)) visible.push_back(ts.actions[a]);
  return after_language(ts, state, transition).projected(visible).without_epsilon();
}

std::optional<std::pair<int, int>> is_encoding_state(const TransitionSystem& ts, int state,
                                                     int sender, int observer) {
  std::vector<int> candidates;
  for (int t : ts.outgoing(state)) {
    int a = ts.transitions[t].action;
    if (a != kTau && ts.executor[a] == sender) candidates.push_back(t);
  }
  if (candidates.size() < 2) return std::nullopt;

  std::vector<LangHandle> oc;
  std::vector<bool> nonempty;
  oc.reserve(candidates.size());
  for (int t : candidates) {
    oc.push_back(observable_consequences(ts, state, t, observer));
    nonempty.push_back(!oc.back().empty());
  }
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (!nonempty[i]) continue;
    for (size_t j = i + 1; j < candidates.size(); ++j) {
      if (!nonempty[j]) continue;
      if (LangHandle::intersect_empty(oc[i], oc[j])) {
        return std::make_pair(candidates[i], candidates[j]);
      }
    }
  }
  return std::nullopt;
}

namespace {

std::vector<bool> reachable_states(const TransitionSystem& ts) {
  std::vector<bool> reach(ts.states.size(), false);
  std::vector<int> stack{ts.initial};
  reach[ts.initial] = true;
  auto adj = ts.adjacency();
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    for (int t : adj[q]) {
      int dst = ts.transitions[t].dst;
      if (!reach[dst]) {
        reach[dst] = true;
        stack.push_back(dst);
      }
    }
  }
  return reach;
}

bool on_cycle(const TransitionSystem& ts, int state) {
  auto adj = ts.adjacency();
  std::vector<bool> seen(ts.states.size(), false);
  std::vector<int> stack;
  for (int t : adj[state]) {
    int dst = ts.transitions[t].dst;
    if (dst == state) return true;
    if (!seen[dst]) {
      seen[dst] = true;
      stack.push_back(dst);
    }
  }
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    for (int t : adj[q]) {
      int dst = ts.transitions[t].dst;
      if (dst == state) return true;
      if (!seen[dst]) {
        seen[dst] = true;
        stack.push_back(dst);
      }
    }
  }
  return false;
}

struct PhaseOne {
  bool positive = false;
  std::vector<int> encoding_states;
};

// Encoding states under the current transition set, positive when one of
// them recurs: reachable from the initial state and on a cycle.
PhaseOne phase_one(const TransitionSystem& ts, int sender, int observer) {
  PhaseOne result;
  std::vector<bool> reach = reachable_states(ts);
  for (size_t q = 0; q < ts.states.size(); ++q) {
    if (is_encoding_state(ts, static_cast<int>(q), sender, observer)) {
      result.encoding_states.push_back(static_cast<int>(q));
      if (reach[q] && on_cycle(ts, static_cast<int>(q))) result.positive = true;
    }
  }
  return result;
}

TransitionSystem drop_transitions(const TransitionSystem& ts, const std::vector<int>& removed) {
  TransitionSystem out = ts;
  out.transitions.clear();
  for (size_t i = 0; i < ts.transitions.size(); ++i) {
    if (!std::binary_search(removed.begin(), removed.end(), static_cast<int>(i))) {
      out.transitions.push_back(ts.transitions[i]);
    }
  }
  return out;
}

Strategy strategy_for(const TransitionSystem& ts, int process, const std::vector<int>& removed) {
  Strategy f;
  std::set<int> removed_states;
  for (int t : removed) {
    int a = ts.transitions[t].action;
    if (a != kTau && ts.executor[a] == process) removed_states.insert(ts.transitions[t].src);
  }
  for (int q : removed_states) {
    std::vector<int> allowed;
    for (int t : ts.outgoing(q)) {
      int a = ts.transitions[t].action;
      if (a != kTau && ts.executor[a] == process &&
          !std::binary_search(removed.begin(), removed.end(), t)) {
        allowed.push_back(t);
      }
    }
    f.allowed[q] = std::move(allowed);
  }
  return f;
}

}  // namespace

DiscreteChannelVerdict detect_discrete_channel(const TransitionSystem& ts, int sender,
                                               int observer, long long budget) {
  if (sender == observer) throw Error("discrete-channel detection requires distinct processes");
  if (budget <= 0) throw Error("strategy enumeration budget must be positive");

  DiscreteChannelVerdict verdict;
  verdict.restricted = ts;

  PhaseOne base = phase_one(ts, sender, observer);
  verdict.encoding_states = base.encoding_states;
  if (base.positive) {
    verdict.found = true;
    return verdict;
  }

  // Only transitions the colluding pair executes can be refused by their
  // strategies; everything else belongs to the environment.
  std::vector<int> removable;
  for (size_t i = 0; i < ts.transitions.size(); ++i) {
    int a = ts.transitions[i].action;
    if (a != kTau && (ts.executor[a] == sender || ts.executor[a] == observer)) {
      removable.push_back(static_cast<int>(i));
    }
  }

  const int n = static_cast<int>(removable.size());
  for (int k = 1; k <= n; ++k) {
    // Lexicographic combinations of k removals.
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    while (true) {
      if (verdict.pairs_evaluated >= budget) {
        verdict.exhaustiveness = Exhaustiveness::BudgetExhausted;
        return verdict;
      }
      ++verdict.pairs_evaluated;

      std::vector<int> removed;
      removed.reserve(k);
      for (int i : pick) removed.push_back(removable[i]);
      TransitionSystem restricted = drop_transitions(ts, removed);
      PhaseOne attempt = phase_one(restricted, sender, observer);
      if (attempt.positive) {
        verdict.found = true;
        verdict.encoding_states = attempt.encoding_states;
        verdict.f_sender = strategy_for(ts, sender, removed);
        verdict.f_observer = strategy_for(ts, observer, removed);
        verdict.restricted = std::move(restricted);
        return verdict;
      }

      int i = k - 1;
      while (i >= 0 && pick[i] == n - k + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return verdict;
}

}  // namespace covchan
