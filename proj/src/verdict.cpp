#include "covchan/verdict.hpp"

#include <algorithm>
#include <set>

#include "covchan/automaton.hpp"
#include "covchan/halfduplex.hpp"
#include "covchan/infotheory.hpp"

namespace covchan {

namespace {

constexpr double kPositiveCapacity = 1e-9;

// Actions of the process's view that actually occur on reachable
// transitions; this is the message set conditions (ii) compare.
std::set<std::string> used_observable_actions(const TransitionSystem& ts, int process) {
  std::set<std::string> used;
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
  std::vector<int> observed = ts.actions_observed_by(process);
  std::set<int> visible(observed.begin(), observed.end());
  for (const auto& t : ts.transitions) {
    if (reach[t.src] && t.action != kTau && visible.count(t.action)) {
      used.insert(ts.actions[t.action]);
    }
  }
  return used;
}

void require_same_processes(const TransitionSystem& a, const TransitionSystem& b) {
  std::set<std::string> pa(a.processes.begin(), a.processes.end());
  std::set<std::string> pb(b.processes.begin(), b.processes.end());
  if (pa != pb) throw Error("baseline and variant do not share the process set");
}

ConditionResult third_party_equivalence(const TransitionSystem& baseline,
                                        const TransitionSystem& variant, int sender,
                                        int observer) {
  ConditionResult cond;
  for (size_t p = 0; p < baseline.processes.size(); ++p) {
    if (static_cast<int>(p) == sender || static_cast<int>(p) == observer) continue;
    const std::string& name = baseline.processes[p];
    int pv = require_process(variant, name);
    LangHandle lb = LangHandle::from_lts(project_to_process(baseline, static_cast<int>(p)));
    LangHandle lv = LangHandle::from_lts(project_to_process(variant, pv));
    if (auto word = LangHandle::distinguishing_word(lv, lb)) {
      cond.ok = false;
      cond.detail = "process '" + name + "' can distinguish the variant";
      cond.witness = std::move(word);
      return cond;
    }
  }
  return cond;
}

ConditionResult message_set_containment(const TransitionSystem& baseline,
                                        const TransitionSystem& variant, int sender,
                                        int observer) {
  ConditionResult cond;
  for (int side : {sender, observer}) {
    const std::string& name = baseline.processes[side];
    std::set<std::string> base = used_observable_actions(baseline, side);
    std::set<std::string> var =
        used_observable_actions(variant, require_process(variant, name));
    std::vector<std::string> extra;
    std::set_difference(var.begin(), var.end(), base.begin(), base.end(),
                        std::back_inserter(extra));
    if (!extra.empty()) {
      cond.ok = false;
      cond.detail = "view of '" + name + "' uses new messages:";
      for (const auto& a : extra) cond.detail += " " + a;
      return cond;
    }
  }
  return cond;
}

std::optional<ConditionResult> policy_check(const TransitionSystem& variant,
                                            const TransitionSystem* policy_model) {
  if (!policy_model) return std::nullopt;
  ConditionResult cond;
  LangHandle lv = LangHandle::from_lts(variant);
  LangHandle lp = LangHandle::from_lts(*policy_model);
  if (auto word = LangHandle::subset_witness(lv, lp)) {
    cond.ok = false;
    cond.detail = "variant behavior escapes the policy automaton";
    cond.witness = std::move(word);
  }
  return cond;
}

}  // namespace

std::optional<double> channel_capacity(const TransitionSystem& ts, int sender, int observer,
                                       std::vector<std::string>* notes) {
  HalfDuplexResult hd = check_half_duplex(ts, sender, observer);
  if (hd.witnesses.empty()) {
    if (notes) notes->push_back("no half-duplex witness");
    return std::nullopt;
  }
  std::optional<double> best;
  for (const auto& witness : hd.witnesses) {
    try {
      ExtractionResult extraction = extract_state_channel(ts, sender, observer, witness);
      double c = state_channel_capacity(extraction.channel).capacity;
      if (!best || c > *best) best = c;
    } catch (const Error& e) {
      if (notes) {
        notes->push_back("witness '" + ts.states[witness.control_state] +
                         "': " + e.what());
      }
    }
  }
  return best;
}

CovertVerdict verify_control_flow(const TransitionSystem& baseline,
                                  const TransitionSystem& variant, int sender, int observer,
                                  const TransitionSystem* policy_model) {
  require_same_processes(baseline, variant);
  if (!baseline.forbids(sender, observer)) {
    throw Error("the policy does not forbid communication from '" +
                baseline.processes[sender] + "' to '" + baseline.processes[observer] +
                "'; use the legitimate-channel check instead");
  }

  CovertVerdict verdict;
  verdict.kind = "control-flow";
  verdict.equivalence = third_party_equivalence(baseline, variant, sender, observer);
  verdict.alphabets = message_set_containment(baseline, variant, sender, observer);
  verdict.policy_containment = policy_check(variant, policy_model);

  int vs = require_process(variant, baseline.processes[sender]);
  int vo = require_process(variant, baseline.processes[observer]);
  std::optional<double> capacity = channel_capacity(variant, vs, vo, &verdict.notes);
  verdict.capacity_variant = capacity.value_or(0.0);

  bool capacity_ok = capacity && *capacity > kPositiveCapacity;
  verdict.holds = verdict.equivalence.ok && verdict.alphabets.ok && capacity_ok &&
                  (!verdict.policy_containment || verdict.policy_containment->ok);
  if (!verdict.equivalence.ok) {
    verdict.failing_condition = "i";
  } else if (!verdict.alphabets.ok) {
    verdict.failing_condition = "ii";
  } else if (verdict.policy_containment && !verdict.policy_containment->ok) {
    verdict.failing_condition = "policy";
  } else if (!capacity_ok) {
    verdict.failing_condition = "iii";
    if (!capacity) verdict.notes.push_back("variant is not half-duplex for the pair");
  }
  return verdict;
}

CovertVerdict verify_legitimate(const TransitionSystem& baseline,
                                const TransitionSystem& variant, int sender, int observer,
                                std::optional<double> baseline_capacity,
                                const TransitionSystem* policy_model) {
  require_same_processes(baseline, variant);
  if (baseline.forbids(sender, observer)) {
    throw Error("the policy forbids communication from '" + baseline.processes[sender] +
                "' to '" + baseline.processes[observer] +
                "'; use the control-flow check instead");
  }

  CovertVerdict verdict;
  verdict.kind = "legitimate";
  verdict.equivalence = third_party_equivalence(baseline, variant, sender, observer);
  verdict.alphabets = message_set_containment(baseline, variant, sender, observer);
  verdict.policy_containment = policy_check(variant, policy_model);

  if (!baseline_capacity) {
    baseline_capacity = channel_capacity(baseline, sender, observer, &verdict.notes);
    if (!baseline_capacity) {
      throw Error("baseline admits no half-duplex channel for the pair; "
                  "supply an explicit baseline capacity");
    }
  }
  verdict.capacity_baseline = baseline_capacity;

  int vs = require_process(variant, baseline.processes[sender]);
  int vo = require_process(variant, baseline.processes[observer]);
  std::optional<double> capacity = channel_capacity(variant, vs, vo, &verdict.notes);
  verdict.capacity_variant = capacity.value_or(0.0);

  bool gain = capacity && *capacity - *baseline_capacity > kPositiveCapacity;
  verdict.holds = verdict.equivalence.ok && verdict.alphabets.ok && gain &&
                  (!verdict.policy_containment || verdict.policy_containment->ok);
  if (!verdict.equivalence.ok) {
    verdict.failing_condition = "i";
  } else if (!verdict.alphabets.ok) {
    verdict.failing_condition = "ii";
  } else if (verdict.policy_containment && !verdict.policy_containment->ok) {
    verdict.failing_condition = "policy";
  } else if (!gain) {
    verdict.failing_condition = "capacity-difference";
  }
  return verdict;
}

std::vector<TransitionSystem> enumerate_variants(const TransitionSystem& baseline, int sender,
                                                 int observer, long long budget,
                                                 long long evaluation_cap) {
  if (budget < 1) throw Error("variant budget must be at least 1");

  // Edit universe: additions of missing pair-labeled transitions in
  // (source, action, target) order, then removals of existing ones.
  std::vector<int> pair_actions;
  for (size_t a = 0; a < baseline.actions.size(); ++a) {
    if (baseline.executor[a] == sender || baseline.executor[a] == observer) {
      pair_actions.push_back(static_cast<int>(a));
    }
  }
  std::set<std::tuple<int, int, int>> existing;
  for (const auto& t : baseline.transitions) existing.insert({t.src, t.action, t.dst});

  struct Edit {
    bool add;
    TransitionSystem::Transition transition;  // for additions
    int remove_index;                          // for removals
  };
  std::vector<Edit> universe;
  for (int src = 0; src < static_cast<int>(baseline.states.size()); ++src) {
    for (int a : pair_actions) {
      for (int dst = 0; dst < static_cast<int>(baseline.states.size()); ++dst) {
        if (!existing.count({src, a, dst})) {
          universe.push_back({true, {src, a, dst, std::nullopt}, -1});
        }
      }
    }
  }
  for (size_t i = 0; i < baseline.transitions.size(); ++i) {
    int a = baseline.transitions[i].action;
    if (a != kTau &&
        (baseline.executor[a] == sender || baseline.executor[a] == observer)) {
      universe.push_back({false, {}, static_cast<int>(i)});
    }
  }

  std::vector<TransitionSystem> found;
  long long evaluated = 0;
  const int n = static_cast<int>(universe.size());
  for (int k = 1; k <= n; ++k) {
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    while (true) {
      if (static_cast<long long>(found.size()) >= budget || evaluated >= evaluation_cap) {
        return found;
      }
      ++evaluated;

      TransitionSystem candidate = baseline;
      std::vector<int> removed;
      for (int i : pick) {
        if (universe[i].add) {
          candidate.transitions.push_back(universe[i].transition);
        } else {
          removed.push_back(universe[i].remove_index);
        }
      }
      if (!removed.empty()) {
        std::sort(removed.rbegin(), removed.rend());
        for (int idx : removed) {
          candidate.transitions.erase(candidate.transitions.begin() + idx);
        }
      }

      if (!has_errors(validate(candidate)) &&
          third_party_equivalence(baseline, candidate, sender, observer).ok) {
        found.push_back(std::move(candidate));
      }

      int i = k - 1;
      while (i >= 0 && pick[i] == n - k + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return found;
}

}  // namespace covchan
