#include "covchan/lts.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace covchan {

std::string join_word(const Word& w) {
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += '.';
    out += w[i];
  }
  return out;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.is_error(); });
}

namespace {

int index_of(const std::vector<std::string>& names, std::string_view name) {
  for (size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

int TransitionSystem::state_id(std::string_view name) const {
  return index_of(states, name);
}

int TransitionSystem::action_id(std::string_view name) const {
  return index_of(actions, name);
}

int TransitionSystem::process_id(std::string_view name) const {
  return index_of(processes, name);
}

std::string TransitionSystem::label_name(int action) const {
  return action == kTau ? std::string("tau") : actions[action];
}

std::vector<int> TransitionSystem::outgoing(int state) const {
  std::vector<int> out;
  for (size_t i = 0; i < transitions.size(); ++i) {
    if (transitions[i].src == state) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<std::vector<int>> TransitionSystem::adjacency() const {
  std::vector<std::vector<int>> adj(states.size());
  for (size_t i = 0; i < transitions.size(); ++i) {
    adj[transitions[i].src].push_back(static_cast<int>(i));
  }
  return adj;
}

Rational TransitionSystem::effective_prob(int transition) const {
  const Transition& t = transitions[transition];
  if (t.prob) return *t.prob;
  int degree = 0;
  for (const Transition& u : transitions) {
    if (u.src == t.src) ++degree;
  }
  return Rational(1, degree);
}

std::vector<int> TransitionSystem::actions_of_executor(int process) const {
  std::vector<int> out;
  for (size_t a = 0; a < actions.size(); ++a) {
    if (executor[a] == process) out.push_back(static_cast<int>(a));
  }
  return out;
}

std::vector<int> TransitionSystem::actions_observed_by(int process) const {
  std::vector<int> out;
  for (size_t a = 0; a < actions.size(); ++a) {
    const auto& obs = observers[a];
    if (std::find(obs.begin(), obs.end(), process) != obs.end()) {
      out.push_back(static_cast<int>(a));
    }
  }
  return out;
}

bool TransitionSystem::forbids(int from, int to) const {
  return std::find(forbidden.begin(), forbidden.end(),
                   std::make_pair(from, to)) != forbidden.end();
}

Word Path::word(const TransitionSystem& ts) const {
  Word w;
  for (int t : transitions) {
    int a = ts.transitions[t].action;
    if (a != kTau) w.push_back(ts.actions[a]);
  }
  return w;
}

Rational Path::probability(const TransitionSystem& ts) const {
  Rational p(1);
  for (int t : transitions) p *= ts.effective_prob(t);
  return p;
}

std::vector<Diagnostic> validate(const TransitionSystem& ts) {
  std::vector<Diagnostic> diags;
  auto error = [&](std::string msg) {
    diags.push_back({Diagnostic::Severity::Error, std::move(msg)});
  };
  auto warn = [&](std::string msg) {
    diags.push_back({Diagnostic::Severity::Warning, std::move(msg)});
  };

  auto check_unique = [&](const std::vector<std::string>& names, const char* kind) {
    std::set<std::string> seen;
    for (const auto& n : names) {
      if (!seen.insert(n).second) error(std::string("duplicate ") + kind + " '" + n + "'");
    }
  };
  check_unique(ts.states, "state");
  check_unique(ts.actions, "action");
  check_unique(ts.processes, "process");

  if (ts.states.empty()) {
    error("system has no states");
    return diags;
  }
  if (ts.initial < 0 || ts.initial >= static_cast<int>(ts.states.size())) {
    error("initial state is not a declared state");
    return diags;
  }
  if (ts.executor.size() != ts.actions.size() ||
      ts.observers.size() != ts.actions.size()) {
    error("executor/observer tables do not cover the action set");
    return diags;
  }
  for (size_t a = 0; a < ts.actions.size(); ++a) {
    if (ts.executor[a] < 0 || ts.executor[a] >= static_cast<int>(ts.processes.size())) {
      error("action '" + ts.actions[a] + "' has no valid executor");
      continue;
    }
    for (int p : ts.observers[a]) {
      if (p < 0 || p >= static_cast<int>(ts.processes.size())) {
        error("action '" + ts.actions[a] + "' has an unknown observer");
      }
    }
    if (std::find(ts.observers[a].begin(), ts.observers[a].end(), ts.executor[a]) ==
        ts.observers[a].end()) {
      warn("action '" + ts.actions[a] + "' is not observed by its executor '" +
           ts.processes[ts.executor[a]] + "'");
    }
  }

  std::set<std::tuple<int, int, int>> triples;
  for (const auto& t : ts.transitions) {
    if (t.src < 0 || t.src >= static_cast<int>(ts.states.size()) ||
        t.dst < 0 || t.dst >= static_cast<int>(ts.states.size())) {
      error("transition references an unknown state");
      return diags;
    }
    if (t.action != kTau &&
        (t.action < 0 || t.action >= static_cast<int>(ts.actions.size()))) {
      error("transition references an unknown action");
      return diags;
    }
    if (!triples.insert({t.src, t.action, t.dst}).second) {
      error("duplicate transition " + ts.states[t.src] + " " + ts.label_name(t.action) +
            " " + ts.states[t.dst]);
    }
    if (t.prob && (*t.prob < Rational(0) || *t.prob > Rational(1))) {
      error("transition probability " + format_rational_pretty(*t.prob) +
            " is outside [0,1]");
    }
  }

  // Per-state distribution check: if any outgoing transition carries an
  // explicit probability, all of them must, and they must sum to one.
  for (size_t q = 0; q < ts.states.size(); ++q) {
    std::vector<int> out = ts.outgoing(static_cast<int>(q));
    if (out.empty()) continue;
    int annotated = 0;
    Rational sum(0);
    for (int t : out) {
      if (ts.transitions[t].prob) {
        ++annotated;
        sum += *ts.transitions[t].prob;
      }
    }
    if (annotated == 0) continue;
    if (annotated != static_cast<int>(out.size())) {
      error("state '" + ts.states[q] +
            "': probability given for some but not all outgoing transitions");
      continue;
    }
    Rational gap = sum - Rational(1);
    if (gap < Rational(0)) gap = -gap;
    if (to_double(gap) > 1e-9) {
      error("state '" + ts.states[q] + "': outgoing probability distribution sums to " +
            format_rational_pretty(sum));
    }
  }
  return diags;
}

namespace {

void check_known_actions(const TransitionSystem& ts, const std::vector<int>& keep) {
  for (int a : keep) {
    if (a < 0 || a >= static_cast<int>(ts.actions.size())) {
      throw Error("unknown action id " + std::to_string(a));
    }
  }
}

}  // namespace

TransitionSystem project(const TransitionSystem& ts, const std::vector<int>& keep_actions) {
  check_known_actions(ts, keep_actions);
  std::set<int> keep(keep_actions.begin(), keep_actions.end());
  TransitionSystem out = ts;
  for (auto& t : out.transitions) {
    if (t.action != kTau && !keep.count(t.action)) t.action = kTau;
  }
  return out;
}

TransitionSystem project_to_process(const TransitionSystem& ts, int process) {
  return project(ts, ts.actions_observed_by(process));
}

TransitionSystem restrict(const TransitionSystem& ts, const std::vector<int>& keep_actions) {
  check_known_actions(ts, keep_actions);
  std::set<int> keep(keep_actions.begin(), keep_actions.end());

  // Unobservable transitions belong to no process, so they survive every
  // restriction; only labeled transitions outside `keep` are deleted.
  std::vector<TransitionSystem::Transition> kept;
  for (const auto& t : ts.transitions) {
    if (t.action == kTau || keep.count(t.action)) kept.push_back(t);
  }

  // Reachability over the surviving transitions.
  std::vector<bool> reach(ts.states.size(), false);
  std::vector<int> stack{ts.initial};
  reach[ts.initial] = true;
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    for (const auto& t : kept) {
      if (t.src == q && !reach[t.dst]) {
        reach[t.dst] = true;
        stack.push_back(t.dst);
      }
    }
  }

  TransitionSystem out;
  out.actions = ts.actions;
  out.processes = ts.processes;
  out.executor = ts.executor;
  out.observers = ts.observers;
  out.forbidden = ts.forbidden;
  std::vector<int> remap(ts.states.size(), -1);
  for (size_t q = 0; q < ts.states.size(); ++q) {
    if (reach[q]) {
      remap[q] = static_cast<int>(out.states.size());
      out.states.push_back(ts.states[q]);
    }
  }
  out.initial = remap[ts.initial];
  for (const auto& t : kept) {
    if (reach[t.src] && reach[t.dst]) {
      out.transitions.push_back({remap[t.src], t.action, remap[t.dst], t.prob});
    }
  }
  return out;
}

TransitionSystem restrict_drop_process(const TransitionSystem& ts, int process) {
  std::vector<int> keep;
  for (size_t a = 0; a < ts.actions.size(); ++a) {
    if (ts.executor[a] != process) keep.push_back(static_cast<int>(a));
  }
  return restrict(ts, keep);
}

Rational path_prob(const TransitionSystem& ts, const Path& path) {
  int at = -1;
  for (size_t i = 0; i < path.transitions.size(); ++i) {
    int idx = path.transitions[i];
    if (idx < 0 || idx >= static_cast<int>(ts.transitions.size())) {
      throw Error("path uses a transition absent from the model");
    }
    const auto& t = ts.transitions[idx];
    if (i > 0 && t.src != at) throw Error("path transitions do not chain");
    at = t.dst;
  }
  return path.probability(ts);
}

int require_state(const TransitionSystem& ts, std::string_view name) {
  int id = ts.state_id(name);
  if (id < 0) throw Error("unknown state '" + std::string(name) + "'");
  return id;
}

int require_action(const TransitionSystem& ts, std::string_view name) {
  int id = ts.action_id(name);
  if (id < 0) throw Error("unknown action '" + std::string(name) + "'");
  return id;
}

int require_process(const TransitionSystem& ts, std::string_view name) {
  int id = ts.process_id(name);
  if (id < 0) throw Error("unknown process '" + std::string(name) + "'");
  return id;
}

}  // namespace covchan
