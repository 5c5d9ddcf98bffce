#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "covchan/rational.hpp"

namespace covchan {

// Reserved index for the unobservable action. It never appears in the
// action table; projections introduce it.
inline constexpr int kTau = -1;

using Word = std::vector<std::string>;

std::string join_word(const Word& w);  // "a.d.e"; "" for the empty word

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity;
  std::string message;

  bool is_error() const { return severity == Severity::Error; }
};

bool has_errors(const std::vector<Diagnostic>& diags);

// A finite probabilistic labeled transition system over a set of
// processes. Each action has exactly one executor and a set of observers.
// Probabilities are optional per transition; states where they are absent
// use a uniform distribution over their outgoing transitions.
struct TransitionSystem {
  std::vector<std::string> states;
  int initial = 0;
  std::vector<std::string> actions;    // tau excluded
  std::vector<std::string> processes;

  struct Transition {
    int src = 0;
    int action = kTau;  // index into actions, or kTau
    int dst = 0;
    std::optional<Rational> prob;

    bool operator==(const Transition&) const = default;
  };
  std::vector<Transition> transitions;

  std::vector<int> executor;               // per action
  std::vector<std::vector<int>> observers; // per action, sorted process ids

  // Policy metadata: ordered (from, to) process pairs whose communication
  // the security policy forbids.
  std::vector<std::pair<int, int>> forbidden;

  bool operator==(const TransitionSystem&) const = default;

  int state_id(std::string_view name) const;    // -1 when absent
  int action_id(std::string_view name) const;
  int process_id(std::string_view name) const;
  const std::string& state_name(int q) const { return states[q]; }
  std::string label_name(int action) const;     // "tau" for kTau

  std::vector<int> outgoing(int state) const;   // transition indices, in order
  std::vector<std::vector<int>> adjacency() const;

  // Explicit probability or the uniform default at the source state.
  Rational effective_prob(int transition) const;

  std::vector<int> actions_of_executor(int process) const;   // Ex^-1
  std::vector<int> actions_observed_by(int process) const;   // Obs^-1

  bool forbids(int from, int to) const;
};

// A chained sequence of transition indices starting anywhere in the system.
struct Path {
  std::vector<int> transitions;

  Word word(const TransitionSystem& ts) const;   // tau omitted
  Rational probability(const TransitionSystem& ts) const;
};

// Empty result means every structural invariant holds; warnings may appear
// regardless (an action's executor not observing it is legal but suspect).
std::vector<Diagnostic> validate(const TransitionSystem& ts);

// Labels outside `keep` become tau; states and probabilities are untouched.
TransitionSystem project(const TransitionSystem& ts, const std::vector<int>& keep_actions);
TransitionSystem project_to_process(const TransitionSystem& ts, int process);

// Transitions with labels outside `keep` are deleted and unreachable
// states pruned; tau transitions belong to no process and always survive.
// Surviving explicit probabilities are kept as-is, so restricted states
// can be substochastic; the language algebra does not care.
TransitionSystem restrict(const TransitionSystem& ts, const std::vector<int>& keep_actions);
TransitionSystem restrict_drop_process(const TransitionSystem& ts, int process);

Rational path_prob(const TransitionSystem& ts, const Path& path);

// Lookup helpers that throw covchan::Error on unknown names.
int require_state(const TransitionSystem& ts, std::string_view name);
int require_action(const TransitionSystem& ts, std::string_view name);
int require_process(const TransitionSystem& ts, std::string_view name);

}  // namespace covchan
