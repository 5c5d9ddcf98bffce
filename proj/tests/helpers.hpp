#pragma once

// Shared test utilities: path-level word oracles that stay independent of
// the automaton algebra, and a deterministic random model generator.

#include <random>
#include <set>
#include <tuple>

#include "covchan/lts.hpp"

namespace covchan::testutil {

// All words of the language up to max_len, by explicit path search.
inline std::set<Word> enumerate_words(const TransitionSystem& ts, size_t max_len) {
  std::set<Word> words;
  std::set<std::pair<int, Word>> seen;
  std::vector<std::pair<int, Word>> stack{{ts.initial, {}}};
  seen.insert(stack.front());
  auto adj = ts.adjacency();
  while (!stack.empty()) {
    auto [state, word] = stack.back();
    stack.pop_back();
    words.insert(word);
    for (int t : adj[state]) {
      const auto& tr = ts.transitions[t];
      Word next = word;
      if (tr.action != kTau) {
        if (word.size() == max_len) continue;
        next.push_back(ts.actions[tr.action]);
      }
      if (seen.insert({tr.dst, next}).second) stack.push_back({tr.dst, std::move(next)});
    }
  }
  return words;
}

// Membership of one word, again by path search (any length).
inline bool word_in_lts(const TransitionSystem& ts, const Word& word) {
  std::set<std::pair<int, size_t>> seen;
  std::vector<std::pair<int, size_t>> stack{{ts.initial, 0}};
  seen.insert(stack.front());
  auto adj = ts.adjacency();
  while (!stack.empty()) {
    auto [state, pos] = stack.back();
    stack.pop_back();
    if (pos == word.size()) return true;
    for (int t : adj[state]) {
      const auto& tr = ts.transitions[t];
      size_t next = pos;
      if (tr.action != kTau) {
        if (ts.actions[tr.action] != word[pos]) continue;
        next = pos + 1;
      }
      if (seen.insert({tr.dst, next}).second) stack.push_back({tr.dst, next});
    }
  }
  return false;
}

// Random system over processes {u, v, w}: up to max_states states, a
// small alphabet, occasional tau transitions, uniform probabilities.
inline TransitionSystem random_lts(std::mt19937& rng, int max_states = 6,
                                   int max_actions = 4, bool allow_tau = true) {
  TransitionSystem ts;
  ts.processes = {"u", "v", "w"};
  std::uniform_int_distribution<int> nstates(1, max_states);
  std::uniform_int_distribution<int> nactions(1, max_actions);
  int n = nstates(rng);
  int k = nactions(rng);
  const char* names[] = {"a", "b", "c", "d", "e", "f"};
  std::uniform_int_distribution<int> proc(0, 2);
  for (int a = 0; a < k; ++a) {
    ts.actions.push_back(names[a]);
    int ex = proc(rng);
    ts.executor.push_back(ex);
    std::set<int> obs{ex};
    if (proc(rng) == 0) obs.insert(proc(rng));
    ts.observers.emplace_back(obs.begin(), obs.end());
  }
  for (int q = 0; q < n; ++q) ts.states.push_back("s" + std::to_string(q));
  ts.initial = 0;
  std::uniform_int_distribution<int> ntrans(0, 2 * n);
  std::uniform_int_distribution<int> state(0, n - 1);
  std::uniform_int_distribution<int> action(0, k - 1);
  std::uniform_int_distribution<int> tau_roll(0, 9);
  int m = ntrans(rng);
  std::set<std::tuple<int, int, int>> seen;
  for (int t = 0; t < m; ++t) {
    int label = allow_tau && tau_roll(rng) == 0 ? kTau : action(rng);
    int src = state(rng), dst = state(rng);
    if (seen.insert({src, label, dst}).second) {
      ts.transitions.push_back({src, label, dst, std::nullopt});
    }
  }
  return ts;
}

// Random system biased toward sender/observer channel structure: u
// executes two actions, v the rest, everyone observes their own actions.
inline TransitionSystem random_channel_lts(std::mt19937& rng, int max_states = 5) {
  TransitionSystem ts;
  ts.processes = {"u", "v"};
  ts.actions = {"a", "b", "c", "d"};
  ts.executor = {0, 0, 1, 1};
  ts.observers = {{0}, {0}, {1}, {1}};
  std::uniform_int_distribution<int> nstates(2, max_states);
  int n = nstates(rng);
  for (int q = 0; q < n; ++q) ts.states.push_back("s" + std::to_string(q));
  ts.initial = 0;
  std::uniform_int_distribution<int> ntrans(n, 3 * n);
  std::uniform_int_distribution<int> state(0, n - 1);
  std::uniform_int_distribution<int> action(0, 3);
  int m = ntrans(rng);
  std::set<std::tuple<int, int, int>> seen;
  for (int t = 0; t < m; ++t) {
    int src = state(rng), label = action(rng), dst = state(rng);
    if (seen.insert({src, label, dst}).second) {
      ts.transitions.push_back({src, label, dst, std::nullopt});
    }
  }
  return ts;
}

}  // namespace covchan::testutil
