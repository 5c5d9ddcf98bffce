#include "covchan/halfduplex.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace covchan {

namespace {

bool controlled_by(const TransitionSystem& ts, int state, int process,
                   const std::vector<std::vector<int>>& adj) {
  if (adj[state].empty()) return false;  // a deadlock is controlled by nobody
  for (int t : adj[state]) {
    int a = ts.transitions[t].action;
    if (a == kTau || ts.executor[a] != process) return false;
  }
  return true;
}

bool observable_by(const TransitionSystem& ts, int transition, int process) {
  int a = ts.transitions[transition].action;
  if (a == kTau) return false;
  const auto& obs = ts.observers[a];
  return std::find(obs.begin(), obs.end(), process) != obs.end();
}

bool executed_by(const TransitionSystem& ts, int transition, int process) {
  int a = ts.transitions[transition].action;
  return a != kTau && ts.executor[a] == process;
}

// Cycle detection on the subgraph induced by `member`, ignoring edges
// that leave it.
bool induced_subgraph_has_cycle(const TransitionSystem& ts,
                                const std::vector<std::vector<int>>& adj,
                                const std::vector<bool>& member) {
  enum { White, Grey, Black };
  std::vector<int> color(ts.states.size(), White);
  for (size_t root = 0; root < ts.states.size(); ++root) {
    if (!member[root] || color[root] != White) continue;
    // Iterative DFS; each frame is (state, next edge cursor).
    std::vector<std::pair<int, size_t>> stack{{static_cast<int>(root), 0}};
    color[root] = Grey;
    while (!stack.empty()) {
      int q = stack.back().first;
      size_t cursor = stack.back().second;
      if (cursor == adj[q].size()) {
        color[q] = Black;
        stack.pop_back();
        continue;
      }
      stack.back().second = cursor + 1;
      int dst = ts.transitions[adj[q][cursor]].dst;
      if (!member[dst]) continue;
      if (color[dst] == Grey) return true;
      if (color[dst] == White) {
        color[dst] = Grey;
        stack.push_back({dst, 0});
      }
    }
  }
  return false;
}

// Longest path (in edges) from `from` inside an acyclic induced subgraph.
int dag_longest_path(const TransitionSystem& ts, const std::vector<std::vector<int>>& adj,
                     const std::vector<bool>& member, int from, std::vector<int>& memo) {
  if (memo[from] >= 0) return memo[from];
  memo[from] = 0;
  int best = 0;
  for (int t : adj[from]) {
    int dst = ts.transitions[t].dst;
    if (member[dst]) best = std::max(best, 1 + dag_longest_path(ts, adj, member, dst, memo));
  }
  memo[from] = best;
  return best;
}

}  // namespace

HalfDuplexResult check_half_duplex(const TransitionSystem& ts, int sender, int observer) {
  if (sender == observer) throw Error("half-duplex analysis requires distinct processes");
  HalfDuplexResult result;
  auto adj = ts.adjacency();
  const int n = static_cast<int>(ts.states.size());

  std::vector<bool> u_controlled(n);
  for (int q = 0; q < n; ++q) u_controlled[q] = controlled_by(ts, q, sender, adj);

  // Candidates in state-name order so the witness list comes out sorted.
  std::vector<int> candidates(n);
  for (int q = 0; q < n; ++q) candidates[q] = q;
  std::sort(candidates.begin(), candidates.end(),
            [&](int a, int b) { return ts.states[a] < ts.states[b]; });

  for (int x : candidates) {
    const std::string& xname = ts.states[x];
    auto reject = [&](const std::string& why) {
      std::string line = "control state '";
      line += xname;
      line += "': ";
      line += why;
      result.rejections.push_back(std::move(line));
    };

    // Encoding states: the sender-controlled states first reached from x.
    // A sender-controlled x encodes by itself with a zero-length passage.
    std::set<int> en;
    std::vector<bool> passage(n, false);  // region crossed before reaching EN
    if (u_controlled[x]) {
      en.insert(x);
    } else {
      passage[x] = true;
      std::deque<int> queue{x};
      while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        for (int t : adj[q]) {
          int dst = ts.transitions[t].dst;
          if (u_controlled[dst]) {
            en.insert(dst);
          } else if (!passage[dst]) {
            passage[dst] = true;
            queue.push_back(dst);
          }
        }
      }
    }
    if (en.empty()) {
      reject("no sender-controlled state is reachable");
      continue;
    }

    // Bounded passage: the region before EN must be acyclic.
    if (induced_subgraph_has_cycle(ts, adj, passage)) {
      reject("runs from it can avoid the encoding states forever");
      continue;
    }

    // The sender must not act on the way to an encoding state.
    bool sender_on_passage = false;
    for (int q = 0; q < n && !sender_on_passage; ++q) {
      if (!passage[q]) continue;
      for (int t : adj[q]) {
        int dst = ts.transitions[t].dst;
        if ((passage[dst] || en.count(dst)) && executed_by(ts, t, sender)) {
          sender_on_passage = true;
          break;
        }
      }
    }
    if (sender_on_passage) {
      reject("the passage to the encoding states uses sender transitions");
      continue;
    }

    int k1 = 1;
    if (!u_controlled[x]) {
      std::vector<int> memo(n, -1);
      k1 = dag_longest_path(ts, adj, passage, x, memo) + 1;
    }

    // Bounded, observable returns from every encoding state.
    int k2 = 1;
    bool ok = true;
    for (int qi : en) {
      // States reachable from qi without crossing x again, x excluded.
      std::vector<bool> region(n, false);
      std::deque<int> queue;
      if (qi != x) {
        region[qi] = true;
        queue.push_back(qi);
      } else {
        for (int t : adj[x]) {
          int dst = ts.transitions[t].dst;
          if (dst != x && !region[dst]) {
            region[dst] = true;
            queue.push_back(dst);
          }
        }
      }
      while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        for (int t : adj[q]) {
          int dst = ts.transitions[t].dst;
          if (dst != x && !region[dst]) {
            region[dst] = true;
            queue.push_back(dst);
          }
        }
      }
      if (induced_subgraph_has_cycle(ts, adj, region)) {
        reject("runs from encoding state '" + ts.states[qi] +
               "' can avoid the control state forever");
        ok = false;
        break;
      }
      std::vector<int> memo(n, -1);
      int longest = 0;
      if (qi != x) {
        longest = dag_longest_path(ts, adj, region, qi, memo);
      } else {
        for (int t : adj[x]) {
          int dst = ts.transitions[t].dst;
          if (dst != x) longest = std::max(longest, 1 + dag_longest_path(ts, adj, region, dst, memo));
        }
      }
      k2 = std::max(k2, longest + 1);

      // Deleting every observer-visible transition must cut qi off from x,
      // which certifies that each return shows the observer something.
      std::vector<bool> blind(n, false);
      std::deque<int> bq;
      auto push_blind = [&](int src) {
        for (int t : adj[src]) {
          if (observable_by(ts, t, observer)) continue;
          int dst = ts.transitions[t].dst;
          if (!blind[dst]) {
            blind[dst] = true;
            bq.push_back(dst);
          }
        }
      };
      push_blind(qi);
      bool x_blind_reachable = blind[x];
      while (!bq.empty() && !x_blind_reachable) {
        int q = bq.front();
        bq.pop_front();
        push_blind(q);
        x_blind_reachable = blind[x];
      }
      if (x_blind_reachable) {
        reject("a return from encoding state '" + ts.states[qi] +
               "' can stay invisible to the observer");
        ok = false;
        break;
      }
    }
    if (!ok) continue;

    HalfDuplexWitness witness;
    witness.control_state = x;
    witness.encoding_states.assign(en.begin(), en.end());
    std::sort(witness.encoding_states.begin(), witness.encoding_states.end(),
              [&](int a, int b) { return ts.states[a] < ts.states[b]; });
    witness.k1 = k1;
    witness.k2 = k2;

    // First-passage path bundles, one per encoding state.
    witness.first_passage.resize(witness.encoding_states.size());
    if (u_controlled[x]) {
      witness.first_passage[0].push_back(Path{});
    } else {
      std::map<int, int> slot;
      for (size_t i = 0; i < witness.encoding_states.size(); ++i) {
        slot[witness.encoding_states[i]] = static_cast<int>(i);
      }
      std::vector<int> trail;
      auto dfs = [&](auto&& self, int q) -> void {
        for (int t : adj[q]) {
          int dst = ts.transitions[t].dst;
          trail.push_back(t);
          if (en.count(dst)) {
            witness.first_passage[slot[dst]].push_back(Path{trail});
          } else {
            self(self, dst);  // passage region is acyclic
          }
          trail.pop_back();
        }
      };
      dfs(dfs, x);
    }
    result.witnesses.push_back(std::move(witness));
  }
  return result;
}

CodeCheck check_code(const std::vector<Word>& words) {
  std::vector<Word> code = words;
  std::sort(code.begin(), code.end());
  code.erase(std::unique(code.begin(), code.end()), code.end());
  if (code.empty()) throw Error("code check requires a nonempty word set");
  for (const Word& w : code) {
    if (w.empty()) throw Error("code contains the empty word");
  }

  CodeCheck result;
  if (code.size() < 2) return result;

  auto is_prefix = [](const Word& p, const Word& w) {
    return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
  };
  auto suffix_after = [](const Word& w, size_t from) {
    return Word(w.begin() + static_cast<long>(from), w.end());
  };

  // A node records that one parse runs ahead of the other by `suffix`;
  // appending codewords to the behind side either shortens the suffix or
  // overtakes it. Reaching the empty suffix closes an ambiguous word.
  struct Node {
    Word suffix;
    int parent;
    int appended;    // codeword index appended at this step (-1 for roots)
    int init_long;   // root only: the two codewords that opened the race
    int init_short;
  };
  std::vector<Node> nodes;
  std::set<Word> seen;
  std::deque<int> queue;
  int accept = -1;

  for (size_t i = 0; i < code.size() && accept < 0; ++i) {
    for (size_t j = 0; j < code.size() && accept < 0; ++j) {
      if (i == j) continue;
      if (is_prefix(code[i], code[j])) {
        Word d = suffix_after(code[j], code[i].size());
        if (seen.insert(d).second) {
          nodes.push_back({d, -1, -1, static_cast<int>(j), static_cast<int>(i)});
          queue.push_back(static_cast<int>(nodes.size()) - 1);
        }
      }
    }
  }

  while (!queue.empty() && accept < 0) {
    int id = queue.front();
    queue.pop_front();
    const Word s = nodes[id].suffix;
    for (size_t c = 0; c < code.size(); ++c) {
      Word d;
      if (code[c] == s) {
        nodes.push_back({{}, id, static_cast<int>(c), -1, -1});
        accept = static_cast<int>(nodes.size()) - 1;
        break;
      }
      if (is_prefix(s, code[c])) {
        d = suffix_after(code[c], s.size());
      } else if (is_prefix(code[c], s)) {
        d = suffix_after(s, code[c].size());
      } else {
        continue;
      }
      if (seen.insert(d).second) {
        nodes.push_back({d, id, static_cast<int>(c), -1, -1});
        queue.push_back(static_cast<int>(nodes.size()) - 1);
      }
    }
  }

  if (accept < 0) return result;

  // Replay the derivation to build the two factorizations.
  std::vector<int> chain;
  for (int at = accept; at >= 0; at = nodes[at].parent) chain.push_back(at);
  std::reverse(chain.begin(), chain.end());

  std::vector<Word> a{code[nodes[chain[0]].init_long]};
  std::vector<Word> b{code[nodes[chain[0]].init_short]};
  bool a_ahead = true;
  Word suffix = nodes[chain[0]].suffix;
  for (size_t step = 1; step < chain.size(); ++step) {
    const Word& c = code[nodes[chain[step]].appended];
    (a_ahead ? b : a).push_back(c);
    if (c.size() > suffix.size()) a_ahead = !a_ahead;
    suffix = nodes[chain[step]].suffix;
  }

  result.uniquely_decodable = false;
  result.factorization_a = std::move(a);
  result.factorization_b = std::move(b);
  for (const Word& w : result.factorization_a) {
    result.ambiguous_word.insert(result.ambiguous_word.end(), w.begin(), w.end());
  }
  return result;
}

ExtractionResult extract_state_channel(const TransitionSystem& ts, int sender, int observer,
                                       const HalfDuplexWitness& witness) {
  ExtractionResult result;
  auto adj = ts.adjacency();
  const int n = static_cast<int>(ts.states.size());
  const int x = witness.control_state;
  if (x < 0 || x >= n) throw Error("witness control state is not a state of the model");
  std::set<int> en(witness.encoding_states.begin(), witness.encoding_states.end());
  for (int q : en) {
    if (q < 0 || q >= n) throw Error("witness encoding state is not a state of the model");
  }

  std::vector<bool> u_controlled(n);
  for (int q = 0; q < n; ++q) u_controlled[q] = controlled_by(ts, q, sender, adj);
  for (int q = 0; q < n; ++q) {
    if (!u_controlled[q]) continue;
    for (int t : adj[q]) {
      if (ts.transitions[t].prob) {
        result.warnings.push_back("state '" + ts.states[q] +
                                  "': explicit probabilities on sender decisions are ignored");
        break;
      }
    }
  }

  StateChannel& ch = result.channel;
  for (int q : witness.encoding_states) ch.states.push_back(ts.states[q]);

  // State distribution from the control -> encoding first passage.
  ch.state_probs.assign(ch.states.size(), Rational(0));
  if (en.count(x)) {
    auto it = std::find(witness.encoding_states.begin(), witness.encoding_states.end(), x);
    ch.state_probs[it - witness.encoding_states.begin()] = Rational(1);
  } else {
    Rational total(0);
    std::vector<int> trail;
    auto dfs = [&](auto&& self, int q, const Rational& prob) -> void {
      if (static_cast<int>(trail.size()) > witness.k1) {
        throw Error("first-passage path exceeds the K1 bound; witness is inconsistent");
      }
      for (int t : adj[q]) {
        int dst = ts.transitions[t].dst;
        Rational next = prob * ts.effective_prob(t);
        trail.push_back(t);
        if (en.count(dst)) {
          auto it = std::find(witness.encoding_states.begin(), witness.encoding_states.end(), dst);
          ch.state_probs[it - witness.encoding_states.begin()] += next;
          total += next;
        } else {
          self(self, dst, next);
        }
        trail.pop_back();
      }
    };
    dfs(dfs, x, Rational(1));
    if (total != Rational(1)) {
      throw Error("first-passage probabilities from the control state sum to " +
                  format_rational_pretty(total) + "; runs escape the encoding states");
    }
  }

  // Return words and row weights per encoding state.
  std::vector<std::map<Word, std::map<Word, Rational>>> weights(ch.states.size());
  std::set<Word> output_words;
  for (size_t i = 0; i < witness.encoding_states.size(); ++i) {
    int qi = witness.encoding_states[i];
    Word labels;
    std::vector<int> trail;
    auto dfs = [&](auto&& self, int q) -> void {
      if (static_cast<int>(trail.size()) > witness.k2) {
        throw Error("return path exceeds the K2 bound; witness is inconsistent");
      }
      for (int t : adj[q]) {
        int dst = ts.transitions[t].dst;
        trail.push_back(t);
        if (dst == x) {
          Word u_word, v_word;
          Rational weight(1);
          for (int tt : trail) {
            const auto& tr = ts.transitions[tt];
            if (!u_controlled[tr.src]) weight *= ts.effective_prob(tt);
            if (executed_by(ts, tt, sender)) u_word.push_back(ts.actions[tr.action]);
            if (observable_by(ts, tt, observer)) v_word.push_back(ts.actions[tr.action]);
          }
          weights[i][u_word][v_word] += weight;
          output_words.insert(v_word);
        } else if (!en.count(dst)) {
          self(self, dst);  // region is acyclic, endpoints aside
        }
        trail.pop_back();
      }
    };
    dfs(dfs, qi);
    if (weights[i].empty()) {
      throw Error("encoding state '" + ts.states[qi] + "' has no input words");
    }
  }

  // The observer decodes concatenations of return words, so they must
  // form a code.
  std::vector<Word> outputs(output_words.begin(), output_words.end());
  CodeCheck code = check_code(outputs);
  if (!code.uniquely_decodable) {
    throw Error("observer words do not form a code; ambiguous word: " +
                join_word(code.ambiguous_word));
  }
  for (const Word& y : outputs) ch.outputs.push_back(join_word(y));

  ch.inputs.resize(ch.states.size());
  ch.rows.resize(ch.states.size());
  for (size_t i = 0; i < ch.states.size(); ++i) {
    for (const auto& [u_word, by_output] : weights[i]) {
      ch.inputs[i].push_back(join_word(u_word));
      Rational row_sum(0);
      for (const auto& [v_word_ignored, weight] : by_output) {
        (void)v_word_ignored;
        row_sum += weight;
      }
      std::vector<Rational> row(outputs.size(), Rational(0));
      for (const auto& [v_word, weight] : by_output) {
        auto it = std::lower_bound(outputs.begin(), outputs.end(), v_word);
        row[it - outputs.begin()] = weight / row_sum;
      }
      ch.rows[i].push_back(std::move(row));
    }
  }

  auto diags = validate_state_channel(ch);
  if (has_errors(diags)) {
    throw Error("extracted channel fails validation: " + diags.front().message);
  }
  return result;
}

}  // namespace covchan
