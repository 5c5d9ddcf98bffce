#include "covchan/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace covchan {

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

std::vector<std::string> merge_alphabets(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return sorted_unique(out);
}

}  // namespace

// Complete deterministic automaton over a fixed alphabet, used internally
// by every comparison. State 0.. with an explicit dead state.
struct DfaBuilder {
  std::vector<std::string> alphabet;
  std::vector<std::vector<int>> next;  // [state][symbol]
  std::vector<bool> accepting;
  int start = 0;

  static DfaBuilder determinize(const LangHandle& lang,
                                const std::vector<std::string>& sigma) {
    LangHandle nfa = lang.eliminate_epsilon();

    // Remap the automaton's symbols into sigma (a superset by name).
    std::vector<int> remap(nfa.alphabet_.size(), -1);
    for (size_t i = 0; i < nfa.alphabet_.size(); ++i) {
      auto it = std::lower_bound(sigma.begin(), sigma.end(), nfa.alphabet_[i]);
      if (it != sigma.end() && *it == nfa.alphabet_[i]) {
        remap[i] = static_cast<int>(it - sigma.begin());
      }
    }

    DfaBuilder dfa;
    dfa.alphabet = sigma;
    std::map<std::vector<int>, int> ids;
    std::deque<std::vector<int>> queue;

    auto intern = [&](std::vector<int> subset) {
      auto [it, inserted] = ids.try_emplace(std::move(subset), static_cast<int>(ids.size()));
      if (inserted) {
        queue.push_back(it->first);
        dfa.next.emplace_back(sigma.size(), -1);
        bool acc = false;
        for (int q : it->first) acc = acc || nfa.accepting_[q];
        dfa.accepting.push_back(acc);
      }
      return it->second;
    };

    dfa.start = intern({nfa.start_});
    int dead = intern({});  // empty subset doubles as the dead state
    (void)dead;
    while (!queue.empty()) {
      std::vector<int> subset = queue.front();
      queue.pop_front();
      int id = ids.at(subset);
      for (size_t s = 0; s < sigma.size(); ++s) {
        std::set<int> targets;
        for (int q : subset) {
          for (const auto& e : nfa.edges_[q]) {
            if (e.symbol >= 0 && remap[e.symbol] == static_cast<int>(s)) {
              targets.insert(e.to);
            }
          }
        }
        dfa.next[id][s] = intern(std::vector<int>(targets.begin(), targets.end()));
      }
    }
    return dfa;
  }
};

LangHandle LangHandle::from_lts(const TransitionSystem& ts) {
  return from_lts(ts, ts.initial);
}

LangHandle LangHandle::from_lts(const TransitionSystem& ts, int start_state) {
  LangHandle out;
  out.alphabet_ = sorted_unique(ts.actions);
  out.edges_.resize(ts.states.size());
  out.accepting_.assign(ts.states.size(), true);
  out.start_ = start_state;
  for (const auto& t : ts.transitions) {
    int symbol = kEpsilon;
    if (t.action != kTau) {
      auto it = std::lower_bound(out.alphabet_.begin(), out.alphabet_.end(),
                                 ts.actions[t.action]);
      symbol = static_cast<int>(it - out.alphabet_.begin());
    }
    out.edges_[t.src].push_back({symbol, t.dst});
  }
  return out;
}

LangHandle LangHandle::single_word(const Word& w, const std::vector<std::string>& alphabet) {
  LangHandle out;
  out.alphabet_ = sorted_unique(alphabet);
  out.edges_.resize(w.size() + 1);
  out.accepting_.assign(w.size() + 1, false);
  out.accepting_.back() = true;
  out.start_ = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    auto it = std::lower_bound(out.alphabet_.begin(), out.alphabet_.end(), w[i]);
    if (it == out.alphabet_.end() || *it != w[i]) throw Error("word symbol outside alphabet");
    out.edges_[i].push_back({static_cast<int>(it - out.alphabet_.begin()),
                             static_cast<int>(i + 1)});
  }
  return out;
}

LangHandle LangHandle::projected(const std::vector<std::string>& keep) const {
  std::set<std::string> kept(keep.begin(), keep.end());
  LangHandle out = *this;
  for (auto& state_edges : out.edges_) {
    for (auto& e : state_edges) {
      if (e.symbol >= 0 && !kept.count(alphabet_[e.symbol])) e.symbol = kEpsilon;
    }
  }
  return out;
}

LangHandle LangHandle::prefixed(const std::string& symbol) const {
  std::vector<std::string> sigma = merge_alphabets(alphabet_, {symbol});

  LangHandle out;
  out.alphabet_ = sigma;
  out.edges_.resize(edges_.size() + 1);
  out.accepting_.assign(edges_.size() + 1, false);

  // Old states keep their indices; the fresh start goes at the end.
  std::vector<int> remap(alphabet_.size());
  for (size_t i = 0; i < alphabet_.size(); ++i) {
    remap[i] = static_cast<int>(
        std::lower_bound(sigma.begin(), sigma.end(), alphabet_[i]) - sigma.begin());
  }
  for (size_t q = 0; q < edges_.size(); ++q) {
    out.accepting_[q] = accepting_[q];
    for (const auto& e : edges_[q]) {
      out.edges_[q].push_back({e.symbol >= 0 ? remap[e.symbol] : kEpsilon, e.to});
    }
  }
  int fresh = static_cast<int>(edges_.size());
  int sym = static_cast<int>(
      std::lower_bound(sigma.begin(), sigma.end(), symbol) - sigma.begin());
  out.edges_[fresh].push_back({sym, start_});
  out.start_ = fresh;
  return out;
}

LangHandle LangHandle::eliminate_epsilon() const {
  // Epsilon closure per state.
  std::vector<std::set<int>> closure(edges_.size());
  for (size_t q = 0; q < edges_.size(); ++q) {
    std::vector<int> stack{static_cast<int>(q)};
    closure[q].insert(static_cast<int>(q));
    while (!stack.empty()) {
      int s = stack.back();
      stack.pop_back();
      for (const auto& e : edges_[s]) {
        if (e.symbol == kEpsilon && closure[q].insert(e.to).second) {
          stack.push_back(e.to);
        }
      }
    }
  }

  LangHandle out;
  out.alphabet_ = alphabet_;
  out.edges_.resize(edges_.size());
  out.accepting_.assign(edges_.size(), false);
  out.start_ = start_;
  for (size_t q = 0; q < edges_.size(); ++q) {
    std::set<std::pair<int, int>> added;
    for (int c : closure[q]) {
      out.accepting_[q] = out.accepting_[q] || accepting_[c];
      for (const auto& e : edges_[c]) {
        if (e.symbol != kEpsilon && added.insert({e.symbol, e.to}).second) {
          out.edges_[q].push_back(e);
        }
      }
    }
  }
  return out;
}

LangHandle LangHandle::without_epsilon() const {
  LangHandle flat = eliminate_epsilon();
  int fresh = static_cast<int>(flat.edges_.size());
  flat.edges_.push_back(flat.edges_[flat.start_]);
  flat.accepting_.push_back(false);
  flat.start_ = fresh;
  return flat;
}

bool LangHandle::accepts(const Word& word) const {
  LangHandle flat = eliminate_epsilon();
  std::set<int> current{flat.start_};
  for (const auto& symbol : word) {
    auto it = std::lower_bound(flat.alphabet_.begin(), flat.alphabet_.end(), symbol);
    if (it == flat.alphabet_.end() || *it != symbol) return false;
    int sym = static_cast<int>(it - flat.alphabet_.begin());
    std::set<int> next;
    for (int q : current) {
      for (const auto& e : flat.edges_[q]) {
        if (e.symbol == sym) next.insert(e.to);
      }
    }
    current = std::move(next);
    if (current.empty()) return false;
  }
  for (int q : current) {
    if (flat.accepting_[q]) return true;
  }
  return false;
}

bool LangHandle::accepts_empty() const { return accepts({}); }

bool LangHandle::has_nonempty_word() const {
  LangHandle flat = eliminate_epsilon();
  std::set<int> seen;
  std::deque<int> queue;
  for (const auto& e : flat.edges_[flat.start_]) {
    if (seen.insert(e.to).second) queue.push_back(e.to);
  }
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    if (flat.accepting_[q]) return true;
    for (const auto& e : flat.edges_[q]) {
      if (seen.insert(e.to).second) queue.push_back(e.to);
    }
  }
  return false;
}

bool LangHandle::empty() const {
  return !accepts_empty() && !has_nonempty_word();
}

std::optional<Word> LangHandle::distinguishing_word(const LangHandle& a, const LangHandle& b) {
  std::vector<std::string> sigma = merge_alphabets(a.alphabet_, b.alphabet_);
  DfaBuilder da = DfaBuilder::determinize(a, sigma);
  DfaBuilder db = DfaBuilder::determinize(b, sigma);

  // BFS over the pair graph in symbol order. The first pair discovered
  // whose acceptance differs is reached by the shortest distinguishing
  // word, lexicographically least among those.
  struct Node { int qa, qb, parent, symbol; };
  std::vector<Node> nodes;
  std::map<std::pair<int, int>, int> seen;
  std::deque<int> queue;

  auto visit = [&](int qa, int qb, int parent, int symbol) -> std::optional<int> {
    if (!seen.try_emplace({qa, qb}, static_cast<int>(nodes.size())).second) return std::nullopt;
    nodes.push_back({qa, qb, parent, symbol});
    int id = static_cast<int>(nodes.size()) - 1;
    queue.push_back(id);
    if (da.accepting[qa] != db.accepting[qb]) return id;
    return std::nullopt;
  };

  auto reconstruct = [&](int id) {
    Word w;
    for (int at = id; nodes[at].parent >= 0; at = nodes[at].parent) {
      w.push_back(sigma[nodes[at].symbol]);
    }
    std::reverse(w.begin(), w.end());
    return w;
  };

  if (auto hit = visit(da.start, db.start, -1, -1)) return reconstruct(*hit);
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    for (size_t s = 0; s < sigma.size(); ++s) {
      int na = da.next[nodes[id].qa][s];
      int nb = db.next[nodes[id].qb][s];
      if (auto hit = visit(na, nb, id, static_cast<int>(s))) return reconstruct(*hit);
    }
  }
  return std::nullopt;
}

bool LangHandle::equal(const LangHandle& a, const LangHandle& b) {
  return !distinguishing_word(a, b).has_value();
}

bool LangHandle::intersect_empty(const LangHandle& a, const LangHandle& b) {
  std::vector<std::string> sigma = merge_alphabets(a.alphabet_, b.alphabet_);
  DfaBuilder da = DfaBuilder::determinize(a, sigma);
  DfaBuilder db = DfaBuilder::determinize(b, sigma);

  std::set<std::pair<int, int>> seen;
  std::deque<std::pair<int, int>> queue;
  seen.insert({da.start, db.start});
  queue.push_back({da.start, db.start});
  while (!queue.empty()) {
    auto [qa, qb] = queue.front();
    queue.pop_front();
    if (da.accepting[qa] && db.accepting[qb]) return false;
    for (size_t s = 0; s < sigma.size(); ++s) {
      std::pair<int, int> next{da.next[qa][s], db.next[qb][s]};
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return true;
}

LangHandle LangHandle::intersection(const LangHandle& a, const LangHandle& b) {
  std::vector<std::string> sigma = merge_alphabets(a.alphabet_, b.alphabet_);
  DfaBuilder da = DfaBuilder::determinize(a, sigma);
  DfaBuilder db = DfaBuilder::determinize(b, sigma);

  LangHandle out;
  out.alphabet_ = sigma;
  std::map<std::pair<int, int>, int> ids;
  std::deque<std::pair<int, int>> queue;
  auto intern = [&](std::pair<int, int> pair) {
    auto [it, inserted] = ids.try_emplace(pair, static_cast<int>(ids.size()));
    if (inserted) {
      queue.push_back(pair);
      out.edges_.emplace_back();
      out.accepting_.push_back(da.accepting[pair.first] && db.accepting[pair.second]);
    }
    return it->second;
  };
  out.start_ = intern({da.start, db.start});
  while (!queue.empty()) {
    auto pair = queue.front();
    queue.pop_front();
    int id = ids.at(pair);
    for (size_t s = 0; s < sigma.size(); ++s) {
      int target = intern({da.next[pair.first][s], db.next[pair.second][s]});
      out.edges_[id].push_back({static_cast<int>(s), target});
    }
  }
  return out;
}

std::optional<Word> LangHandle::subset_witness(const LangHandle& a, const LangHandle& b) {
  std::vector<std::string> sigma = merge_alphabets(a.alphabet_, b.alphabet_);
  DfaBuilder da = DfaBuilder::determinize(a, sigma);
  DfaBuilder db = DfaBuilder::determinize(b, sigma);

  struct Node { int qa, qb, parent, symbol; };
  std::vector<Node> nodes;
  std::map<std::pair<int, int>, int> seen;
  std::deque<int> queue;

  auto visit = [&](int qa, int qb, int parent, int symbol) -> std::optional<int> {
    if (!seen.try_emplace({qa, qb}, static_cast<int>(nodes.size())).second) return std::nullopt;
    nodes.push_back({qa, qb, parent, symbol});
    int id = static_cast<int>(nodes.size()) - 1;
    queue.push_back(id);
    if (da.accepting[qa] && !db.accepting[qb]) return id;
    return std::nullopt;
  };
  auto reconstruct = [&](int id) {
    Word w;
    for (int at = id; nodes[at].parent >= 0; at = nodes[at].parent) {
      w.push_back(sigma[nodes[at].symbol]);
    }
    std::reverse(w.begin(), w.end());
    return w;
  };

  if (auto hit = visit(da.start, db.start, -1, -1)) return reconstruct(*hit);
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    for (size_t s = 0; s < sigma.size(); ++s) {
      if (auto hit = visit(da.next[nodes[id].qa][s], db.next[nodes[id].qb][s], id,
                           static_cast<int>(s))) {
        return reconstruct(*hit);
      }
    }
  }
  return std::nullopt;
}

}  // namespace covchan
