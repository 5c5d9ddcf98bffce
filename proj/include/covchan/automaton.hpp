#pragma once

#include <optional>
#include <string>
#include <vector>

#include "covchan/lts.hpp"

namespace covchan {

// A finite automaton over action names; epsilon edges stand for tau.
// This is the working representation for every regular language derived
// from a transition system (projections, restrictions, after-languages).
// All algebra goes through epsilon elimination and the subset construction.
class LangHandle {
 public:
  static constexpr int kEpsilon = -1;

  struct Edge {
    int symbol;  // index into alphabet_, or kEpsilon
    int to;
  };

  LangHandle() = default;

  // Language of ts started at `start` (initial state when omitted).
  // Every automaton state accepts: LTS languages are prefix closed.
  static LangHandle from_lts(const TransitionSystem& ts);
  static LangHandle from_lts(const TransitionSystem& ts, int start_state);

  // Single-word and empty-language constructors (mostly for tests).
  static LangHandle single_word(const Word& w, const std::vector<std::string>& alphabet);

  // Symbols outside `keep` become epsilon.
  LangHandle projected(const std::vector<std::string>& keep) const;

  // { symbol.w | w in L }.
  LangHandle prefixed(const std::string& symbol) const;

  // L minus the empty word.
  LangHandle without_epsilon() const;

  bool accepts(const Word& word) const;
  bool accepts_empty() const;
  bool has_nonempty_word() const;
  bool empty() const;

  // Trace equivalence. Alphabets are merged by name, so comparing
  // languages drawn from differently-labeled systems is well defined.
  static bool equal(const LangHandle& a, const LangHandle& b);

  // Shortest word in exactly one of the two languages; ties broken by
  // lexicographic order on action names. nullopt when equivalent.
  static std::optional<Word> distinguishing_word(const LangHandle& a, const LangHandle& b);

  static bool intersect_empty(const LangHandle& a, const LangHandle& b);
  static LangHandle intersection(const LangHandle& a, const LangHandle& b);

  // L(a) subset of L(b); returns a word of a outside b otherwise.
  static std::optional<Word> subset_witness(const LangHandle& a, const LangHandle& b);

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  size_t state_count() const { return edges_.size(); }

 private:
  friend struct DfaBuilder;

  std::vector<std::string> alphabet_;  // sorted, unique
  std::vector<std::vector<Edge>> edges_;
  std::vector<bool> accepting_;
  int start_ = 0;

  LangHandle eliminate_epsilon() const;
};

}  // namespace covchan
