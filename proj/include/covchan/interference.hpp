#pragma once

#include <optional>
#include <string>

#include "covchan/automaton.hpp"
#include "covchan/lts.hpp"

namespace covchan {

struct InterferenceVerdict {
  std::string source;
  std::string sink;
  bool interferes = false;
  // Shortest word accepted by exactly one of the sink's views of S and of
  // S without the source; ties broken lexicographically.
  std::optional<Word> witness;
};

// SNNI: u interferes with v iff v's observable language changes when u's
// actions are removed from the system.
InterferenceVerdict snni(const TransitionSystem& ts, int source, int sink);
InterferenceVerdict snni(const TransitionSystem& ts, const std::string& source,
                         const std::string& sink);

}  // namespace covchan
