#pragma once

#include <string>
#include <vector>

#include "covchan/infotheory.hpp"
#include "covchan/lts.hpp"

namespace covchan {

// Certificate that a system behaves as a state channel between a sender
// and an observer: from the control state every long-enough run funnels
// into a sender-controlled encoding state without the sender acting, and
// every long-enough run from an encoding state returns to the control
// state while showing the observer at least one action.
struct HalfDuplexWitness {
  int control_state = 0;
  std::vector<int> encoding_states;  // sorted by state name
  int k1 = 0;  // bound on first-passage control -> encoding
  int k2 = 0;  // bound on first-passage encoding -> control
  // First-passage paths from the control state, one bundle per encoding
  // state (a single empty path when the control state encodes itself).
  std::vector<std::vector<Path>> first_passage;
};

struct HalfDuplexResult {
  std::vector<HalfDuplexWitness> witnesses;  // sorted by control state name
  std::vector<std::string> rejections;       // one diagnosis per failed candidate
};

// Tries every state as the control state; the encoding-state set of a
// candidate is canonical (the sender-controlled states first reached from
// it), so nothing is lost by not searching subsets.
HalfDuplexResult check_half_duplex(const TransitionSystem& ts, int sender, int observer);

struct CodeCheck {
  bool uniquely_decodable = true;
  Word ambiguous_word;                  // empty when uniquely decodable
  std::vector<Word> factorization_a;    // two distinct factorizations of it
  std::vector<Word> factorization_b;
};

// Sardinas-Patterson dangling-suffix procedure over words of action
// names; on failure the ambiguous word comes with both factorizations.
CodeCheck check_code(const std::vector<Word>& words);

struct ExtractionResult {
  StateChannel channel;
  std::vector<std::string> warnings;
};

// Builds the state channel induced by a witness: state distribution from
// the control->encoding first passage, inputs the sender's projected
// return words, outputs the observer's projected return words. Sender
// decisions carry weight one (they are choices, not random events) and
// rows are normalized per available input word. Throws when the output
// words do not form a code, an encoding state has no input, or the first
// passage leaks probability.
ExtractionResult extract_state_channel(const TransitionSystem& ts, int sender, int observer,
                                       const HalfDuplexWitness& witness);

}  // namespace covchan
