#pragma once

#include <string>
#include <variant>
#include <vector>

#include "covchan/infotheory.hpp"
#include "covchan/lts.hpp"

namespace covchan {

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Line-oriented model format:
//
//   # stop-and-wait round
//   processes u v
//   action a exec=u obs=u
//   action b exec=v obs=u,v
//   states *q0 q1
//   trans q0 a q1 prob=1/2
//   trans q0 tau q0 prob=0.5
//   policy forbid u v
//
// Exactly one state carries the leading '*'. Probabilities are exact
// rationals ("a/b" or decimal literals). The label `tau` is reserved for
// unobservable transitions and needs no declaration.
TransitionSystem parse_model(const std::string& text,
                             std::vector<Diagnostic>* warnings = nullptr);

// Syntax only; the caller decides what to do with validation diagnostics.
TransitionSystem parse_model_unchecked(const std::string& text);

std::string serialize_model(const TransitionSystem& ts);

// Channel format, either memoryless:
//
//   channel dmc
//   inputs a b
//   outputs 0 1
//   row a 1 0
//   row b 1/2 1/2
//
// or with i.i.d. state:
//
//   channel state
//   outputs 0 1
//   state S5 prob=9/10 inputs !ack !nack
//   row S5 !ack 0 1
//   row S5 !nack 1 0
//   state S6 prob=1/10 inputs !nack
//   row S6 !nack 1 0
using Channel = std::variant<Dmc, StateChannel>;
Channel parse_channel(const std::string& text);
std::string serialize_channel(const Dmc& ch);
std::string serialize_channel(const StateChannel& ch);

}  // namespace covchan
