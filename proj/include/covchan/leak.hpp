#pragma once

#include <vector>

#include "covchan/lts.hpp"

namespace covchan {

struct LeakEstimate {
  int horizon = 0;
  double leak = 0;           // bits per transition at the horizon
  size_t joint_size = 0;     // support of the sender/observer joint there
  std::vector<double> estimates;  // one per horizon 1..n
};

// Millen-style average leak: enumerate the length-n words of the system
// with their probabilities (paths with equal labels summed), project each
// word onto the sender's executed actions and the observer's visible
// actions, and return I(sender view; observer view) / n. The model's own
// probabilities are used; no maximization over word distributions.
LeakEstimate leak_rate(const TransitionSystem& ts, int sender, int observer, int horizon,
                       size_t frontier_cap = 1u << 20);

}  // namespace covchan
