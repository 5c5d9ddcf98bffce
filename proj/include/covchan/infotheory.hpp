#pragma once

#include <span>
#include <string>
#include <vector>

#include "covchan/lts.hpp"

namespace covchan {

// Finite probability distribution with named support.
struct Distribution {
  std::vector<std::string> support;
  std::vector<double> probs;
};

std::vector<Diagnostic> validate_distribution(const Distribution& d);

// Joint distribution over a product of two finite alphabets.
struct Joint {
  std::vector<std::string> xs;
  std::vector<std::string> ys;
  std::vector<std::vector<double>> p;  // [x][y]
};

// Discrete memoryless channel. Entries stay rational so that channels
// extracted from models can be compared entrywise exactly; capacity
// computation is the only place they are converted to floating point.
struct Dmc {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<std::vector<Rational>> rows;  // [input][output]

  bool operator==(const Dmc&) const = default;
};

std::vector<Diagnostic> validate_dmc(const Dmc& ch);

// Memoryless channel whose state is drawn i.i.d. per use and known
// causally at the transmitter. Input alphabets are per state; the output
// alphabet is shared.
struct StateChannel {
  std::vector<std::string> states;
  std::vector<Rational> state_probs;
  std::vector<std::vector<std::string>> inputs;           // per state
  std::vector<std::string> outputs;
  std::vector<std::vector<std::vector<Rational>>> rows;   // [state][input][output]
  bool iid_state = true;  // structural assumption carried as metadata

  bool operator==(const StateChannel&) const = default;
};

std::vector<Diagnostic> validate_state_channel(const StateChannel& ch);

double entropy_bits(std::span<const double> probs);
double entropy(const Distribution& d);

// I(X;Y) = H(X) + H(Y) - H(X,Y).
double mutual_information(const Joint& joint);

struct CapacityResult {
  double capacity = 0;         // best achievable lower bound
  double upper_bound = 0;
  std::vector<double> input_distribution;  // aligned with Dmc inputs
  int iterations = 0;
  bool converged = false;
  std::vector<double> lower_bounds;  // one per iteration, non-decreasing
};

// Alternating maximization from the uniform input distribution, stopping
// when the standard upper/lower bound gap drops below tol. Deterministic.
CapacityResult dmc_capacity(const Dmc& ch, double tol = 1e-9, int max_iter = 10000);

// Causal side information at the transmitter: the equivalent memoryless
// channel takes input vectors over the product of the per-state alphabets,
// with r(y|t) = sum_s p(s) p(y | t(s), s).
Dmc reduce_state_channel(const StateChannel& ch);

CapacityResult state_channel_capacity(const StateChannel& ch, double tol = 1e-9,
                                      int max_iter = 10000);

// Closed form log2(1 + 2^{-s(p)}) with s(p) = H(p)/(1-p); continuous
// extension at the endpoints (C(0) = 1, C(1) = 0).
double z_channel_capacity(double p);

}  // namespace covchan
