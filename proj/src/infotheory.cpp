#include "covchan/infotheory.hpp"

#include <algorithm>
#include <cmath>

namespace covchan {

namespace {

constexpr double kProbTol = 1e-9;

void check_sums_to_one(std::span<const double> probs, const char* what,
                       std::vector<Diagnostic>& diags) {
  double sum = 0;
  for (double p : probs) {
    sum += p;
    if (p < -kProbTol || p > 1 + kProbTol) {
      diags.push_back({Diagnostic::Severity::Error,
                       std::string(what) + ": probability outside [0,1]"});
      return;
    }
  }
  if (std::abs(sum - 1.0) > kProbTol) {
    diags.push_back({Diagnostic::Severity::Error,
                     std::string(what) + ": probabilities sum to " + std::to_string(sum)});
  }
}

void check_rational_row(std::span<const Rational> row, const char* what,
                        std::vector<Diagnostic>& diags) {
  Rational sum(0);
  for (const Rational& p : row) {
    if (p < Rational(0) || p > Rational(1)) {
      diags.push_back({Diagnostic::Severity::Error,
                       std::string(what) + ": entry outside [0,1]"});
      return;
    }
    sum += p;
  }
  Rational gap = sum - Rational(1);
  if (gap < Rational(0)) gap = -gap;
  if (to_double(gap) > kProbTol) {
    diags.push_back({Diagnostic::Severity::Error, std::string(what) + ": row sums to " +
                                                      format_rational_pretty(sum)});
  }
}

}  // namespace

std::vector<Diagnostic> validate_distribution(const Distribution& d) {
  std::vector<Diagnostic> diags;
  if (d.support.size() != d.probs.size()) {
    diags.push_back({Diagnostic::Severity::Error, "distribution: support/probability size mismatch"});
    return diags;
  }
  if (d.probs.empty()) {
    diags.push_back({Diagnostic::Severity::Error, "distribution: empty support"});
    return diags;
  }
  check_sums_to_one(d.probs, "distribution", diags);
  return diags;
}

std::vector<Diagnostic> validate_dmc(const Dmc& ch) {
  std::vector<Diagnostic> diags;
  if (ch.inputs.empty() || ch.outputs.empty()) {
    diags.push_back({Diagnostic::Severity::Error, "channel: empty input or output alphabet"});
    return diags;
  }
  if (ch.rows.size() != ch.inputs.size()) {
    diags.push_back({Diagnostic::Severity::Error, "channel: one row per input required"});
    return diags;
  }
  for (size_t x = 0; x < ch.rows.size(); ++x) {
    if (ch.rows[x].size() != ch.outputs.size()) {
      diags.push_back({Diagnostic::Severity::Error,
                       "channel: row '" + ch.inputs[x] + "' has wrong arity"});
      return diags;
    }
    check_rational_row(ch.rows[x], ("channel row '" + ch.inputs[x] + "'").c_str(), diags);
  }
  return diags;
}

std::vector<Diagnostic> validate_state_channel(const StateChannel& ch) {
  std::vector<Diagnostic> diags;
  if (ch.states.empty()) {
    diags.push_back({Diagnostic::Severity::Error, "state channel: no states"});
    return diags;
  }
  if (ch.state_probs.size() != ch.states.size() || ch.inputs.size() != ch.states.size() ||
      ch.rows.size() != ch.states.size()) {
    diags.push_back({Diagnostic::Severity::Error, "state channel: per-state tables incomplete"});
    return diags;
  }
  check_rational_row(ch.state_probs, "state distribution", diags);
  for (size_t s = 0; s < ch.states.size(); ++s) {
    if (ch.inputs[s].empty()) {
      diags.push_back({Diagnostic::Severity::Error,
                       "state channel: state '" + ch.states[s] + "' has no inputs"});
      continue;
    }
    if (ch.rows[s].size() != ch.inputs[s].size()) {
      diags.push_back({Diagnostic::Severity::Error,
                       "state channel: state '" + ch.states[s] + "' row count mismatch"});
      continue;
    }
    for (size_t x = 0; x < ch.rows[s].size(); ++x) {
      if (ch.rows[s][x].size() != ch.outputs.size()) {
        diags.push_back({Diagnostic::Severity::Error,
                         "state channel: state '" + ch.states[s] + "' has a malformed row"});
        continue;
      }
      check_rational_row(ch.rows[s][x],
                         ("state '" + ch.states[s] + "' input '" + ch.inputs[s][x] + "'").c_str(),
                         diags);
    }
  }
  return diags;
}

double entropy_bits(std::span<const double> probs) {
  double h = 0;
  for (double p : probs) {
    if (p > 0) h -= p * std::log2(p);
  }
  return h;
}

double entropy(const Distribution& d) { return entropy_bits(d.probs); }

double mutual_information(const Joint& joint) {
  std::vector<double> px(joint.xs.size(), 0.0);
  std::vector<double> py(joint.ys.size(), 0.0);
  std::vector<double> pxy;
  pxy.reserve(joint.xs.size() * joint.ys.size());
  for (size_t x = 0; x < joint.xs.size(); ++x) {
    for (size_t y = 0; y < joint.ys.size(); ++y) {
      double p = joint.p[x][y];
      px[x] += p;
      py[y] += p;
      pxy.push_back(p);
    }
  }
  return entropy_bits(px) + entropy_bits(py) - entropy_bits(pxy);
}

CapacityResult dmc_capacity(const Dmc& ch, double tol, int max_iter) {
  if (tol <= 0) throw Error("capacity tolerance must be positive");
  if (max_iter <= 0) throw Error("capacity iteration budget must be positive");
  {
    auto diags = validate_dmc(ch);
    if (has_errors(diags)) throw Error("invalid channel: " + diags.front().message);
  }

  const size_t n = ch.inputs.size();

  // Outputs nobody can produce would put log(0) terms in the iteration.
  std::vector<int> cols;
  for (size_t y = 0; y < ch.outputs.size(); ++y) {
    bool live = false;
    for (size_t x = 0; x < n; ++x) live = live || ch.rows[x][y] > Rational(0);
    if (live) cols.push_back(static_cast<int>(y));
  }
  const size_t m = cols.size();
  std::vector<std::vector<double>> w(n, std::vector<double>(m));
  for (size_t x = 0; x < n; ++x) {
    for (size_t j = 0; j < m; ++j) w[x][j] = to_double(ch.rows[x][cols[j]]);
  }

  CapacityResult result;
  std::vector<double> p(n, 1.0 / static_cast<double>(n));
  std::vector<double> r(m), d(n);

  for (int iter = 1; iter <= max_iter; ++iter) {
    for (size_t j = 0; j < m; ++j) {
      r[j] = 0;
      for (size_t x = 0; x < n; ++x) r[j] += p[x] * w[x][j];
    }
    // Per-input divergence between the row and the output mixture; its
    // p-average is achievable, its maximum bounds the capacity from above.
    double lower = 0, upper = 0;
    for (size_t x = 0; x < n; ++x) {
      double t = 0;
      for (size_t j = 0; j < m; ++j) {
        if (w[x][j] > 0) t += w[x][j] * std::log2(w[x][j] / r[j]);
      }
      d[x] = t;
      lower += p[x] * t;
      upper = x == 0 ? t : std::max(upper, t);
    }
    result.iterations = iter;
    result.lower_bounds.push_back(lower);
    result.capacity = lower;
    result.upper_bound = upper;
    if (upper - lower <= tol) {
      result.converged = true;
      break;
    }
    double z = 0;
    for (size_t x = 0; x < n; ++x) {
      p[x] *= std::exp2(d[x]);
      z += p[x];
    }
    for (size_t x = 0; x < n; ++x) p[x] /= z;
  }
  result.input_distribution = p;
  return result;
}

Dmc reduce_state_channel(const StateChannel& ch) {
  {
    auto diags = validate_state_channel(ch);
    if (has_errors(diags)) throw Error("invalid state channel: " + diags.front().message);
  }

  size_t tuples = 1;
  for (const auto& xs : ch.inputs) {
    tuples *= xs.size();
    if (tuples > 1000000) throw Error("state channel input product exceeds 1e6 vectors");
  }

  Dmc out;
  out.outputs = ch.outputs;
  std::vector<size_t> pick(ch.states.size(), 0);
  for (size_t t = 0; t < tuples; ++t) {
    std::string label = "(";
    for (size_t s = 0; s < ch.states.size(); ++s) {
      if (s) label += ",";
      label += ch.inputs[s][pick[s]];
    }
    label += ")";
    if (ch.states.size() == 1) label = ch.inputs[0][pick[0]];
    out.inputs.push_back(label);

    std::vector<Rational> row(ch.outputs.size(), Rational(0));
    for (size_t s = 0; s < ch.states.size(); ++s) {
      for (size_t y = 0; y < ch.outputs.size(); ++y) {
        row[y] += ch.state_probs[s] * ch.rows[s][pick[s]][y];
      }
    }
    out.rows.push_back(std::move(row));

    for (size_t s = ch.states.size(); s-- > 0;) {
      if (++pick[s] < ch.inputs[s].size()) break;
      pick[s] = 0;
    }
  }
  return out;
}

CapacityResult state_channel_capacity(const StateChannel& ch, double tol, int max_iter) {
  return dmc_capacity(reduce_state_channel(ch), tol, max_iter);
}

double z_channel_capacity(double p) {
  if (p < 0 || p > 1) throw Error("loss probability outside [0,1]");
  if (p <= 0) return 1.0;
  if (p >= 1) return 0.0;
  double h = -p * std::log2(p) - (1 - p) * std::log2(1 - p);
  double s = h / (1 - p);
  return std::log2(1 + std::exp2(-s));
}

}  // namespace covchan
