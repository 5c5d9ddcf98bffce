#include "covchan/leak.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "covchan/infotheory.hpp"

namespace covchan {

LeakEstimate leak_rate(const TransitionSystem& ts, int sender, int observer, int horizon,
                       size_t frontier_cap) {
  if (sender == observer) throw Error("leak analysis requires distinct processes");
  if (horizon < 1) throw Error("leak horizon must be at least 1");

  auto adj = ts.adjacency();
  auto executed = [&](int t) {
    int a = ts.transitions[t].action;
    return a != kTau && ts.executor[a] == sender;
  };
  auto observed = [&](int t) {
    int a = ts.transitions[t].action;
    if (a == kTau) return false;
    const auto& obs = ts.observers[a];
    return std::find(obs.begin(), obs.end(), observer) != obs.end();
  };

  // Words with equal sender/observer projections are indistinguishable to
  // the pair, so the frontier can merge them as it grows.
  using Key = std::tuple<int, Word, Word>;
  std::map<Key, Rational> frontier;
  frontier[{ts.initial, {}, {}}] = Rational(1);

  LeakEstimate out;
  out.horizon = horizon;

  for (int step = 1; step <= horizon; ++step) {
    std::map<Key, Rational> next;
    for (const auto& [key, prob] : frontier) {
      const auto& [state, u_word, v_word] = key;
      for (int t : adj[state]) {
        Key k{ts.transitions[t].dst, u_word, v_word};
        if (executed(t)) std::get<1>(k).push_back(ts.actions[ts.transitions[t].action]);
        if (observed(t)) std::get<2>(k).push_back(ts.actions[ts.transitions[t].action]);
        next[std::move(k)] += prob * ts.effective_prob(t);
        if (next.size() > frontier_cap) {
          throw LimitError("leak frontier exceeded " + std::to_string(frontier_cap) +
                           " entries at horizon " + std::to_string(step));
        }
      }
    }
    frontier = std::move(next);

    // Marginalize the state away and renormalize over the surviving words
    // (runs that deadlocked earlier contribute no length-n word).
    std::map<std::pair<Word, Word>, Rational> joint;
    Rational total(0);
    for (const auto& [key, prob] : frontier) {
      joint[{std::get<1>(key), std::get<2>(key)}] += prob;
      total += prob;
    }
    double estimate = 0;
    size_t support = joint.size();
    if (total > Rational(0)) {
      std::map<Word, size_t> uidx, vidx;
      for (const auto& [uv, prob] : joint) {
        uidx.emplace(uv.first, uidx.size());
        vidx.emplace(uv.second, vidx.size());
      }
      Joint j;
      j.xs.resize(uidx.size());
      j.ys.resize(vidx.size());
      j.p.assign(uidx.size(), std::vector<double>(vidx.size(), 0.0));
      for (const auto& [uv, prob] : joint) {
        j.p[uidx[uv.first]][vidx[uv.second]] = to_double(prob / total);
      }
      estimate = mutual_information(j) / step;
    }
    out.estimates.push_back(estimate);
    if (step == horizon) {
      out.leak = estimate;
      out.joint_size = support;
    }
  }
  return out;
}

}  // namespace covchan
