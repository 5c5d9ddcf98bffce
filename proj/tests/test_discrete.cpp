#include <doctest.h>

#include "covchan/corpus.hpp"
#include "covchan/discrete.hpp"
#include "helpers.hpp"

using namespace covchan;

namespace {

int find_transition(const TransitionSystem& ts, const std::string& src,
                    const std::string& action) {
  for (size_t i = 0; i < ts.transitions.size(); ++i) {
    const auto& t = ts.transitions[i];
    if (ts.states[t.src] == src && t.action != kTau && ts.actions[t.action] == action) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

}  // namespace

TEST_SUITE_BEGIN("discrete");

TEST_CASE("after-language is rooted at the taken transition") {
  TransitionSystem ts = corpus_model("disc-yes");
  int t = find_transition(ts, "q0", "a");
  REQUIRE(t >= 0);
  LangHandle lang = after_language(ts, ts.state_id("q0"), t);
  CHECK(lang.accepts({"a"}));
  CHECK(lang.accepts({"a", "c"}));
  CHECK(lang.accepts({"a", "c", "b"}));
  CHECK(!lang.accepts({}));
  CHECK(!lang.accepts({"b"}));
  CHECK_THROWS_AS(after_language(ts, ts.state_id("q1"), t), Error);
}

TEST_CASE("after-language of a transition into a deadlock is the single word") {
  TransitionSystem ts;
  ts.processes = {"u"};
  ts.actions = {"a"};
  ts.executor = {0};
  ts.observers = {{0}};
  ts.states = {"s0", "s1"};
  ts.initial = 0;
  ts.transitions = {{0, 0, 1, std::nullopt}};
  LangHandle lang = after_language(ts, 0, 0);
  CHECK(lang.accepts({"a"}));
  CHECK(!lang.accepts({}));
  CHECK(!lang.accepts({"a", "a"}));
}

TEST_CASE("overlapping relay answers are caught by the consequence languages") {
  TransitionSystem ts = corpus_model("disc-no");
  int q0 = ts.state_id("q0");
  int ta = find_transition(ts, "q0", "a");
  int tb = find_transition(ts, "q0", "b");
  int v = ts.process_id("v");
  LangHandle oca = observable_consequences(ts, q0, ta, v);
  LangHandle ocb = observable_consequences(ts, q0, tb, v);
  CHECK(!LangHandle::intersect_empty(oca, ocb));
  // The shared continuation: relay answers e, then the observer's f.
  CHECK(oca.accepts({"e", "f"}));
  CHECK(ocb.accepts({"e", "f"}));

  // The overlap language: e.f followed by rounds of (c+d+e).f.
  TransitionSystem overlap;
  overlap.processes = {"v"};
  overlap.actions = {"c", "d", "e", "f"};
  overlap.executor = {0, 0, 0, 0};
  overlap.observers = {{0}, {0}, {0}, {0}};
  overlap.states = {"A", "B", "C"};
  overlap.initial = 0;
  overlap.transitions = {{0, 2, 1, std::nullopt},   // e
                         {1, 3, 2, std::nullopt},   // f
                         {2, 0, 1, std::nullopt},   // c
                         {2, 1, 1, std::nullopt},   // d
                         {2, 2, 1, std::nullopt}};  // e
  CHECK(LangHandle::equal(LangHandle::intersection(oca, ocb),
                          LangHandle::from_lts(overlap).without_epsilon()));
}

TEST_CASE("disjoint consequence languages of the two-choice system") {
  TransitionSystem ts = corpus_model("disc-yes");
  int q0 = ts.state_id("q0");
  int v = ts.process_id("v");
  LangHandle oca = observable_consequences(ts, q0, find_transition(ts, "q0", "a"), v);
  LangHandle ocb = observable_consequences(ts, q0, find_transition(ts, "q0", "b"), v);
  CHECK(LangHandle::intersect_empty(oca, ocb));
  CHECK(!oca.empty());
  CHECK(!ocb.empty());
  CHECK(oca.accepts({"c"}));
  CHECK(ocb.accepts({"d"}));
}

TEST_CASE("encoding states of the paper systems") {
  SUBCASE("two disjoint sender choices encode") {
    TransitionSystem ts = corpus_model("disc-yes");
    auto pair = is_encoding_state(ts, ts.state_id("q0"), 0, 1);
    REQUIRE(pair.has_value());
    CHECK(ts.actions[ts.transitions[pair->first].action] == "a");
    CHECK(ts.actions[ts.transitions[pair->second].action] == "b");
  }
  SUBCASE("pairwise-overlapping choices do not encode") {
    TransitionSystem ts = corpus_model("cc-a");
    CHECK(!is_encoding_state(ts, ts.state_id("q0"), 0, 1).has_value());
  }
  SUBCASE("a single outgoing transition cannot encode") {
    TransitionSystem ts = corpus_model("s3");
    CHECK(!is_encoding_state(ts, 0, 0, 1).has_value());
    CHECK(!is_encoding_state(ts, 1, 0, 1).has_value());
  }
  SUBCASE("invisible consequences do not encode") {
    // Sender picks a or b but the observer never sees anything.
    TransitionSystem ts = corpus_model("disc-yes");
    ts.observers[2] = {0};  // c invisible to v
    ts.observers[3] = {0};  // d invisible to v
    CHECK(!is_encoding_state(ts, ts.state_id("q0"), 0, 1).has_value());
  }
}

TEST_CASE("discrete-channel detection on the corpus") {
  auto detect = [](const char* name) {
    TransitionSystem ts = corpus_model(name);
    return detect_discrete_channel(ts, ts.process_id("u"), ts.process_id("v"), 10000);
  };

  DiscreteChannelVerdict yes = detect("disc-yes");
  CHECK(yes.found);
  CHECK(yes.encoding_states == std::vector<int>{0});
  CHECK(yes.f_sender.allowed.empty());    // allow-all strategies suffice
  CHECK(yes.f_observer.allowed.empty());

  for (const char* name : {"disc-no", "cc-a", "s1", "s2", "s3"}) {
    CAPTURE(name);
    DiscreteChannelVerdict verdict = detect(name);
    CHECK(!verdict.found);
    CHECK(verdict.exhaustiveness == Exhaustiveness::Full);
    CHECK(verdict.pairs_evaluated <= 10000);
  }

  // The channel branch of the non-interferent system moves a clean bit
  // per round, so the detector sees it.
  DiscreteChannelVerdict hidden = detect("no-interf-cc");
  CHECK(hidden.found);
}

TEST_CASE("budget handling") {
  TransitionSystem ts = corpus_model("cc-a");
  CHECK_THROWS_AS(detect_discrete_channel(ts, 0, 1, 0), Error);
  DiscreteChannelVerdict tiny = detect_discrete_channel(ts, 0, 1, 3);
  CHECK(!tiny.found);
  CHECK(tiny.exhaustiveness == Exhaustiveness::BudgetExhausted);
  CHECK(tiny.pairs_evaluated == 3);
}

TEST_CASE("found verdicts replay") {
  std::mt19937 rng(41);
  auto replay = [](const DiscreteChannelVerdict& verdict, int sender, int observer) {
    REQUIRE(!verdict.encoding_states.empty());
    const TransitionSystem& restricted = verdict.restricted;
    auto reach_from = [&](int from) {
      std::vector<bool> reach(restricted.states.size(), false);
      std::vector<int> stack{from};
      reach[from] = true;
      auto adj = restricted.adjacency();
      while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        for (int t : adj[s]) {
          int dst = restricted.transitions[t].dst;
          if (!reach[dst]) {
            reach[dst] = true;
            stack.push_back(dst);
          }
        }
      }
      return reach;
    };
    auto from_initial = reach_from(restricted.initial);
    bool some_recurrent = false;
    for (int q : verdict.encoding_states) {
      CHECK(is_encoding_state(restricted, q, sender, observer).has_value());
      bool cycle = false;
      for (int t : restricted.outgoing(q)) {
        int successor = restricted.transitions[t].dst;
        if (successor == q || reach_from(successor)[q]) cycle = true;
      }
      if (from_initial[q] && cycle) some_recurrent = true;
    }
    CHECK(some_recurrent);
  };

  TransitionSystem disc_yes = corpus_model("disc-yes");
  replay(detect_discrete_channel(disc_yes, 0, 1, 10000), 0, 1);

  TransitionSystem corrupt = corpus_model("ack-corrupt");
  DiscreteChannelVerdict ack =
      detect_discrete_channel(corrupt, corrupt.process_id("ct"), corrupt.process_id("co"), 10000);
  CHECK(ack.found);
  replay(ack, corrupt.process_id("ct"), corrupt.process_id("co"));

  int found = 0;
  for (int i = 0; i < 30; ++i) {
    TransitionSystem ts = testutil::random_channel_lts(rng);
    DiscreteChannelVerdict verdict = detect_discrete_channel(ts, 0, 1, 2000);
    if (verdict.found) {
      ++found;
      replay(verdict, 0, 1);
    }
  }
  CHECK(found > 0);
}

TEST_CASE("strategies only restrict the colluding pair") {
  std::mt19937 rng(42);
  for (int i = 0; i < 30; ++i) {
    TransitionSystem ts = testutil::random_lts(rng, 5, 4, false);
    DiscreteChannelVerdict verdict = detect_discrete_channel(ts, 0, 1, 2000);
    // The restricted system drops a subset of the original transitions,
    // all of them executed by the pair.
    CHECK(verdict.restricted.transitions.size() <= ts.transitions.size());
    size_t kept = 0;
    for (const auto& t : ts.transitions) {
      bool survives = false;
      for (const auto& r : verdict.restricted.transitions) {
        if (r == t) {
          survives = true;
          break;
        }
      }
      if (survives) {
        ++kept;
      } else {
        REQUIRE(t.action != kTau);
        int ex = ts.executor[t.action];
        CHECK((ex == 0 || ex == 1));
      }
    }
    CHECK(kept <= ts.transitions.size());
    // Restriction by strategies can only shrink the language.
    CHECK(!LangHandle::subset_witness(LangHandle::from_lts(verdict.restricted),
                                      LangHandle::from_lts(ts))
               .has_value());
  }
}

TEST_SUITE_END();
