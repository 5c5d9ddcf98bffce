#include <doctest.h>

#include "covchan/corpus.hpp"
#include "covchan/interference.hpp"
#include "helpers.hpp"

using namespace covchan;

TEST_SUITE_BEGIN("interference");

TEST_CASE("paper verdicts on the three interferent systems") {
  TransitionSystem s1 = corpus_model("s1");
  TransitionSystem s2 = corpus_model("s2");
  TransitionSystem s3 = corpus_model("s3");

  CHECK(snni(s1, "u", "v").interferes);
  CHECK(!snni(s1, "v", "u").interferes);
  CHECK(snni(s2, "v", "u").interferes);
  CHECK(!snni(s2, "u", "v").interferes);
  CHECK(snni(s3, "u", "v").interferes);
  CHECK(snni(s3, "v", "u").interferes);
}

TEST_CASE("the channel-bearing system is nevertheless non-interferent") {
  TransitionSystem ts = corpus_model("no-interf-cc");
  CHECK(!snni(ts, "u", "v").interferes);
}

TEST_CASE("a process with no actions cannot interfere") {
  TransitionSystem ts = corpus_model("s1");
  ts.processes.push_back("ghost");
  InterferenceVerdict verdict = snni(ts, "ghost", "v");
  CHECK(!verdict.interferes);
  CHECK(!verdict.witness.has_value());
}

TEST_CASE("identical or unknown processes are rejected") {
  TransitionSystem ts = corpus_model("s1");
  CHECK_THROWS_AS(snni(ts, "u", "u"), Error);
  CHECK_THROWS_AS(snni(ts, "u", "nobody"), Error);
}

TEST_CASE("witnesses replay on exactly one side") {
  std::mt19937 rng(21);
  int interferent = 0;
  for (int i = 0; i < 60; ++i) {
    TransitionSystem ts = testutil::random_lts(rng);
    InterferenceVerdict verdict = snni(ts, 0, 1);
    if (!verdict.interferes) continue;
    ++interferent;
    REQUIRE(verdict.witness.has_value());
    TransitionSystem full = project_to_process(ts, 1);
    TransitionSystem stripped = project_to_process(restrict_drop_process(ts, 0), 1);
    bool in_full = testutil::word_in_lts(full, *verdict.witness);
    bool in_stripped = testutil::word_in_lts(stripped, *verdict.witness);
    CAPTURE(join_word(*verdict.witness));
    CHECK(in_full != in_stripped);
  }
  CHECK(interferent > 3);  // the generator must exercise the positive path
}

TEST_CASE("processes with no executed actions never interfere on random models") {
  std::mt19937 rng(22);
  for (int i = 0; i < 40; ++i) {
    TransitionSystem ts = testutil::random_lts(rng);
    for (int p = 0; p < 2; ++p) {
      if (!ts.actions_of_executor(p).empty()) continue;
      CHECK(!snni(ts, p, 1 - p).interferes);
    }
  }
}

TEST_SUITE_END();
