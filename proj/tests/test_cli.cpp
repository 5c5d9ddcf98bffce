#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "covchan/cli.hpp"
#include "covchan/corpus.hpp"
#include "covchan/halfduplex.hpp"
#include "covchan/leak.hpp"
#include "covchan/model_io.hpp"

using namespace covchan;
namespace fs = std::filesystem;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
  AnalysisReport report;
};

Invocation run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  AnalysisReport report;
  int code = run_cli(args, out, err, &report);
  return {code, out.str(), err.str(), report};
}

// Emit every corpus entry into a fresh temp directory once.
const fs::path& corpus_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "covchan-cli-tests";
    fs::create_directories(d);
    for (const auto& name : corpus_model_names()) {
      Invocation r = run({"corpus", name, "-o", (d / (name + ".lts")).string()});
      REQUIRE(r.code == 0);
    }
    for (const auto& name : corpus_channel_names()) {
      Invocation r = run({"corpus", name, "-o", (d / (name + ".chan")).string()});
      REQUIRE(r.code == 0);
    }
    return d;
  }();
  return dir;
}

std::string model(const std::string& name) {
  return (corpus_dir() / (name + ".lts")).string();
}
std::string channel(const std::string& name) {
  return (corpus_dir() / (name + ".chan")).string();
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("corpus listing and emission") {
  Invocation list = run({"corpus"});
  CHECK(list.code == 0);
  CHECK(list.out.find("ack-corrupt") != std::string::npos);

  Invocation emit = run({"corpus", "s1"});
  CHECK(emit.code == 0);
  TransitionSystem ts = parse_model(emit.out);
  CHECK(ts == corpus_model("s1"));

  Invocation losses = run({"corpus", "ack-corrupt", "--loss", "1/3"});
  CHECK(losses.code == 0);
  CHECK(parse_model(losses.out) == corpus_model("ack-corrupt", Rational(1, 3)));

  CHECK(run({"corpus", "no-such-entry"}).code == 1);
}

TEST_CASE("every corpus model passes validate through the CLI") {
  for (const auto& name : corpus_model_names()) {
    CAPTURE(name);
    Invocation r = run({"validate", model(name)});
    CHECK(r.code == 0);
    CHECK(r.report.verdicts.at("valid").get<bool>());
  }
}

TEST_CASE("interference through the CLI") {
  Invocation r = run({"interfere", model("s1"), "u", "v"});
  CHECK(r.code == 0);
  CHECK(r.report.verdicts.at("interferes").get<bool>());
  CHECK(r.out.find("yes") != std::string::npos);

  Invocation no = run({"interfere", model("no-interf-cc"), "u", "v"});
  CHECK(no.code == 0);
  CHECK(!no.report.verdicts.at("interferes").get<bool>());
}

TEST_CASE("capacity through the CLI") {
  Invocation r = run({"capacity", channel("fig6-c")});
  CHECK(r.code == 0);
  double c = r.report.capacities.at("channel").at("capacity").get<double>();
  CHECK(c == doctest::Approx(0.58496).epsilon(1e-4));

  Invocation z = run({"capacity", "--closed-form", "z", "--p", "0.5"});
  CHECK(z.code == 0);
  CHECK(z.report.capacities.at("z_channel").get<double>() ==
        doctest::Approx(0.3219280949).epsilon(1e-6));
}

TEST_CASE("extract feeds capacity") {
  fs::path out = corpus_dir() / "extracted.chan";
  Invocation ex = run({"extract", model("ack-corrupt"), "ct", "co", "--control", "idle",
                       "-o", out.string()});
  REQUIRE(ex.code == 0);
  Invocation cap = run({"capacity", out.string()});
  CHECK(cap.code == 0);
  CHECK(cap.report.capacities.at("channel").at("capacity").get<double>() ==
        doctest::Approx(0.7628482).epsilon(1e-5));
}

TEST_CASE("project exports a parsable model") {
  Invocation r = run({"project", model("s1"), "--process", "v"});
  REQUIRE(r.code == 0);
  TransitionSystem projected = parse_model(r.out);
  bool has_tau = false;
  for (const auto& t : projected.transitions) has_tau = has_tau || t.action == kTau;
  CHECK(has_tau);  // the sender's action became unobservable
  CHECK(run({"project", model("s1"), "--keep", "b,c"}).code == 0);
  CHECK(run({"project", model("s1")}).code == 1);
  CHECK(run({"project", model("s1"), "--process", "v", "--keep", "b"}).code == 1);
}

TEST_CASE("discrete detection exit codes distinguish exhaustion") {
  CHECK(run({"discrete", model("disc-yes"), "u", "v"}).code == 0);
  Invocation complete = run({"discrete", model("disc-no"), "u", "v"});
  CHECK(complete.code == 0);
  CHECK(complete.report.verdicts.at("exhaustive").get<bool>());
  Invocation starved = run({"discrete", model("cc-a"), "u", "v", "--budget", "2"});
  CHECK(starved.code == 2);
  CHECK(!starved.report.verdicts.at("exhaustive").get<bool>());
}

TEST_CASE("leak hits its cap with exit code 2") {
  CHECK(run({"leak", model("cc-b"), "u", "v", "--horizon", "9"}).code == 0);
  CHECK(run({"leak", model("cc-b"), "u", "v", "--horizon", "12", "--cap", "2"}).code == 2);
}

TEST_CASE("encoding states listing") {
  Invocation r = run({"encoding-states", model("disc-yes"), "u", "v"});
  CHECK(r.code == 0);
  CHECK(r.report.verdicts.at("count").get<int>() == 1);
  CHECK(r.report.witnesses.at("states").contains("q0"));
}

TEST_CASE("halfduplex and verify through the CLI") {
  Invocation hd = run({"halfduplex", model("ack-corrupt"), "ct", "co"});
  CHECK(hd.code == 0);
  CHECK(hd.report.verdicts.at("half_duplex").get<bool>());

  // Ban the pair in the baseline to trigger the control-flow predicate.
  fs::path banned = corpus_dir() / "ack-honest-banned.lts";
  {
    std::ifstream in(model("ack-honest"));
    std::stringstream text;
    text << in.rdbuf();
    std::ofstream out(banned);
    out << text.str() << "policy forbid ct co\n";
  }
  Invocation cf = run({"verify", "--baseline", banned.string(), "--variant",
                       model("ack-corrupt"), "--from", "ct", "--to", "co"});
  CHECK(cf.code == 0);
  CHECK(cf.report.verdicts.at("holds").get<bool>());

  Invocation leg = run({"verify", "--baseline", model("ack-honest"), "--variant",
                        model("ack-corrupt"), "--from", "ct", "--to", "co", "--legitimate"});
  CHECK(leg.code == 0);
  CHECK(leg.report.verdicts.at("holds").get<bool>());
  CHECK(leg.report.capacities.at("baseline").get<double>() == doctest::Approx(0.0));

  // A policy automaton that only allows the honest behavior rejects the
  // corrupted variant.
  Invocation policed =
      run({"verify", "--baseline", model("ack-honest"), "--variant", model("ack-corrupt"),
           "--from", "ct", "--to", "co", "--legitimate", "--policy", model("ack-honest")});
  CHECK(policed.code == 0);
  CHECK(!policed.report.verdicts.at("holds").get<bool>());
  CHECK(policed.report.verdicts.at("failing_condition").get<std::string>() == "policy");
}

TEST_CASE("search finds the corrupted variant") {
  Invocation r = run({"search", model("ack-honest"), "ct", "co", "--budget", "400",
                      "--legitimate"});
  CHECK(r.code == 0);
  CHECK(r.report.verdicts.at("holding").get<int>() > 0);
  TransitionSystem variant = parse_model(r.report.witnesses.at("variant").get<std::string>());
  CHECK(variant.states.size() == 8);
}

TEST_CASE("json reports round-trip through the CLI output") {
  std::vector<std::vector<std::string>> invocations = {
      {"interfere", model("s2"), "v", "u"},
      {"validate", model("cc-a")},
      {"discrete", model("disc-yes"), "u", "v"},
      {"halfduplex", model("no-interf-cc"), "u", "v"},
      {"extract", model("cc-a"), "u", "v", "--control", "q0"},
      {"capacity", channel("fig3-a")},
      {"leak", model("cc-b"), "u", "v", "--horizon", "6"},
      {"encoding-states", model("disc-no"), "u", "v"},
      {"corpus", "s3"},
      {"project", model("s1"), "--process", "v"},
  };
  for (auto args : invocations) {
    CAPTURE(args[0]);
    args.insert(args.begin(), "--json");
    std::ostringstream out, err;
    AnalysisReport report;
    int code = run_cli(args, out, err, &report);
    REQUIRE(code == 0);
    CHECK(parse_report(out.str()) == report);
  }
}

TEST_CASE("extract refuses systems without half-duplex structure") {
  Invocation r = run({"extract", model("s1"), "u", "v"});
  CHECK(r.code == 1);
  CHECK(r.err.find("not half-duplex") != std::string::npos);
}

TEST_CASE("usage and file errors exit with one") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"interfere", "/nonexistent.lts", "u", "v"}).code == 1);
  CHECK(run({"interfere", model("s1"), "u", "ghost"}).code == 1);
  CHECK(run({"capacity"}).code == 1);
  fs::path bad = corpus_dir() / "bad.lts";
  std::ofstream(bad) << "states *s0\n";  // no actions section
  CHECK(run({"validate", bad.string()}).code == 1);
}

TEST_CASE("semantic validation failures are a verdict, not a crash") {
  fs::path skewed = corpus_dir() / "skewed.lts";
  std::ofstream(skewed) << "processes u\n"
                           "action a exec=u obs=u\n"
                           "states *s0 s1\n"
                           "trans s0 a s1 prob=0.6\n"
                           "trans s0 a s0 prob=0.6\n";
  Invocation v = run({"validate", skewed.string()});
  CHECK(v.code == 0);
  CHECK(!v.report.verdicts.at("valid").get<bool>());
  CHECK(v.out.find("sums to 1.2") != std::string::npos);
  // Analyses refuse the same file outright.
  CHECK(run({"interfere", skewed.string(), "u", "u"}).code == 1);
}

TEST_CASE("help exits cleanly") {
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("analyses run concurrently on shared immutable inputs") {
  TransitionSystem corrupt = corpus_model("ack-corrupt");
  TransitionSystem relay = corpus_model("cc-b");
  std::vector<std::future<double>> futures;
  for (int i = 0; i < 8; ++i) {
    futures.push_back(std::async(std::launch::async, [&corrupt, &relay, i] {
      if (i % 2 == 0) {
        auto hd = check_half_duplex(corrupt, corrupt.process_id("ct"),
                                    corrupt.process_id("co"));
        auto ex = extract_state_channel(corrupt, corrupt.process_id("ct"),
                                        corrupt.process_id("co"), hd.witnesses.front());
        return state_channel_capacity(ex.channel).capacity;
      }
      return leak_rate(relay, relay.process_id("u"), relay.process_id("v"), 9).leak;
    }));
  }
  for (size_t i = 0; i < futures.size(); ++i) {
    double value = futures[i].get();
    if (i % 2 == 0) {
      CHECK(value == doctest::Approx(0.7628482).epsilon(1e-5));
    } else {
      CHECK(value == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("identical invocations give byte-identical output") {
  std::vector<std::vector<std::string>> invocations = {
      {"--json", "extract", model("ack-corrupt"), "ct", "co"},
      {"--json", "search", model("ack-honest"), "ct", "co", "--budget", "60",
       "--legitimate"},
      {"--json", "discrete", model("cc-a"), "u", "v"},
      {"--json", "leak", model("cc-b"), "u", "v", "--horizon", "9"},
  };
  for (const auto& args : invocations) {
    CAPTURE(args[1]);
    Invocation first = run(args);
    Invocation second = run(args);
    REQUIRE(first.code == second.code);
    CHECK(first.out == second.out);
  }
}

TEST_SUITE_END();
