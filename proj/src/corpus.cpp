#include "covchan/corpus.hpp"

#include <algorithm>
#include <map>

namespace covchan {

namespace {

// Small builder so the model definitions below stay readable.
struct ModelBuilder {
  TransitionSystem ts;

  ModelBuilder& processes(std::vector<std::string> names) {
    ts.processes = std::move(names);
    return *this;
  }
  ModelBuilder& action(const std::string& name, const std::string& exec,
                       std::vector<std::string> obs) {
    ts.actions.push_back(name);
    ts.executor.push_back(ts.process_id(exec));
    std::vector<int> ids;
    for (const auto& o : obs) ids.push_back(ts.process_id(o));
    std::sort(ids.begin(), ids.end());
    ts.observers.push_back(std::move(ids));
    return *this;
  }
  ModelBuilder& states(std::vector<std::string> names, const std::string& initial) {
    ts.states = std::move(names);
    ts.initial = ts.state_id(initial);
    return *this;
  }
  ModelBuilder& trans(const std::string& src, const std::string& action,
                      const std::string& dst,
                      std::optional<Rational> prob = std::nullopt) {
    ts.transitions.push_back({ts.state_id(src), ts.action_id(action), ts.state_id(dst),
                              std::move(prob)});
    return *this;
  }
};

// One sender transition, then the receiver loops over b(c+d)c. Removing
// the sender empties the receiver's view, so the flow u -> v leaks; the
// single a can fire only once per run.
TransitionSystem build_s1() {
  ModelBuilder b;
  b.processes({"u", "v"})
      .action("a", "u", {"u"})
      .action("b", "v", {"v"})
      .action("c", "v", {"v"})
      .action("d", "v", {"v"})
      .states({"0", "1", "2", "3"}, "0")
      .trans("0", "a", "1")
      .trans("1", "b", "2")
      .trans("2", "c", "3")
      .trans("2", "d", "3")
      .trans("3", "c", "1");
  return b.ts;
}

// The converse: the receiver loops first, and the sender's single action
// deadlocks the system in state 1.
TransitionSystem build_s2() {
  ModelBuilder b;
  b.processes({"u", "v"})
      .action("a", "u", {"u"})
      .action("b", "v", {"v"})
      .action("c", "v", {"v"})
      .action("d", "v", {"v"})
      .states({"0", "1", "2", "3"}, "0")
      .trans("0", "b", "2")
      .trans("2", "c", "3")
      .trans("2", "d", "3")
      .trans("3", "c", "0")
      .trans("3", "a", "1");
  return b.ts;
}

// Strict alternation a.b.a.b...: interferent both ways, repeatable, but
// each user only ever has one choice, so nothing can be encoded.
TransitionSystem build_s3() {
  ModelBuilder b;
  b.processes({"u", "v"})
      .action("a", "u", {"u"})
      .action("b", "v", {"v"})
      .states({"0", "1"}, "0")
      .trans("0", "a", "1")
      .trans("1", "b", "0");
  return b.ts;
}

// Two sender choices at q0 with disjoint, necessarily-visible receiver
// consequences (a forces c, b forces d), looping back to q0.
TransitionSystem build_disc_yes() {
  ModelBuilder b;
  b.processes({"u", "v"})
      .action("a", "u", {"u"})
      .action("b", "u", {"u"})
      .action("c", "v", {"v"})
      .action("d", "v", {"v"})
      .states({"q0", "q1", "q2"}, "q0")
      .trans("q0", "a", "q1")
      .trans("q0", "b", "q2")
      .trans("q1", "c", "q0")
      .trans("q2", "d", "q0");
  return b.ts;
}

// The scheduler r can answer either sender choice with e, so the two
// observable consequence sets overlap on e.f(...) and no state encodes.
TransitionSystem build_disc_no() {
  ModelBuilder b;
  b.processes({"u", "v", "r"})
      .action("a", "u", {"u"})
      .action("b", "u", {"u"})
      .action("c", "r", {"r", "v"})
      .action("d", "r", {"r", "v"})
      .action("e", "r", {"r", "v"})
      .action("f", "v", {"v"})
      .states({"q0", "q1", "q2", "q3"}, "q0")
      .trans("q0", "a", "q1")
      .trans("q0", "b", "q2")
      .trans("q1", "c", "q3")
      .trans("q1", "e", "q3")
      .trans("q2", "d", "q3")
      .trans("q2", "e", "q3")
      .trans("q3", "f", "q0");
  return b.ts;
}

// Each sender choice x/y/z is answered by one of two equiprobable relay
// letters, overlapping pairwise: u can only signal "not x" / "not y" /
// "not z", a fraction of a bit per round.
TransitionSystem build_cc_a() {
  ModelBuilder b;
  b.processes({"u", "v", "r"})
      .action("x", "u", {"u"})
      .action("y", "u", {"u"})
      .action("z", "u", {"u"})
      .action("a", "r", {"r", "v"})
      .action("b", "r", {"r", "v"})
      .action("c", "r", {"r", "v"})
      .action("d", "v", {"v"})
      .action("e", "v", {"v"})
      .states({"q0", "q1", "q2", "q3", "q4", "q5"}, "q0")
      .trans("q0", "x", "q1")
      .trans("q0", "y", "q2")
      .trans("q0", "z", "q3")
      .trans("q1", "a", "q4")
      .trans("q1", "b", "q4")
      .trans("q2", "a", "q4")
      .trans("q2", "c", "q4")
      .trans("q3", "b", "q4")
      .trans("q3", "c", "q4")
      .trans("q4", "d", "q5")
      .trans("q5", "e", "q0");
  return b.ts;
}

// The relay r chooses x or y; u and v merely echo the choice (x.a.c or
// y.b.d). Their behaviors correlate without either of them deciding
// anything.
TransitionSystem build_cc_b() {
  ModelBuilder b;
  b.processes({"u", "v", "r"})
      .action("x", "r", {"r"})
      .action("y", "r", {"r"})
      .action("a", "u", {"u"})
      .action("b", "u", {"u"})
      .action("c", "v", {"v"})
      .action("d", "v", {"v"})
      .states({"q0", "q1", "q2", "q3", "q4"}, "q0")
      .trans("q0", "x", "q1")
      .trans("q0", "y", "q2")
      .trans("q1", "a", "q3")
      .trans("q2", "b", "q4")
      .trans("q3", "c", "q0")
      .trans("q4", "d", "q0");
  return b.ts;
}

// In the channel branch every a is followed by a c and every b by a d, a
// perfect bit per round. The noise branch lets v produce any c/d sequence
// without u moving at all, which makes the u -> v flow non-interferent:
// dropping u's actions leaves v's observable language unchanged.
TransitionSystem build_no_interf_cc() {
  ModelBuilder b;
  b.processes({"u", "v", "r"})
      .action("a", "u", {"u"})
      .action("b", "u", {"u"})
      .action("c", "v", {"v"})
      .action("d", "v", {"v"})
      .action("x", "r", {"r"})
      .action("y", "r", {"r"})
      .states({"init", "chan", "hi", "lo", "noise"}, "init")
      .trans("init", "x", "chan")
      .trans("init", "y", "noise")
      .trans("chan", "a", "hi")
      .trans("chan", "b", "lo")
      .trans("hi", "c", "chan")
      .trans("lo", "d", "chan")
      .trans("noise", "c", "noise")
      .trans("noise", "d", "noise");
  return b.ts;
}

// Stop-and-wait aggregation round: the collector sends a data message,
// the medium delivers it (1-loss) or drops it (loss), the central answers
// ack/nack, and the medium forwards the answer without inspecting its
// type. In the honest protocol the central's answer is forced by what the
// medium did; the corrupted central may also declare a delivered packet
// lost, which triggers a useless retransmission.
TransitionSystem build_ack(const Rational& loss, bool corrupt) {
  if (loss < Rational(0) || loss > Rational(1)) {
    throw Error("loss probability outside [0,1]");
  }
  ModelBuilder b;
  b.processes({"ct", "med", "co"})
      .action("co!m", "co", {"co", "med"})
      .action("med!m", "med", {"med", "ct"})
      .action("med_loss", "med", {"med"})
      .action("ct!ack", "ct", {"ct"})
      .action("ct!nack", "ct", {"ct"})
      .action("med!fwd", "med", {"med"})
      .action("co?ack", "co", {"co"})
      .action("co?nack", "co", {"co"})
      .states({"idle", "sent", "got", "lost", "ackq", "nackq", "dack", "dnack"}, "idle")
      .trans("idle", "co!m", "sent")
      .trans("sent", "med!m", "got", Rational(1) - loss)
      .trans("sent", "med_loss", "lost", loss)
      .trans("got", "ct!ack", "ackq")
      .trans("lost", "ct!nack", "nackq")
      .trans("ackq", "med!fwd", "dack")
      .trans("nackq", "med!fwd", "dnack")
      .trans("dack", "co?ack", "idle")
      .trans("dnack", "co?nack", "idle");
  if (corrupt) b.trans("got", "ct!nack", "nackq");
  return b.ts;
}

Dmc build_fig3a() {
  return Dmc{{"a", "b"}, {"0", "1"}, {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}};
}

Dmc build_fig3b() {
  return Dmc{{"a", "b"}, {"0"}, {{Rational(1)}, {Rational(1)}}};
}

Dmc build_fig3c() {
  return Dmc{{"a", "b"},
             {"0", "1"},
             {{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}}};
}

// The channel view of cc-a: each input rules out exactly one of the three
// observable words.
Dmc build_fig6c() {
  Rational h(1, 2), z(0);
  return Dmc{{"x", "y", "z"},
             {"a.d.e", "b.d.e", "c.d.e"},
             {{h, h, z}, {h, z, h}, {z, h, h}}};
}

const std::map<std::string, std::string>& descriptions() {
  static const std::map<std::string, std::string> d = {
      {"s1", "one-shot interference u->v, then a b(c+d)c receiver loop"},
      {"s2", "receiver loop first, sender action deadlocks the system"},
      {"s3", "strict a/b alternation, interferent both ways, nothing encodable"},
      {"disc-yes", "two sender choices with disjoint visible consequences"},
      {"disc-no", "relay answer e overlaps both sender choices"},
      {"cc-a", "three sender choices, pairwise-overlapping relay answers"},
      {"cc-b", "relay drives u and v echoes; correlation without decisions"},
      {"no-interf-cc", "perfect channel branch plus a receiver noise branch"},
      {"ack-honest", "stop-and-wait ack round, central answers honestly"},
      {"ack-corrupt", "ack round where the central may fake a loss"},
      {"fig3-a", "noiseless binary channel"},
      {"fig3-b", "single-output channel"},
      {"fig3-c", "uniform-row binary channel"},
      {"fig6-c", "three inputs, each split evenly over two of three outputs"},
  };
  return d;
}

}  // namespace

std::vector<std::string> corpus_model_names() {
  return {"s1",   "s2",   "s3",   "disc-yes",   "disc-no",
          "cc-a", "cc-b", "no-interf-cc", "ack-honest", "ack-corrupt"};
}

std::vector<std::string> corpus_channel_names() {
  return {"fig3-a", "fig3-b", "fig3-c", "fig6-c"};
}

bool is_corpus_model(const std::string& name) {
  auto names = corpus_model_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

bool is_corpus_channel(const std::string& name) {
  auto names = corpus_channel_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

TransitionSystem corpus_model(const std::string& name, const Rational& loss) {
  if (name == "s1") return build_s1();
  if (name == "s2") return build_s2();
  if (name == "s3") return build_s3();
  if (name == "disc-yes") return build_disc_yes();
  if (name == "disc-no") return build_disc_no();
  if (name == "cc-a") return build_cc_a();
  if (name == "cc-b") return build_cc_b();
  if (name == "no-interf-cc") return build_no_interf_cc();
  if (name == "ack-honest") return build_ack(loss, false);
  if (name == "ack-corrupt") return build_ack(loss, true);
  throw Error("unknown corpus model '" + name + "'");
}

Dmc corpus_channel(const std::string& name) {
  if (name == "fig3-a") return build_fig3a();
  if (name == "fig3-b") return build_fig3b();
  if (name == "fig3-c") return build_fig3c();
  if (name == "fig6-c") return build_fig6c();
  throw Error("unknown corpus channel '" + name + "'");
}

std::string corpus_description(const std::string& name) {
  auto it = descriptions().find(name);
  return it == descriptions().end() ? std::string() : it->second;
}

}  // namespace covchan
