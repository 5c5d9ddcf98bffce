#include "covchan/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "covchan/corpus.hpp"
#include "covchan/discrete.hpp"
#include "covchan/halfduplex.hpp"
#include "covchan/interference.hpp"
#include "covchan/leak.hpp"
#include "covchan/model_io.hpp"
#include "covchan/verdict.hpp"

namespace covchan {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

std::string fmt(double value) {
  char buf[64];
  snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

struct Cli {
  std::ostream& out;
  std::ostream& err;
  AnalysisReport report;
  bool json = false;
  std::ostringstream human;

  void finish() {
    if (json) {
      out << serialize_report(report);
    } else {
      out << human.str();
    }
  }

  TransitionSystem load_model(const std::string& path, std::vector<std::string>& digest_parts) {
    std::string text = read_file(path);
    digest_parts.push_back(text);
    std::vector<Diagnostic> warnings;
    TransitionSystem ts = parse_model(text, &warnings);
    for (const auto& w : warnings) report.diagnostics.push_back("warning: " + w.message);
    return ts;
  }
};

nlohmann::ordered_json word_json(const Word& w) { return join_word(w); }

nlohmann::ordered_json capacity_json(const CapacityResult& r) {
  nlohmann::ordered_json j;
  j["capacity"] = r.capacity;
  j["upper_bound"] = r.upper_bound;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  return j;
}

int cmd_validate(Cli& cli, const std::string& path) {
  std::vector<std::string> digest_parts{read_file(path)};
  // Syntax errors abort with exit 1; semantic diagnostics are the verdict.
  TransitionSystem ts = parse_model_unchecked(digest_parts[0]);
  auto diags = validate(ts);
  cli.report.command = "validate";
  cli.report.inputs_digest = digest(digest_parts);
  cli.report.verdicts["valid"] = !has_errors(diags);
  for (const auto& d : diags) {
    cli.report.diagnostics.push_back((d.is_error() ? "error: " : "warning: ") + d.message);
  }
  cli.human << "model " << (has_errors(diags) ? "INVALID" : "ok") << ": "
            << ts.states.size() << " states, " << ts.transitions.size() << " transitions, "
            << ts.processes.size() << " processes\n";
  for (const auto& d : cli.report.diagnostics) cli.human << d << "\n";
  return 0;
}

int cmd_project(Cli& cli, const std::string& path, const std::string& process,
                const std::vector<std::string>& keep) {
  std::vector<std::string> digest_parts;
  TransitionSystem ts = cli.load_model(path, digest_parts);
  TransitionSystem projected;
  if (!process.empty()) {
    digest_parts.push_back("process=" + process);
    projected = project_to_process(ts, require_process(ts, process));
  } else {
    std::vector<int> ids;
    for (const auto& name : keep) {
      digest_parts.push_back("keep=" + name);
      ids.push_back(require_action(ts, name));
    }
    projected = project(ts, ids);
  }
  std::string text = serialize_model(projected);
  cli.report.command = "project";
  cli.report.inputs_digest = digest(digest_parts);
  cli.report.witnesses["model"] = text;
  cli.human << text;
  return 0;
}

int cmd_interfere(Cli& cli, const std::string& path, const std::string& u,
                  const std::string& v) {
  std::vector<std::string> digest_parts;
  TransitionSystem ts = cli.load_model(path, digest_parts);
  digest_parts.push_back(u);
  digest_parts.push_back(v);
  InterferenceVerdict verdict = snni(ts, u, v);
  cli.report.command = "interfere";
  cli.report.inputs_digest = digest(digest_parts);
  cli.report.verdicts["source"] = verdict.source;
  cli.report.verdicts["sink"] = verdict.sink;
  cli.report.verdicts["interferes"] = verdict.interferes;
  if (verdict.witness) cli.report.witnesses["word"] = word_json(*verdict.witness);
  cli.human << verdict.source << " interferes with " << verdict.sink << ": "
            << (verdict.interferes ? "yes" : "no");
  if (verdict.witness) cli.human << "  (witness: " << join_word(*verdict.witness) << ")";
  cli.human << "\n";
  return 0;
}

int cmd_encoding_states(Cli& cli, const std::string& path, const std::string& u,
                        const std::string& v) {
  std::vector<std::string> digest_parts;
  TransitionSystem ts = cli.load_model(path, digest_parts);
  digest_parts.push_back(u);
  digest_parts.push_back(v);
  int sender = require_process(ts, u);
  int observer = require_process(ts, v);
  cli.report.command = "encoding-states";
  cli.report.inputs_digest = digest(digest_parts);
  auto states = nlohmann::ordered_json::object();
  int count = 0;
  for (size_t q = 0; q < ts.states.size(); ++q) {
    if (auto pair = is_encoding_state(ts, static_cast<int>(q), sender, observer)) {
      ++count;
      const auto& t1 = ts.transitions[pair->first];
      const auto& t2 = ts.transitions[pair->second];
      states[ts.states[q]] = {ts.label_name(t1.action) + " -> " + ts.states[t1.dst],
                              ts.label_name(t2.action) + " -> " + ts.states[t2.dst]};
      cli.human << "encoding state " << ts.states[q] << ": " << ts.label_name(t1.action)
                << " vs " << ts.label_name(t2.action) << "\n";
    }
  }
  cli.report.verdicts["count"] = count;
  cli.report.witnesses["states"] = states;
  if (count == 0) cli.human << "no encoding states\n";
  return 0;
}

int cmd_discrete(Cli& cli, const std::string& path, const std::string& u, const std::string& v,
                 long long budget) {
  std::vector<std::string> digest_parts;
  TransitionSystem ts = cli.load_model(path, digest_parts);
  digest_parts.push_back(u);
  digest_parts.push_back(v);
  digest_parts.push_back(std::to_string(budget));
  DiscreteChannelVerdict verdict =
      detect_discrete_channel(ts, require_process(ts, u), require_process(ts, v), budget);
  cli.report.command = "discrete";
  cli.report.inputs_digest = digest(digest_parts);
  cli.report.verdicts["found"] = verdict.found;
  cli.report.verdicts["exhaustive"] = verdict.exhaustiveness == Exhaustiveness::Full;
  cli.report.verdicts["pairs_evaluated"] = verdict.pairs_evaluated;
  auto enc = nlohmann::ordered_json::array();
  for (int q : verdict.encoding_states) enc.push_back(ts.states[q]);
  cli.report.witnesses["encoding_states"] = enc;
  auto strategy_json = [&](const Strategy& f) {
    auto j = nlohmann::ordered_json::object();
    for (const auto& [state, allowed] : f.allowed) {
      auto list = nlohmann::ordered_json::array();
      for (int t : allowed) {
        list.push_back(ts.label_name(ts.transitions[t].action) + " -> " +
                       ts.states[ts.transitions[t].dst]);
      }
      j[ts.states[state]] = list;
    }
    return j;
  };
  cli.report.witnesses["strategy_sender"] = strategy_json(verdict.f_sender);
  cli.report.witnesses["strategy_observer"] = strategy_json(verdict.f_observer);

  cli.human << "discrete channel " << u << " -> " << v << ": "
            << (verdict.found ? "found" : "not found");
  if (verdict.found) {
    cli.human << "  (encoding states:";
    for (int q : verdict.encoding_states) cli.human << " " << ts.states[q];
    cli.human << ")";
  } else if (verdict.exhaustiveness == Exhaustiveness::Full) {
    cli.human << "  (strategy enumeration complete)";
  } else {
    cli.human << "  (budget exhausted after " << verdict.pairs_evaluated << " strategy pairs)";
  }
  cli.human << "\n";
  if (!verdict.found && verdict.exhaustiveness == Exhaustiveness::BudgetExhausted) return 2;
  return 0;
}

nlohmann::ordered_json witness_json(const TransitionSystem& ts, const HalfDuplexWitness& w) {
  nlohmann::ordered_json j;
  j["control"] = ts.states[w.control_state];
  auto en = nlohmann::ordered_json::array();
  for (int q : w.encoding_states) en.push_back(ts.states[q]);
  j["encoding"] = en;
  j["k1"] = w.k1;
  j["k2"] = w.k2;
  return j;
}

int cmd_halfduplex(Cli& cli, const std::string& path, const std::string& u,
                   const std::string& v) {
  std::vector<std::string> digest_parts;
  TransitionSystem ts = cli.load_model(path, digest_parts);
  digest_parts.push_back(u);
  digest_parts.push_back(v);
  HalfDuplexResult result =
      check_half_duplex(ts, require_process(ts, u), require_process(ts, v));
  cli.report.command = "halfduplex";
  cli.report.inputs_digest = digest(digest_parts);
  cli.report.verdicts["half_duplex"] = !result.witnesses.empty();
  auto list = nlohmann::ordered_json::array();
  for (const auto& w : result.witnesses) list.push_back(witness_json(ts, w));
  cli.report.witnesses["witnesses"] = list;
  cli.report.diagnostics.insert(cli.report.diagnostics.end(), result.rejections.begin(),
                                result.rejections.end());
  if (result.witnesses.empty()) {
    cli.human << "not half-duplex for " << u << " -> " << v << "\n";
    for (const auto& r : result.rejections) cli.human << "  " << r << "\n";
  } else {
    for (const auto& w : result.witnesses) {
      cli.human << "half-duplex witness: control " << ts.states[w.control_state]
                << ", encoding {";
      for (size_t i = 0; i < w.encoding_states.size(); ++i) {
        cli.human << (i ? " " : "") << ts.states[w.encoding_states[i]];
      }
      cli.human << "}, K1=" << w.k1 << ", K2=" << w.k2 << "\n";
    }
  }
  return 0;
}

int cmd_extract(Cli& cli, const std::string& path, const std::string& u, const std::string& v,
                const std::string& control, const std::string& out_path) {
  std::vector<std::string> digest_parts;
  TransitionSystem ts = cli.load_model(path, digest_parts);
  digest_parts.push_back(u);
  digest_parts.push_back(v);
  int sender = require_process(ts, u);
  int observer = require_process(ts, v);
  HalfDuplexResult result = check_half_duplex(ts, sender, observer);
  if (result.witnesses.empty()) {
    std::string why = "model is not half-duplex for the pair";
    for (const auto& r : result.rejections) why += "\n  " + r;
    throw Error(why);
  }
  const HalfDuplexWitness* witness = &result.witnesses.front();
  if (!control.empty()) {
    digest_parts.push_back("control=" + control);
    witness = nullptr;
    for (const auto& w : result.witnesses) {
      if (ts.states[w.control_state] == control) witness = &w;
    }
    if (!witness) throw Error("no witness with control state '" + control + "'");
  }
  ExtractionResult extraction = extract_state_channel(ts, sender, observer, *witness);
  for (const auto& w : extraction.warnings) cli.report.diagnostics.push_back("warning: " + w);
  cli.report.diagnostics.push_back(
      "note: capacity assumes the sender knows the channel state at each use; "
      "with imperfect knowledge it is an upper bound on what is achievable");

  CapacityResult capacity = state_channel_capacity(extraction.channel);
  std::string text = serialize_channel(extraction.channel);
  cli.report.command = "extract";
  cli.report.inputs_digest = digest(digest_parts);
  cli.report.witnesses["witness"] = witness_json(ts, *witness);
  cli.report.witnesses["channel"] = text;
  cli.report.capacities["state_channel"] = capacity_json(capacity);
  if (!out_path.empty()) {
    write_file(out_path, text);
    cli.human << "wrote " << out_path << "\n";
  } else {
    cli.human << text;
  }
  cli.human << "capacity: " << fmt(capacity.capacity) << " bits/use\n";
  return 0;
}

int cmd_capacity(Cli& cli, const std::string& path, const std::string& closed_form,
                 const std::string& p_text, double tol, int max_iter) {
  cli.report.command = "capacity";
  if (!closed_form.empty()) {
    if (closed_form != "z") throw Error("unknown closed form '" + closed_form + "'");
    auto p = parse_rational(p_text);
    if (!p) throw Error("malformed probability '" + p_text + "'");
    std::vector<std::string> digest_parts{"closed-form=z", p_text};
    cli.report.inputs_digest = digest(digest_parts);
    double c = z_channel_capacity(to_double(*p));
    cli.report.capacities["z_channel"] = c;
    cli.human << "z-channel capacity at loss " << p_text << ": " << fmt(c) << " bits/use\n";
    return 0;
  }

  std::string text = read_file(path);
  std::vector<std::string> digest_parts{text};
  cli.report.inputs_digest = digest(digest_parts);
  Channel channel = parse_channel(text);
  CapacityResult result;
  if (std::holds_alternative<Dmc>(channel)) {
    result = dmc_capacity(std::get<Dmc>(channel), tol, max_iter);
  } else {
    const auto& sc = std::get<StateChannel>(channel);
    Dmc reduced = reduce_state_channel(sc);
    cli.report.witnesses["reduced"] = serialize_channel(reduced);
    result = dmc_capacity(reduced, tol, max_iter);
  }
  cli.report.capacities["channel"] = capacity_json(result);
  cli.human << "capacity: " << fmt(result.capacity) << " bits/use";
  if (!result.converged) {
    cli.human << "  (not converged; bounds [" << fmt(result.capacity) << ", "
              << fmt(result.upper_bound) << "])";
  }
  cli.human << "\n";
  return 0;
}

int cmd_leak(Cli& cli, const std::string& path, const std::string& u, const std::string& v,
             int horizon, size_t cap) {
  std::vector<std::string> digest_parts;
  TransitionSystem ts = cli.load_model(path, digest_parts);
  digest_parts.push_back(u);
  digest_parts.push_back(v);
  digest_parts.push_back(std::to_string(horizon));
  LeakEstimate estimate =
      leak_rate(ts, require_process(ts, u), require_process(ts, v), horizon, cap);
  cli.report.command = "leak";
  cli.report.inputs_digest = digest(digest_parts);
  cli.report.verdicts["horizon"] = estimate.horizon;
  cli.report.verdicts["joint_size"] = estimate.joint_size;
  cli.report.capacities["leak"] = estimate.leak;
  cli.report.capacities["estimates"] = estimate.estimates;
  cli.human << "leak " << u << " -> " << v << " at horizon " << horizon << ": "
            << fmt(estimate.leak) << " bits/transition\n";
  return 0;
}

void verdict_into_report(Cli& cli, const CovertVerdict& verdict) {
  cli.report.verdicts["kind"] = verdict.kind;
  cli.report.verdicts["holds"] = verdict.holds;
  cli.report.verdicts["equivalence"] = verdict.equivalence.ok;
  cli.report.verdicts["alphabets"] = verdict.alphabets.ok;
  if (verdict.policy_containment) {
    cli.report.verdicts["policy"] = verdict.policy_containment->ok;
  }
  if (!verdict.failing_condition.empty()) {
    cli.report.verdicts["failing_condition"] = verdict.failing_condition;
  }
  cli.report.capacities["variant"] = verdict.capacity_variant;
  if (verdict.capacity_baseline) {
    cli.report.capacities["baseline"] = *verdict.capacity_baseline;
  }
  if (verdict.equivalence.witness) {
    cli.report.witnesses["equivalence_word"] = word_json(*verdict.equivalence.witness);
  }
  for (const auto& n : verdict.notes) cli.report.diagnostics.push_back(n);

  cli.human << verdict.kind << " covert channel: " << (verdict.holds ? "holds" : "does not hold");
  if (!verdict.failing_condition.empty()) {
    cli.human << "  (failing condition: " << verdict.failing_condition;
    if (!verdict.equivalence.ok) cli.human << "; " << verdict.equivalence.detail;
    if (!verdict.alphabets.ok) cli.human << "; " << verdict.alphabets.detail;
    cli.human << ")";
  }
  cli.human << "\n";
  cli.human << "capacity of variant: " << fmt(verdict.capacity_variant) << " bits/use\n";
  if (verdict.capacity_baseline) {
    cli.human << "capacity of baseline: " << fmt(*verdict.capacity_baseline) << " bits/use\n";
  }
}

int cmd_verify(Cli& cli, const std::string& baseline_path, const std::string& variant_path,
               const std::string& u, const std::string& v, bool legitimate,
               const std::string& policy_path, const std::string& baseline_capacity_text) {
  std::vector<std::string> digest_parts;
  TransitionSystem baseline = cli.load_model(baseline_path, digest_parts);
  TransitionSystem variant = cli.load_model(variant_path, digest_parts);
  digest_parts.push_back(u);
  digest_parts.push_back(v);
  TransitionSystem policy_model;
  const TransitionSystem* policy = nullptr;
  if (!policy_path.empty()) {
    policy_model = cli.load_model(policy_path, digest_parts);
    policy = &policy_model;
  }
  std::optional<double> baseline_capacity;
  if (!baseline_capacity_text.empty()) {
    auto r = parse_rational(baseline_capacity_text);
    if (!r) throw Error("malformed baseline capacity");
    baseline_capacity = to_double(*r);
  }

  int sender = require_process(baseline, u);
  int observer = require_process(baseline, v);
  CovertVerdict verdict =
      legitimate
          ? verify_legitimate(baseline, variant, sender, observer, baseline_capacity, policy)
          : verify_control_flow(baseline, variant, sender, observer, policy);
  cli.report.command = "verify";
  cli.report.inputs_digest = digest(digest_parts);
  verdict_into_report(cli, verdict);
  return 0;
}

int cmd_search(Cli& cli, const std::string& path, const std::string& u, const std::string& v,
               long long budget, bool legitimate, const std::string& baseline_capacity_text) {
  std::vector<std::string> digest_parts;
  TransitionSystem baseline = cli.load_model(path, digest_parts);
  digest_parts.push_back(u);
  digest_parts.push_back(v);
  digest_parts.push_back(std::to_string(budget));
  int sender = require_process(baseline, u);
  int observer = require_process(baseline, v);
  std::optional<double> baseline_capacity;
  if (!baseline_capacity_text.empty()) {
    auto r = parse_rational(baseline_capacity_text);
    if (!r) throw Error("malformed baseline capacity");
    baseline_capacity = to_double(*r);
  }

  std::vector<TransitionSystem> candidates =
      enumerate_variants(baseline, sender, observer, budget);
  int holding = 0;
  std::string first_holding;
  double best_capacity = 0;
  for (const auto& candidate : candidates) {
    CovertVerdict verdict;
    try {
      verdict = legitimate || !baseline.forbids(sender, observer)
                    ? verify_legitimate(baseline, candidate, sender, observer,
                                        baseline_capacity)
                    : verify_control_flow(baseline, candidate, sender, observer);
    } catch (const Error&) {
      continue;  // e.g. baseline without half-duplex structure for this pair
    }
    if (verdict.holds) {
      ++holding;
      if (first_holding.empty()) {
        first_holding = serialize_model(candidate);
        best_capacity = verdict.capacity_variant;
      }
    }
  }
  cli.report.command = "search";
  cli.report.inputs_digest = digest(digest_parts);
  cli.report.verdicts["candidates"] = candidates.size();
  cli.report.verdicts["holding"] = holding;
  if (!first_holding.empty()) {
    cli.report.witnesses["variant"] = first_holding;
    cli.report.capacities["variant"] = best_capacity;
  }
  cli.human << "examined " << candidates.size() << " candidate variant(s); " << holding
            << " realize a covert channel\n";
  if (!first_holding.empty()) {
    cli.human << "first hit (capacity " << fmt(best_capacity) << " bits/use):\n"
              << first_holding;
  }
  return 0;
}

int cmd_corpus(Cli& cli, const std::string& name, const std::string& loss_text,
               const std::string& out_path) {
  cli.report.command = "corpus";
  if (name.empty()) {
    std::vector<std::string> digest_parts{"list"};
    cli.report.inputs_digest = digest(digest_parts);
    auto models = nlohmann::ordered_json::array();
    for (const auto& n : corpus_model_names()) {
      models.push_back(n);
      cli.human << n << "  -  " << corpus_description(n) << "\n";
    }
    auto channels = nlohmann::ordered_json::array();
    for (const auto& n : corpus_channel_names()) {
      channels.push_back(n);
      cli.human << n << "  -  " << corpus_description(n) << "\n";
    }
    cli.report.verdicts["models"] = models;
    cli.report.verdicts["channels"] = channels;
    return 0;
  }

  auto loss = parse_rational(loss_text);
  if (!loss) throw Error("malformed loss probability '" + loss_text + "'");
  std::vector<std::string> digest_parts{name, loss_text};
  cli.report.inputs_digest = digest(digest_parts);
  std::string text;
  if (is_corpus_model(name)) {
    text = serialize_model(corpus_model(name, *loss));
  } else if (is_corpus_channel(name)) {
    text = serialize_channel(corpus_channel(name));
  } else {
    throw Error("unknown corpus entry '" + name + "'");
  }
  cli.report.witnesses["text"] = text;
  if (!out_path.empty()) {
    write_file(out_path, text);
    cli.human << "wrote " << out_path << "\n";
  } else {
    cli.human << text;
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            AnalysisReport* report_out) {
  CLI::App app{"control-flow covert channel analysis for probabilistic transition systems"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "emit the machine-readable report");

  std::string model_path, chan_path, u, v, process, control, out_path, policy_path;
  std::string baseline_path, variant_path, closed_form, p_text = "1/10";
  std::string loss_text = "1/10", baseline_capacity_text, corpus_name;
  std::vector<std::string> keep;
  long long budget = 10000;
  int horizon = 8, max_iter = 10000;
  double tol = 1e-9;
  bool legitimate = false;
  size_t cap = 1u << 20;

  auto* c_validate = app.add_subcommand("validate", "check a model file");
  c_validate->add_option("model", model_path)->required();

  auto* c_project = app.add_subcommand("project", "project a model onto actions or a process");
  c_project->add_option("model", model_path)->required();
  c_project->add_option("--process", process, "keep the actions this process observes");
  c_project->add_option("--keep", keep, "comma-separated actions to keep")->delimiter(',');

  auto* c_interfere = app.add_subcommand("interfere", "SNNI interference check");
  c_interfere->add_option("model", model_path)->required();
  c_interfere->add_option("source", u)->required();
  c_interfere->add_option("sink", v)->required();

  auto* c_enc = app.add_subcommand("encoding-states", "list encoding states for a pair");
  c_enc->add_option("model", model_path)->required();
  c_enc->add_option("sender", u)->required();
  c_enc->add_option("observer", v)->required();

  auto* c_discrete = app.add_subcommand("discrete", "detect a discrete channel");
  c_discrete->add_option("model", model_path)->required();
  c_discrete->add_option("sender", u)->required();
  c_discrete->add_option("observer", v)->required();
  c_discrete->add_option("--budget", budget, "strategy pairs to enumerate");

  auto* c_hd = app.add_subcommand("halfduplex", "find half-duplex witnesses");
  c_hd->add_option("model", model_path)->required();
  c_hd->add_option("sender", u)->required();
  c_hd->add_option("observer", v)->required();

  auto* c_extract = app.add_subcommand("extract", "extract the induced state channel");
  c_extract->add_option("model", model_path)->required();
  c_extract->add_option("sender", u)->required();
  c_extract->add_option("observer", v)->required();
  c_extract->add_option("--control", control, "control state of the witness to use");
  c_extract->add_option("-o,--output", out_path, "write the channel file here");

  auto* c_capacity = app.add_subcommand("capacity", "channel capacity");
  c_capacity->add_option("channel", chan_path, "channel description file");
  c_capacity->add_option("--closed-form", closed_form, "closed form to evaluate (z)");
  c_capacity->add_option("--p", p_text, "parameter for the closed form");
  c_capacity->add_option("--tol", tol, "convergence threshold");
  c_capacity->add_option("--max-iter", max_iter, "iteration budget");

  auto* c_leak = app.add_subcommand("leak", "average information leak per transition");
  c_leak->add_option("model", model_path)->required();
  c_leak->add_option("sender", u)->required();
  c_leak->add_option("observer", v)->required();
  c_leak->add_option("--horizon", horizon, "word length to analyze")->required();
  c_leak->add_option("--cap", cap, "frontier size cap");

  auto* c_verify = app.add_subcommand("verify", "covert-channel predicates for a variant");
  c_verify->add_option("--baseline", baseline_path)->required();
  c_verify->add_option("--variant", variant_path)->required();
  c_verify->add_option("--from", u)->required();
  c_verify->add_option("--to", v)->required();
  c_verify->add_flag("--legitimate", legitimate, "check the legitimate-channel predicate");
  c_verify->add_option("--policy", policy_path, "policy automaton model");
  c_verify->add_option("--baseline-capacity", baseline_capacity_text,
                       "explicit baseline capacity in bits");

  auto* c_search = app.add_subcommand("search", "enumerate and verify corrupted variants");
  c_search->add_option("model", model_path)->required();
  c_search->add_option("sender", u)->required();
  c_search->add_option("observer", v)->required();
  c_search->add_option("--budget", budget, "candidates to examine");
  c_search->add_flag("--legitimate", legitimate, "use the legitimate-channel predicate");
  c_search->add_option("--baseline-capacity", baseline_capacity_text,
                       "explicit baseline capacity in bits");

  auto* c_corpus = app.add_subcommand("corpus", "list or emit the built-in examples");
  c_corpus->add_option("name", corpus_name, "entry to emit (omit to list)");
  c_corpus->add_option("--loss", loss_text, "loss probability for the ack models");
  c_corpus->add_option("-o,--output", out_path, "write the file here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  Cli cli{out, err, {}, json, {}};
  int code = 0;
  try {
    if (c_validate->parsed()) {
      code = cmd_validate(cli, model_path);
    } else if (c_project->parsed()) {
      if (process.empty() == keep.empty()) {
        throw Error("project needs exactly one of --process or --keep");
      }
      code = cmd_project(cli, model_path, process, keep);
    } else if (c_interfere->parsed()) {
      code = cmd_interfere(cli, model_path, u, v);
    } else if (c_enc->parsed()) {
      code = cmd_encoding_states(cli, model_path, u, v);
    } else if (c_discrete->parsed()) {
      code = cmd_discrete(cli, model_path, u, v, budget);
    } else if (c_hd->parsed()) {
      code = cmd_halfduplex(cli, model_path, u, v);
    } else if (c_extract->parsed()) {
      code = cmd_extract(cli, model_path, u, v, control, out_path);
    } else if (c_capacity->parsed()) {
      if (chan_path.empty() && closed_form.empty()) {
        throw Error("capacity needs a channel file or --closed-form");
      }
      code = cmd_capacity(cli, chan_path, closed_form, p_text, tol, max_iter);
    } else if (c_leak->parsed()) {
      code = cmd_leak(cli, model_path, u, v, horizon, cap);
    } else if (c_verify->parsed()) {
      code = cmd_verify(cli, baseline_path, variant_path, u, v, legitimate, policy_path,
                        baseline_capacity_text);
    } else if (c_search->parsed()) {
      code = cmd_search(cli, model_path, u, v, budget, legitimate, baseline_capacity_text);
    } else if (c_corpus->parsed()) {
      code = cmd_corpus(cli, corpus_name, loss_text, out_path);
    }
  } catch (const LimitError& e) {
    err << "limit: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  cli.finish();
  if (report_out) *report_out = cli.report;
  return code;
}

}  // namespace covchan
