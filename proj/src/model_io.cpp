#include "covchan/model_io.hpp"

#include <algorithm>
#include <sstream>

namespace covchan {

namespace {

struct Token {
  std::string text;
  int line;
  int column;
};

// Whitespace-separated tokens per line; '#' starts a comment.
std::vector<std::vector<Token>> tokenize(const std::string& text) {
  std::vector<std::vector<Token>> lines;
  int line_no = 0;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    ++line_no;
    std::vector<Token> tokens;
    size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      if (line[i] == '#') break;
      size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      tokens.push_back({line.substr(start, i - start), line_no, static_cast<int>(start + 1)});
    }
    if (!tokens.empty()) lines.push_back(std::move(tokens));
  }
  return lines;
}

void check_identifier(const Token& tok, const char* kind) {
  const std::string& s = tok.text;
  if (s == "tau") {
    throw ParseError(tok.line, tok.column, std::string(kind) + " may not be named 'tau'");
  }
  for (char c : s) {
    if (c == '=' || c == ',' || c == '.' || c == '#' || c == '*') {
      throw ParseError(tok.line, tok.column,
                       std::string(kind) + " '" + s + "' contains reserved character '" +
                           std::string(1, c) + "'");
    }
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= s.size()) {
    size_t comma = s.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

Rational parse_prob(const Token& tok, const std::string& value) {
  auto r = parse_rational(value);
  if (!r) throw ParseError(tok.line, tok.column, "malformed probability '" + value + "'");
  return *r;
}

}  // namespace

TransitionSystem parse_model(const std::string& text, std::vector<Diagnostic>* warnings) {
  TransitionSystem ts = parse_model_unchecked(text);
  auto diags = validate(ts);
  for (const auto& d : diags) {
    if (d.is_error()) throw Error("model validation failed: " + d.message);
    if (warnings) warnings->push_back(d);
  }
  return ts;
}

TransitionSystem parse_model_unchecked(const std::string& text) {
  TransitionSystem ts;
  ts.initial = -1;

  struct PendingTrans {
    Token src, action, dst;
    std::optional<Rational> prob;
  };
  std::vector<PendingTrans> pending;

  for (const auto& tokens : tokenize(text)) {
    const Token& head = tokens[0];
    if (head.text == "processes") {
      if (tokens.size() < 2) throw ParseError(head.line, head.column, "empty processes line");
      for (size_t i = 1; i < tokens.size(); ++i) {
        check_identifier(tokens[i], "process");
        ts.processes.push_back(tokens[i].text);
      }
    } else if (head.text == "action") {
      if (tokens.size() != 4) {
        throw ParseError(head.line, head.column,
                         "expected: action <name> exec=<process> obs=<p1,p2,...>");
      }
      check_identifier(tokens[1], "action");
      const Token& exec_tok = tokens[2];
      const Token& obs_tok = tokens[3];
      if (exec_tok.text.rfind("exec=", 0) != 0) {
        throw ParseError(exec_tok.line, exec_tok.column, "expected exec=<process>");
      }
      if (obs_tok.text.rfind("obs=", 0) != 0) {
        throw ParseError(obs_tok.line, obs_tok.column, "expected obs=<p1,p2,...>");
      }
      std::string exec_name = exec_tok.text.substr(5);
      int exec_id = ts.process_id(exec_name);
      if (exec_id < 0) {
        throw ParseError(exec_tok.line, exec_tok.column, "unknown process '" + exec_name + "'");
      }
      std::vector<int> obs;
      for (const auto& name : split_list(obs_tok.text.substr(4))) {
        int id = ts.process_id(name);
        if (id < 0) {
          throw ParseError(obs_tok.line, obs_tok.column, "unknown process '" + name + "'");
        }
        obs.push_back(id);
      }
      std::sort(obs.begin(), obs.end());
      obs.erase(std::unique(obs.begin(), obs.end()), obs.end());
      ts.actions.push_back(tokens[1].text);
      ts.executor.push_back(exec_id);
      ts.observers.push_back(std::move(obs));
    } else if (head.text == "states") {
      if (tokens.size() < 2) throw ParseError(head.line, head.column, "empty states line");
      for (size_t i = 1; i < tokens.size(); ++i) {
        Token tok = tokens[i];
        bool initial = !tok.text.empty() && tok.text.front() == '*';
        if (initial) tok.text.erase(tok.text.begin());
        if (tok.text.empty()) throw ParseError(tok.line, tok.column, "empty state name");
        check_identifier(tok, "state");
        if (initial) {
          if (ts.initial >= 0) {
            throw ParseError(tok.line, tok.column, "more than one initial state");
          }
          ts.initial = static_cast<int>(ts.states.size());
        }
        ts.states.push_back(tok.text);
      }
    } else if (head.text == "trans") {
      if (tokens.size() != 4 && tokens.size() != 5) {
        throw ParseError(head.line, head.column,
                         "expected: trans <src> <action> <dst> [prob=<value>]");
      }
      PendingTrans pt{tokens[1], tokens[2], tokens[3], std::nullopt};
      if (tokens.size() == 5) {
        const Token& ptok = tokens[4];
        if (ptok.text.rfind("prob=", 0) != 0) {
          throw ParseError(ptok.line, ptok.column, "expected prob=<value>");
        }
        pt.prob = parse_prob(ptok, ptok.text.substr(5));
      }
      pending.push_back(std::move(pt));
    } else if (head.text == "policy") {
      if (tokens.size() != 4 || tokens[1].text != "forbid") {
        throw ParseError(head.line, head.column, "expected: policy forbid <from> <to>");
      }
      int from = ts.process_id(tokens[2].text);
      if (from < 0) {
        throw ParseError(tokens[2].line, tokens[2].column,
                         "unknown process '" + tokens[2].text + "'");
      }
      int to = ts.process_id(tokens[3].text);
      if (to < 0) {
        throw ParseError(tokens[3].line, tokens[3].column,
                         "unknown process '" + tokens[3].text + "'");
      }
      ts.forbidden.emplace_back(from, to);
    } else {
      throw ParseError(head.line, head.column, "unknown section '" + head.text + "'");
    }
  }

  if (ts.states.empty()) throw ParseError(1, 1, "model declares no states");
  if (ts.actions.empty()) throw ParseError(1, 1, "model declares no actions");
  if (ts.initial < 0) throw ParseError(1, 1, "no state is marked initial ('*name')");

  for (const auto& pt : pending) {
    int src = ts.state_id(pt.src.text);
    if (src < 0) throw ParseError(pt.src.line, pt.src.column, "unknown state '" + pt.src.text + "'");
    int dst = ts.state_id(pt.dst.text);
    if (dst < 0) throw ParseError(pt.dst.line, pt.dst.column, "unknown state '" + pt.dst.text + "'");
    int action = kTau;
    if (pt.action.text != "tau") {
      action = ts.action_id(pt.action.text);
      if (action < 0) {
        throw ParseError(pt.action.line, pt.action.column,
                         "unknown action '" + pt.action.text + "'");
      }
    }
    ts.transitions.push_back({src, action, dst, pt.prob});
  }
  return ts;
}

std::string serialize_model(const TransitionSystem& ts) {
  std::ostringstream out;
  out << "processes";
  for (const auto& p : ts.processes) out << " " << p;
  out << "\n";
  for (size_t a = 0; a < ts.actions.size(); ++a) {
    out << "action " << ts.actions[a] << " exec=" << ts.processes[ts.executor[a]] << " obs=";
    for (size_t i = 0; i < ts.observers[a].size(); ++i) {
      if (i) out << ",";
      out << ts.processes[ts.observers[a][i]];
    }
    out << "\n";
  }
  out << "states";
  for (size_t q = 0; q < ts.states.size(); ++q) {
    out << " " << (static_cast<int>(q) == ts.initial ? "*" : "") << ts.states[q];
  }
  out << "\n";
  for (const auto& t : ts.transitions) {
    out << "trans " << ts.states[t.src] << " " << ts.label_name(t.action) << " "
        << ts.states[t.dst];
    if (t.prob) out << " prob=" << format_rational(*t.prob);
    out << "\n";
  }
  for (const auto& [from, to] : ts.forbidden) {
    out << "policy forbid " << ts.processes[from] << " " << ts.processes[to] << "\n";
  }
  return out.str();
}

Channel parse_channel(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, 1, "empty channel file");
  const auto& head = lines[0];
  if (head[0].text != "channel" || head.size() != 2) {
    throw ParseError(head[0].line, head[0].column, "expected: channel dmc|state");
  }

  if (head[1].text == "dmc") {
    Dmc ch;
    for (size_t li = 1; li < lines.size(); ++li) {
      const auto& tokens = lines[li];
      const Token& tag = tokens[0];
      if (tag.text == "inputs") {
        for (size_t i = 1; i < tokens.size(); ++i) ch.inputs.push_back(tokens[i].text);
      } else if (tag.text == "outputs") {
        for (size_t i = 1; i < tokens.size(); ++i) ch.outputs.push_back(tokens[i].text);
      } else if (tag.text == "row") {
        if (tokens.size() != 2 + ch.outputs.size()) {
          throw ParseError(tag.line, tag.column,
                           "row needs one probability per declared output");
        }
        auto it = std::find(ch.inputs.begin(), ch.inputs.end(), tokens[1].text);
        if (it == ch.inputs.end()) {
          throw ParseError(tokens[1].line, tokens[1].column,
                           "unknown input '" + tokens[1].text + "'");
        }
        std::vector<Rational> row;
        for (size_t i = 2; i < tokens.size(); ++i) row.push_back(parse_prob(tokens[i], tokens[i].text));
        ch.rows.resize(ch.inputs.size());
        ch.rows[it - ch.inputs.begin()] = std::move(row);
      } else {
        throw ParseError(tag.line, tag.column, "unknown channel section '" + tag.text + "'");
      }
    }
    auto diags = validate_dmc(ch);
    if (has_errors(diags)) throw Error("channel validation failed: " + diags.front().message);
    return ch;
  }

  if (head[1].text == "state") {
    StateChannel ch;
    for (size_t li = 1; li < lines.size(); ++li) {
      const auto& tokens = lines[li];
      const Token& tag = tokens[0];
      if (tag.text == "iid") {
        if (tokens.size() != 2 || (tokens[1].text != "true" && tokens[1].text != "false")) {
          throw ParseError(tag.line, tag.column, "expected: iid true|false");
        }
        ch.iid_state = tokens[1].text == "true";
      } else if (tag.text == "outputs") {
        for (size_t i = 1; i < tokens.size(); ++i) ch.outputs.push_back(tokens[i].text);
      } else if (tag.text == "state") {
        if (tokens.size() < 5 || tokens[2].text.rfind("prob=", 0) != 0 ||
            tokens[3].text != "inputs") {
          throw ParseError(tag.line, tag.column,
                           "expected: state <name> prob=<value> inputs <x1> <x2> ...");
        }
        ch.states.push_back(tokens[1].text);
        ch.state_probs.push_back(parse_prob(tokens[2], tokens[2].text.substr(5)));
        std::vector<std::string> inputs;
        for (size_t i = 4; i < tokens.size(); ++i) inputs.push_back(tokens[i].text);
        ch.inputs.push_back(std::move(inputs));
        ch.rows.emplace_back();
      } else if (tag.text == "row") {
        if (tokens.size() < 3) {
          throw ParseError(tag.line, tag.column, "expected: row <state> <input> <p1> ...");
        }
        auto st = std::find(ch.states.begin(), ch.states.end(), tokens[1].text);
        if (st == ch.states.end()) {
          throw ParseError(tokens[1].line, tokens[1].column,
                           "unknown state '" + tokens[1].text + "'");
        }
        size_t si = st - ch.states.begin();
        auto in = std::find(ch.inputs[si].begin(), ch.inputs[si].end(), tokens[2].text);
        if (in == ch.inputs[si].end()) {
          throw ParseError(tokens[2].line, tokens[2].column,
                           "input '" + tokens[2].text + "' not declared for state '" +
                               tokens[1].text + "'");
        }
        if (tokens.size() != 3 + ch.outputs.size()) {
          throw ParseError(tag.line, tag.column,
                           "row needs one probability per declared output");
        }
        std::vector<Rational> row;
        for (size_t i = 3; i < tokens.size(); ++i) row.push_back(parse_prob(tokens[i], tokens[i].text));
        ch.rows[si].resize(ch.inputs[si].size());
        ch.rows[si][in - ch.inputs[si].begin()] = std::move(row);
      } else {
        throw ParseError(tag.line, tag.column, "unknown channel section '" + tag.text + "'");
      }
    }
    auto diags = validate_state_channel(ch);
    if (has_errors(diags)) throw Error("channel validation failed: " + diags.front().message);
    return ch;
  }

  throw ParseError(head[1].line, head[1].column,
                   "unknown channel kind '" + head[1].text + "'");
}

std::string serialize_channel(const Dmc& ch) {
  std::ostringstream out;
  out << "channel dmc\ninputs";
  for (const auto& x : ch.inputs) out << " " << x;
  out << "\noutputs";
  for (const auto& y : ch.outputs) out << " " << y;
  out << "\n";
  for (size_t x = 0; x < ch.inputs.size(); ++x) {
    out << "row " << ch.inputs[x];
    for (const auto& p : ch.rows[x]) out << " " << format_rational(p);
    out << "\n";
  }
  return out.str();
}

std::string serialize_channel(const StateChannel& ch) {
  std::ostringstream out;
  out << "channel state\niid " << (ch.iid_state ? "true" : "false") << "\noutputs";
  for (const auto& y : ch.outputs) out << " " << y;
  out << "\n";
  for (size_t s = 0; s < ch.states.size(); ++s) {
    out << "state " << ch.states[s] << " prob=" << format_rational(ch.state_probs[s])
        << " inputs";
    for (const auto& x : ch.inputs[s]) out << " " << x;
    out << "\n";
    for (size_t x = 0; x < ch.inputs[s].size(); ++x) {
      out << "row " << ch.states[s] << " " << ch.inputs[s][x];
      for (const auto& p : ch.rows[s][x]) out << " " << format_rational(p);
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace covchan
