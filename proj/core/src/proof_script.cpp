#include "eqbase/proof_script.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "eqbase/parse.hpp"

namespace eqbase {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<int> parse_parents(std::string_view inside, std::size_t line) {
  std::vector<int> out;
  std::string item;
  auto flush = [&] {
    auto t = trim(item);
    if (t.empty()) return;
    try {
      std::size_t used = 0;
      int v = std::stoi(std::string(t), &used);
      if (used != t.size()) throw std::invalid_argument("trailing");
      out.push_back(v);
    } catch (const std::exception&) {
      throw ProofFormatError("bad parent reference '" + std::string(t) + "'", line);
    }
    item.clear();
  };
  for (char c : inside) {
    if (c == ',') {
      flush();
    } else {
      item += c;
    }
  }
  flush();
  return out;
}

ProofStep parse_step(std::string_view text, std::size_t line) {
  ProofStep step;
  step.line = line;
  std::size_t i = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == 0) throw ProofFormatError("expected a step number", line);
  step.num = std::stoi(std::string(text.substr(0, i)));
  std::string_view rest = trim(text.substr(i));

  // Trailing justification: "[a,b,...]" optionally followed by '.'.
  std::string_view body = rest;
  {
    std::string_view tail = rest;
    if (!tail.empty() && tail.back() == '.') tail.remove_suffix(1);
    tail = trim(tail);
    if (!tail.empty() && tail.back() == ']') {
      auto open = tail.rfind('[');
      if (open == std::string_view::npos) throw ProofFormatError("unbalanced justification", line);
      step.parents = parse_parents(tail.substr(open + 1, tail.size() - open - 2), line);
      body = trim(tail.substr(0, open));
    }
  }
  if (auto hash = body.find('#'); hash != std::string_view::npos) {
    std::string_view comment = body.substr(hash + 1);
    auto lp = comment.find("label(");
    if (lp != std::string_view::npos) {
      auto rp = comment.find(')', lp);
      if (rp != std::string_view::npos) step.label = std::string(comment.substr(lp + 6, rp - lp - 6));
    }
    body = trim(body.substr(0, hash));
  }
  if (!body.empty() && body.back() == '.') body.remove_suffix(1);
  body = trim(body);
  if (body == "$F") return step;
  try {
    step.statement = parse_equation(body);
  } catch (const ParseError& e) {
    throw ProofFormatError(e.what(), line);
  }
  return step;
}

}  // namespace

const ProofStep* ProofScript::find(int num) const {
  for (const auto& s : steps) {
    if (s.num == num) return &s;
  }
  return nullptr;
}

std::size_t ProofScript::index_of(int num) const {
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i].num == num) return i;
  }
  return steps.size();
}

ProofScript parse_proof(std::string_view text) {
  ProofScript script;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '%') continue;
    if (line.front() == '=') {
      if (line.find("end of proof") != std::string_view::npos) break;
      continue;
    }
    ProofStep step = parse_step(line, line_no);
    if (!script.steps.empty() && step.num <= script.steps.back().num) {
      throw ProofFormatError("step numbers must increase", line_no);
    }
    if (!script.steps.empty() && script.steps.back().contradiction()) {
      throw ProofFormatError("only the final step may be $F", line_no);
    }
    for (int p : step.parents) {
      if (p >= step.num || !script.find(p)) {
        throw ProofFormatError("parent " + std::to_string(p) + " does not name an earlier step",
                               line_no);
      }
    }
    script.steps.push_back(std::move(step));
  }
  if (script.steps.empty()) throw ProofFormatError("empty listing", line_no);
  return script;
}

ProofScript read_proof_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_proof(buf.str());
}

std::string format_step(const ProofStep& step) {
  std::string out = std::to_string(step.num) + " ";
  out += step.statement ? to_string(*step.statement) : "$F";
  if (!step.label.empty()) out += " # label(" + step.label + ")";
  out += ".";
  if (!step.parents.empty()) {
    out += "  [";
    for (std::size_t i = 0; i < step.parents.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(step.parents[i]);
    }
    out += "].";
  }
  return out;
}

std::string format_proof(const ProofScript& script) {
  std::string out;
  for (const auto& s : script.steps) out += format_step(s) + "\n";
  out += kEndOfProof;
  out += "\n";
  return out;
}

}  // namespace eqbase
