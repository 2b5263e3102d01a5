#include "eqbase/parse.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace eqbase {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Equation equation() {
    skip_ws();
    if (peek() == '=' || peek() == '!') throw ParseError("empty left-hand side", pos_);
    Term lhs = term();
    skip_ws();
    Polarity polarity;
    if (peek() == '=') {
      ++pos_;
      polarity = Polarity::Equal;
    } else if (peek() == '!' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
      pos_ += 2;
      polarity = Polarity::NotEqual;
    } else {
      throw ParseError("expected '=' or '!='", pos_);
    }
    skip_ws();
    if (at_end() || peek() == '.' || peek() == '#' || peek() == '[') {
      throw ParseError("empty right-hand side", pos_);
    }
    Term rhs = term();
    trailer();
    return {std::move(lhs), std::move(rhs), polarity};
  }

  Term lone_term() {
    skip_ws();
    Term t = term();
    skip_ws();
    if (!at_end()) throw ParseError("unexpected trailing input", pos_);
    return t;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  // term := factor ('*' factor)*
  Term term() {
    Term t = factor();
    for (;;) {
      skip_ws();
      if (peek() != '*') return t;
      ++pos_;
      t = Term::binary(std::move(t), factor());
    }
  }

  // factor := primary '\''*
  Term factor() {
    Term t = primary();
    for (;;) {
      skip_ws();
      if (peek() != '\'') return t;
      ++pos_;
      t = Term::unary(std::move(t));
    }
  }

  Term primary() {
    skip_ws();
    if (at_end()) throw ParseError("unexpected end of input", pos_);
    char c = peek();
    if (c == '(') {
      std::size_t open = pos_++;
      Term t = term();
      skip_ws();
      if (peek() != ')') throw ParseError("unbalanced parenthesis opened", open);
      ++pos_;
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      if (is_variable_name(name)) return Term::variable(variable_id(name));
      return Term::constant(name);
    }
    if (c == ')') throw ParseError("unbalanced parenthesis", pos_);
    throw ParseError(std::string("illegal token '") + c + "'", pos_);
  }

  void trailer() {
    skip_ws();
    if (peek() == '.') {
      ++pos_;
      skip_ws();
    }
    if (at_end() || peek() == '#' || peek() == '[') return;
    if (peek() == ')') throw ParseError("unbalanced parenthesis", pos_);
    throw ParseError(std::string("unexpected token '") + peek() + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Equation parse_equation(std::string_view text) { return Parser(text).equation(); }

Term parse_term(std::string_view text) { return Parser(text).lone_term(); }

std::vector<Equation> parse_equation_list(std::string_view text) {
  std::vector<Equation> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#' || line.front() == '=') continue;
    if (std::isdigit(static_cast<unsigned char>(line.front()))) {
      std::size_t i = 0;
      while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
      line = trim(line.substr(i));
      if (line.rfind("$F", 0) == 0) continue;
    }
    try {
      out.push_back(parse_equation(line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), e.position());
    }
  }
  return out;
}

std::vector<Equation> read_equation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_equation_list(buf.str());
}

}  // namespace eqbase
