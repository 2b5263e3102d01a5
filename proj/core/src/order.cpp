#include "eqbase/order.hpp"

#include <vector>

namespace eqbase {

namespace {

// Precedence rank: ' above * above every constant.
int rank(const Term& t) {
  switch (t.kind()) {
    case TermKind::Unary:
      return 2;
    case TermKind::Binary:
      return 1;
    default:
      return 0;
  }
}

void count_vars(const Term& t, std::vector<std::pair<VarId, int>>& counts, int delta) {
  if (t.is_ground()) return;
  switch (t.kind()) {
    case TermKind::Variable: {
      for (auto& [v, n] : counts) {
        if (v == t.var()) {
          n += delta;
          return;
        }
      }
      counts.emplace_back(t.var(), delta);
      return;
    }
    case TermKind::Constant:
      return;
    case TermKind::Unary:
      count_vars(t.arg(), counts, delta);
      return;
    case TermKind::Binary:
      count_vars(t.left(), counts, delta);
      count_vars(t.right(), counts, delta);
      return;
  }
}

// Every variable occurs in s at least as often as in t.
bool variable_condition(const Term& s, const Term& t) {
  if (t.is_ground()) return true;
  std::vector<std::pair<VarId, int>> counts;
  count_vars(s, counts, 1);
  count_vars(t, counts, -1);
  for (const auto& [v, n] : counts) {
    if (n < 0) return false;
  }
  return true;
}

bool greater(const Term& s, const Term& t) {
  if (t.is_variable()) return !s.is_variable() && occurs(t.var(), s);
  if (s.is_variable()) return false;
  if (s.weight() < t.weight()) return false;
  if (s.weight() > t.weight()) return variable_condition(s, t);

  int rs = rank(s);
  int rt = rank(t);
  if (rs != rt) return rs > rt && variable_condition(s, t);
  switch (s.kind()) {
    case TermKind::Constant:
      return s.symbol() != t.symbol() && constant_name(s.symbol()) > constant_name(t.symbol());
    case TermKind::Unary:
      return greater(s.arg(), t.arg());
    case TermKind::Binary:
      if (s.left() == t.left()) return greater(s.right(), t.right());
      return greater(s.left(), t.left()) && variable_condition(s, t);
    case TermKind::Variable:
      break;
  }
  return false;
}

}  // namespace

std::string_view to_string(Comparison c) {
  switch (c) {
    case Comparison::Greater:
      return "greater";
    case Comparison::Less:
      return "less";
    case Comparison::Equal:
      return "equal";
    case Comparison::Incomparable:
      return "incomparable";
  }
  return "?";
}

bool kbo_greater(const Term& s, const Term& t) { return !(s == t) && greater(s, t); }

Comparison kbo_compare(const Term& s, const Term& t) {
  if (s == t) return Comparison::Equal;
  if (greater(s, t)) return Comparison::Greater;
  if (greater(t, s)) return Comparison::Less;
  return Comparison::Incomparable;
}

}  // namespace eqbase
