#include "eqbase/equation.hpp"

#include <algorithm>

#include "eqbase/order.hpp"
#include "eqbase/substitution.hpp"

namespace eqbase {

std::string to_string(const Equation& e) {
  return to_string(e.lhs) + (e.positive() ? " = " : " != ") + to_string(e.rhs);
}

Measures measures(const Equation& e) {
  Measures m;
  m.weight = weight_of(e);
  collect_variables(e.lhs, m.lhs_vars);
  collect_variables(e.rhs, m.rhs_vars);
  std::sort(m.lhs_vars.begin(), m.lhs_vars.end());
  std::sort(m.rhs_vars.begin(), m.rhs_vars.end());
  m.uniform = m.lhs_vars == m.rhs_vars;
  m.depth = std::max(e.lhs.depth(), e.rhs.depth());
  return m;
}

std::vector<VarId> variables_of(const Equation& e) {
  std::vector<VarId> vars;
  collect_variables(e.lhs, vars);
  collect_variables(e.rhs, vars);
  return vars;
}

Equation renumber_variables(const Equation& e) {
  auto vars = variables_of(e);
  bool identity = true;
  for (std::size_t i = 0; i < vars.size(); ++i) identity = identity && vars[i] == i;
  if (identity) return e;
  Substitution sub;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    sub.bind(vars[i], Term::variable(static_cast<VarId>(i)));
  }
  return {apply_substitution(sub, e.lhs), apply_substitution(sub, e.rhs), e.polarity};
}

Term shift_variables(const Term& t, VarId offset) {
  if (t.is_ground() || offset == 0) return t;
  switch (t.kind()) {
    case TermKind::Variable:
      return Term::variable(t.var() + offset);
    case TermKind::Constant:
      return t;
    case TermKind::Unary:
      return Term::unary(shift_variables(t.arg(), offset));
    case TermKind::Binary:
      return Term::binary(shift_variables(t.left(), offset), shift_variables(t.right(), offset));
  }
  return t;
}

Equation shift_variables(const Equation& e, VarId offset) {
  return {shift_variables(e.lhs, offset), shift_variables(e.rhs, offset), e.polarity};
}

namespace {

int compare_pair(const Equation& a, const Equation& b) {
  int c = syntactic_compare(a.lhs, b.lhs);
  return c != 0 ? c : syntactic_compare(a.rhs, b.rhs);
}

// Matches a onto b with an injective variable-to-variable map.
bool renaming_match(const Term& al, const Term& ar, const Term& bl, const Term& br) {
  if (al.weight() != bl.weight() || ar.weight() != br.weight()) return false;
  Substitution sub;
  if (!match_into(al, bl, sub) || !match_into(ar, br, sub)) return false;
  std::vector<VarId> images;
  for (const auto& [v, t] : sub.bindings()) {
    if (!t.is_variable()) return false;
    images.push_back(t.var());
  }
  std::sort(images.begin(), images.end());
  return std::adjacent_find(images.begin(), images.end()) == images.end();
}

}  // namespace

Equation canonical_form(const Equation& e) {
  Equation forward = renumber_variables(e);
  Equation backward = renumber_variables(e.flipped());
  switch (kbo_compare(e.lhs, e.rhs)) {
    case Comparison::Greater:
      return forward;
    case Comparison::Less:
      return backward;
    default:
      return compare_pair(forward, backward) <= 0 ? forward : backward;
  }
}

bool is_variant(const Equation& a, const Equation& b, bool allow_symmetry) {
  if (a.polarity != b.polarity) return false;
  if (renaming_match(a.lhs, a.rhs, b.lhs, b.rhs)) return true;
  return allow_symmetry && renaming_match(a.lhs, a.rhs, b.rhs, b.lhs);
}

bool subsumes(const Equation& general, const Equation& specific, bool allow_symmetry) {
  if (general.polarity != specific.polarity) return false;
  {
    Substitution sub;
    if (match_into(general.lhs, specific.lhs, sub) && match_into(general.rhs, specific.rhs, sub)) {
      return true;
    }
  }
  if (!allow_symmetry) return false;
  Substitution sub;
  return match_into(general.lhs, specific.rhs, sub) && match_into(general.rhs, specific.lhs, sub);
}

Equation deny(const Equation& goal, int first_constant) {
  auto vars = variables_of(goal);
  Substitution sub;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    sub.bind(vars[i], Term::constant("c" + std::to_string(first_constant + static_cast<int>(i))));
  }
  return {apply_substitution(sub, goal.lhs), apply_substitution(sub, goal.rhs),
          goal.positive() ? Polarity::NotEqual : Polarity::Equal};
}

}  // namespace eqbase
