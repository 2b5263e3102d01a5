#include "eqbase/substitution.hpp"

namespace eqbase {

Substitution::Substitution(std::initializer_list<std::pair<VarId, Term>> init)
    : bindings_(init) {}

const Term* Substitution::find(VarId v) const {
  for (const auto& [var, term] : bindings_) {
    if (var == v) return &term;
  }
  return nullptr;
}

void Substitution::bind(VarId v, Term t) {
  for (auto& [var, term] : bindings_) {
    if (var == v) {
      term = std::move(t);
      return;
    }
  }
  bindings_.emplace_back(v, std::move(t));
}

Term apply_substitution(const Substitution& sub, const Term& t) {
  if (sub.empty() || t.is_ground()) return t;
  switch (t.kind()) {
    case TermKind::Variable: {
      const Term* b = sub.find(t.var());
      return b ? *b : t;
    }
    case TermKind::Constant:
      return t;
    case TermKind::Unary: {
      Term a = apply_substitution(sub, t.arg());
      return a.same_node(t.arg()) ? t : Term::unary(std::move(a));
    }
    case TermKind::Binary: {
      Term l = apply_substitution(sub, t.left());
      Term r = apply_substitution(sub, t.right());
      if (l.same_node(t.left()) && r.same_node(t.right())) return t;
      return Term::binary(std::move(l), std::move(r));
    }
  }
  return t;
}

namespace {

// Bindings are kept in triangular form while unifying.
const Term& deref(const Term& t, const Substitution& sub) {
  const Term* cur = &t;
  while (cur->is_variable()) {
    const Term* b = sub.find(cur->var());
    if (!b) break;
    cur = b;
  }
  return *cur;
}

bool occurs_deref(VarId v, const Term& t, const Substitution& sub) {
  if (t.is_ground()) return false;
  const Term& d = deref(t, sub);
  switch (d.kind()) {
    case TermKind::Variable:
      return d.var() == v;
    case TermKind::Constant:
      return false;
    case TermKind::Unary:
      return occurs_deref(v, d.arg(), sub);
    case TermKind::Binary:
      return occurs_deref(v, d.left(), sub) || occurs_deref(v, d.right(), sub);
  }
  return false;
}

bool unify_rec(const Term& s0, const Term& t0, Substitution& sub) {
  // Copies: binding may reallocate the vector deref points into.
  const Term s = deref(s0, sub);
  const Term t = deref(t0, sub);
  if (s.same_node(t)) return true;
  if (s.is_variable()) {
    if (t.is_variable() && t.var() == s.var()) return true;
    if (occurs_deref(s.var(), t, sub)) return false;
    sub.bind(s.var(), t);
    return true;
  }
  if (t.is_variable()) {
    if (occurs_deref(t.var(), s, sub)) return false;
    sub.bind(t.var(), s);
    return true;
  }
  if (s.kind() != t.kind()) return false;
  switch (s.kind()) {
    case TermKind::Constant:
      return s.symbol() == t.symbol();
    case TermKind::Unary:
      return unify_rec(s.arg(), t.arg(), sub);
    case TermKind::Binary:
      return unify_rec(s.left(), t.left(), sub) && unify_rec(s.right(), t.right(), sub);
    case TermKind::Variable:
      break;
  }
  return false;
}

Term resolve(const Term& t, const Substitution& sub) {
  if (t.is_ground()) return t;
  const Term& d = deref(t, sub);
  switch (d.kind()) {
    case TermKind::Variable:
    case TermKind::Constant:
      return d;
    case TermKind::Unary: {
      Term a = resolve(d.arg(), sub);
      return a.same_node(d.arg()) ? d : Term::unary(std::move(a));
    }
    case TermKind::Binary: {
      Term l = resolve(d.left(), sub);
      Term r = resolve(d.right(), sub);
      if (l.same_node(d.left()) && r.same_node(d.right())) return d;
      return Term::binary(std::move(l), std::move(r));
    }
  }
  return d;
}

Substitution solved_form(const Substitution& triangular) {
  Substitution out;
  for (const auto& [v, t] : triangular.bindings()) out.bind(v, resolve(t, triangular));
  return out;
}

}  // namespace

std::optional<Substitution> unify(const Term& s, const Term& t) {
  Substitution sub;
  if (!unify_rec(s, t, sub)) return std::nullopt;
  return solved_form(sub);
}

std::optional<Substitution> unify_all(const std::vector<std::pair<Term, Term>>& pairs) {
  Substitution sub;
  for (const auto& [s, t] : pairs) {
    if (!unify_rec(s, t, sub)) return std::nullopt;
  }
  return solved_form(sub);
}

bool match_into(const Term& pattern, const Term& target, Substitution& sub) {
  switch (pattern.kind()) {
    case TermKind::Variable: {
      if (const Term* b = sub.find(pattern.var())) return *b == target;
      sub.bind(pattern.var(), target);
      return true;
    }
    case TermKind::Constant:
      return target.is_constant() && target.symbol() == pattern.symbol();
    case TermKind::Unary:
      return target.is_unary() && match_into(pattern.arg(), target.arg(), sub);
    case TermKind::Binary:
      if (!target.is_binary() || target.weight() < pattern.weight()) return false;
      return match_into(pattern.left(), target.left(), sub) &&
             match_into(pattern.right(), target.right(), sub);
  }
  return false;
}

std::optional<Substitution> match_term(const Term& pattern, const Term& target) {
  Substitution sub;
  if (!match_into(pattern, target, sub)) return std::nullopt;
  return sub;
}

}  // namespace eqbase
