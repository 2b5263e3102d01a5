#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "eqbase/term.hpp"

namespace eqbase {

/// Variable bindings.  Clause-level terms rarely contain more than a handful
/// of variables, so a flat vector with linear lookup beats any map here.
class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<VarId, Term>> init);

  const Term* find(VarId v) const;
  void bind(VarId v, Term t);
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const std::vector<std::pair<VarId, Term>>& bindings() const { return bindings_; }

 private:
  std::vector<std::pair<VarId, Term>> bindings_;
};

/// Simultaneous replacement of bound variables.
Term apply_substitution(const Substitution& sub, const Term& t);

/// Most general unifier with occurs-check, returned in idempotent form.
std::optional<Substitution> unify(const Term& s, const Term& t);
/// Unifies the pairs simultaneously.
std::optional<Substitution> unify_all(const std::vector<std::pair<Term, Term>>& pairs);

/// One-way matching; variables of `target` behave as constants.
std::optional<Substitution> match_term(const Term& pattern, const Term& target);
/// Extends `sub` so that pattern instantiates to target; false leaves `sub`
/// in an unspecified state.
bool match_into(const Term& pattern, const Term& target, Substitution& sub);

}  // namespace eqbase
