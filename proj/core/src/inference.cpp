#include "eqbase/inference.hpp"

#include <algorithm>

#include "eqbase/order.hpp"
#include "eqbase/substitution.hpp"

namespace eqbase {

void RuleSet::add(RewriteRule rule) {
  index_.insert(rule.lhs, static_cast<DiscriminationTree::Value>(rules_.size()));
  rules_.push_back(std::move(rule));
}

bool RuleSet::add_equation(const Equation& eq, std::uint32_t id) {
  if (!eq.positive()) return false;
  switch (kbo_compare(eq.lhs, eq.rhs)) {
    case Comparison::Greater:
      add({eq.lhs, eq.rhs, id, false});
      return true;
    case Comparison::Less:
      add({eq.rhs, eq.lhs, id, false});
      return true;
    case Comparison::Equal:
      return false;
    case Comparison::Incomparable:
      break;
  }
  auto m = measures(eq);
  if (!m.uniform || eq.lhs.is_variable() || eq.rhs.is_variable()) return false;
  add({eq.lhs, eq.rhs, id, true});
  add({eq.rhs, eq.lhs, id, true});
  return true;
}

std::optional<Term> RuleSet::rewrite_root(const Term& t, std::uint32_t& rule_id) const {
  if (t.is_variable()) return std::nullopt;
  std::vector<DiscriminationTree::Value> candidates;
  index_.generalizations(t, [&](DiscriminationTree::Value v) { candidates.push_back(v); });
  if (candidates.empty()) return std::nullopt;
  std::sort(candidates.begin(), candidates.end());
  for (auto idx : candidates) {
    const RewriteRule& r = rules_[idx];
    Substitution sub;
    if (!match_into(r.lhs, t, sub)) continue;
    Term result = apply_substitution(sub, r.rhs);
    if (r.ordered && !kbo_greater(t, result)) continue;
    rule_id = r.id;
    return result;
  }
  return std::nullopt;
}

std::optional<std::pair<Term, std::uint32_t>> RuleSet::rewrite_once(const Term& t) const {
  return rewrite_once(t, nullptr);
}

std::optional<std::pair<Term, std::uint32_t>> RuleSet::rewrite_once(const Term& t,
                                                                    NodeSet* irreducible) const {
  if (t.is_variable()) return std::nullopt;
  if (irreducible && irreducible->count(t.identity())) return std::nullopt;
  std::uint32_t id = 0;
  if (auto r = rewrite_root(t, id)) return std::make_pair(std::move(*r), id);
  if (t.is_unary()) {
    if (auto r = rewrite_once(t.arg(), irreducible)) {
      return std::make_pair(Term::unary(std::move(r->first)), r->second);
    }
  } else if (t.is_binary()) {
    if (auto r = rewrite_once(t.left(), irreducible)) {
      return std::make_pair(Term::binary(std::move(r->first), t.right()), r->second);
    }
    if (auto r = rewrite_once(t.right(), irreducible)) {
      return std::make_pair(Term::binary(t.left(), std::move(r->first)), r->second);
    }
  }
  if (irreducible) irreducible->insert(t.identity());
  return std::nullopt;
}

Demodulated RuleSet::normalize(const Term& t, std::size_t cap) const {
  Demodulated out{t, {}};
  if (rules_.empty()) return out;
  // Irreducible nodes stay alive through `keep`, so their addresses are
  // not reused while the set is in use.
  NodeSet irreducible;
  std::vector<Term> keep;
  while (auto step = rewrite_once(out.normal, &irreducible)) {
    if (out.used.size() >= cap) throw RewriteLimitExceeded();
    keep.push_back(out.normal);
    out.normal = std::move(step->first);
    out.used.push_back(step->second);
  }
  return out;
}

Demodulated demodulate(const Term& t, const std::vector<RewriteRule>& rules, std::size_t cap) {
  RuleSet set;
  for (const auto& r : rules) set.add(r);
  return set.normalize(t, cap);
}

std::optional<Equation> rewrite_at(const Equation& e, int side, const Position& pos,
                                   const Equation& rule) {
  const Term& target_side = side == 0 ? e.lhs : e.rhs;
  const Term& sub_term = subterm_at(target_side, pos);
  auto sub = match_term(rule.lhs, sub_term);
  if (!sub) return std::nullopt;
  std::vector<VarId> lv;
  std::vector<VarId> rv;
  collect_variables(rule.lhs, lv);
  collect_variables(rule.rhs, rv);
  for (VarId v : rv) {
    if (std::find(lv.begin(), lv.end(), v) == lv.end()) return std::nullopt;
  }
  Term replaced = replace_at(target_side, pos, apply_substitution(*sub, rule.rhs));
  Equation out = e;
  (side == 0 ? out.lhs : out.rhs) = std::move(replaced);
  return out;
}

namespace {

VarId fresh_offset(const Equation& e) {
  auto m = std::max(e.lhs.max_var(), e.rhs.max_var());
  return static_cast<VarId>(m + 1);
}

}  // namespace

std::vector<Paramodulant> paramodulate_pair(const Equation& from_in, const Equation& into,
                                            const ParaOptions& options) {
  std::vector<Paramodulant> out;
  if (!from_in.positive()) return out;
  Equation from = shift_variables(from_in, fresh_offset(into));

  bool use_lhs = true;
  bool use_rhs = true;
  if (!options.all_from_sides) {
    switch (kbo_compare(from.lhs, from.rhs)) {
      case Comparison::Greater:
        use_rhs = false;
        break;
      case Comparison::Less:
        use_lhs = false;
        break;
      default:
        break;
    }
  }

  std::vector<Position> positions[2];
  nonvariable_positions(into.lhs, positions[0]);
  nonvariable_positions(into.rhs, positions[1]);

  for (int reversed = 0; reversed < 2; ++reversed) {
    if ((reversed == 0 && !use_lhs) || (reversed == 1 && !use_rhs)) continue;
    const Term& l = reversed == 0 ? from.lhs : from.rhs;
    const Term& r = reversed == 0 ? from.rhs : from.lhs;
    if (l.is_variable()) continue;
    for (int side = 0; side < 2; ++side) {
      const Term& s = side == 0 ? into.lhs : into.rhs;
      const Term& other = side == 0 ? into.rhs : into.lhs;
      for (const auto& pos : positions[side]) {
        const Term& target = subterm_at(s, pos);
        auto sub = unify(l, target);
        if (!sub) continue;
        Term rr = apply_substitution(*sub, r);
        if (options.ordered && kbo_greater(rr, apply_substitution(*sub, l))) continue;
        Term new_side = apply_substitution(*sub, replace_at(s, pos, r));
        Term new_other = apply_substitution(*sub, other);
        Equation eq = side == 0 ? Equation{new_side, new_other, into.polarity}
                                : Equation{new_other, new_side, into.polarity};
        out.push_back({renumber_variables(eq), reversed == 1, side, pos});
      }
    }
  }
  return out;
}

std::optional<Equation> paramodulate_at(const Equation& from_in, bool from_reversed,
                                        const Equation& into, int into_side,
                                        const Position& pos) {
  if (!from_in.positive()) return std::nullopt;
  Equation from = shift_variables(from_in, fresh_offset(into));
  const Term& l = from_reversed ? from.rhs : from.lhs;
  const Term& r = from_reversed ? from.lhs : from.rhs;
  const Term& s = into_side == 0 ? into.lhs : into.rhs;
  const Term& other = into_side == 0 ? into.rhs : into.lhs;
  const Term& target = subterm_at(s, pos);
  if (target.is_variable()) return std::nullopt;
  auto sub = unify(l, target);
  if (!sub) return std::nullopt;
  Term new_side = apply_substitution(*sub, replace_at(s, pos, r));
  Term new_other = apply_substitution(*sub, other);
  Equation eq = into_side == 0 ? Equation{new_side, new_other, into.polarity}
                               : Equation{new_other, new_side, into.polarity};
  return renumber_variables(eq);
}

}  // namespace eqbase
