#pragma once

// The two inference primitives shared by the saturation engine and the
// proof checker: demodulation (rewriting with unit equations) and
// paramodulation.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "eqbase/discrimination_tree.hpp"
#include "eqbase/equation.hpp"

namespace eqbase {

inline constexpr std::size_t kDefaultRewriteCap = 10000;

class RewriteLimitExceeded : public std::runtime_error {
 public:
  RewriteLimitExceeded() : std::runtime_error("rewrite cap exceeded; rule set may not terminate") {}
};

/// An oriented rewrite rule.  An `ordered` rule comes from an equation KBO
/// cannot orient; it fires only on instances where lhs > rhs.
struct RewriteRule {
  Term lhs;
  Term rhs;
  std::uint32_t id = 0;
  bool ordered = false;
};

struct Demodulated {
  Term normal;
  std::vector<std::uint32_t> used;
};

/// Indexed rule set; rules are tried in insertion order.
class RuleSet {
 public:
  void add(RewriteRule rule);
  /// Adds `eq` as one rule when KBO orients it, or as two ordered rules when
  /// the sides are incomparable with equal variable sets.  Returns false if
  /// the equation cannot serve as a demodulator.
  bool add_equation(const Equation& eq, std::uint32_t id);
  std::size_t size() const { return rules_.size(); }
  const std::vector<RewriteRule>& rules() const { return rules_; }

  /// Leftmost-outermost rewriting to normal form.
  Demodulated normalize(const Term& t, std::size_t cap = kDefaultRewriteCap) const;
  /// Single leftmost-outermost step, if any redex exists.
  std::optional<std::pair<Term, std::uint32_t>> rewrite_once(const Term& t) const;

 private:
  std::optional<Term> rewrite_root(const Term& t, std::uint32_t& rule_id) const;
  using NodeSet = std::unordered_set<const void*>;
  std::optional<std::pair<Term, std::uint32_t>> rewrite_once(const Term& t, NodeSet* irreducible) const;

  std::vector<RewriteRule> rules_;
  DiscriminationTree index_;
};

Demodulated demodulate(const Term& t, const std::vector<RewriteRule>& rules,
                       std::size_t cap = kDefaultRewriteCap);

/// Applies `rule` (read left to right) once at `pos` of side `side` of `e`.
std::optional<Equation> rewrite_at(const Equation& e, int side, const Position& pos,
                                   const Equation& rule);

struct ParaOptions {
  /// Use both sides of `from` even when KBO orients it.
  bool all_from_sides = false;
  /// Reject instances in which the used side of `from` is smaller than the
  /// other side.
  bool ordered = true;
};

struct Paramodulant {
  Equation eq;
  bool from_reversed = false;  // used from's rhs as the rewritten side
  int into_side = 0;           // 0 = lhs, 1 = rhs
  Position position;
};

/// All paramodulants from `from` into non-variable positions of either side
/// of `into`.  `from` must be positive; the clauses are renamed apart here.
std::vector<Paramodulant> paramodulate_pair(const Equation& from, const Equation& into,
                                            const ParaOptions& options = {});

/// Replays one paramodulation at a fixed position.
std::optional<Equation> paramodulate_at(const Equation& from, bool from_reversed,
                                        const Equation& into, int into_side,
                                        const Position& pos);

}  // namespace eqbase
