#pragma once

// Given-clause saturation over unit equations: paramodulation as the
// generating inference, demodulation and subsumption for simplification.

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eqbase/equation.hpp"
#include "eqbase/finite_algebra.hpp"
#include "eqbase/proof_script.hpp"

namespace eqbase {

using ClauseId = std::uint32_t;

enum class JustKind : std::uint8_t { Input, Goal, GoalDenial, Para, Rewrite, Contradiction };

struct Justification {
  JustKind kind = JustKind::Input;
  /// Para: from, into.  Rewrite: base.  GoalDenial: goal.
  /// Contradiction: positive, negative (positive is 0 for s != s).
  ClauseId first = 0;
  ClauseId second = 0;
  /// Demodulators in application order, repeats included.
  std::vector<ClauseId> demods;

  /// Parent list as printed in listings.
  std::vector<ClauseId> parents() const;
};

struct Clause {
  ClauseId id = 0;
  /// Empty for the contradiction.
  std::optional<Equation> eq;
  Justification just;
  std::uint32_t weight = 0;
  std::string label;
  /// Semantic label: false in every supplied interpretation (or negative
  /// when none are supplied).
  bool false_in_all = false;
  bool hint = false;

  bool positive() const { return eq && eq->positive(); }
};

struct SelectionRatio {
  int oldest = 1;
  int lightest_false = 4;
  int lightest_true = 4;
};

struct SearchParams {
  std::optional<std::uint32_t> max_weight;
  std::optional<double> max_seconds;
  std::optional<std::uint64_t> max_given;
  SelectionRatio ratio;
  std::vector<Equation> hints;
  bool hint_exempt_from_limits = false;
  std::vector<FiniteAlgebra> interpretations;
  /// Rewrite positive clauses already kept when a new demodulator arrives.
  bool back_demodulate = false;
};

enum class ProveStatus { Proved, Saturated, LimitExceeded };

std::string_view to_string(ProveStatus s);

struct SearchStats {
  std::uint64_t given = 0;
  std::uint64_t generated = 0;
  std::uint64_t kept = 0;
  std::uint64_t rewrites = 0;
  double seconds = 0.0;
};

struct ProveResult {
  ProveStatus status = ProveStatus::Saturated;
  /// Ancestors of the contradiction, renumbered 1..n, goal first.
  std::vector<Clause> proof;
  SearchStats stats;
};

/// True iff `eq` is a variant of some hint, sides possibly swapped.
bool hint_match(const Equation& eq, const std::vector<Equation>& hints);

/// Queues for given-clause selection.  Picks cycle through `oldest` picks by
/// age, then `lightest_false` and `lightest_true` picks by (hint first,
/// weight, age); empty categories are skipped.
class SelectionQueues {
 public:
  explicit SelectionQueues(SelectionRatio ratio = {});

  void add(const Clause& c);
  bool empty() const { return by_age_.empty(); }
  std::size_t size() const { return by_age_.size(); }
  /// Removes and returns the next given clause id.
  ClauseId select();
  void remove(ClauseId id);

 private:
  struct Key {
    bool hint;
    std::uint32_t weight;
    ClauseId id;
    bool operator<(const Key& o) const;
  };
  enum Slot { Oldest, False, True };
  Slot slot_for(int pos) const;

  SelectionRatio ratio_;
  int pos_ = 0;
  std::set<ClauseId> by_age_;
  std::set<Key> false_;
  std::set<Key> true_;
  std::map<ClauseId, std::pair<Key, bool>> info_;
};

/// Proves `goal` from `axioms`.  The goal is denied with fresh constants
/// c1, c2, ... and the search stops at the first contradiction.
ProveResult prove(const std::vector<Equation>& axioms, const Equation& goal,
                  const SearchParams& params);

/// Runs the loop without a goal until a limit; returns every kept clause.
std::vector<Clause> derive_consequences(const std::vector<Equation>& axioms,
                                        const SearchParams& params);

/// Proof as a listing, with the goal line labelled.
ProofScript to_script(const std::vector<Clause>& proof);

/// Positive equations of the derived steps of a listing, for use as hints.
std::vector<Equation> hints_from_script(const ProofScript& script);

}  // namespace eqbase
