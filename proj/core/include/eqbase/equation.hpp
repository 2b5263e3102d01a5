#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eqbase/term.hpp"

namespace eqbase {

enum class Polarity : std::uint8_t { Equal, NotEqual };

struct Equation {
  Term lhs;
  Term rhs;
  Polarity polarity = Polarity::Equal;

  bool positive() const { return polarity == Polarity::Equal; }
  Equation flipped() const { return {rhs, lhs, polarity}; }

  friend bool operator==(const Equation& a, const Equation& b) {
    return a.polarity == b.polarity && a.lhs == b.lhs && a.rhs == b.rhs;
  }
  friend bool operator!=(const Equation& a, const Equation& b) { return !(a == b); }
};

std::string to_string(const Equation& e);

struct Measures {
  std::uint32_t weight = 0;
  std::vector<VarId> lhs_vars;  // sorted
  std::vector<VarId> rhs_vars;  // sorted
  bool uniform = false;
  std::uint32_t depth = 0;
};

Measures measures(const Equation& e);

inline std::uint32_t weight_of(const Equation& e) { return e.lhs.weight() + e.rhs.weight(); }

/// Variables of both sides, in order of first occurrence (lhs first).
std::vector<VarId> variables_of(const Equation& e);

/// Renames variables to 0, 1, 2, ... in order of first occurrence.
Equation renumber_variables(const Equation& e);

/// Shifts every variable id by `offset`.
Term shift_variables(const Term& t, VarId offset);
Equation shift_variables(const Equation& e, VarId offset);

/// Canonical representative modulo variable renaming and (for positive
/// equations) symmetry: oriented by KBO when comparable, otherwise the
/// syntactically smaller of the two renumbered orientations.
Equation canonical_form(const Equation& e);

/// True iff `a` and `b` are equal up to a bijective variable renaming,
/// optionally also allowing the sides of one to be swapped.
bool is_variant(const Equation& a, const Equation& b, bool allow_symmetry = true);

/// True iff some instance of `general` (either orientation when
/// `allow_symmetry`) is syntactically `specific`.
bool subsumes(const Equation& general, const Equation& specific, bool allow_symmetry = true);

/// Replaces the variables of `e` by constants c<start>, c<start+1>, ... in
/// order of first occurrence and negates the polarity.
Equation deny(const Equation& goal, int first_constant = 1);

}  // namespace eqbase
