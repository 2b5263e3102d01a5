#pragma once

// Finite algebras with one binary and one unary operation, and the
// semantics of identities over them.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eqbase/equation.hpp"

namespace eqbase {

using Element = std::uint8_t;

class FiniteAlgebra {
 public:
  FiniteAlgebra() = default;
  /// Tables are validated: every entry must lie in [0, size).
  FiniteAlgebra(int size, std::vector<Element> binary, std::vector<Element> unary);
  /// The algebra whose tables are all zero.
  static FiniteAlgebra zero(int size);

  int size() const { return size_; }
  Element mul(Element a, Element b) const { return binary_[a * size_ + b]; }
  Element inv(Element a) const { return unary_[a]; }
  const std::vector<Element>& binary_table() const { return binary_; }
  const std::vector<Element>& unary_table() const { return unary_; }
  std::vector<Element>& binary_table() { return binary_; }
  std::vector<Element>& unary_table() { return unary_; }

  friend bool operator==(const FiniteAlgebra&, const FiniteAlgebra&) = default;

 private:
  int size_ = 0;
  std::vector<Element> binary_;
  std::vector<Element> unary_;
};

/// Compiled term for fast repeated evaluation under many assignments.
/// Constants are treated like variables: an identity mentioning c1 holds
/// only if it holds for every value of c1.
class CompiledEquation {
 public:
  explicit CompiledEquation(const Equation& e);

  std::size_t arity() const { return slots_.size(); }
  bool positive() const { return positive_; }
  /// Values of both sides under `assignment` (indexed by slot).
  std::pair<Element, Element> sides(const FiniteAlgebra& a, const Element* assignment) const;

  enum class Op : std::int8_t { Slot, Unary, Binary };
  struct Instr {
    Op op;
    std::uint8_t slot;
  };
  const std::vector<Instr>& lhs_code() const { return lhs_; }
  const std::vector<Instr>& rhs_code() const { return rhs_; }

 private:
  void compile(const Term& t, std::vector<Instr>& out);

  std::vector<std::pair<bool, std::uint32_t>> slots_;  // (is_variable, id)
  std::vector<Instr> lhs_;
  std::vector<Instr> rhs_;
  bool positive_ = true;
};

/// Identity semantics: a positive equation holds iff both sides agree under
/// every assignment; a negated one holds iff they differ under every
/// assignment.
bool evaluate(const FiniteAlgebra& a, const Equation& e);
bool evaluate(const FiniteAlgebra& a, const CompiledEquation& e);
/// An assignment (by slot) on which a positive identity fails.
std::optional<std::vector<Element>> counterexample(const FiniteAlgebra& a, const Equation& e);

/// b is an inverse of `elem` iff aba = a and bab = b under both
/// parenthesizations.
std::vector<Element> inverses_of(const FiniteAlgebra& a, Element elem);

enum class AlgebraClass {
  NotSemigroup,
  NotRegular,
  RegularNotInverse,
  InverseWrongUnary,
  InverseNaturalInversion,
};

std::string_view to_string(AlgebraClass c);

bool is_associative(const FiniteAlgebra& a);
bool idempotents_commute(const FiniteAlgebra& a);
AlgebraClass classify(const FiniteAlgebra& a);

class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Tally = std::map<std::string, std::uint64_t>;

struct EnumerationStats {
  std::uint64_t visited = 0;
  Tally tallies;
};

struct EnumerateOptions {
  /// Visit this many uniformly random algebras instead of the full space.
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 1;
};

/// Visits every algebra of `size` in lexicographic table order (binary
/// table row-major, then the unary table).  Full enumeration is limited to
/// size <= 3.
EnumerationStats enumerate_all(int size,
                               const std::function<void(const FiniteAlgebra&, Tally&)>& visitor,
                               const EnumerateOptions& options = {});

/// Text block: `size n`, n rows of the binary table, one row of the unary
/// table.
std::string format_model(const FiniteAlgebra& a);
std::vector<FiniteAlgebra> parse_models(std::string_view text);
std::vector<FiniteAlgebra> read_model_file(const std::string& path);

}  // namespace eqbase
