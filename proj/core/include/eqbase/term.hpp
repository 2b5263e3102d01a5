#pragma once

// Terms over the signature {*, '} plus constants.
//
// Terms are immutable, reference-counted trees.  Every node caches its
// node count (weight), a structural hash and the largest variable id it
// contains, so equality tests and ground checks are cheap.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace eqbase {

using VarId = std::uint32_t;
using SymbolId = std::uint32_t;

enum class TermKind : std::uint8_t { Variable, Constant, Unary, Binary };

class Term {
 public:
  Term() = default;

  static Term variable(VarId v);
  static Term constant(SymbolId c);
  static Term constant(std::string_view name);
  static Term unary(Term arg);
  static Term binary(Term left, Term right);

  bool valid() const { return node_ != nullptr; }

  TermKind kind() const;
  bool is_variable() const { return kind() == TermKind::Variable; }
  bool is_constant() const { return kind() == TermKind::Constant; }
  bool is_unary() const { return kind() == TermKind::Unary; }
  bool is_binary() const { return kind() == TermKind::Binary; }

  /// Variable id or constant symbol id; meaningless for applications.
  std::uint32_t id() const;
  VarId var() const { return id(); }
  SymbolId symbol() const { return id(); }

  /// Argument of a unary application, or left operand of a product.
  const Term& arg() const;
  const Term& left() const;
  const Term& right() const;

  /// Number of nodes (variables and constants included).
  std::uint32_t weight() const;
  std::uint32_t depth() const;
  std::size_t hash() const;
  bool is_ground() const { return max_var() < 0; }
  /// Largest variable id occurring in the term, -1 when ground.
  std::int64_t max_var() const;

  bool same_node(const Term& other) const { return node_ == other.node_; }
  /// Address of the shared node; stable while any copy of the term lives.
  const void* identity() const { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node;

  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  TermKind kind;
  std::uint32_t id = 0;
  Term left;
  Term right;
  std::uint32_t weight = 1;
  std::uint32_t depth = 1;
  std::int64_t max_var = -1;
  std::size_t hash = 0;
};

inline TermKind Term::kind() const { return node_->kind; }
inline std::uint32_t Term::id() const { return node_->id; }
inline const Term& Term::arg() const { return node_->left; }
inline const Term& Term::left() const { return node_->left; }
inline const Term& Term::right() const { return node_->right; }
inline std::uint32_t Term::weight() const { return node_->weight; }
inline std::uint32_t Term::depth() const { return node_->depth; }
inline std::size_t Term::hash() const { return node_->hash; }
inline std::int64_t Term::max_var() const { return node_->max_var; }

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// Total syntactic order; used only for deterministic tie-breaking.
int syntactic_compare(const Term& a, const Term& b);

// Variable naming.  Ids 0..4 print as x, y, z, u, w; other ids below the
// interned range print as vN.  Any other identifier starting with u..z is
// interned on first use.
std::string variable_name(VarId v);
VarId variable_id(std::string_view name);
bool is_variable_name(std::string_view name);

std::string constant_name(SymbolId c);
SymbolId constant_id(std::string_view name);

/// Appends the variables of `t` in order of first occurrence (no repeats).
void collect_variables(const Term& t, std::vector<VarId>& out);
/// Number of occurrences of variable `v` in `t`.
std::uint32_t occurrences(const Term& t, VarId v);
bool occurs(VarId v, const Term& t);
std::uint32_t count_unary(const Term& t);

/// Prints in the listing style: `(x * y)' * z`.
std::string to_string(const Term& t);

/// Subterm access by position: a path of 0/1 child indices.
using Position = std::vector<std::uint8_t>;
const Term& subterm_at(const Term& t, const Position& pos);
Term replace_at(const Term& t, const Position& pos, const Term& replacement);
/// All positions of non-variable subterms in pre-order (root first).
void nonvariable_positions(const Term& t, std::vector<Position>& out);
/// All positions in pre-order, variables included.
void all_positions(const Term& t, std::vector<Position>& out);

}  // namespace eqbase
