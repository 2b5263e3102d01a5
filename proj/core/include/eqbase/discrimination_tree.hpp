#pragma once

// Imperfect discrimination tree over flattened terms.
//
// Keys are pre-order symbol strings in which every variable collapses to a
// single wildcard.  Retrieval returns a superset of the real candidates;
// callers confirm with match_term / unify.

#include <cstdint>
#include <functional>
#include <vector>

#include "eqbase/term.hpp"

namespace eqbase {

class DiscriminationTree {
 public:
  using Value = std::uint32_t;
  using Visitor = std::function<void(Value)>;

  DiscriminationTree();

  void insert(const Term& t, Value v);
  /// Keys an equation as the pseudo-term eq(lhs, rhs).
  void insert(const Term& lhs, const Term& rhs, Value v);
  void remove(const Term& t, Value v);
  void remove(const Term& lhs, const Term& rhs, Value v);

  /// Entries whose key may generalize `query` (query variables are rigid).
  void generalizations(const Term& query, const Visitor& visit) const;
  void generalizations(const Term& lhs, const Term& rhs, const Visitor& visit) const;
  /// Entries whose key may unify with `query`.
  void unifiable(const Term& query, const Visitor& visit) const;
  void unifiable(const Term& lhs, const Term& rhs, const Visitor& visit) const;

  std::size_t size() const { return size_; }

 private:
  using Key = std::int64_t;
  struct Node {
    std::vector<std::pair<Key, std::uint32_t>> children;
    std::vector<Value> values;
  };
  struct Flat {
    std::vector<Key> keys;
    std::vector<std::uint32_t> skip;  // index just past the subterm starting here
  };

  static Flat flatten(const Term& t);
  static Flat flatten(const Term& lhs, const Term& rhs);
  static void flatten_into(const Term& t, Flat& out, bool rigid_vars);
  static int arity(Key k);

  std::uint32_t child(std::uint32_t node, Key k) const;
  void insert_flat(const Flat& f, Value v);
  void remove_flat(const Flat& f, Value v);
  void gen_walk(std::uint32_t node, std::vector<const Term*>& stack, const Visitor& visit) const;
  void unif_rec(std::uint32_t node, const Flat& q, std::uint32_t i, const Visitor& visit) const;
  void skip_term(std::uint32_t node, int pending,
                 const std::function<void(std::uint32_t)>& at_end) const;

  std::vector<Node> nodes_;
  std::size_t size_ = 0;
};

}  // namespace eqbase
