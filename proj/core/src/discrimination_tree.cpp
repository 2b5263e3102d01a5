#include "eqbase/discrimination_tree.hpp"

#include <algorithm>

namespace eqbase {

namespace {

constexpr std::int64_t kStar = -1;
constexpr std::int64_t kUnary = -2;
constexpr std::int64_t kBinary = -3;
constexpr std::int64_t kEquation = -4;
// Variables in a generalization query only meet wildcards.
constexpr std::int64_t kRigidVar = -5;

}  // namespace

DiscriminationTree::DiscriminationTree() { nodes_.emplace_back(); }

int DiscriminationTree::arity(Key k) {
  if (k == kUnary) return 1;
  if (k == kBinary || k == kEquation) return 2;
  return 0;
}

void DiscriminationTree::flatten_into(const Term& t, Flat& out, bool rigid_vars) {
  auto at = static_cast<std::uint32_t>(out.keys.size());
  out.skip.push_back(0);
  switch (t.kind()) {
    case TermKind::Variable:
      out.keys.push_back(rigid_vars ? kRigidVar : kStar);
      break;
    case TermKind::Constant:
      out.keys.push_back(static_cast<Key>(t.symbol()));
      break;
    case TermKind::Unary:
      out.keys.push_back(kUnary);
      flatten_into(t.arg(), out, rigid_vars);
      break;
    case TermKind::Binary:
      out.keys.push_back(kBinary);
      flatten_into(t.left(), out, rigid_vars);
      flatten_into(t.right(), out, rigid_vars);
      break;
  }
  out.skip[at] = static_cast<std::uint32_t>(out.keys.size());
}

DiscriminationTree::Flat DiscriminationTree::flatten(const Term& t) {
  Flat f;
  flatten_into(t, f, false);
  return f;
}

DiscriminationTree::Flat DiscriminationTree::flatten(const Term& lhs, const Term& rhs) {
  Flat f;
  f.keys.push_back(kEquation);
  f.skip.push_back(0);
  flatten_into(lhs, f, false);
  flatten_into(rhs, f, false);
  f.skip[0] = static_cast<std::uint32_t>(f.keys.size());
  return f;
}

std::uint32_t DiscriminationTree::child(std::uint32_t node, Key k) const {
  for (const auto& [key, c] : nodes_[node].children) {
    if (key == k) return c;
  }
  return 0;
}

void DiscriminationTree::insert_flat(const Flat& f, Value v) {
  std::uint32_t node = 0;
  for (Key k : f.keys) {
    std::uint32_t next = child(node, k);
    if (next == 0) {
      next = static_cast<std::uint32_t>(nodes_.size());
      nodes_.emplace_back();
      nodes_[node].children.emplace_back(k, next);
    }
    node = next;
  }
  nodes_[node].values.push_back(v);
  ++size_;
}

void DiscriminationTree::remove_flat(const Flat& f, Value v) {
  std::uint32_t node = 0;
  for (Key k : f.keys) {
    node = child(node, k);
    if (node == 0) return;
  }
  auto& vals = nodes_[node].values;
  auto it = std::find(vals.begin(), vals.end(), v);
  if (it != vals.end()) {
    vals.erase(it);
    --size_;
  }
}

void DiscriminationTree::insert(const Term& t, Value v) { insert_flat(flatten(t), v); }
void DiscriminationTree::insert(const Term& lhs, const Term& rhs, Value v) {
  insert_flat(flatten(lhs, rhs), v);
}
void DiscriminationTree::remove(const Term& t, Value v) { remove_flat(flatten(t), v); }
void DiscriminationTree::remove(const Term& lhs, const Term& rhs, Value v) {
  remove_flat(flatten(lhs, rhs), v);
}

void DiscriminationTree::skip_term(std::uint32_t node, int pending,
                                   const std::function<void(std::uint32_t)>& at_end) const {
  if (pending == 0) {
    at_end(node);
    return;
  }
  for (const auto& [key, c] : nodes_[node].children) {
    skip_term(c, pending - 1 + arity(key), at_end);
  }
}

void DiscriminationTree::unif_rec(std::uint32_t node, const Flat& q, std::uint32_t i,
                                  const Visitor& visit) const {
  if (i == q.keys.size()) {
    for (Value v : nodes_[node].values) visit(v);
    return;
  }
  if (q.keys[i] == kStar) {
    skip_term(node, 1, [&](std::uint32_t end) { unif_rec(end, q, i + 1, visit); });
    return;
  }
  for (const auto& [key, c] : nodes_[node].children) {
    if (key == kStar) {
      unif_rec(c, q, q.skip[i], visit);
    } else if (key == q.keys[i]) {
      unif_rec(c, q, i + 1, visit);
    }
  }
}

// Walks the query term directly; `stack` holds the subterms still to be
// matched, next on top, and is restored before returning.
void DiscriminationTree::gen_walk(std::uint32_t node, std::vector<const Term*>& stack,
                                  const Visitor& visit) const {
  if (stack.empty()) {
    for (Value v : nodes_[node].values) visit(v);
    return;
  }
  const Term* t = stack.back();
  stack.pop_back();
  Key k = kRigidVar;
  switch (t->kind()) {
    case TermKind::Variable:
      break;
    case TermKind::Constant:
      k = static_cast<Key>(t->symbol());
      break;
    case TermKind::Unary:
      k = kUnary;
      break;
    case TermKind::Binary:
      k = kBinary;
      break;
  }
  for (const auto& [key, c] : nodes_[node].children) {
    if (key == kStar) {
      gen_walk(c, stack, visit);
    } else if (key == k) {
      const std::size_t mark = stack.size();
      if (k == kBinary) {
        stack.push_back(&t->right());
        stack.push_back(&t->left());
      } else if (k == kUnary) {
        stack.push_back(&t->arg());
      }
      gen_walk(c, stack, visit);
      stack.resize(mark);
    }
  }
  stack.push_back(t);
}

void DiscriminationTree::generalizations(const Term& query, const Visitor& visit) const {
  std::vector<const Term*> stack{&query};
  gen_walk(0, stack, visit);
}

void DiscriminationTree::generalizations(const Term& lhs, const Term& rhs,
                                         const Visitor& visit) const {
  std::uint32_t root = child(0, kEquation);
  if (root == 0) return;
  std::vector<const Term*> stack{&rhs, &lhs};
  gen_walk(root, stack, visit);
}

void DiscriminationTree::unifiable(const Term& query, const Visitor& visit) const {
  unif_rec(0, flatten(query), 0, visit);
}

void DiscriminationTree::unifiable(const Term& lhs, const Term& rhs, const Visitor& visit) const {
  unif_rec(0, flatten(lhs, rhs), 0, visit);
}

}  // namespace eqbase
