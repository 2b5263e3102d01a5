#include "eqbase/term.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace eqbase {

namespace {

constexpr VarId kInternedVarBase = 1u << 24;
constexpr std::string_view kFixedVarNames[] = {"x", "y", "z", "u", "w"};

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

class NameTable {
 public:
  std::uint32_t intern(std::string_view name) {
    std::lock_guard lock(mutex_);
    auto it = ids_.find(std::string(name));
    if (it != ids_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(names_.size());
    names_.emplace_back(name);
    ids_.emplace(names_.back(), id);
    return id;
  }
  std::string name(std::uint32_t id) const {
    std::lock_guard lock(mutex_);
    if (id >= names_.size()) return "?" + std::to_string(id);
    return names_[id];
  }

 private:
  mutable std::mutex mutex_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

NameTable& var_table() {
  static NameTable table;
  return table;
}

NameTable& const_table() {
  static NameTable table;
  return table;
}

void print(const Term& t, std::string& out) {
  switch (t.kind()) {
    case TermKind::Variable:
      out += variable_name(t.var());
      return;
    case TermKind::Constant:
      out += constant_name(t.symbol());
      return;
    case TermKind::Unary:
      if (t.arg().is_binary()) {
        out += '(';
        print(t.arg(), out);
        out += ')';
      } else {
        print(t.arg(), out);
      }
      out += '\'';
      return;
    case TermKind::Binary:
      for (int side = 0; side < 2; ++side) {
        const Term& c = side == 0 ? t.left() : t.right();
        if (c.is_binary()) {
          out += '(';
          print(c, out);
          out += ')';
        } else {
          print(c, out);
        }
        if (side == 0) out += " * ";
      }
      return;
  }
}

}  // namespace

Term Term::variable(VarId v) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Variable;
  n->id = v;
  n->max_var = v;
  n->hash = mix(0x51ed27, v);
  return Term(std::move(n));
}

Term Term::constant(SymbolId c) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Constant;
  n->id = c;
  n->hash = mix(0xc0ffee, c);
  return Term(std::move(n));
}

Term Term::constant(std::string_view name) { return constant(constant_id(name)); }

Term Term::unary(Term arg) {
  assert(arg.valid());
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Unary;
  n->weight = arg.weight() + 1;
  n->depth = arg.depth() + 1;
  n->max_var = arg.max_var();
  n->hash = mix(0x1a2b3c, arg.hash());
  n->left = std::move(arg);
  return Term(std::move(n));
}

Term Term::binary(Term left, Term right) {
  assert(left.valid() && right.valid());
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Binary;
  n->weight = left.weight() + right.weight() + 1;
  n->depth = std::max(left.depth(), right.depth()) + 1;
  n->max_var = std::max(left.max_var(), right.max_var());
  n->hash = mix(mix(0x7f4a7c, left.hash()), right.hash());
  n->left = std::move(left);
  n->right = std::move(right);
  return Term(std::move(n));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.hash() != b.hash() || a.weight() != b.weight() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::Variable:
    case TermKind::Constant:
      return a.id() == b.id();
    case TermKind::Unary:
      return a.arg() == b.arg();
    case TermKind::Binary:
      return a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

int syntactic_compare(const Term& a, const Term& b) {
  if (a.same_node(b)) return 0;
  if (a.weight() != b.weight()) return a.weight() < b.weight() ? -1 : 1;
  if (a.kind() != b.kind()) return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  switch (a.kind()) {
    case TermKind::Variable:
      return a.var() == b.var() ? 0 : (a.var() < b.var() ? -1 : 1);
    case TermKind::Constant: {
      if (a.symbol() == b.symbol()) return 0;
      auto an = constant_name(a.symbol());
      auto bn = constant_name(b.symbol());
      return an < bn ? -1 : 1;
    }
    case TermKind::Unary:
      return syntactic_compare(a.arg(), b.arg());
    case TermKind::Binary: {
      int c = syntactic_compare(a.left(), b.left());
      return c != 0 ? c : syntactic_compare(a.right(), b.right());
    }
  }
  return 0;
}

bool is_variable_name(std::string_view name) {
  return !name.empty() && name.front() >= 'u' && name.front() <= 'z';
}

std::string variable_name(VarId v) {
  if (v < 5) return std::string(kFixedVarNames[v]);
  if (v < kInternedVarBase) return "v" + std::to_string(v);
  return var_table().name(v - kInternedVarBase);
}

VarId variable_id(std::string_view name) {
  for (VarId i = 0; i < 5; ++i) {
    if (name == kFixedVarNames[i]) return i;
  }
  if (name.size() > 1 && name.front() == 'v' && name[1] != '0') {
    VarId n = 0;
    auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), n);
    if (ec == std::errc() && ptr == name.data() + name.size() && n >= 5 && n < kInternedVarBase) {
      return n;
    }
  }
  return kInternedVarBase + var_table().intern(name);
}

std::string constant_name(SymbolId c) { return const_table().name(c); }
SymbolId constant_id(std::string_view name) { return const_table().intern(name); }

void collect_variables(const Term& t, std::vector<VarId>& out) {
  if (t.is_ground()) return;
  switch (t.kind()) {
    case TermKind::Variable:
      if (std::find(out.begin(), out.end(), t.var()) == out.end()) out.push_back(t.var());
      return;
    case TermKind::Constant:
      return;
    case TermKind::Unary:
      collect_variables(t.arg(), out);
      return;
    case TermKind::Binary:
      collect_variables(t.left(), out);
      collect_variables(t.right(), out);
      return;
  }
}

std::uint32_t occurrences(const Term& t, VarId v) {
  if (t.max_var() < static_cast<std::int64_t>(v)) return 0;
  switch (t.kind()) {
    case TermKind::Variable:
      return t.var() == v ? 1 : 0;
    case TermKind::Constant:
      return 0;
    case TermKind::Unary:
      return occurrences(t.arg(), v);
    case TermKind::Binary:
      return occurrences(t.left(), v) + occurrences(t.right(), v);
  }
  return 0;
}

bool occurs(VarId v, const Term& t) {
  if (t.max_var() < static_cast<std::int64_t>(v)) return false;
  switch (t.kind()) {
    case TermKind::Variable:
      return t.var() == v;
    case TermKind::Constant:
      return false;
    case TermKind::Unary:
      return occurs(v, t.arg());
    case TermKind::Binary:
      return occurs(v, t.left()) || occurs(v, t.right());
  }
  return false;
}

std::uint32_t count_unary(const Term& t) {
  switch (t.kind()) {
    case TermKind::Variable:
    case TermKind::Constant:
      return 0;
    case TermKind::Unary:
      return 1 + count_unary(t.arg());
    case TermKind::Binary:
      return count_unary(t.left()) + count_unary(t.right());
  }
  return 0;
}

std::string to_string(const Term& t) {
  std::string out;
  print(t, out);
  return out;
}

const Term& subterm_at(const Term& t, const Position& pos) {
  const Term* cur = &t;
  for (auto step : pos) {
    if (cur->is_unary() && step == 0) {
      cur = &cur->arg();
    } else if (cur->is_binary()) {
      cur = step == 0 ? &cur->left() : &cur->right();
    } else {
      throw std::out_of_range("position does not exist in term");
    }
  }
  return *cur;
}

namespace {

Term replace_rec(const Term& t, const Position& pos, std::size_t i, const Term& replacement) {
  if (i == pos.size()) return replacement;
  if (t.is_unary()) {
    if (pos[i] != 0) throw std::out_of_range("position does not exist in term");
    return Term::unary(replace_rec(t.arg(), pos, i + 1, replacement));
  }
  if (t.is_binary()) {
    if (pos[i] == 0) return Term::binary(replace_rec(t.left(), pos, i + 1, replacement), t.right());
    return Term::binary(t.left(), replace_rec(t.right(), pos, i + 1, replacement));
  }
  throw std::out_of_range("position does not exist in term");
}

void positions_rec(const Term& t, Position& cur, std::vector<Position>& out, bool with_vars) {
  if (t.is_variable()) {
    if (with_vars) out.push_back(cur);
    return;
  }
  out.push_back(cur);
  if (t.is_unary()) {
    cur.push_back(0);
    positions_rec(t.arg(), cur, out, with_vars);
    cur.pop_back();
  } else if (t.is_binary()) {
    cur.push_back(0);
    positions_rec(t.left(), cur, out, with_vars);
    cur.back() = 1;
    positions_rec(t.right(), cur, out, with_vars);
    cur.pop_back();
  }
}

}  // namespace

Term replace_at(const Term& t, const Position& pos, const Term& replacement) {
  return replace_rec(t, pos, 0, replacement);
}

void nonvariable_positions(const Term& t, std::vector<Position>& out) {
  Position cur;
  positions_rec(t, cur, out, false);
}

void all_positions(const Term& t, std::vector<Position>& out) {
  Position cur;
  positions_rec(t, cur, out, true);
}

}  // namespace eqbase
