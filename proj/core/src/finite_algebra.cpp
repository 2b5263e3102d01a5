#include "eqbase/finite_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace eqbase {

FiniteAlgebra::FiniteAlgebra(int size, std::vector<Element> binary, std::vector<Element> unary)
    : size_(size), binary_(std::move(binary)), unary_(std::move(unary)) {
  if (size < 1 || size > 255) throw std::invalid_argument("algebra size out of range");
  if (binary_.size() != static_cast<std::size_t>(size * size) ||
      unary_.size() != static_cast<std::size_t>(size)) {
    throw std::invalid_argument("table dimensions do not match size");
  }
  auto bad = [size](Element e) { return e >= size; };
  if (std::any_of(binary_.begin(), binary_.end(), bad) ||
      std::any_of(unary_.begin(), unary_.end(), bad)) {
    throw std::invalid_argument("table entry outside the domain");
  }
}

FiniteAlgebra FiniteAlgebra::zero(int size) {
  return FiniteAlgebra(size, std::vector<Element>(static_cast<std::size_t>(size * size), 0),
                       std::vector<Element>(static_cast<std::size_t>(size), 0));
}

CompiledEquation::CompiledEquation(const Equation& e) : positive_(e.positive()) {
  compile(e.lhs, lhs_);
  compile(e.rhs, rhs_);
}

void CompiledEquation::compile(const Term& t, std::vector<Instr>& out) {
  switch (t.kind()) {
    case TermKind::Variable:
    case TermKind::Constant: {
      std::pair<bool, std::uint32_t> key{t.is_variable(), t.id()};
      auto it = std::find(slots_.begin(), slots_.end(), key);
      auto slot = static_cast<std::size_t>(it - slots_.begin());
      if (it == slots_.end()) slots_.push_back(key);
      out.push_back({Op::Slot, static_cast<std::uint8_t>(slot)});
      return;
    }
    case TermKind::Unary:
      compile(t.arg(), out);
      out.push_back({Op::Unary, 0});
      return;
    case TermKind::Binary:
      compile(t.left(), out);
      compile(t.right(), out);
      out.push_back({Op::Binary, 0});
      return;
  }
}

namespace {

Element run(const std::vector<CompiledEquation::Instr>& code, const FiniteAlgebra& a,
            const Element* assignment) {
  Element stack[256];
  int sp = 0;
  for (const auto& ins : code) {
    switch (ins.op) {
      case CompiledEquation::Op::Slot:
        stack[sp++] = assignment[ins.slot];
        break;
      case CompiledEquation::Op::Unary:
        stack[sp - 1] = a.inv(stack[sp - 1]);
        break;
      case CompiledEquation::Op::Binary:
        --sp;
        stack[sp - 1] = a.mul(stack[sp - 1], stack[sp]);
        break;
    }
  }
  return stack[0];
}

// Calls f(assignment) for every assignment; stops early when f returns false.
template <typename F>
bool for_all_assignments(std::size_t arity, int size, F&& f) {
  std::vector<Element> assignment(arity, 0);
  for (;;) {
    if (!f(assignment.data())) return false;
    std::size_t i = 0;
    while (i < arity && ++assignment[i] == size) assignment[i++] = 0;
    if (i == arity) return true;
  }
}

}  // namespace

std::pair<Element, Element> CompiledEquation::sides(const FiniteAlgebra& a,
                                                    const Element* assignment) const {
  return {run(lhs_, a, assignment), run(rhs_, a, assignment)};
}

bool evaluate(const FiniteAlgebra& a, const CompiledEquation& e) {
  return for_all_assignments(e.arity(), a.size(), [&](const Element* asg) {
    auto [l, r] = e.sides(a, asg);
    return e.positive() ? l == r : l != r;
  });
}

bool evaluate(const FiniteAlgebra& a, const Equation& e) {
  return evaluate(a, CompiledEquation(e));
}

std::optional<std::vector<Element>> counterexample(const FiniteAlgebra& a, const Equation& e) {
  CompiledEquation c(e);
  std::optional<std::vector<Element>> found;
  for_all_assignments(c.arity(), a.size(), [&](const Element* asg) {
    auto [l, r] = c.sides(a, asg);
    if ((l == r) == c.positive()) return true;
    found.emplace(asg, asg + c.arity());
    return false;
  });
  return found;
}

std::vector<Element> inverses_of(const FiniteAlgebra& a, Element elem) {
  std::vector<Element> out;
  for (int bi = 0; bi < a.size(); ++bi) {
    auto b = static_cast<Element>(bi);
    bool left = a.mul(a.mul(elem, b), elem) == elem && a.mul(a.mul(b, elem), b) == b;
    bool right = a.mul(elem, a.mul(b, elem)) == elem && a.mul(b, a.mul(elem, b)) == b;
    if (left && right) out.push_back(b);
  }
  return out;
}

std::string_view to_string(AlgebraClass c) {
  switch (c) {
    case AlgebraClass::NotSemigroup:
      return "not-semigroup";
    case AlgebraClass::NotRegular:
      return "not-regular";
    case AlgebraClass::RegularNotInverse:
      return "regular-not-inverse";
    case AlgebraClass::InverseWrongUnary:
      return "inverse-wrong-unary";
    case AlgebraClass::InverseNaturalInversion:
      return "inverse-with-natural-inversion";
  }
  return "?";
}

bool is_associative(const FiniteAlgebra& a) {
  const int n = a.size();
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      Element xy = a.mul(static_cast<Element>(x), static_cast<Element>(y));
      for (int z = 0; z < n; ++z) {
        if (a.mul(xy, static_cast<Element>(z)) !=
            a.mul(static_cast<Element>(x), a.mul(static_cast<Element>(y), static_cast<Element>(z)))) {
          return false;
        }
      }
    }
  }
  return true;
}

bool idempotents_commute(const FiniteAlgebra& a) {
  std::vector<Element> idempotents;
  for (int x = 0; x < a.size(); ++x) {
    auto e = static_cast<Element>(x);
    if (a.mul(e, e) == e) idempotents.push_back(e);
  }
  for (Element e : idempotents) {
    for (Element f : idempotents) {
      if (a.mul(e, f) != a.mul(f, e)) return false;
    }
  }
  return true;
}

AlgebraClass classify(const FiniteAlgebra& a) {
  if (!is_associative(a)) return AlgebraClass::NotSemigroup;
  bool unique = true;
  std::vector<Element> natural(static_cast<std::size_t>(a.size()));
  for (int x = 0; x < a.size(); ++x) {
    auto inv = inverses_of(a, static_cast<Element>(x));
    if (inv.empty()) return AlgebraClass::NotRegular;
    unique = unique && inv.size() == 1;
    natural[static_cast<std::size_t>(x)] = inv.front();
  }
  // Regular semigroups: unique inverses iff commuting idempotents.
  if (unique != idempotents_commute(a)) {
    throw std::logic_error("inverse uniqueness and idempotent commutation disagree");
  }
  if (!unique) return AlgebraClass::RegularNotInverse;
  if (natural != a.unary_table()) return AlgebraClass::InverseWrongUnary;
  return AlgebraClass::InverseNaturalInversion;
}

EnumerationStats enumerate_all(int size,
                               const std::function<void(const FiniteAlgebra&, Tally&)>& visitor,
                               const EnumerateOptions& options) {
  if (size < 1) throw std::invalid_argument("size must be positive");
  EnumerationStats stats;
  const auto cells = static_cast<std::size_t>(size * size + size);
  FiniteAlgebra alg = FiniteAlgebra::zero(size);

  auto load = [&](const std::vector<Element>& digits) {
    auto& bin = alg.binary_table();
    auto& un = alg.unary_table();
    std::copy(digits.begin(), digits.begin() + size * size, bin.begin());
    std::copy(digits.begin() + size * size, digits.end(), un.begin());
  };

  if (options.samples) {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<int> pick(0, size - 1);
    std::vector<Element> digits(cells);
    for (std::uint64_t s = 0; s < *options.samples; ++s) {
      for (auto& d : digits) d = static_cast<Element>(pick(rng));
      load(digits);
      visitor(alg, stats.tallies);
      ++stats.visited;
    }
    return stats;
  }
  if (size > 3) throw ResourceError("exhaustive enumeration is limited to size <= 3");

  // Lexicographic order: the last unary entry varies fastest.
  std::vector<Element> digits(cells, 0);
  for (;;) {
    load(digits);
    visitor(alg, stats.tallies);
    ++stats.visited;
    std::size_t i = cells;
    while (i > 0) {
      --i;
      if (++digits[i] < size) break;
      digits[i] = 0;
      if (i == 0) return stats;
    }
  }
}

std::string format_model(const FiniteAlgebra& a) {
  std::ostringstream out;
  out << "size " << a.size() << "\n";
  for (int r = 0; r < a.size(); ++r) {
    for (int c = 0; c < a.size(); ++c) {
      if (c) out << ' ';
      out << static_cast<int>(a.mul(static_cast<Element>(r), static_cast<Element>(c)));
    }
    out << "\n";
  }
  for (int c = 0; c < a.size(); ++c) {
    if (c) out << ' ';
    out << static_cast<int>(a.inv(static_cast<Element>(c)));
  }
  out << "\n";
  return out.str();
}

std::vector<FiniteAlgebra> parse_models(std::string_view text) {
  std::vector<FiniteAlgebra> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<int> numbers;
  int size = 0;
  auto finish = [&] {
    if (size == 0) return;
    const auto need = static_cast<std::size_t>(size * size + size);
    if (numbers.size() != need) {
      throw std::runtime_error("model block of size " + std::to_string(size) + " has " +
                               std::to_string(numbers.size()) + " entries, expected " +
                               std::to_string(need));
    }
    std::vector<Element> bin;
    std::vector<Element> un;
    for (std::size_t i = 0; i < need; ++i) {
      if (numbers[i] < 0 || numbers[i] >= size) throw std::runtime_error("table entry out of range");
      (i < static_cast<std::size_t>(size * size) ? bin : un).push_back(static_cast<Element>(numbers[i]));
    }
    out.emplace_back(size, std::move(bin), std::move(un));
    numbers.clear();
    size = 0;
  };
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "size") {
      finish();
      if (!(ls >> size) || size < 1) throw std::runtime_error("bad size line");
      continue;
    }
    if (size == 0) throw std::runtime_error("table row before 'size' line");
    numbers.push_back(std::stoi(word));
    int v;
    while (ls >> v) numbers.push_back(v);
  }
  finish();
  return out;
}

std::vector<FiniteAlgebra> read_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_models(buf.str());
}

}  // namespace eqbase
