#include "eqbase/model_search.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace eqbase {

std::uint64_t effective_budget(const FindOptions& options) {
  if (options.node_budget) return options.node_budget;
  if (const char* env = std::getenv("EQBASE_BUDGET")) {
    try {
      auto v = std::stoull(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return kDefaultNodeBudget;
}

namespace {

struct Instance {
  std::uint32_t eq;
  std::uint32_t index;
};

// A constraint set: every instance of each identity in `all`, plus single
// fixed instances from `fixed` (negated must_fail identities at a witness).
struct Constraints {
  std::vector<const CompiledEquation*> eqs;
  std::vector<std::uint32_t> all;
  std::vector<Instance> fixed;
};

class Search {
 public:
  Search(const Constraints& cons, const std::vector<CompiledEquation>& fail, int n,
         std::uint64_t budget, std::uint64_t& nodes, bool symmetry)
      : cons_(cons), fail_(fail), n_(n), budget_(budget), nodes_(nodes), symmetry_(symmetry) {
    const auto cells = static_cast<std::size_t>(n * n + n);
    value_.assign(cells, -1);
    touched_.assign(static_cast<std::size_t>(n), 0);
    for (const auto& inst : cons.fixed) {
      std::uint32_t idx = inst.index;
      for (std::size_t i = 0; i < cons.eqs[inst.eq]->arity(); ++i) {
        ++touched_[idx % static_cast<std::uint32_t>(n)];
        idx /= static_cast<std::uint32_t>(n);
      }
    }
    watch_.resize(cells);
    scratch_.resize(cells);
    for (int k = 0; k < n; ++k) {
      order_.push_back(n * n + k);
      for (int i = 0; i <= k; ++i) {
        for (int j = 0; j <= k; ++j) {
          if (std::max(i, j) == k) order_.push_back(i * n + j);
        }
      }
    }
  }

  enum class Outcome { Found, None, Budget };

  Outcome run() {
    auto add = [&](const Instance& inst) {
      Status st = eval(inst);
      if (st.kind == Status::Violated) return false;
      if (st.kind == Status::Satisfied) return true;
      watch_[static_cast<std::size_t>(st.cell)].push_back(inst);
      return st.kind != Status::Forcing || force(st.cell, st.value);
    };
    for (const auto& inst : cons_.fixed) {
      if (!add(inst)) return Outcome::None;
    }
    for (std::uint32_t e : cons_.all) {
      std::uint64_t count = 1;
      for (std::size_t i = 0; i < cons_.eqs[e]->arity(); ++i) count *= static_cast<std::uint64_t>(n_);
      if (count > kMaxInstances) throw ResourceError("too many ground instances for model search");
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        if (!add(Instance{e, static_cast<std::uint32_t>(idx)})) return Outcome::None;
      }
    }
    if (!propagate()) return Outcome::None;
    return dfs();
  }

  FiniteAlgebra algebra() const {
    std::vector<Element> bin(static_cast<std::size_t>(n_ * n_));
    std::vector<Element> un(static_cast<std::size_t>(n_));
    for (std::size_t i = 0; i < bin.size(); ++i) bin[i] = static_cast<Element>(value_[i]);
    for (std::size_t i = 0; i < un.size(); ++i) un[i] = static_cast<Element>(value_[bin.size() + i]);
    return FiniteAlgebra(n_, std::move(bin), std::move(un));
  }

 private:
  static constexpr std::uint64_t kMaxInstances = 1u << 26;

  struct Side {
    int value;      // >= 0 when evaluated
    int cell;       // blocking cell otherwise
    bool at_root;   // the blocked operation is the side's outermost one
  };

  struct Status {
    enum Kind { Satisfied, Violated, Blocked, Forcing } kind;
    int cell = -1;
    int value = -1;
  };

  Side run_code(const std::vector<CompiledEquation::Instr>& code, const Element* asg) const {
    int stack[256];
    int sp = 0;
    const std::size_t last = code.size() - 1;
    for (std::size_t k = 0; k < code.size(); ++k) {
      const auto& ins = code[k];
      int cell = 0;
      switch (ins.op) {
        case CompiledEquation::Op::Slot:
          stack[sp++] = asg[ins.slot];
          continue;
        case CompiledEquation::Op::Unary:
          cell = n_ * n_ + stack[sp - 1];
          break;
        case CompiledEquation::Op::Binary:
          --sp;
          cell = stack[sp - 1] * n_ + stack[sp];
          break;
      }
      int v = value_[static_cast<std::size_t>(cell)];
      if (v < 0) return {-1, cell, k == last};
      stack[sp - 1] = v;
    }
    return {stack[0], -1, false};
  }

  Status eval(const Instance& inst) const {
    const auto& eq = *cons_.eqs[inst.eq];
    Element asg[64];
    std::uint32_t idx = inst.index;
    for (std::size_t i = 0; i < eq.arity(); ++i) {
      asg[i] = static_cast<Element>(idx % static_cast<std::uint32_t>(n_));
      idx /= static_cast<std::uint32_t>(n_);
    }
    Side l = run_code(eq.lhs_code(), asg);
    if (l.value < 0 && !(l.at_root && eq.positive())) return {Status::Blocked, l.cell};
    Side r = run_code(eq.rhs_code(), asg);
    if (l.value < 0) {
      if (r.value >= 0) return {Status::Forcing, l.cell, r.value};
      return {Status::Blocked, l.cell};
    }
    if (r.value < 0) {
      if (r.at_root && eq.positive()) return {Status::Forcing, r.cell, l.value};
      return {Status::Blocked, r.cell};
    }
    return {((l.value == r.value) == eq.positive()) ? Status::Satisfied : Status::Violated};
  }

  // Cells are set immediately and queued for watch processing.
  bool force(int cell, int v) {
    int& slot = value_[static_cast<std::size_t>(cell)];
    if (slot >= 0) return slot == v;
    slot = v;
    trail_.push_back(cell);
    touch(cell, v, 1);
    return true;
  }

  bool process(int cell) {
    auto& list = scratch_[static_cast<std::size_t>(cell)];
    list.clear();
    list.swap(watch_[static_cast<std::size_t>(cell)]);
    auto& keep = watch_[static_cast<std::size_t>(cell)];
    for (std::size_t i = 0; i < list.size(); ++i) {
      Status st = eval(list[i]);
      bool ok = true;
      switch (st.kind) {
        case Status::Satisfied:
          keep.push_back(list[i]);
          break;
        case Status::Blocked:
          watch_[static_cast<std::size_t>(st.cell)].push_back(list[i]);
          break;
        case Status::Forcing:
          watch_[static_cast<std::size_t>(st.cell)].push_back(list[i]);
          ok = force(st.cell, st.value);
          break;
        case Status::Violated:
          ok = false;
          keep.push_back(list[i]);
          break;
      }
      if (!ok) {
        keep.insert(keep.end(), list.begin() + static_cast<std::ptrdiff_t>(i) + 1, list.end());
        return false;
      }
    }
    return true;
  }

  // Processes every trail entry not yet processed.
  bool propagate() {
    while (head_ < trail_.size()) {
      if (!process(trail_[head_++])) return false;
    }
    return true;
  }

  // Marks the elements a cell assignment mentions.
  void touch(int cell, int v, int delta) {
    if (cell < n_ * n_) {
      touched_[static_cast<std::size_t>(cell / n_)] += delta;
      touched_[static_cast<std::size_t>(cell % n_)] += delta;
    } else {
      touched_[static_cast<std::size_t>(cell - n_ * n_)] += delta;
    }
    touched_[static_cast<std::size_t>(v)] += delta;
  }

  bool mentions(int cell, int e) const {
    if (cell < n_ * n_) return cell / n_ == e || cell % n_ == e;
    return cell - n_ * n_ == e;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      auto c = static_cast<std::size_t>(trail_.back());
      touch(trail_.back(), value_[c], -1);
      value_[static_cast<std::size_t>(trail_.back())] = -1;
      trail_.pop_back();
    }
    head_ = mark;
  }

  bool leaf_ok() const {
    if (fail_.empty()) return true;
    FiniteAlgebra a = algebra();
    for (const auto& f : fail_) {
      if (evaluate(a, f)) return false;
    }
    return true;
  }

  // Most-watched unassigned cell; ties go to the earlier cell in `order_`.
  int choose() const {
    int best = -1;
    std::size_t best_count = 0;
    for (int cell : order_) {
      if (value_[static_cast<std::size_t>(cell)] >= 0) continue;
      std::size_t c = watch_[static_cast<std::size_t>(cell)].size();
      if (best < 0 || c > best_count) {
        best = cell;
        best_count = c;
      }
    }
    return best;
  }

  Outcome dfs() {
    const int cell = choose();
    if (cell < 0) return leaf_ok() ? Outcome::Found : Outcome::None;
    const std::size_t mark = trail_.size();
    bool fresh_tried = false;
    for (int v = 0; v < n_; ++v) {
      // Untouched elements not named by the cell are interchangeable.
      if (symmetry_ && touched_[static_cast<std::size_t>(v)] == 0 && !mentions(cell, v)) {
        if (fresh_tried) continue;
        fresh_tried = true;
      }
      if (++nodes_ > budget_) return Outcome::Budget;
      force(cell, v);
      if (propagate()) {
        Outcome o = dfs();
        if (o != Outcome::None) return o;
      }
      undo(mark);
    }
    return Outcome::None;
  }

  const Constraints& cons_;
  const std::vector<CompiledEquation>& fail_;
  int n_;
  std::uint64_t budget_;
  std::uint64_t& nodes_;
  bool symmetry_;
  std::vector<int> touched_;
  std::vector<int> value_;
  std::vector<int> order_;
  std::vector<int> trail_;
  std::size_t head_ = 0;
  std::vector<std::vector<Instance>> watch_;
  std::vector<std::vector<Instance>> scratch_;
};

}  // namespace

namespace {

// Restricted growth tuples: each entry is at most one more than the largest
// earlier entry.  Every tuple over [0, n) is a renaming of exactly one.
bool next_growth_tuple(std::vector<int>& t, int n) {
  for (std::size_t i = t.size(); i-- > 1;) {
    int bound = 0;
    for (std::size_t j = 0; j < i; ++j) bound = std::max(bound, t[j] + 1);
    if (t[i] < std::min(bound, n - 1)) {
      ++t[i];
      std::fill(t.begin() + static_cast<std::ptrdiff_t>(i) + 1, t.end(), 0);
      return true;
    }
  }
  return false;
}

}  // namespace

ModelResult find_model(const ModelQuery& query, const FindOptions& options) {
  if (query.min_size < 1 || query.max_size < query.min_size) {
    throw std::invalid_argument("model query needs 1 <= min_size <= max_size");
  }
  if (query.max_size > 255) throw std::invalid_argument("model size too large");
  std::vector<CompiledEquation> hold;
  std::vector<CompiledEquation> fail;
  std::vector<CompiledEquation> denied;
  for (const auto& e : query.must_hold) hold.emplace_back(e);
  for (const auto& e : query.must_fail) {
    fail.emplace_back(e);
    denied.emplace_back(Equation{e.lhs, e.rhs, e.positive() ? Polarity::NotEqual : Polarity::Equal});
  }
  std::size_t witness_len = 0;
  for (const auto& h : hold) {
    if (h.arity() > 32) throw std::invalid_argument("identity has too many variables");
  }
  for (const auto& f : fail) witness_len += f.arity();

  Constraints cons;
  for (const auto& h : hold) {
    cons.all.push_back(static_cast<std::uint32_t>(cons.eqs.size()));
    cons.eqs.push_back(&h);
  }
  for (const auto& d : denied) cons.eqs.push_back(&d);

  ModelResult result;
  const std::uint64_t budget = effective_budget(options);
  for (int n = query.min_size; n <= query.max_size; ++n) {
    std::vector<int> witness(witness_len, 0);
    bool found = false;
    bool over = false;
    do {
      cons.fixed.clear();
      std::size_t at = 0;
      for (std::size_t f = 0; f < fail.size(); ++f) {
        std::uint32_t idx = 0;
        std::uint32_t scale = 1;
        for (std::size_t i = 0; i < fail[f].arity(); ++i) {
          idx += static_cast<std::uint32_t>(witness[at++]) * scale;
          scale *= static_cast<std::uint32_t>(n);
        }
        cons.fixed.push_back({static_cast<std::uint32_t>(hold.size() + f), idx});
      }
      Search search(cons, fail, n, budget, result.nodes, options.symmetry_reduction);
      switch (search.run()) {
        case Search::Outcome::Found:
          result.model = search.algebra();
          found = true;
          break;
        case Search::Outcome::Budget:
          over = true;
          break;
        case Search::Outcome::None:
          break;
      }
    } while (!found && !over && next_growth_tuple(witness, n));
    if (found) {
      result.status = SearchStatus::Found;
      return result;
    }
    if (over) {
      result.status = SearchStatus::BudgetExceeded;
      return result;
    }
    result.exhausted_through = n;
  }
  result.status = SearchStatus::Exhausted;
  return result;
}

std::optional<FiniteAlgebra> find_model_or_throw(const ModelQuery& query, const FindOptions& options) {
  auto r = find_model(query, options);
  if (r.status == SearchStatus::BudgetExceeded) {
    throw ResourceError("model search budget exceeded after " + std::to_string(r.nodes) + " nodes");
  }
  return r.model;
}

}  // namespace eqbase
