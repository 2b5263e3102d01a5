#include "eqbase/engine.hpp"

#include <algorithm>
#include <unordered_set>

#include "eqbase/discrimination_tree.hpp"
#include "eqbase/inference.hpp"
#include "eqbase/substitution.hpp"

namespace eqbase {

std::vector<ClauseId> Justification::parents() const {
  std::vector<ClauseId> out;
  switch (kind) {
    case JustKind::Input:
    case JustKind::Goal:
      break;
    case JustKind::GoalDenial:
      out.push_back(first);
      break;
    case JustKind::Para:
      out.push_back(first);
      out.push_back(second);
      break;
    case JustKind::Rewrite:
      out.push_back(first);
      break;
    case JustKind::Contradiction:
      if (first) out.push_back(first);
      out.push_back(second);
      break;
  }
  out.insert(out.end(), demods.begin(), demods.end());
  return out;
}

std::string_view to_string(ProveStatus s) {
  switch (s) {
    case ProveStatus::Proved:
      return "proved";
    case ProveStatus::Saturated:
      return "saturated";
    case ProveStatus::LimitExceeded:
      return "limit-exceeded";
  }
  return "?";
}

namespace {

std::string variant_key(const Equation& e) {
  Equation c = canonical_form(e);
  return to_string(c);
}

}  // namespace

bool hint_match(const Equation& eq, const std::vector<Equation>& hints) {
  return std::any_of(hints.begin(), hints.end(),
                     [&](const Equation& h) { return is_variant(eq, h, true); });
}

bool SelectionQueues::Key::operator<(const Key& o) const {
  if (hint != o.hint) return hint;
  if (weight != o.weight) return weight < o.weight;
  return id < o.id;
}

SelectionQueues::SelectionQueues(SelectionRatio ratio) : ratio_(ratio) {
  if (ratio_.oldest < 0 || ratio_.lightest_false < 0 || ratio_.lightest_true < 0 ||
      ratio_.oldest + ratio_.lightest_false + ratio_.lightest_true == 0) {
    throw std::invalid_argument("selection ratio needs a positive total");
  }
}

void SelectionQueues::add(const Clause& c) {
  Key k{c.hint, c.weight, c.id};
  by_age_.insert(c.id);
  (c.false_in_all ? false_ : true_).insert(k);
  info_[c.id] = {k, c.false_in_all};
}

void SelectionQueues::remove(ClauseId id) {
  auto it = info_.find(id);
  if (it == info_.end()) return;
  by_age_.erase(id);
  (it->second.second ? false_ : true_).erase(it->second.first);
  info_.erase(it);
}

SelectionQueues::Slot SelectionQueues::slot_for(int pos) const {
  if (pos < ratio_.oldest) return Oldest;
  if (pos < ratio_.oldest + ratio_.lightest_false) return False;
  return True;
}

ClauseId SelectionQueues::select() {
  if (empty()) throw std::logic_error("select from empty queues");
  const int cycle = ratio_.oldest + ratio_.lightest_false + ratio_.lightest_true;
  for (;;) {
    Slot slot = slot_for(pos_);
    pos_ = (pos_ + 1) % cycle;
    ClauseId id = 0;
    if (slot == Oldest) {
      id = *by_age_.begin();
    } else {
      auto& q = slot == False ? false_ : true_;
      if (q.empty()) continue;
      id = q.begin()->id;
    }
    remove(id);
    return id;
  }
}

namespace {

class Engine {
 public:
  explicit Engine(const SearchParams& params)
      : params_(params), queues_(params.ratio), start_(std::chrono::steady_clock::now()) {
    for (const auto& h : params.hints) hint_keys_.insert(variant_key(h));
  }

  void add_goal(const Equation& goal) {
    Clause c;
    c.id = next_id();
    c.eq = goal;
    c.just.kind = JustKind::Goal;
    c.weight = weight_of(goal);
    c.label = "goal";
    clauses_.push_back(std::move(c));
    retired_.resize(clauses_.size() + 1, false);
  }

  void add_input(const Equation& e, JustKind kind, ClauseId parent = 0) {
    Justification j;
    j.kind = kind;
    j.first = parent;
    keep(e, std::move(j), true);
  }

  /// Runs the given-clause loop; true when a contradiction was found.
  ProveStatus run() {
    while (!contradiction_) {
      if (queues_.empty()) return ProveStatus::Saturated;
      if (params_.max_given && stats_.given >= *params_.max_given) return ProveStatus::LimitExceeded;
      if (params_.max_seconds && elapsed() > *params_.max_seconds) return ProveStatus::LimitExceeded;
      ClauseId g = queues_.select();
      if (retired_[g]) continue;
      ++stats_.given;
      active_.push_back(g);
      infer(g);
    }
    return ProveStatus::Proved;
  }

  std::vector<Clause> proof() const {
    std::vector<ClauseId> stack{*contradiction_};
    std::vector<bool> seen(clauses_.size() + 1, false);
    std::vector<ClauseId> ids;
    while (!stack.empty()) {
      ClauseId id = stack.back();
      stack.pop_back();
      if (seen[id]) continue;
      seen[id] = true;
      ids.push_back(id);
      for (ClauseId p : clause(id).just.parents()) stack.push_back(p);
    }
    if (!seen[1] && clause(1).just.kind == JustKind::Goal) ids.push_back(1);
    std::sort(ids.begin(), ids.end());
    std::vector<ClauseId> renumber(clauses_.size() + 1, 0);
    std::vector<Clause> out;
    for (ClauseId id : ids) {
      renumber[id] = static_cast<ClauseId>(out.size() + 1);
      Clause c = clause(id);
      c.id = renumber[id];
      auto fix = [&](ClauseId& x) {
        if (x) x = renumber[x];
      };
      fix(c.just.first);
      fix(c.just.second);
      for (auto& d : c.just.demods) fix(d);
      out.push_back(std::move(c));
    }
    return out;
  }

  std::vector<Clause> kept() const {
    std::vector<Clause> out;
    for (const auto& c : clauses_) {
      if (c.eq && c.just.kind != JustKind::Goal && !retired_[c.id]) out.push_back(c);
    }
    return out;
  }

  SearchStats stats() {
    stats_.seconds = elapsed();
    return stats_;
  }

 private:
  ClauseId next_id() const { return static_cast<ClauseId>(clauses_.size() + 1); }
  const Clause& clause(ClauseId id) const { return clauses_[id - 1]; }

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  bool semantic_false(const Equation& e) const {
    if (params_.interpretations.empty()) return !e.positive();
    return std::none_of(params_.interpretations.begin(), params_.interpretations.end(),
                        [&](const FiniteAlgebra& a) { return evaluate(a, e); });
  }

  void infer(ClauseId g) {
    // Copies: keeping clauses reallocates `clauses_`.
    const Equation given = *clause(g).eq;
    const bool given_pos = given.positive();
    for (std::size_t i = 0; i < active_.size() && !contradiction_; ++i) {
      ClauseId a = active_[i];
      if (retired_[a]) continue;
      const Equation other = *clause(a).eq;
      if (given_pos) {
        for (auto& p : paramodulate_pair(given, other)) {
          generated(p.eq, g, a);
          if (contradiction_) return;
        }
      }
      if (a != g && other.positive()) {
        for (auto& p : paramodulate_pair(other, given)) {
          generated(p.eq, a, g);
          if (contradiction_) return;
        }
      }
    }
  }

  void generated(const Equation& e, ClauseId from, ClauseId into) {
    ++stats_.generated;
    Justification j;
    j.kind = JustKind::Para;
    j.first = from;
    j.second = into;
    keep(e, std::move(j), false);
  }

  // Simplifies and, unless redundant, keeps a clause.
  void keep(Equation e, Justification just, bool input) {
    if (!input) {
      try {
        Demodulated l = demods_.normalize(e.lhs);
        Demodulated r = demods_.normalize(e.rhs);
        stats_.rewrites += l.used.size() + r.used.size();
        e.lhs = std::move(l.normal);
        e.rhs = std::move(r.normal);
        just.demods.insert(just.demods.end(), l.used.begin(), l.used.end());
        just.demods.insert(just.demods.end(), r.used.begin(), r.used.end());
      } catch (const RewriteLimitExceeded&) {
        return;
      }
      if (e.positive() && e.lhs == e.rhs) return;
    }
    const bool is_hint = !hint_keys_.empty() && hint_keys_.count(variant_key(e)) > 0;
    const std::uint32_t w = weight_of(e);
    if (!input && params_.max_weight && w > *params_.max_weight &&
        !(is_hint && params_.hint_exempt_from_limits)) {
      return;
    }
    if (!input && subsumed(e)) return;

    Clause c;
    c.id = next_id();
    c.eq = e;
    c.just = std::move(just);
    c.weight = w;
    c.hint = is_hint;
    c.false_in_all = semantic_false(e);
    const ClauseId id = c.id;
    clauses_.push_back(std::move(c));
    retired_.resize(clauses_.size() + 1, false);
    ++stats_.kept;

    if (e.positive()) {
      subsumption_.insert(e.lhs, e.rhs, id);
      positives_.push_back(id);
      for (ClauseId n : negatives_) {
        if (!retired_[n] && unit_conflict(id, n)) return;
      }
      demods_.add_equation(e, id);
      queues_.add(clause(id));
      back_demodulate(id);
    } else {
      negative_keys_.insert(variant_key(e));
      negatives_.push_back(id);
      if (e.lhs == e.rhs) {
        conclude(0, id);
        return;
      }
      for (ClauseId p : positives_) {
        if (!retired_[p] && unit_conflict(p, id)) return;
      }
      queues_.add(clause(id));
      // A denial entering after demodulators exist is rewritten at once.
      rewrite_kept(id);
    }
  }

  bool subsumed(const Equation& e) {
    if (!e.positive()) return negative_keys_.count(variant_key(e)) > 0;
    bool found = false;
    auto check = [&](DiscriminationTree::Value v) {
      if (found || retired_[v]) return;
      if (subsumes(*clause(v).eq, e, true)) found = true;
    };
    subsumption_.generalizations(e.lhs, e.rhs, check);
    if (!found) subsumption_.generalizations(e.rhs, e.lhs, check);
    return found;
  }

  bool unit_conflict(ClauseId pos, ClauseId neg) {
    const Equation& n = *clause(neg).eq;
    const auto offset = static_cast<VarId>(std::max(n.lhs.max_var(), n.rhs.max_var()) + 1);
    const Equation p = shift_variables(*clause(pos).eq, offset);
    if (unify_all({{p.lhs, n.lhs}, {p.rhs, n.rhs}}) || unify_all({{p.lhs, n.rhs}, {p.rhs, n.lhs}})) {
      conclude(pos, neg);
      return true;
    }
    return false;
  }

  void conclude(ClauseId pos, ClauseId neg) {
    Clause c;
    c.id = next_id();
    c.just.kind = JustKind::Contradiction;
    c.just.first = pos;
    c.just.second = neg;
    contradiction_ = c.id;
    clauses_.push_back(std::move(c));
    retired_.resize(clauses_.size() + 1, false);
  }

  // Rewrites a kept clause with the current demodulators; the old clause is
  // retired in favour of the rewritten one.
  void rewrite_kept(ClauseId id) {
    if (contradiction_ || retired_[id]) return;
    const Equation e = *clause(id).eq;
    Demodulated l;
    Demodulated r;
    try {
      l = demods_.normalize(e.lhs);
      r = demods_.normalize(e.rhs);
    } catch (const RewriteLimitExceeded&) {
      return;
    }
    if (l.used.empty() && r.used.empty()) return;
    stats_.rewrites += l.used.size() + r.used.size();
    retired_[id] = true;
    queues_.remove(id);
    if (e.positive()) subsumption_.remove(e.lhs, e.rhs, id);
    Justification j;
    j.kind = JustKind::Rewrite;
    j.first = id;
    j.demods = l.used;
    j.demods.insert(j.demods.end(), r.used.begin(), r.used.end());
    Equation out{l.normal, r.normal, e.polarity};
    if (e.positive() && out.lhs == out.rhs) return;
    if (!e.positive()) negative_keys_.erase(variant_key(e));
    keep(out, std::move(j), true);
  }

  void back_demodulate(ClauseId demod) {
    std::vector<ClauseId> targets;
    for (ClauseId n : negatives_) {
      if (!retired_[n]) targets.push_back(n);
    }
    if (params_.back_demodulate) {
      for (ClauseId p : positives_) {
        if (p != demod && !retired_[p] && clause(p).just.kind != JustKind::Input) targets.push_back(p);
      }
    }
    for (ClauseId t : targets) {
      rewrite_kept(t);
      if (contradiction_) return;
    }
  }

  const SearchParams& params_;
  std::vector<Clause> clauses_;
  std::vector<bool> retired_{false};
  std::vector<ClauseId> active_;
  std::vector<ClauseId> positives_;
  std::vector<ClauseId> negatives_;
  std::unordered_set<std::string> negative_keys_;
  std::unordered_set<std::string> hint_keys_;
  RuleSet demods_;
  DiscriminationTree subsumption_;
  SelectionQueues queues_;
  std::optional<ClauseId> contradiction_;
  SearchStats stats_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

ProveResult prove(const std::vector<Equation>& axioms, const Equation& goal,
                  const SearchParams& params) {
  if (!goal.positive()) throw std::invalid_argument("goal must be a positive equation");
  Engine engine(params);
  engine.add_goal(goal);
  for (const auto& a : axioms) engine.add_input(a, JustKind::Input);
  engine.add_input(deny(goal), JustKind::GoalDenial, 1);
  ProveResult result;
  result.status = engine.run();
  if (result.status == ProveStatus::Proved) result.proof = engine.proof();
  result.stats = engine.stats();
  return result;
}

std::vector<Clause> derive_consequences(const std::vector<Equation>& axioms,
                                        const SearchParams& params) {
  if (!params.max_given && !params.max_seconds) {
    throw std::invalid_argument("consequence generation needs a given-count or time limit");
  }
  Engine engine(params);
  for (const auto& a : axioms) engine.add_input(a, JustKind::Input);
  engine.run();
  return engine.kept();
}

ProofScript to_script(const std::vector<Clause>& proof) {
  ProofScript script;
  for (const auto& c : proof) {
    ProofStep s;
    s.num = static_cast<int>(c.id);
    s.statement = c.eq;
    for (ClauseId p : c.just.parents()) s.parents.push_back(static_cast<int>(p));
    s.label = c.label;
    script.steps.push_back(std::move(s));
  }
  return script;
}

std::vector<Equation> hints_from_script(const ProofScript& script) {
  std::vector<Equation> out;
  for (const auto& s : script.steps) {
    if (s.statement && s.statement->positive() && !s.parents.empty()) out.push_back(*s.statement);
  }
  return out;
}

}  // namespace eqbase
