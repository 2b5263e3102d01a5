#include "eqbase/proof_check.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <unordered_set>

#include "eqbase/inference.hpp"
#include "eqbase/order.hpp"
#include "eqbase/substitution.hpp"

namespace eqbase {

std::string_view to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::Input:
      return "input";
    case CertificateKind::Goal:
      return "goal";
    case CertificateKind::Denial:
      return "denial";
    case CertificateKind::Para:
      return "para";
    case CertificateKind::PureRewrite:
      return "rewrite";
    case CertificateKind::UnitConflict:
      return "unit-conflict";
    case CertificateKind::Reflexivity:
      return "reflexivity";
  }
  return "?";
}

namespace {

const Equation& statement_of(const ProofScript& script, int num) {
  const ProofStep* s = script.find(num);
  if (!s || !s->statement) throw std::logic_error("step " + std::to_string(num) + " has no statement");
  return *s->statement;
}

bool sides_unify(const Equation& e) { return unify(e.lhs, e.rhs).has_value(); }

// Unit conflict between a positive unit and a negative one: some common
// instance makes the denial read s != s.
bool unit_conflict(const Equation& pos, const Equation& neg) {
  if (!pos.positive() || neg.positive()) return false;
  auto offset = static_cast<VarId>(std::max(neg.lhs.max_var(), neg.rhs.max_var()) + 1);
  Equation p = shift_variables(pos, offset);
  if (unify_all({{p.lhs, neg.lhs}, {p.rhs, neg.rhs}})) return true;
  return unify_all({{p.lhs, neg.rhs}, {p.rhs, neg.lhs}}).has_value();
}

class RewriteSearch {
 public:
  RewriteSearch(const ProofScript& script, std::vector<int> demods,
                std::function<bool(const Equation&)> accept, std::size_t budget, std::size_t& nodes)
      : script_(script),
        demods_(std::move(demods)),
        accept_(std::move(accept)),
        budget_(budget),
        nodes_(nodes) {}

  /// Applies the listed demodulators in order, each exactly once.
  bool run(const Equation& start) {
    seen_.clear();
    path_.clear();
    return dfs(start, 0);
  }

  /// Demodulation proper: each listed rule in turn, used only in a
  /// simplifying direction, at its leftmost-outermost redex (lhs first).
  bool run_greedy(const Equation& start) {
    path_.clear();
    Equation eq = start;
    for (int d : demods_) {
      if (!tick()) return false;
      const Equation& rule_eq = statement_of(script_, d);
      if (!rule_eq.positive()) return false;
      RuleSet rules;
      if (!rules.add_equation(rule_eq, static_cast<std::uint32_t>(d))) return false;
      bool applied = false;
      for (int side = 0; side < 2 && !applied; ++side) {
        std::vector<Position> positions;
        nonvariable_positions(side == 0 ? eq.lhs : eq.rhs, positions);
        for (const auto& pos : positions) {
          const Term& sub = subterm_at(side == 0 ? eq.lhs : eq.rhs, pos);
          for (const auto& r : rules.rules()) {
            auto m = match_term(r.lhs, sub);
            if (!m) continue;
            if (r.ordered && !kbo_greater(sub, apply_substitution(*m, r.rhs))) continue;
            const bool reversed = !(r.lhs == rule_eq.lhs);
            auto next = rewrite_at(eq, side, pos, reversed ? rule_eq.flipped() : rule_eq);
            if (!next) continue;
            path_.push_back({d, reversed, side, pos});
            eq = std::move(*next);
            applied = true;
            break;
          }
          if (applied) break;
        }
      }
      if (!applied) return false;
    }
    return accept_(eq);
  }

  /// Applies the listed demodulators in any order and multiplicity, up to
  /// `max_depth` applications.
  bool run_unordered(const Equation& start, std::size_t max_depth) {
    seen_.clear();
    path_.clear();
    return dfs_any(start, max_depth);
  }

  const std::vector<RewriteStep>& path() const { return path_; }
  bool exceeded() const { return exceeded_; }
  const std::vector<std::string>& misses() const { return misses_; }

 private:
  template <typename F>
  bool for_each_rewrite(const Equation& eq, int demod, F&& f) {
    const Equation& rule_eq = statement_of(script_, demod);
    if (!rule_eq.positive()) return false;
    for (int reversed = 0; reversed < 2; ++reversed) {
      Equation rule = reversed ? rule_eq.flipped() : rule_eq;
      if (rule.lhs.is_variable()) continue;
      for (int side = 0; side < 2; ++side) {
        std::vector<Position> positions;
        nonvariable_positions(side == 0 ? eq.lhs : eq.rhs, positions);
        for (auto& pos : positions) {
          auto next = rewrite_at(eq, side, pos, rule);
          if (!next) continue;
          path_.push_back({demod, reversed == 1, side, pos});
          if (f(*next)) return true;
          path_.pop_back();
          if (exceeded_) return false;
        }
      }
    }
    return false;
  }

  bool tick() {
    if (++nodes_ > budget_) exceeded_ = true;
    return !exceeded_;
  }

  bool dfs(const Equation& eq, std::size_t k) {
    if (!tick()) return false;
    if (k == demods_.size()) {
      if (accept_(eq)) return true;
      if (misses_.size() < 3) misses_.push_back(to_string(eq));
      return false;
    }
    std::string key = std::to_string(k) + "|" + to_string(renumber_variables(eq));
    if (!seen_.insert(key).second) return false;
    return for_each_rewrite(eq, demods_[k], [&](const Equation& next) { return dfs(next, k + 1); });
  }

  bool dfs_any(const Equation& eq, std::size_t depth) {
    if (!tick()) return false;
    if (accept_(eq)) return true;
    if (depth == 0) return false;
    std::string key = std::to_string(depth) + "|" + to_string(renumber_variables(eq));
    if (!seen_.insert(key).second) return false;
    std::vector<int> distinct;
    for (int d : demods_) {
      if (std::find(distinct.begin(), distinct.end(), d) == distinct.end()) distinct.push_back(d);
    }
    for (int d : distinct) {
      if (for_each_rewrite(eq, d, [&](const Equation& next) { return dfs_any(next, depth - 1); })) {
        return true;
      }
      if (exceeded_) return false;
    }
    return false;
  }

  const ProofScript& script_;
  std::vector<int> demods_;
  std::function<bool(const Equation&)> accept_;
  std::size_t budget_;
  std::size_t& nodes_;
  bool exceeded_ = false;
  std::vector<RewriteStep> path_;
  std::unordered_set<std::string> seen_;
  std::vector<std::string> misses_;
};

ReconstructionFailure failure(int step, std::string reason, std::size_t nodes,
                              bool exceeded = false, std::vector<std::string> nearest = {}) {
  return {step, std::move(reason), exceeded, nodes, std::move(nearest)};
}

Reconstruction reconstruct_derived(const ProofScript& script, const ProofStep& step,
                                   const CheckOptions& options) {
  const Equation& target = *step.statement;
  const auto& parents = step.parents;
  std::size_t nodes = 0;
  std::vector<std::string> nearest;
  bool exceeded = false;
  auto accept = [&](const Equation& e) { return is_variant(e, target, true); };

  auto try_para = [&](int from, int into, std::size_t first_demod,
                      bool unordered) -> std::optional<StepCertificate> {
    const Equation& from_eq = statement_of(script, from);
    const Equation& into_eq = statement_of(script, into);
    if (!from_eq.positive()) return std::nullopt;
    std::vector<int> demods(parents.begin() + static_cast<std::ptrdiff_t>(first_demod), parents.end());
    RewriteSearch search(script, demods, accept, options.budget, nodes);
    const auto paras = paramodulate_pair(from_eq, into_eq, {.all_from_sides = true, .ordered = false});
    // Cheap greedy replay over every paramodulant before any full search.
    for (int pass = unordered ? 1 : 0; pass < 2; ++pass) {
      for (const auto& p : paras) {
        bool ok = unordered ? search.run_unordered(p.eq, demods.size() + 2)
                            : (pass == 0 ? search.run_greedy(p.eq) : search.run(p.eq));
        if (ok) {
          StepCertificate c;
          c.step = step.num;
          c.kind = CertificateKind::Para;
          c.from = from;
          c.into = into;
          c.from_reversed = p.from_reversed;
          c.into_side = p.into_side;
          c.position = p.position;
          c.rewrites = search.path();
          c.nodes = nodes;
          return c;
        }
        if (search.exceeded()) {
          exceeded = true;
          return std::nullopt;
        }
      }
    }
    for (const auto& m : search.misses()) {
      if (nearest.size() < 5) nearest.push_back(m);
    }
    return std::nullopt;
  };

  auto try_rewrite = [&](bool unordered) -> std::optional<StepCertificate> {
    const Equation& base = statement_of(script, parents[0]);
    std::vector<int> demods(parents.begin() + 1, parents.end());
    RewriteSearch search(script, demods, accept, options.budget, nodes);
    bool ok = unordered ? search.run_unordered(base, demods.size() + 2)
                        : (search.run_greedy(base) || search.run(base));
    if (search.exceeded()) exceeded = true;
    if (!ok) return std::nullopt;
    StepCertificate c;
    c.step = step.num;
    c.kind = CertificateKind::PureRewrite;
    c.base = parents[0];
    c.rewrites = search.path();
    c.nodes = nodes;
    return c;
  };

  for (bool unordered : {false, true}) {
    if (parents.size() >= 2) {
      if (auto c = try_para(parents[0], parents[1], 2, unordered)) return *c;
      if (exceeded) break;
      if (auto c = try_para(parents[1], parents[0], 2, unordered)) return *c;
      if (exceeded) break;
    }
    if (auto c = try_rewrite(unordered)) return *c;
    if (exceeded) break;
  }
  if (exceeded) {
    return failure(step.num, "reconstruction budget exceeded", nodes, true, nearest);
  }
  return failure(step.num, "no single-paramodulation derivation from listed parents", nodes, false,
                 nearest);
}

Reconstruction reconstruct_contradiction(const ProofScript& script, const ProofStep& step,
                                         const CheckOptions& options) {
  std::size_t nodes = 0;
  int negative = 0;
  std::vector<int> positives;
  for (int p : step.parents) {
    const Equation& e = statement_of(script, p);
    if (e.positive()) {
      positives.push_back(p);
    } else if (negative == 0) {
      negative = p;
    } else {
      return failure(step.num, "more than one negative parent", nodes);
    }
  }
  if (negative == 0) return failure(step.num, "no negative parent", nodes);
  const Equation& neg = statement_of(script, negative);

  StepCertificate c;
  c.step = step.num;
  c.negative = negative;
  if (positives.empty() && sides_unify(neg)) {
    c.kind = CertificateKind::Reflexivity;
    c.base = negative;
    return c;
  }
  if (positives.size() == 1 && unit_conflict(statement_of(script, positives[0]), neg)) {
    c.kind = CertificateKind::UnitConflict;
    c.positive = positives[0];
    c.nodes = 1;
    return c;
  }
  auto accept = [](const Equation& e) { return sides_unify(e); };
  RewriteSearch search(script, positives, accept, options.budget, nodes);
  if (search.run(neg) || search.run_unordered(neg, positives.size() + 2)) {
    c.kind = CertificateKind::Reflexivity;
    c.base = negative;
    c.rewrites = search.path();
    c.nodes = nodes;
    return c;
  }
  return failure(step.num, "parents do not conflict", nodes, search.exceeded());
}

}  // namespace

Reconstruction reconstruct_step(const ProofScript& script, int step_num,
                                const std::vector<Equation>& axioms,
                                const std::optional<Equation>& goal, const CheckOptions& options) {
  const ProofStep* step = script.find(step_num);
  if (!step) return failure(step_num, "no such step", 0);

  if (step->contradiction()) return reconstruct_contradiction(script, *step, options);

  const Equation& stmt = *step->statement;
  if (step->parents.empty()) {
    StepCertificate c;
    c.step = step_num;
    if (step->label == "goal") {
      if (goal && is_variant(stmt, *goal, true)) {
        c.kind = CertificateKind::Goal;
        return c;
      }
      return failure(step_num, "goal step does not match the supplied goal", 0);
    }
    for (const auto& a : axioms) {
      if (is_variant(stmt, a, true)) {
        c.kind = CertificateKind::Input;
        return c;
      }
    }
    return failure(step_num, "input step is not among the supplied axioms", 0);
  }

  if (!stmt.positive() && step->parents.size() == 1) {
    const ProofStep* src = script.find(step->parents[0]);
    if (src && src->statement && src->statement->positive() && src->parents.empty() &&
        is_variant(deny(*src->statement), stmt, true)) {
      StepCertificate c;
      c.step = step_num;
      c.kind = CertificateKind::Denial;
      c.base = src->num;
      return c;
    }
  }
  return reconstruct_derived(script, *step, options);
}

bool replay_certificate(const ProofScript& script, const StepCertificate& cert,
                        const std::vector<Equation>& axioms, const std::optional<Equation>& goal) {
  const ProofStep* step = script.find(cert.step);
  if (!step) return false;
  auto apply_rewrites = [&](Equation eq) -> std::optional<Equation> {
    for (const auto& r : cert.rewrites) {
      const Equation& rule_eq = statement_of(script, r.demodulator);
      if (r.demodulator >= cert.step) return std::nullopt;
      auto next = rewrite_at(eq, r.side, r.position, r.reversed ? rule_eq.flipped() : rule_eq);
      if (!next) return std::nullopt;
      eq = std::move(*next);
    }
    return eq;
  };
  try {
    switch (cert.kind) {
      case CertificateKind::Input:
        return std::any_of(axioms.begin(), axioms.end(),
                           [&](const Equation& a) { return is_variant(*step->statement, a, true); });
      case CertificateKind::Goal:
        return goal && is_variant(*step->statement, *goal, true);
      case CertificateKind::Denial:
        return cert.base < cert.step && is_variant(deny(statement_of(script, cert.base)), *step->statement, true);
      case CertificateKind::Para: {
        if (cert.from >= cert.step || cert.into >= cert.step) return false;
        auto p = paramodulate_at(statement_of(script, cert.from), cert.from_reversed,
                                 statement_of(script, cert.into), cert.into_side, cert.position);
        if (!p) return false;
        auto done = apply_rewrites(*p);
        return done && is_variant(*done, *step->statement, true);
      }
      case CertificateKind::PureRewrite: {
        if (cert.base >= cert.step) return false;
        auto done = apply_rewrites(statement_of(script, cert.base));
        return done && is_variant(*done, *step->statement, true);
      }
      case CertificateKind::UnitConflict:
        return step->contradiction() && cert.positive < cert.step && cert.negative < cert.step &&
               unit_conflict(statement_of(script, cert.positive), statement_of(script, cert.negative));
      case CertificateKind::Reflexivity: {
        if (!step->contradiction() || cert.base >= cert.step) return false;
        auto done = apply_rewrites(statement_of(script, cert.base));
        return done && !done->positive() && sides_unify(*done);
      }
    }
  } catch (const std::exception&) {
    return false;
  }
  return false;
}

CheckReport check_proof(const ProofScript& script, const std::vector<Equation>& axioms,
                        const Equation& goal, const CheckOptions& options) {
  CheckReport report;
  report.lines = script.steps.size();
  for (const auto& step : script.steps) {
    StepReport sr;
    sr.step = step.num;
    auto r = reconstruct_step(script, step.num, axioms, goal, options);
    if (auto* cert = std::get_if<StepCertificate>(&r)) {
      sr.nodes = cert->nodes;
      if (!step.parents.empty()) ++report.derived;
      if (cert->primary()) ++report.primary;
      if (cert->kind == CertificateKind::PureRewrite) ++report.rewrite_steps;
      report.rewrites += cert->rewrites.size();
      sr.certificate = std::move(*cert);
    } else {
      auto& f = std::get<ReconstructionFailure>(r);
      sr.nodes = f.nodes;
      if (!step.parents.empty()) ++report.derived;
      report.failed_steps.push_back(step.num);
      sr.failure = std::move(f);
    }
    report.steps.push_back(std::move(sr));
  }
  bool terminal = !script.steps.empty() && script.steps.back().contradiction();
  report.passed = terminal && report.failed_steps.empty();
  return report;
}

namespace {

std::string position_string(const Position& p) {
  if (p.empty()) return "root";
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += '.';
    s += static_cast<char>('0' + p[i]);
  }
  return s;
}

}  // namespace

std::string describe(const StepCertificate& c) {
  std::ostringstream out;
  switch (c.kind) {
    case CertificateKind::Input:
    case CertificateKind::Goal:
      break;
    case CertificateKind::Denial:
      out << "from=" << c.base;
      break;
    case CertificateKind::Para:
      out << "from=" << c.from << (c.from_reversed ? "(rl)" : "(lr)") << " into=" << c.into
          << (c.into_side == 0 ? " lhs@" : " rhs@") << position_string(c.position);
      break;
    case CertificateKind::PureRewrite:
    case CertificateKind::Reflexivity:
      out << "base=" << c.base;
      break;
    case CertificateKind::UnitConflict:
      out << "pos=" << c.positive << " neg=" << c.negative;
      break;
  }
  if (!c.rewrites.empty()) {
    out << " rewrite=";
    for (std::size_t i = 0; i < c.rewrites.size(); ++i) {
      const auto& r = c.rewrites[i];
      if (i) out << ',';
      out << r.demodulator << (r.reversed ? "(rl)" : "") << (r.side == 0 ? "@lhs." : "@rhs.")
          << position_string(r.position);
    }
  }
  return out.str();
}

std::string format_certificates(const CheckReport& report) {
  std::ostringstream out;
  for (const auto& s : report.steps) {
    if (s.certificate) {
      out << s.step << " OK " << to_string(s.certificate->kind);
      std::string d = describe(*s.certificate);
      if (!d.empty()) out << " [" << d << "]";
      out << "\n";
    } else {
      out << s.step << " FAIL " << s.failure->reason << "\n";
    }
  }
  out << "steps=" << report.lines << " primary=" << report.primary
      << " rewrites=" << report.rewrites << " verdict=" << (report.passed ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace eqbase
