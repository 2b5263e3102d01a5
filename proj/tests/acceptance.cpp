// One line per acceptance criterion: "criterion N PASS|FAIL <details>".
// Exit status is the number of failed criteria.  Arguments, if any, pick
// which criteria to run.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "eqbase/base_lab.hpp"
#include "eqbase/engine.hpp"
#include "eqbase/finite_algebra.hpp"
#include "eqbase/model_search.hpp"
#include "eqbase/parse.hpp"
#include "eqbase/proof_check.hpp"
#include "test_support.hpp"

using namespace eqbase;
using namespace eqbase::testing;

namespace {

// Pinned limits.
constexpr double kCheckSeconds = 60;
constexpr double kProveSeconds = 600;
constexpr double kEnumerateSeconds = 600;
constexpr double kPropertySeconds = 300;
constexpr int kCountermodelMaxSize = 6;
constexpr int kIndependenceMaxSize = 2;
constexpr int kWeakTripleMaxSize = 4;
constexpr std::uint32_t kHintedMaxWeight = 40;
constexpr std::uint32_t kUnguidedMaxWeight = 34;
constexpr double kFragilitySecondsPerGoal = 30;
constexpr std::uint64_t kFragilityNodeBudget = 20'000'000;  // per model query

// Regression values recorded on the first run.
constexpr std::uint64_t kNaturalCount[] = {1, 4, 24};  // sizes 1, 2, 3
constexpr int kIntermediateMinimalSize = 4;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Equation E(std::string_view s) { return parse_equation(s); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome fail(std::ostringstream& os) { return {false, os.str()}; }

bool prove_and_check(const std::vector<Equation>& axioms, const Equation& goal,
                     const SearchParams& p, std::ostringstream& os) {
  auto t0 = Clock::now();
  ProveResult r = prove(axioms, goal, p);
  double secs = since(t0);
  os << to_string(goal) << ": " << to_string(r.status) << " " << secs << "s";
  if (r.status != ProveStatus::Proved || secs > kProveSeconds) return false;
  ProofScript s = to_script(r.proof);
  bool ok = check_proof(s, axioms, goal).passed;
  os << " length=" << s.steps.size() << (ok ? " checked; " : " CHECK FAILED; ");
  return ok;
}

Outcome proof_replay() {
  std::ostringstream os;
  bool ok = true;
  FiniteAlgebra b2 = brandt_b2();
  for (const Listing& l : listings()) {
    ProofScript s = read_proof_file(l.file);
    auto t0 = Clock::now();
    CheckReport r = check_proof(s, l.axioms, l.goal);
    double secs = since(t0);
    os << s.steps.size() << " steps " << (r.passed ? "PASS" : "FAIL") << " " << secs << "s";
    ok = ok && r.passed && secs <= kCheckSeconds;

    // Mutating any derived step must break the verdict: the mutated step
    // can no longer be certified from its parents.
    int mutated = 0, caught = 0;
    for (const ProofStep& step : s.steps) {
      if (step.parents.empty() || step.contradiction()) continue;
      auto m = mutate_one_variable(*step.statement, b2);
      if (!m) continue;
      ProofScript bad = s;
      bad.steps[bad.index_of(step.num)].statement = *m;
      ++mutated;
      if (std::holds_alternative<ReconstructionFailure>(
              reconstruct_step(bad, step.num, l.axioms, l.goal)))
        ++caught;
    }
    os << ", mutations caught " << caught << "/" << mutated << "; ";
    ok = ok && mutated > 0 && caught == mutated;
  }
  return {ok, os.str()};
}

Outcome hinted_two_base() {
  std::ostringstream os;
  SearchParams p;
  p.max_weight = kHintedMaxWeight;
  p.hint_exempt_from_limits = true;
  p.max_seconds = kProveSeconds;
  for (const Listing& l : listings()) {
    auto h = hints_from_script(read_proof_file(l.file));
    p.hints.insert(p.hints.end(), h.begin(), h.end());
  }
  bool ok = true;
  for (const Listing& l : listings()) ok = prove_and_check(l.axioms, l.goal, p, os) && ok;
  return {ok, os.str()};
}

Outcome oracle_equivalence() {
  std::ostringstream os;
  auto two = lookup("2-base"), schein = lookup("schein-5");
  std::vector<CompiledEquation> a, b;
  for (const auto& e : two->axioms) a.emplace_back(e);
  for (const auto& e : schein->axioms) b.emplace_back(e);
  auto all = [](const FiniteAlgebra& m, const std::vector<CompiledEquation>& v) {
    for (const auto& e : v)
      if (!evaluate(m, e)) return false;
    return true;
  };
  auto t0 = Clock::now();
  bool ok = true;
  for (int n = 1; n <= 3; ++n) {
    auto st = enumerate_all(n, [&](const FiniteAlgebra& m, Tally& t) {
      bool x = all(m, a);
      bool y = classify(m) == AlgebraClass::InverseNaturalInversion;
      bool z = all(m, b);
      if (x != y || y != z) ++t["discrepancies"];
      if (y) ++t["natural"];
    });
    os << "size " << n << ": " << st.visited << " algebras, " << st.tallies["natural"]
       << " models, " << st.tallies["discrepancies"] << " discrepancies; ";
    ok = ok && st.tallies["discrepancies"] == 0 && st.tallies["natural"] == kNaturalCount[n - 1];
  }
  double secs = since(t0);
  os << secs << "s";
  return {ok && secs <= kEnumerateSeconds, os.str()};
}

Outcome intermediate_identity() {
  std::ostringstream os;
  auto sys = lookup("intermediate-pair");
  SearchParams p;
  p.max_weight = kUnguidedMaxWeight;
  p.max_seconds = kProveSeconds;
  bool ok = prove_and_check(sys->axioms, E(kAssociativity), p, os);
  ok = prove_and_check(sys->axioms, E(kInvolution), p, os) && ok;
  ModelResult r = find_model({sys->axioms, {E(kIdempotentsCommute)}, 2, kCountermodelMaxSize});
  if (r.status != SearchStatus::Found) {
    os << "no countermodel";
    return fail(os);
  }
  os << "countermodel size " << r.model->size() << " (" << to_string(classify(*r.model)) << ")";
  return {ok && r.model->size() == kIntermediateMinimalSize, os.str()};
}

Outcome fragility() {
  std::ostringstream os;
  auto sys = lookup("2-base-swapped");
  TestLimits limits;
  limits.max_model_size = kCountermodelMaxSize;
  limits.seconds_per_goal = kFragilitySecondsPerGoal;
  limits.find.node_budget = kFragilityNodeBudget;
  Verdict v = test_axioms(sys->axioms, limits);
  os << format_verdict_line("2-base-swapped", v);
  if (v.kind != Verdict::Kind::Refuted || !v.countermodel) return fail(os);
  bool ok = v.countermodel->size() <= kCountermodelMaxSize;
  for (const auto& a : sys->axioms) ok = ok && evaluate(*v.countermodel, a);
  ok = ok && !evaluate(*v.countermodel, *v.violated) &&
       classify(*v.countermodel) != AlgebraClass::InverseNaturalInversion;
  return {ok, os.str()};
}

Outcome independence() {
  std::ostringstream os;
  auto r1 = find_model({{E(kAxiom1)}, {E(kInvolution)}, 1, kIndependenceMaxSize});
  auto r2 = find_model({{E(kAxiom2)}, {E(kAxiom1)}, 1, kIndependenceMaxSize});
  bool ok = r1.status == SearchStatus::Found && r2.status == SearchStatus::Found;
  if (ok) {
    os << "axiom 1 without x''=x at size " << r1.model->size() << ", axiom 2 without axiom 1 at size "
       << r2.model->size();
    ok = evaluate(*r1.model, E(kAxiom1)) && !evaluate(*r1.model, E(kInvolution)) &&
         evaluate(*r2.model, E(kAxiom2)) && !evaluate(*r2.model, E(kAxiom1));
  }
  FiniteAlgebra constant(2, {0, 0, 0, 0}, {0, 0});
  bool witness = evaluate(constant, E(kAxiom2)) && !evaluate(constant, E(kAxiom1));
  os << "; constant-product witness " << (witness ? "ok" : "BAD");
  return {ok && witness, os.str()};
}

Outcome schein_dependency() {
  std::ostringstream os;
  auto sys = lookup("schein-5");
  std::vector<Equation> four;
  Equation anti = E("(x * y)' = y' * x'");
  for (const auto& e : sys->axioms)
    if (!is_variant(e, anti)) four.push_back(e);
  SearchParams p;
  p.max_seconds = kProveSeconds;
  bool ok = four.size() == 4 && prove_and_check(four, anti, p, os);
  return {ok, os.str()};
}

Outcome schein_sets() {
  std::ostringstream os;
  SearchParams p;
  p.max_seconds = kProveSeconds;
  auto iii = lookup("S-set-iii"), iv = lookup("S-set-iv"), v = lookup("S-set-v");
  auto two = lookup("2-base");
  bool ok = prove_and_check(iii->axioms, E("(x' * x) * x' = x'"), p, os);
  ok = prove_and_check(iv->axioms, E("(x * x') * x = x"), p, os) && ok;

  std::vector<CompiledEquation> a, b;
  for (const auto& e : two->axioms) a.emplace_back(e);
  for (const auto& e : v->axioms) b.emplace_back(e);
  auto all = [](const FiniteAlgebra& m, const std::vector<CompiledEquation>& eqs) {
    for (const auto& e : eqs)
      if (!evaluate(m, e)) return false;
    return true;
  };
  std::uint64_t diff = 0;
  for (int n = 1; n <= 3; ++n)
    diff += enumerate_all(n, [&](const FiniteAlgebra& m, Tally& t) {
              if (all(m, a) != all(m, b)) ++t["diff"];
            }).tallies["diff"];
  os << "set v vs 2-base model classes up to size 3: " << diff << " differences; ";
  ok = ok && diff == 0;

  // Attempted only.
  SearchParams q;
  q.max_seconds = 60;
  ProveResult r = prove(v->axioms, E(kAssociativity), q);
  os << "associativity from set v: " << to_string(r.status);
  return {ok, os.str()};
}

Outcome weak_triple() {
  std::ostringstream os;
  auto sys = lookup("weak-triple");
  ModelResult r = find_model({sys->axioms, {E(kInvolution)}, 1, kWeakTripleMaxSize});
  if (r.status != SearchStatus::Found) {
    os << "no model";
    return fail(os);
  }
  AlgebraClass c = classify(*r.model);
  os << "size " << r.model->size() << " " << to_string(c);
  bool ok = c == AlgebraClass::InverseWrongUnary;
  for (const auto& a : sys->axioms) ok = ok && evaluate(*r.model, a);
  return {ok, os.str()};
}

Outcome property_suites() {
  std::ostringstream os;
  auto t0 = Clock::now();
  std::string cmd = std::string("\"") + EQBASE_PROPERTY_TEST + "\" --gtest_brief=1 > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  double secs = since(t0);
  os << "property_test exit " << rc << " in " << secs << "s";
  return {rc == 0 && secs <= kPropertySeconds, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  // Optional arguments select criteria by number.
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, proof_replay},       {2, hinted_two_base},   {3, oracle_equivalence},
      {4, intermediate_identity}, {5, fragility},      {6, independence},
      {7, schein_dependency},  {8, schein_sets},       {9, weak_triple},
      {10, property_suites},
  };
  int failed = 0;
  for (const auto& [n, run] : criteria) {
    if (!only.empty() && !only.count(n)) continue;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << "criterion " << n << " " << (o.pass ? "PASS" : "FAIL") << " " << o.detail
              << std::endl;
  }
  return failed;
}
