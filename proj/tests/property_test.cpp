#include <gtest/gtest.h>

#include <random>

#include "eqbase/engine.hpp"
#include "eqbase/finite_algebra.hpp"
#include "eqbase/model_search.hpp"
#include "eqbase/order.hpp"
#include "eqbase/parse.hpp"
#include "eqbase/proof_check.hpp"
#include "eqbase/substitution.hpp"
#include "test_support.hpp"

using namespace eqbase;
using namespace eqbase::testing;

namespace {

constexpr int kCases = 10000;

class Gen {
 public:
  explicit Gen(std::uint32_t seed) : rng_(seed) {}

  /// Random term over variables [0, vars) and, optionally, c1/c2.
  Term term(int depth, int vars = 5, bool constants = false) {
    int pick = uniform(0, depth <= 0 ? 1 : 9);
    if (pick <= 1) {
      if (constants && uniform(0, 4) == 0) return Term::constant(uniform(0, 1) ? "c1" : "c2");
      return Term::variable(static_cast<VarId>(uniform(0, vars - 1)));
    }
    if (pick <= 4) return Term::unary(term(depth - 1, vars, constants));
    return Term::binary(term(depth - 1, vars, constants), term(depth - 1, vars, constants));
  }

  /// Replaces random subterms of `t` by fresh variables starting at `next`,
  /// recording the replaced subterm for each.
  Term generalize(const Term& t, VarId& next, Substitution& undo) {
    if (!t.is_variable() && !t.is_constant() && uniform(0, 5) == 0) {
      VarId v = next++;
      undo.bind(v, t);
      return Term::variable(v);
    }
    if (t.is_unary()) return Term::unary(generalize(t.arg(), next, undo));
    if (t.is_binary())
      return Term::binary(generalize(t.left(), next, undo), generalize(t.right(), next, undo));
    return t;
  }

  Substitution substitution(int vars) {
    Substitution s;
    for (int v = 0; v < vars; ++v)
      if (uniform(0, 1)) s.bind(static_cast<VarId>(v), term(2, vars));
    return s;
  }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

 private:
  std::mt19937 rng_;
};

}  // namespace

TEST(TermProperties, PrintParseRoundTrip) {
  Gen g(1);
  for (int i = 0; i < kCases; ++i) {
    Term t = g.term(5, 5, true);
    ASSERT_EQ(parse_term(to_string(t)), t) << to_string(t);
    Equation e{t, g.term(4), i % 3 ? Polarity::Equal : Polarity::NotEqual};
    ASSERT_EQ(parse_equation(to_string(e)), e) << to_string(e);
  }
}

TEST(TermProperties, UnifierIsSoundAndMostGeneral) {
  Gen g(2);
  int unified = 0;
  for (int i = 0; i < kCases; ++i) {
    // Two generalizations of one term have a unifier by construction.
    Term r = g.term(4, 3);
    VarId next = 10;
    Substitution us, ut;
    Term s = g.generalize(r, next, us);
    Term t = g.generalize(r, next, ut);
    auto sigma = unify(s, t);
    ASSERT_TRUE(sigma) << to_string(s) << " vs " << to_string(t);
    Term u = apply_substitution(*sigma, s);
    ASSERT_EQ(u, apply_substitution(*sigma, t));
    ASSERT_EQ(apply_substitution(*sigma, u), u);  // idempotent
    // r is a common instance, so it must be an instance of the mgu's result.
    ASSERT_TRUE(match_term(u, r)) << to_string(u) << " !<= " << to_string(r);
    ++unified;

    // Independent pairs: any unifier found must unify.
    Term a = g.term(3, 3), b = shift_variables(g.term(3, 3), 3);
    if (auto m = unify(a, b)) ASSERT_EQ(apply_substitution(*m, a), apply_substitution(*m, b));
  }
  EXPECT_EQ(unified, kCases);
}

TEST(TermProperties, MatchIsSound) {
  Gen g(3);
  for (int i = 0; i < kCases; ++i) {
    Term p = g.term(3, 3);
    Substitution theta = g.substitution(3);
    Term target = apply_substitution(theta, p);
    auto m = match_term(p, target);
    ASSERT_TRUE(m);
    ASSERT_EQ(apply_substitution(*m, p), target);
    Term other = g.term(3, 3);
    if (auto n = match_term(p, other)) ASSERT_EQ(apply_substitution(*n, p), other);
  }
}

TEST(TermProperties, KboIsASimplificationOrder) {
  Gen g(4);
  for (int i = 0; i < kCases; ++i) {
    Term a = g.term(4, 3, true), b = g.term(4, 3, true), c = g.term(3, 3, true);
    Comparison ab = kbo_compare(a, b), ba = kbo_compare(b, a);
    ASSERT_EQ(kbo_compare(a, a), Comparison::Equal);
    ASSERT_EQ(ab == Comparison::Greater, ba == Comparison::Less);
    ASSERT_EQ(ab == Comparison::Incomparable, ba == Comparison::Incomparable);
    ASSERT_EQ(ab == Comparison::Equal, a == b);
    // Subterm property.
    if (a.is_unary()) ASSERT_EQ(kbo_compare(a, a.arg()), Comparison::Greater);
    if (a.is_binary()) ASSERT_EQ(kbo_compare(a, a.right()), Comparison::Greater);
    // Stable under substitution and compatible with contexts.
    if (ab == Comparison::Greater) {
      Substitution s = g.substitution(3);
      ASSERT_EQ(kbo_compare(apply_substitution(s, a), apply_substitution(s, b)), Comparison::Greater);
      ASSERT_EQ(kbo_compare(Term::unary(a), Term::unary(b)), Comparison::Greater);
      ASSERT_EQ(kbo_compare(Term::binary(c, a), Term::binary(c, b)), Comparison::Greater);
      if (kbo_compare(b, c) == Comparison::Greater)
        ASSERT_EQ(kbo_compare(a, c), Comparison::Greater);
    }
  }
}

TEST(TermProperties, CanonicalFormIdentifiesVariants) {
  Gen g(5);
  for (int i = 0; i < kCases; ++i) {
    Equation e{g.term(3, 4), g.term(3, 4)};
    // Rename with a random permutation and maybe swap sides.
    std::vector<VarId> perm{0, 1, 2, 3};
    std::shuffle(perm.begin(), perm.end(), std::mt19937(i));
    Substitution s;
    for (VarId v = 0; v < 4; ++v) s.bind(v, Term::variable(perm[v] + 20));
    Equation r{apply_substitution(s, e.lhs), apply_substitution(s, e.rhs)};
    if (i % 2) r = r.flipped();
    ASSERT_TRUE(is_variant(e, r));
    ASSERT_EQ(canonical_form(e), canonical_form(r)) << to_string(e);
  }
}

TEST(EngineProperties, TwoBaseConsequencesStayUniform) {
  SearchParams p;
  p.max_given = 40;
  auto kept = derive_consequences({parse_equation(kAxiom1), parse_equation(kAxiom2)}, p);
  ASSERT_GT(kept.size(), 20u);
  FiniteAlgebra b2 = brandt_b2();
  for (const Clause& c : kept) {
    ASSERT_TRUE(c.eq);
    EXPECT_TRUE(measures(*c.eq).uniform) << to_string(*c.eq);
    // 5^6 assignments at most; wider clauses are skipped.
    if (variables_of(*c.eq).size() <= 6) EXPECT_TRUE(evaluate(b2, *c.eq)) << to_string(*c.eq);
    EXPECT_EQ(c.weight, weight_of(*c.eq));
  }
}

TEST(EngineProperties, ProofsOfDerivedFactsReplay) {
  std::vector<Equation> axioms{parse_equation(kAxiom1), parse_equation(kAxiom2)};
  SearchParams p;
  p.max_given = 40;
  std::vector<Clause> kept;
  for (Clause& c : derive_consequences(axioms, p))
    if (c.just.kind != JustKind::Input && c.weight <= 40) kept.push_back(std::move(c));
  Gen g(6);
  int checked = 0;
  for (int i = 0; i < 12 && !kept.empty(); ++i) {
    const Clause& c = kept[g.uniform(0, static_cast<int>(kept.size()) - 1)];
    SearchParams q;
    q.max_seconds = 20;
    ProveResult r = prove(axioms, *c.eq, q);
    if (r.status != ProveStatus::Proved) continue;
    ProofScript s = to_script(r.proof);
    CheckReport rep = check_proof(s, axioms, *c.eq);
    ASSERT_TRUE(rep.passed) << to_string(*c.eq) << "\n" << format_certificates(rep);
    for (const auto& step : rep.steps)
      ASSERT_TRUE(replay_certificate(s, *step.certificate, axioms, *c.eq));
    ++checked;
  }
  EXPECT_GE(checked, 5);
}

TEST(ModelProperties, FoundModelsReverifyAndExhaustionMatchesEnumeration) {
  Gen g(7);
  int found = 0, exhausted = 0;
  for (int i = 0; i < 300; ++i) {
    Equation hold{g.term(3, 3), g.term(2, 3)};
    Equation fail{g.term(2, 2), g.term(2, 2)};
    ModelQuery q{{hold}, {fail}, 1, 2};
    ModelResult r = find_model(q);
    ASSERT_NE(r.status, SearchStatus::BudgetExceeded);
    // Oracle: brute-force every algebra of size <= 2.
    std::optional<FiniteAlgebra> witness;
    for (int n = 1; n <= 2 && !witness; ++n)
      enumerate_all(n, [&](const FiniteAlgebra& a, Tally&) {
        if (!witness && evaluate(a, hold) && !evaluate(a, fail)) witness = a;
      });
    if (r.status == SearchStatus::Found) {
      ++found;
      ASSERT_TRUE(evaluate(*r.model, hold));
      ASSERT_FALSE(evaluate(*r.model, fail));
      ASSERT_TRUE(witness);
      ASSERT_LE(witness->size(), r.model->size());
      ASSERT_EQ(witness->size(), r.model->size());  // smallest size first
    } else {
      ++exhausted;
      ASSERT_FALSE(witness) << to_string(hold) << " / " << to_string(fail);
    }
  }
  EXPECT_GT(found, 0);
  EXPECT_GT(exhausted, 0);
}
