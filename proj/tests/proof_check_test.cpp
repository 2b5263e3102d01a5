#include <gtest/gtest.h>

#include "eqbase/finite_algebra.hpp"
#include "eqbase/proof_check.hpp"
#include "eqbase/proof_script.hpp"
#include "test_support.hpp"

using namespace eqbase;
using namespace eqbase::testing;

namespace {

struct Expected {
  std::size_t lines, derived, primary, rewrites;
  int final_step, final_positive, final_negative;
};

// Counts under this checker's convention; see the README for how they
// relate to the lengths the prover itself reports.
const Expected kExpected[] = {
    {92, 89, 87, 130, 92, 91, 4},
    {29, 25, 23, 40, 29, 28, 5},
    {26, 21, 19, 54, 26, 25, 7},
};

const StepCertificate& cert(const Reconstruction& r) {
  if (auto* f = std::get_if<ReconstructionFailure>(&r)) ADD_FAILURE() << f->reason;
  return std::get<StepCertificate>(r);
}

}  // namespace

TEST(ParseProof, FirstListing) {
  ProofScript s = read_proof_file(listings()[0].file);
  ASSERT_EQ(s.steps.size(), 92u);
  const ProofStep* four = s.find(4);
  ASSERT_NE(four, nullptr);
  EXPECT_EQ(to_string(*four->statement), "c1'' != c1");
  EXPECT_EQ(four->parents, std::vector<int>{1});
  EXPECT_EQ(s.steps.front().label, "goal");
  EXPECT_TRUE(s.steps.back().contradiction());
}

TEST(ParseProof, SecondListingTail) {
  ProofScript s = read_proof_file(listings()[1].file);
  ASSERT_EQ(s.steps.size(), 29u);
  EXPECT_TRUE(s.steps.back().contradiction());
  EXPECT_EQ(s.steps.back().parents, (std::vector<int>{28, 5}));
}

TEST(ParseProof, GapsAndErrors) {
  ProofScript gap = parse_proof("1 x = x # label(goal).\n3 x * y = y.  [1].\n");
  EXPECT_EQ(gap.steps.size(), 2u);
  EXPECT_THROW(parse_proof("1 x = x.\n3 x * y = y.  [2].\n"), ProofFormatError);
  EXPECT_THROW(parse_proof("2 x = x.\n1 x * y = y.\n"), ProofFormatError);
  EXPECT_THROW(parse_proof("1 $F.\n2 x = x.\n"), ProofFormatError);
  try {
    parse_proof("1 x = x.\n2 x * = y.\n");
    FAIL();
  } catch (const ProofFormatError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ParseProof, FormatRoundTrip) {
  for (const auto& l : listings()) {
    ProofScript s = read_proof_file(l.file);
    ProofScript again = parse_proof(format_proof(s));
    ASSERT_EQ(again.steps.size(), s.steps.size());
    for (std::size_t i = 0; i < s.steps.size(); ++i) {
      EXPECT_EQ(again.steps[i].num, s.steps[i].num);
      EXPECT_EQ(again.steps[i].parents, s.steps[i].parents);
      EXPECT_EQ(again.steps[i].statement, s.steps[i].statement);
    }
  }
}

TEST(Reconstruct, ParaThenRewrite) {
  const Listing l = listings()[1];
  ProofScript s = read_proof_file(l.file);
  ASSERT_EQ(to_string(*s.find(9)->statement), "x' * (x * x') = x'");
  const StepCertificate& c = cert(reconstruct_step(s, 9, l.axioms, l.goal));
  EXPECT_EQ(c.kind, CertificateKind::Para);
  EXPECT_EQ(c.from, 4);
  EXPECT_EQ(c.into, 2);
  // Paramodulating at the inner x'' needs no rewrite afterwards; any
  // rewrite present must use clause 4.
  for (const auto& r : c.rewrites) EXPECT_EQ(r.demodulator, 4);
  EXPECT_LT(c.nodes, 1000u);
}

TEST(Reconstruct, DenialAndConflict) {
  const Listing l = listings()[0];
  ProofScript s = read_proof_file(l.file);
  const StepCertificate& d = cert(reconstruct_step(s, 4, l.axioms, l.goal));
  EXPECT_EQ(d.kind, CertificateKind::Denial);
  EXPECT_EQ(d.base, 1);
  const StepCertificate& f = cert(reconstruct_step(s, 92, l.axioms, l.goal));
  EXPECT_EQ(f.kind, CertificateKind::UnitConflict);
  EXPECT_EQ(f.positive, 91);
  EXPECT_EQ(f.negative, 4);
}

TEST(Reconstruct, InputMustBeAnAxiom) {
  const Listing l = listings()[0];
  ProofScript s = read_proof_file(l.file);
  auto r = reconstruct_step(s, 2, {parse_equation(kAxiom2)}, l.goal);
  EXPECT_TRUE(std::holds_alternative<ReconstructionFailure>(r));
}

TEST(Reconstruct, BudgetExhaustionIsReported) {
  const Listing l = listings()[0];
  ProofScript s = read_proof_file(l.file);
  CheckOptions o;
  o.budget = 1;
  auto r = reconstruct_step(s, 10, l.axioms, l.goal, o);
  ASSERT_TRUE(std::holds_alternative<ReconstructionFailure>(r));
  EXPECT_TRUE(std::get<ReconstructionFailure>(r).budget_exceeded);
}

class ListingCheck : public ::testing::TestWithParam<int> {};

TEST_P(ListingCheck, PassesWithReplayableCertificates) {
  const int i = GetParam();
  const Listing l = listings()[i];
  ProofScript s = read_proof_file(l.file);
  CheckReport r = check_proof(s, l.axioms, l.goal);
  ASSERT_TRUE(r.passed) << format_certificates(r);
  const Expected& x = kExpected[i];
  EXPECT_EQ(r.lines, x.lines);
  EXPECT_EQ(r.derived, x.derived);
  EXPECT_EQ(r.primary, x.primary);
  EXPECT_EQ(r.rewrites, x.rewrites);
  EXPECT_EQ(s.steps.back().num, x.final_step);
  EXPECT_EQ(s.steps.back().parents, (std::vector<int>{x.final_positive, x.final_negative}));

  for (const StepReport& step : r.steps) {
    ASSERT_TRUE(step.certificate);
    const StepCertificate& c = *step.certificate;
    EXPECT_TRUE(replay_certificate(s, c, l.axioms, l.goal)) << describe(c);
    // Certificates only look backwards.
    for (int ref : {c.from, c.into, c.base, c.positive, c.negative}) EXPECT_LT(ref, c.step);
    for (const auto& rw : c.rewrites) EXPECT_LT(rw.demodulator, c.step);
  }
}

INSTANTIATE_TEST_SUITE_P(Listings, ListingCheck, ::testing::Values(0, 1, 2));

TEST(CheckProof, SwappedVariablesAtStepTenFail) {
  const Listing l = listings()[0];
  ProofScript s = read_proof_file(l.file);
  std::size_t idx = s.index_of(10);
  Equation& e = *s.steps[idx].statement;
  ASSERT_EQ(to_string(e), "((x * y)' * z')' = (z * x) * y");
  // Swap x and y on the right only, so the result is no variant.
  e.rhs = parse_term("(z * y) * x");
  CheckReport r = check_proof(s, l.axioms, l.goal);
  EXPECT_FALSE(r.passed);
  ASSERT_FALSE(r.failed_steps.empty());
  EXPECT_EQ(r.failed_steps.front(), 10);
}

TEST(CheckProof, ReplayRejectsTamperedCertificate) {
  const Listing l = listings()[1];
  ProofScript s = read_proof_file(l.file);
  StepCertificate c = cert(reconstruct_step(s, 9, l.axioms, l.goal));
  c.from = 3;
  EXPECT_FALSE(replay_certificate(s, c, l.axioms, l.goal));
}

TEST(CheckProof, RequiresContradiction) {
  const Listing l = listings()[1];
  ProofScript s = read_proof_file(l.file);
  s.steps.pop_back();
  EXPECT_FALSE(check_proof(s, l.axioms, l.goal).passed);
}

TEST(SemanticCrossCheck, BrandtModel) {
  FiniteAlgebra b2 = brandt_b2();
  EXPECT_EQ(classify(b2), AlgebraClass::InverseNaturalInversion);
  EXPECT_FALSE(evaluate(b2, parse_equation("x * y = y * x")));
  for (const auto& l : listings()) {
    for (const Equation& a : l.axioms) EXPECT_TRUE(evaluate(b2, a));
    for (const ProofStep& step : read_proof_file(l.file).steps) {
      if (step.contradiction() || !step.statement->positive()) continue;
      EXPECT_TRUE(evaluate(b2, *step.statement)) << step.num << " " << l.file;
    }
  }
}

TEST(SemanticCrossCheck, MutationsAreFalseInBrandtModel) {
  FiniteAlgebra b2 = brandt_b2();
  ProofScript s = read_proof_file(listings()[0].file);
  auto m = mutate_one_variable(*s.find(10)->statement, b2);
  ASSERT_TRUE(m);
  EXPECT_FALSE(is_variant(*m, *s.find(10)->statement));
}
