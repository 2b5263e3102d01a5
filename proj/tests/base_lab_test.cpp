#include <gtest/gtest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "eqbase/base_lab.hpp"
#include "eqbase/proof_check.hpp"
#include "test_support.hpp"

using namespace eqbase;
using namespace eqbase::testing;

namespace {

Equation E(std::string_view s) { return parse_equation(s); }

bool contains_variant(const std::vector<Equation>& v, const Equation& e) {
  for (const auto& x : v)
    if (is_variant(x, e)) return true;
  return false;
}

std::string reason_of(const std::variant<CandidatePair, Rejection>& r) {
  if (auto* rej = std::get_if<Rejection>(&r)) return rej->reason;
  return "";
}

std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("eqbase_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST(Registry, Lookups) {
  auto two = lookup("2-base");
  ASSERT_TRUE(two);
  ASSERT_EQ(two->axioms.size(), 2u);
  EXPECT_TRUE(is_variant(two->axioms[0], E(kAxiom1)));
  EXPECT_TRUE(is_variant(two->axioms[1], E(kAxiom2)));
  EXPECT_EQ(two->status, BaseStatus::VerifiedBase);

  auto v = lookup("S-set-v");
  ASSERT_TRUE(v);
  ASSERT_EQ(v->axioms.size(), 3u);
  EXPECT_TRUE(contains_variant(v->axioms, E("(x * y') * z = x * (z' * y)'")));
  EXPECT_TRUE(contains_variant(v->axioms, E("(x * x')' * x = x")));
  EXPECT_TRUE(contains_variant(v->axioms, E("(x * x') * (y * y') = (y * y') * (x' * x)'")));

  EXPECT_FALSE(lookup("unknown-name"));
}

TEST(Registry, NamesUniqueAndCountermodelsVerify) {
  std::set<std::string> names;
  for (const auto& s : registry()) {
    EXPECT_TRUE(names.insert(s.name).second) << s.name;
    EXPECT_FALSE(s.axioms.empty());
    if (s.status == BaseStatus::VerifiedNonBase) {
      ASSERT_TRUE(s.countermodel) << s.name;
      EXPECT_FALSE(verify_countermodel(s)) << s.name;
    }
    if (s.status == BaseStatus::VerifiedBase) EXPECT_FALSE(s.countermodel) << s.name;
  }
}

TEST(Registry, StatusNames) {
  for (auto s : {BaseStatus::VerifiedBase, BaseStatus::VerifiedNonBase, BaseStatus::Candidate})
    EXPECT_EQ(parse_base_status(to_string(s)), s);
  EXPECT_FALSE(parse_base_status("maybe"));
}

// Every verified base has exactly the inverse semigroups with natural
// inversion as its models of size <= 3.
TEST(Registry, VerifiedBasesAgreeWithClassificationUpToThree) {
  std::vector<std::pair<std::string, std::vector<CompiledEquation>>> bases;
  for (const auto& s : registry()) {
    if (s.status != BaseStatus::VerifiedBase) continue;
    std::vector<CompiledEquation> c;
    for (const auto& e : s.axioms) c.emplace_back(e);
    bases.emplace_back(s.name, std::move(c));
  }
  ASSERT_GE(bases.size(), 5u);
  for (int n = 1; n <= 3; ++n) {
    auto st = enumerate_all(n, [&](const FiniteAlgebra& a, Tally& t) {
      bool natural = classify(a) == AlgebraClass::InverseNaturalInversion;
      for (const auto& [name, eqs] : bases) {
        bool sat = true;
        for (const auto& e : eqs) sat = sat && evaluate(a, e);
        if (sat != natural) ++t[name];
      }
    });
    for (const auto& [name, count] : st.tallies) EXPECT_EQ(count, 0u) << name << " size " << n;
  }
}

TEST(Registry, ReferencePropertiesHoldInBrandtModel) {
  FiniteAlgebra b2 = brandt_b2();
  for (const auto& p : reference_properties()) EXPECT_TRUE(evaluate(b2, p)) << to_string(p);
}

TEST(Filter, Examples) {
  auto ok = filter_candidate_pair(E(kAxiom1), E(kAxiom2));
  ASSERT_TRUE(std::holds_alternative<CandidatePair>(ok));
  EXPECT_TRUE(is_variant(std::get<CandidatePair>(ok).unary_axiom, E(kAxiom1)));

  // Order of the two identities does not matter.
  auto swapped = filter_candidate_pair(E(kAxiom2), E(kAxiom1));
  ASSERT_TRUE(std::holds_alternative<CandidatePair>(swapped));
  EXPECT_TRUE(is_variant(std::get<CandidatePair>(swapped).main_axiom, E(kAxiom2)));

  EXPECT_EQ(reason_of(filter_candidate_pair(E("x * x = x"), E(kAxiom2))),
            "the unary operation does not occur in u(x)");
  EXPECT_EQ(reason_of(filter_candidate_pair(E(kAxiom1), E("(x * y)' = y' * x'"))),
            "s = t involves fewer than three variables");
  EXPECT_EQ(reason_of(filter_candidate_pair(E(kAxiom1), E("x * (y * z) = (x * y) * z"))),
            "the unary operation occurs in neither s nor t");
  EXPECT_EQ(reason_of(filter_candidate_pair(E(kAxiom1), E("x * (y * z') = x * y"))),
            "s = t is not uniform");
  EXPECT_EQ(reason_of(filter_candidate_pair(E("x * y = y * x"), E(kAxiom2))),
            "neither identity has the form u(x) = x");
}

TEST(Filter, ExtraPredicate) {
  PairPredicate no_long = [](const CandidatePair& p) -> std::optional<std::string> {
    if (weight_of(p.main_axiom) > 20) return "too long";
    return std::nullopt;
  };
  EXPECT_EQ(reason_of(filter_candidate_pair(E(kAxiom1), E(kAxiom2), {no_long})), "too long");
}

TEST(Filter, ThreeBasesFailOnlyForSize) {
  // Some pair drawn from each three-identity base has the admissible shape,
  // so what keeps these systems out of the candidate stream is their size.
  int checked = 0;
  for (const auto& s : registry()) {
    if (s.status != BaseStatus::VerifiedBase || s.axioms.size() != 3) continue;
    bool some_pair = false;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        if (i != j && std::holds_alternative<CandidatePair>(
                          filter_candidate_pair(s.axioms[i], s.axioms[j])))
          some_pair = true;
    EXPECT_TRUE(some_pair) << s.name;
    ++checked;
  }
  EXPECT_GE(checked, 2);
}

TEST(Generate, SmallWeightUnaryIdentities) {
  CandidateShape shape;
  shape.max_weight = 6;
  shape.variables = 1;
  shape.unary_identity = true;
  auto v = generate_candidates(shape);
  EXPECT_TRUE(contains_variant(v, E("x * (x' * x) = x")));
  EXPECT_TRUE(contains_variant(v, E("(x * x') * x = x")));
  for (const auto& e : v) {
    EXPECT_TRUE(e.rhs.is_variable() || e.lhs.is_variable()) << to_string(e);
    EXPECT_TRUE(measures(e).uniform);
  }
  EXPECT_EQ(v, generate_candidates(shape));
}

TEST(Generate, TinyWeightMatchesHandCount) {
  CandidateShape shape;
  shape.max_weight = 3;
  shape.variables = 1;
  shape.unary_identity = true;
  shape.unary_count = 1;
  auto unary = generate_candidates(shape);
  ASSERT_EQ(unary.size(), 1u);
  EXPECT_TRUE(is_variant(unary[0], E("x' = x")));

  shape.unary_count = 0;
  auto plain = generate_candidates(shape);
  ASSERT_EQ(plain.size(), 1u);
  EXPECT_TRUE(is_variant(plain[0], E("x * x = x")));
}

TEST(Generate, ImpossibleShapeIsEmpty) {
  CandidateShape shape;
  shape.variables = 0;
  EXPECT_TRUE(generate_candidates(shape).empty());
}

TEST(Generate, CapAndEarlyStop) {
  CandidateShape shape;
  shape.max_weight = 7;
  shape.variables = 2;
  shape.cap = 3;
  EXPECT_THROW(generate_candidates(shape), ResourceError);
  shape.cap = 1'000'000;
  int seen = 0;
  generate_candidates(shape, [&](const Equation&) { return ++seen < 5; });
  EXPECT_EQ(seen, 5);
}

TEST(Generate, NoDuplicatesModuloRenaming) {
  CandidateShape shape;
  shape.max_weight = 5;
  shape.variables = 2;
  auto v = generate_candidates(shape);
  std::set<std::string> seen;
  for (const auto& e : v) EXPECT_TRUE(seen.insert(to_string(canonical_form(e))).second) << to_string(e);
}

TEST(TestBase, WeakTripleRefuted) {
  auto s = lookup("weak-triple");
  ASSERT_TRUE(s);
  TestLimits limits;
  limits.max_model_size = 3;
  Verdict v = test_axioms(s->axioms, limits);
  ASSERT_EQ(v.kind, Verdict::Kind::Refuted);
  ASSERT_TRUE(v.countermodel);
  ASSERT_TRUE(v.violated);
  for (const auto& a : s->axioms) EXPECT_TRUE(evaluate(*v.countermodel, a));
  EXPECT_FALSE(evaluate(*v.countermodel, *v.violated));
  EXPECT_NE(format_verdict_line("wt", v).find("REFUTED"), std::string::npos);
}

TEST(TestBase, IntermediatePairRefutedBySize4Model) {
  auto s = lookup("intermediate-pair");
  ASSERT_TRUE(s);
  TestLimits limits;
  limits.seconds_per_goal = 3;
  limits.search.max_weight = 34;
  limits.max_model_size = 4;
  Verdict v = test_axioms(s->axioms, limits);
  ASSERT_EQ(v.kind, Verdict::Kind::Refuted) << v.reason;
  ASSERT_TRUE(v.countermodel);
  EXPECT_EQ(v.countermodel->size(), 4);
  for (const auto& a : s->axioms) EXPECT_TRUE(evaluate(*v.countermodel, a));
  EXPECT_FALSE(evaluate(*v.countermodel, E(kIdempotentsCommute)));
  EXPECT_NE(classify(*v.countermodel), AlgebraClass::InverseNaturalInversion);
}

TEST(TestBase, TwoBaseProvedWithHints) {
  TestLimits limits;
  for (const auto& l : listings()) {
    auto h = hints_from_script(read_proof_file(l.file));
    limits.search.hints.insert(limits.search.hints.end(), h.begin(), h.end());
  }
  limits.search.max_weight = 40;
  limits.search.hint_exempt_from_limits = true;
  limits.seconds_per_goal = 120;
  auto pair = std::get<CandidatePair>(filter_candidate_pair(E(kAxiom1), E(kAxiom2)));
  Verdict v = test_base(pair, limits);
  ASSERT_EQ(v.kind, Verdict::Kind::ProvedBase) << v.reason;
  EXPECT_TRUE(v.small_models_certified);
  ASSERT_EQ(v.proofs.size(), reference_properties().size());
  // The bundled proofs are themselves checkable.
  std::vector<Equation> axioms = pair.axioms();
  for (const auto& gp : v.proofs) {
    EXPECT_EQ(gp.status, ProveStatus::Proved);
    if (gp.proof.steps.empty()) continue;  // the goal was an axiom
    EXPECT_TRUE(check_proof(gp.proof, axioms, gp.goal).passed) << to_string(gp.goal);
    axioms.push_back(gp.goal);
  }
}

TEST(Guidance, NoInterpretationsMeansNoCandidates) {
  GuidanceLimits limits;
  limits.max_model_size = 1;  // size-1 models satisfy everything, so nothing falsifies C
  limits.min_model_size = 1;
  limits.search.max_given = 50;
  auto r = semantic_guidance_round({E(kAxiom1)}, {E(kAssociativity)}, {E(kIdempotentsCommute)},
                                   limits);
  EXPECT_TRUE(r.interpretations.empty());
  EXPECT_TRUE(r.abc_unfalsified);
  EXPECT_TRUE(r.false_clauses.empty());
  EXPECT_TRUE(r.candidates.empty());
}

TEST(Guidance, ShortRunProducesFilteredCandidates) {
  GuidanceLimits limits;
  limits.search.max_given = 200;
  auto r = semantic_guidance_round({E(kAxiom1)}, {E(kAssociativity)}, {E(kIdempotentsCommute)},
                                   limits);
  EXPECT_FALSE(r.interpretations.empty());
  for (const auto& m : r.interpretations) EXPECT_TRUE(evaluate(m, E(kAxiom1)));
  for (const auto& e : r.false_clauses) {
    EXPECT_TRUE(e.positive());
    for (const auto& m : r.interpretations) EXPECT_FALSE(evaluate(m, e)) << to_string(e);
  }
  for (const auto& c : r.candidates)
    EXPECT_TRUE(std::holds_alternative<CandidatePair>(
        filter_candidate_pair(c.unary_axiom, c.main_axiom)));
}

TEST(Guidance, RequiresSingleUnaryAxiom) {
  GuidanceLimits limits;
  limits.search.max_given = 10;
  EXPECT_THROW(semantic_guidance_round({E(kAxiom1), E(kInvolution)}, {E(kAssociativity)},
                                       {E(kIdempotentsCommute)}, limits),
               std::invalid_argument);
}

TEST(Persistence, RoundTrip) {
  auto dir = temp_dir("registry");
  save_registry(dir.string(), registry());
  auto loaded = load_registry(dir.string());
  ASSERT_EQ(loaded.size(), registry().size());
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    const auto& a = registry()[i];
    const auto& b = loaded[i];
    EXPECT_EQ(a.name, b.name);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.provenance, b.provenance);
    EXPECT_EQ(a.axioms, b.axioms);
    EXPECT_EQ(a.countermodel, b.countermodel);
  }
  std::filesystem::remove_all(dir);
}

TEST(Persistence, CorruptCountermodelRejected) {
  auto dir = temp_dir("corrupt");
  AxiomSystem bad = *lookup("weak-triple");
  bad.countermodel = FiniteAlgebra(2, {0, 1, 1, 0}, {0, 1});  // a group: satisfies everything
  save_registry(dir.string(), {bad});
  EXPECT_THROW(load_registry(dir.string()), std::runtime_error);
  std::filesystem::remove_all(dir);
}

TEST(Persistence, AtomicWriteLeavesNoTemporary) {
  auto dir = temp_dir("atomic");
  auto path = (dir / "f.txt").string();
  write_file_atomic(path, "one");
  write_file_atomic(path, "two");
  EXPECT_FALSE(std::filesystem::exists(path + ".tmp"));
  std::ifstream in(path);
  std::string s;
  in >> s;
  EXPECT_EQ(s, "two");
  std::filesystem::remove_all(dir);
}

TEST(Hunt, WritesVerdictsAndReport) {
  auto dir = temp_dir("hunt");
  TestLimits limits;
  limits.max_model_size = 3;
  limits.seconds_per_goal = 1;
  auto weak = std::get<CandidatePair>(filter_candidate_pair(E(kAxiom1), E("(x * y) * (z * z') = x * (y * (z * z'))")));
  auto lines = hunt({{"a", weak}, {"b", weak}}, limits, 2, dir.string());
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0].rfind("a", 0), 0u);
  EXPECT_TRUE(std::filesystem::exists(dir / "a.verdict"));
  EXPECT_TRUE(std::filesystem::exists(dir / "report.txt"));
  std::filesystem::remove_all(dir);
}
