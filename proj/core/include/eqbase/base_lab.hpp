#pragma once

// Named axiom systems for inverse semigroups, the shape filter for 2-base
// candidates, candidate generation, and the prove-or-refute base tester.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "eqbase/engine.hpp"
#include "eqbase/equation.hpp"
#include "eqbase/finite_algebra.hpp"
#include "eqbase/model_search.hpp"
#include "eqbase/proof_script.hpp"

namespace eqbase {

/// No single identity defines the variety; every base has at least two.
inline constexpr int kMinimumBaseSize = 2;

enum class BaseStatus { VerifiedBase, VerifiedNonBase, Candidate };

std::string_view to_string(BaseStatus s);
std::optional<BaseStatus> parse_base_status(std::string_view s);

struct AxiomSystem {
  std::string name;
  std::vector<Equation> axioms;
  BaseStatus status = BaseStatus::Candidate;
  std::string provenance;
  /// Stored for verified non-bases: satisfies every axiom, classified as
  /// something other than an inverse semigroup with natural inversion.
  std::optional<FiniteAlgebra> countermodel;
};

/// Built-in systems.  Countermodels are re-verified on first access.
const std::vector<AxiomSystem>& registry();
std::optional<AxiomSystem> lookup(std::string_view name);

/// Checks the stored countermodel (if any) against the axioms and
/// classification; returns a reason on failure.
std::optional<std::string> verify_countermodel(const AxiomSystem& system);

/// The properties a base must imply, in proving order: x'' = x,
/// associativity, commuting idempotents, x(x'x) = x, x'(xx') = x'.
const std::vector<Equation>& reference_properties();

struct CandidatePair {
  Equation unary_axiom;  // u(x) = x
  Equation main_axiom;

  std::vector<Equation> axioms() const { return {unary_axiom, main_axiom}; }
};

struct Rejection {
  std::string reason;
};

/// Extra acceptance predicate; returns a rejection reason or nothing.
using PairPredicate = std::function<std::optional<std::string>(const CandidatePair&)>;

/// Accepts exactly the pairs of the shape {u(x) = x, s = t}: u over the
/// single variable x with the unary operation, s = t uniform with at least
/// three variables and the unary operation on some side.  Either order of
/// the two inputs is accepted; `extra` predicates run after the built-in
/// clauses.
std::variant<CandidatePair, Rejection> filter_candidate_pair(
    const Equation& a, const Equation& b, const std::vector<PairPredicate>& extra = {});

struct CandidateShape {
  /// Bound on the weight of each side.
  std::uint32_t max_weight = 6;
  /// Exact number of distinct variables.
  int variables = 1;
  /// Exact number of unary symbols in the equation, when set.
  std::optional<int> unary_count;
  /// Only equations u(x) = x.
  bool unary_identity = false;
  /// ResourceError once more than this many equations would be produced.
  std::uint64_t cap = 1'000'000;
};

/// Uniform equations of the given shape, each once modulo variable renaming
/// and symmetry, ordered by total weight, then larger side weight, then
/// printed form.  `visit` returns false to stop early.
void generate_candidates(const CandidateShape& shape,
                         const std::function<bool(const Equation&)>& visit);
std::vector<Equation> generate_candidates(const CandidateShape& shape);

struct TestLimits {
  SearchParams search;
  /// Per-goal time limit used when `search` sets none.
  double seconds_per_goal = 60.0;
  int min_model_size = 2;
  int max_model_size = 6;
  FindOptions find;
  /// Largest size tried before proving; sizes above it are searched only
  /// when some goal stays unproved.
  int quick_model_size = 3;
  /// Later goals may assume earlier proved ones.
  bool staged = true;
};

struct GoalProof {
  Equation goal;
  ProveStatus status = ProveStatus::Saturated;
  ProofScript proof;
  SearchStats stats;
};

struct Verdict {
  enum class Kind { ProvedBase, Refuted, Unknown };
  Kind kind = Kind::Unknown;
  std::vector<GoalProof> proofs;
  /// Every model of the pair up to size 3 is an inverse semigroup with
  /// natural inversion.
  bool small_models_certified = false;
  std::optional<FiniteAlgebra> countermodel;
  /// Reference property the countermodel violates.
  std::optional<Equation> violated;
  std::string reason;
};

Verdict test_axioms(const std::vector<Equation>& axioms, const TestLimits& limits = {});
Verdict test_base(const CandidatePair& candidate, const TestLimits& limits = {});

/// `<id> PROVED`, `<id> REFUTED size=n` or `<id> UNKNOWN <reason>`.
std::string format_verdict_line(std::string_view id, const Verdict& v);

struct GuidanceLimits {
  int min_model_size = 2;
  int max_model_size = 4;
  FindOptions find;
  SearchParams search;  // must bound the run (max_given or max_seconds)
  bool filter_pairs = true;
};

struct GuidanceResult {
  std::vector<FiniteAlgebra> interpretations;
  /// A and B hold, some member of C fails: no model found.
  bool abc_unfalsified = false;
  /// A and C hold, some member of B fails: no model found.
  bool acb_unfalsified = false;
  std::vector<Equation> false_clauses;
  std::vector<CandidatePair> candidates;
  std::vector<std::string> rejections;
};

/// One round of the guidance procedure: find models of A and B falsifying
/// C and of A and C falsifying B, run the loop on A, B and C with those
/// models as interpretations, and pair each kept positive clause that is
/// false in all of them with the single identity of A.
GuidanceResult semantic_guidance_round(const std::vector<Equation>& a,
                                       const std::vector<Equation>& b,
                                       const std::vector<Equation>& c,
                                       const GuidanceLimits& limits);

// Persistence: a directory with one `.ax` file per system, a `.model` file
// per countermodel, and `manifest.tsv` with tab-separated
// name, status, axiom file, countermodel file (or -), provenance.

void save_registry(const std::string& dir, const std::vector<AxiomSystem>& systems);
/// Throws std::runtime_error if a stored countermodel fails to re-verify.
std::vector<AxiomSystem> load_registry(const std::string& dir);

/// Writes `contents` to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& contents);

struct HuntJob {
  std::string id;
  CandidatePair pair;
};

/// Tests every job with up to `jobs` threads.  Each worker writes its
/// verdict line to `<out_dir>/<id>.verdict`; the merged report, in job
/// order, is written to `<out_dir>/report.txt` and returned.
std::vector<std::string> hunt(const std::vector<HuntJob>& jobs_list, const TestLimits& limits,
                              int jobs, const std::string& out_dir);

}  // namespace eqbase
