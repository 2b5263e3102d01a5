#pragma once

// Certification of proof listings whose justifications name only parent
// steps.  For every derived step the checker recovers a concrete inference
// (one paramodulation and/or a chain of rewrites drawn from the listed
// parents) and records it as a replayable certificate.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "eqbase/proof_script.hpp"

namespace eqbase {

inline constexpr std::size_t kDefaultReconstructionBudget = 1000000;

struct RewriteStep {
  int demodulator = 0;     // step number of the rule
  bool reversed = false;   // rule applied right to left
  int side = 0;            // side of the rewritten equation
  Position position;
};

enum class CertificateKind { Input, Goal, Denial, Para, PureRewrite, UnitConflict, Reflexivity };

std::string_view to_string(CertificateKind k);

struct StepCertificate {
  int step = 0;
  CertificateKind kind = CertificateKind::Input;
  // Para
  int from = 0;
  int into = 0;
  bool from_reversed = false;
  int into_side = 0;
  Position position;
  // PureRewrite / Reflexivity / Denial: the rewritten (or denied) step.
  int base = 0;
  // UnitConflict
  int positive = 0;
  int negative = 0;
  std::vector<RewriteStep> rewrites;
  std::size_t nodes = 0;

  bool primary() const { return kind == CertificateKind::Para; }
};

struct ReconstructionFailure {
  int step = 0;
  std::string reason;
  bool budget_exceeded = false;
  std::size_t nodes = 0;
  /// Closest derivations found, for diagnostics.
  std::vector<std::string> nearest;
};

using Reconstruction = std::variant<StepCertificate, ReconstructionFailure>;

struct CheckOptions {
  std::size_t budget = kDefaultReconstructionBudget;
  /// Admit steps needing two paramodulations among the parents.
  bool allow_double_para = false;
};

/// Certifies one step, assuming its parents are sound.  Input steps are
/// matched against `axioms` and the goal.
Reconstruction reconstruct_step(const ProofScript& script, int step_num,
                                 const std::vector<Equation>& axioms,
                                 const std::optional<Equation>& goal,
                                 const CheckOptions& options = {});

/// Re-executes a certificate with the inference primitives.
bool replay_certificate(const ProofScript& script, const StepCertificate& cert,
                        const std::vector<Equation>& axioms, const std::optional<Equation>& goal);

struct StepReport {
  int step = 0;
  std::optional<StepCertificate> certificate;
  std::optional<ReconstructionFailure> failure;
  std::size_t nodes = 0;
};

struct CheckReport {
  std::vector<StepReport> steps;
  bool passed = false;
  std::size_t lines = 0;           // every listed step
  std::size_t derived = 0;         // steps with parents, $F included
  std::size_t primary = 0;         // paramodulation steps
  std::size_t rewrites = 0;        // individual rewrite applications
  std::size_t rewrite_steps = 0;   // pure rewrite (back-demodulation) steps
  std::vector<int> failed_steps;
};

CheckReport check_proof(const ProofScript& script, const std::vector<Equation>& axioms,
                        const Equation& goal, const CheckOptions& options = {});

/// One line per step plus the summary line.
std::string format_certificates(const CheckReport& report);
std::string describe(const StepCertificate& cert);

}  // namespace eqbase
