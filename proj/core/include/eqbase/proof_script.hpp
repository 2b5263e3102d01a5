#pragma once

// Proof listings in the numbered-step format:
//
//   1 x'' = x # label(goal).
//   2 x * (x' * x) = x.
//   4 c1'' != c1.  [1].
//   92 $F.  [91,4].
//   ============================== end of proof ==========================

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eqbase/equation.hpp"

namespace eqbase {

inline constexpr std::string_view kEndOfProof =
    "============================== end of proof ==========================";

class ProofFormatError : public std::runtime_error {
 public:
  ProofFormatError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ProofStep {
  int num = 0;
  /// Empty for the contradiction marker `$F`.
  std::optional<Equation> statement;
  std::vector<int> parents;
  std::string label;
  std::size_t line = 0;

  bool contradiction() const { return !statement.has_value(); }
};

struct ProofScript {
  std::vector<ProofStep> steps;

  const ProofStep* find(int num) const;
  std::size_t index_of(int num) const;
};

/// Parses one listing.  Step numbers must increase and every parent must
/// name an earlier step; gaps in the numbering are accepted.
ProofScript parse_proof(std::string_view text);
ProofScript read_proof_file(const std::string& path);

std::string format_step(const ProofStep& step);
/// Renders the listing including the end-of-proof trailer.
std::string format_proof(const ProofScript& script);

}  // namespace eqbase
