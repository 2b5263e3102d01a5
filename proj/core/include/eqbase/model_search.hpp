#pragma once

// Backtracking search for finite models of identities.

#include <cstdint>
#include <optional>
#include <vector>

#include "eqbase/equation.hpp"
#include "eqbase/finite_algebra.hpp"

namespace eqbase {

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;

struct ModelQuery {
  std::vector<Equation> must_hold;
  std::vector<Equation> must_fail;
  int min_size = 1;
  int max_size = 4;
};

struct FindOptions {
  /// Cell assignments tried per query, summed over sizes.  The
  /// EQBASE_BUDGET environment variable overrides the default.
  std::uint64_t node_budget = 0;  // 0: default or environment
  /// Least-number symmetry reduction: among elements not yet mentioned by
  /// any assigned cell, only the smallest is tried as a value.  Sound and
  /// deterministic; turning it off only makes searches slower.
  bool symmetry_reduction = true;
};

enum class SearchStatus { Found, Exhausted, BudgetExceeded };

struct ModelResult {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<FiniteAlgebra> model;
  std::uint64_t nodes = 0;
  /// Largest size whose search space was fully explored.
  int exhausted_through = 0;
};

std::uint64_t effective_budget(const FindOptions& options);

/// Depth-first search over table cells.  Each must_fail identity gets a
/// witness assignment up front (tuples in first-occurrence normal form, in
/// lexicographic order), turned into a ground disequation.  The next cell is
/// the unassigned one with the most ground instances waiting on it, ties
/// broken by "shells" (k', then products i*j with max(i, j) = k).  Values are
/// tried in increasing order, and a ground instance whose only unknown is
/// the outermost operation of one side forces that cell.  The first model
/// found is therefore well defined for a given query.
ModelResult find_model(const ModelQuery& query, const FindOptions& options = {});

/// Throwing convenience wrapper: ResourceError when the budget runs out.
std::optional<FiniteAlgebra> find_model_or_throw(const ModelQuery& query,
                                                 const FindOptions& options = {});

}  // namespace eqbase
