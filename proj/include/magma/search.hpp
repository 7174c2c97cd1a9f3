// search.hpp — enumeration of finite operation tables under constraints
//
// The finder fills tables cell by cell (the * table row-major, then \, then
// /) with backtracking and constraint propagation:
//
//   - row/column all-different for cancellation and division hypotheses,
//   - mirror assignments for a commutativity hypothesis,
//   - ground-instance filtering of asserted identities, with single-cell
//     lookahead once only one lookup of an instance is undecided.
//
// Propagation never removes a value that appears in some completion
// consistent with the decided cells; every completed table is re-verified
// through the independent evaluators in algebra.hpp/constraint.hpp before it
// is emitted.  Negated constraints and existence-style predicates are only
// checked on completed tables.
//
// The serial path emits models in lexicographic order of the concatenated
// row-major tables.  The parallel path partitions the value branches of the
// first undecided cell across OpenMP workers, each running the serial
// engine on a private copy of the state; results are merged in branch
// order, so the emitted set matches the serial run.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <tuple>
#include <vector>

#include "magma/algebra.hpp"
#include "magma/constraint.hpp"

namespace magma {

struct ConstraintSet {
  int order;
  std::vector<Constraint> constraints;

  // Symbols to synthesize: * always, plus any symbol an identity mentions.
  std::vector<Op> synthesized_ops() const;
};

enum class SearchMode { first, all, count };

struct SearchStats {
  std::uint64_t nodes = 0;   // attempted cell assignments
  std::uint64_t models = 0;  // labeled models found
  double millis = 0;
};

struct SearchOptions {
  SearchMode mode = SearchMode::all;
  bool up_to_iso = false;
  int threads = 1;
  std::uint64_t node_budget = 0;  // 0 = unlimited
  // Latin-square style reduction: pin row 0 of * to 0,1,...,n-1.  Honored
  // only when the constraint set contains prop:quasigroup.  This restricts
  // the labeled space to tables whose first row is the identity permutation
  // (multiply counts by n! to recover the plain quasigroup total); it is not
  // an isomorphism-complete reduction, so leave it off when orbit counts
  // matter.
  bool fix_first_row = false;
};

struct SearchOutcome {
  std::vector<Algebra> models;            // all / first (canonical if up_to_iso)
  std::vector<std::uint64_t> orbit_sizes; // parallel to models when up_to_iso
  std::uint64_t count = 0;                // models, or orbits when up_to_iso
  SearchStats stats;
  bool complete = true;  // false when the node budget ran out
};

SearchOutcome search(const ConstraintSet& cs, const SearchOptions& options = {});

// Streaming core: on_model returns false to stop early.  Returns false when
// the node budget was exhausted (the enumeration is then incomplete).
bool search_stream(const ConstraintSet& cs, const SearchOptions& options,
                   const std::function<bool(const Algebra&)>& on_model,
                   SearchStats& stats);

struct RefutationOutcome {
  std::optional<Algebra> model;   // hypothesis model violating the conclusion
  std::optional<Witness> witness;
  bool complete = true;           // false: budget ran out, nothing refuted
  SearchStats stats;
  int order_found = 0;
};

// Searches orders 1..max_order, in increasing order, for a model of the
// hypotheses that violates the conclusion.  An exhausted budget is reported
// as incomplete, never as "no counterexample".
RefutationOutcome find_counterexample(const std::vector<Constraint>& hypotheses,
                                      const Constraint& conclusion,
                                      int max_order,
                                      const SearchOptions& options = {});

// Diagnostic hook: apply the given (op, row, col, value) assignments to a
// fresh propagation state and return the candidate sets left in every cell
// of the * table, or nullopt when propagation finds a contradiction.
std::optional<std::vector<std::vector<int>>> propagation_domains(
    const ConstraintSet& cs,
    const std::vector<std::tuple<Op, int, int, int>>& assignments);

}  // namespace magma
