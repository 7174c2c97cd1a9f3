// harness.hpp — the lemma catalog and its finite verification
//
// Each catalog entry states hypotheses and conclusions as constraints over
// finite operation tables.  Implication entries are verified by exhaustive
// counterexample search up to an order bound; existence entries search for a
// witness model.  When a conclusion mentions \ or / those tables are derived
// from the model (every companion table consistent with the hypotheses, not
// just the canonical one).
//
// Every report carries the finite-semantics caveat: on a finite carrier a
// translation is injective exactly when it is surjective, so cancellation
// and division hypotheses coincide and the check establishes the finite
// specialization of the statement.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "magma/algebra.hpp"
#include "magma/constraint.hpp"
#include "magma/search.hpp"

namespace magma {

enum class CompanionPolicy { none, derive_left, derive_right, derive_both };
enum class LemmaKind { implication, existence };

struct LemmaSpec {
  std::string id;
  std::string label;  // name of the statement in the source catalog
  LemmaKind kind = LemmaKind::implication;
  std::vector<Constraint> hypotheses;
  std::vector<Constraint> conclusions;
  CompanionPolicy companions = CompanionPolicy::none;
  int default_max_order = 3;
  // Existence entries: expected witness, pinned by canonical form.
  std::optional<Algebra> expected_witness;
  std::string note;
};

enum class VerifyOutcome {
  verified,        // implication: no counterexample up to the bound
  witnessed,       // existence: a model with the stated properties found
  counterexample,  // implication: hypothesis model violating a conclusion
  no_witness,      // existence: nothing found up to the bound
  inconclusive,    // node budget exhausted
};

const char* outcome_name(VerifyOutcome outcome);

struct VerificationReport {
  std::string lemma_id;
  VerifyOutcome outcome = VerifyOutcome::inconclusive;
  int max_order = 0;
  std::vector<std::uint64_t> models_per_order;  // hypothesis models examined
  std::uint64_t nodes = 0;
  double millis = 0;
  std::optional<Algebra> model;    // counterexample or witness
  std::optional<Witness> witness;  // for counterexamples
  std::string violated;            // violated conclusion, textual
  std::string note;

  std::uint64_t models_total() const;
  bool failed() const {
    return outcome == VerifyOutcome::counterexample ||
           outcome == VerifyOutcome::no_witness;
  }
};

const std::vector<LemmaSpec>& catalog();
const LemmaSpec* find_lemma(const std::string& id);

struct VerifyOptions {
  int max_order = 0;          // 0: the lemma's default bound
  std::uint64_t budget = 0;   // search node budget, 0 = unlimited
  int threads = 1;            // search partitioning within one lemma
};

VerificationReport verify_spec(const LemmaSpec& lemma,
                               const VerifyOptions& options = {});
VerificationReport verify(const std::string& id,
                          const VerifyOptions& options = {});

// Runs the whole catalog (lemmas in parallel when threads > 1) and returns
// the reports in catalog order.
std::vector<VerificationReport> verify_all(const VerifyOptions& options = {});

// Evaluates a lemma's hypotheses and conclusions on one concrete model.
// Missing companion tables demanded by the policy are derived from the
// model when possible.
struct ModelCheck {
  std::vector<std::pair<std::string, bool>> hypotheses;   // text, holds
  std::vector<std::pair<std::string, bool>> conclusions;  // text, holds
  bool all_hold() const;
};
ModelCheck check_on_model(const LemmaSpec& lemma, const Algebra& model);

// One line per lemma: id, outcome, orders, models, millis.
std::string report_line(const VerificationReport& report);

// Machine-readable key-value blocks, one per lemma, blank-line separated.
void write_report_blocks(const std::vector<VerificationReport>& reports,
                         std::ostream& out);

}  // namespace magma
