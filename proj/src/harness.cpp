#include "magma/harness.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace magma {

namespace {

using Clock = std::chrono::steady_clock;

const char* kFiniteCaveat =
    "finite check: on a finite carrier injective and surjective translations "
    "coincide, so cancellation and division hypotheses collapse; the result "
    "covers the finite specialization of the statement.";

Constraint prop(StructuralProperty p) { return Constraint::holds(p); }
Constraint not_prop(StructuralProperty p) { return Constraint::fails(p); }
Constraint law(std::string_view text) {
  return Constraint::holds(parse_identity(text));
}

// "is a commutative group and satisfies all the reduced identities".
std::vector<Constraint> group_conclusions() {
  return {prop(StructuralProperty::quasigroup),
          prop(StructuralProperty::associative),
          prop(StructuralProperty::commutative),
          prop(StructuralProperty::has_two_sided_identity),
          law(laws::associativity),
          law(laws::grassmann),
          law(laws::left_permutable),
          law(laws::cyclic),
          law(laws::left_invertible)};
}

std::vector<LemmaSpec> build_catalog() {
  const Constraint LD = prop(StructuralProperty::left_division);
  const Constraint RD = prop(StructuralProperty::right_division);
  const Constraint LC = prop(StructuralProperty::left_cancellative);
  const Constraint RC = prop(StructuralProperty::right_cancellative);
  const Constraint cyc = law(laws::cyclic);
  const Constraint tar = law(laws::tarski);

  std::vector<LemmaSpec> out;
  auto add = [&out](LemmaSpec lemma) { out.push_back(std::move(lemma)); };

  // Cyclic law, right division (and right cancellation).
  add({"CYCL-RD-ASSOC", "CYCL_5", LemmaKind::implication,
       {RD, cyc}, {law(laws::associativity)},
       CompanionPolicy::none, 4, std::nullopt, ""});
  add({"CYCL-RD-COMM", "CYCL_6", LemmaKind::implication,
       {RD, cyc}, {prop(StructuralProperty::commutative)},
       CompanionPolicy::none, 4, std::nullopt, ""});
  add({"CYCL-RDRC-LID", "CYCL_11", LemmaKind::implication,
       {RD, RC, cyc}, {law("z = (x / x) * z")},
       CompanionPolicy::derive_right, 4, std::nullopt, ""});
  add({"CYCL-RDRC-UNIQ", "CYCL_12", LemmaKind::implication,
       {RD, RC, cyc}, {law("x / x = y / y")},
       CompanionPolicy::derive_right, 4, std::nullopt, ""});
  add({"CYCL-RDRC-GROUP", "CYCL_13", LemmaKind::implication,
       {RD, RC, cyc}, group_conclusions(),
       CompanionPolicy::none, 4, std::nullopt, ""});

  // Cyclic law, right division with left cancellation.
  add({"CYCL-RDLC-QID", "LOOP_1", LemmaKind::implication,
       {RD, LC, cyc}, {law("y / y = x \\ x")},
       CompanionPolicy::derive_both, 5, std::nullopt, ""});
  add({"CYCL-RDLC-ID", "LOOP_11", LemmaKind::implication,
       {RD, LC, cyc}, {prop(StructuralProperty::has_two_sided_identity)},
       CompanionPolicy::none, 5, std::nullopt, ""});
  add({"CYCL-RDLC-GROUP", "L_1", LemmaKind::implication,
       {RD, LC, cyc}, group_conclusions(),
       CompanionPolicy::none, 5, std::nullopt, ""});

  // Cyclic law, left division (and left cancellation).
  add({"CYCL-LD-ASSOC", "CYCL_1", LemmaKind::implication,
       {LD, cyc}, {law(laws::associativity)},
       CompanionPolicy::none, 4, std::nullopt, ""});
  add({"CYCL-LD-COMM", "CYCL_2", LemmaKind::implication,
       {LD, cyc}, {prop(StructuralProperty::commutative)},
       CompanionPolicy::none, 4, std::nullopt, ""});
  add({"CYCL-LDLC-LID", "CYCL_3", LemmaKind::implication,
       {LD, LC, cyc}, {law("x = (y \\ y) * x")},
       CompanionPolicy::derive_left, 4, std::nullopt, ""});
  add({"CYCL-LDLC-UNIQ", "CYCL_2233", LemmaKind::implication,
       {LD, LC, cyc}, {law("x \\ x = y \\ y")},
       CompanionPolicy::derive_left, 4, std::nullopt, ""});
  add({"CYCL-LDLC-GROUP", "CYCL_7", LemmaKind::implication,
       {LD, LC, cyc}, group_conclusions(),
       CompanionPolicy::none, 4, std::nullopt, ""});
  add({"CYCL-LDRC-GROUP", "CYCL_77", LemmaKind::implication,
       {LD, RC, cyc}, group_conclusions(),
       CompanionPolicy::none, 5, std::nullopt, ""});

  // Tarski law, left division left cancellation.
  add({"TARKI-LD-COMM", "TARKI_1", LemmaKind::implication,
       {LD, tar}, {prop(StructuralProperty::commutative)},
       CompanionPolicy::none, 4, std::nullopt, ""});
  add({"TARKI-LD-ASSOC", "TARKI_2", LemmaKind::implication,
       {LD, tar}, {law(laws::associativity)},
       CompanionPolicy::none, 4, std::nullopt, ""});
  add({"TARKI-LDLC-ID", "TARKI_6", LemmaKind::implication,
       {LD, LC, tar}, {law("x = x * (y \\ y)"), law("x = (y \\ y) * x")},
       CompanionPolicy::derive_left, 4, std::nullopt, ""});
  add({"TARKI-LDLC-UNIQ", "TARKI_7", LemmaKind::implication,
       {LD, LC, tar}, {law("x \\ x = y \\ y")},
       CompanionPolicy::derive_left, 4, std::nullopt, ""});
  add({"TARKI-LDLC-GROUP", "TARKI_THEOR_1", LemmaKind::implication,
       {LD, LC, tar}, group_conclusions(),
       CompanionPolicy::none, 4, std::nullopt, ""});

  // Tarski law, left division right cancellation.
  add({"TARKI-LDRC-MIRROR", "TARKI_8", LemmaKind::implication,
       {LD, RC, tar}, {law("x \\ y = y / x")},
       CompanionPolicy::derive_both, 5, std::nullopt, ""});
  add({"TARKI-LDRC-LID", "TARKI_9", LemmaKind::implication,
       {LD, RC, tar}, {law("y = (x / x) * y")},
       CompanionPolicy::derive_right, 5, std::nullopt, ""});
  add({"TARKI-LDRC-UNIQ", "TARKI_10", LemmaKind::implication,
       {LD, RC, tar}, {law("x / x = y / y")},
       CompanionPolicy::derive_right, 5, std::nullopt,
       "the source statement's header says left cancellation while its proof "
       "uses the / operation; this entry encodes the right-cancellation "
       "reading, TARKI-LDLC-UNIQ-DIV the other."});
  add({"TARKI-LDRC-GROUP", "TARKI_THEOR_2", LemmaKind::implication,
       {LD, RC, tar}, group_conclusions(),
       CompanionPolicy::none, 5, std::nullopt, ""});
  add({"TARKI-LDLC-UNIQ-DIV", "TARKI_10", LemmaKind::implication,
       {LD, LC, tar}, {law("x / x = y / y")},
       CompanionPolicy::derive_right, 4, std::nullopt,
       "alternate reading of TARKI-LDRC-UNIQ with the left-cancellation "
       "header; models without a right companion satisfy the conclusion "
       "vacuously."});

  // Tarski law, right division right cancellation.
  add({"TARKI-RDRC-RID", "TARKI_5", LemmaKind::implication,
       {RD, RC, tar}, {law("x * (y / y) = x")},
       CompanionPolicy::derive_right, 4, std::nullopt, ""});
  add({"TARKI-RDRC-ASSOC", "TARKI_51", LemmaKind::implication,
       {RD, RC, tar}, {law(laws::associativity)},
       CompanionPolicy::none, 4, std::nullopt, ""});

  // Tarski law, cancellation only.
  add({"TARKI-LC-ASSOC", "TARKI_88", LemmaKind::implication,
       {LC, tar}, {law(laws::associativity)},
       CompanionPolicy::none, 4, std::nullopt,
       "stated for a left cancellation table with no division hypothesis; "
       "finitely the two cannot be separated."});
  add({"TARKI-LC-COMM", "TARKI_888", LemmaKind::implication,
       {LC, tar}, {prop(StructuralProperty::commutative)},
       CompanionPolicy::none, 4, std::nullopt,
       "stated for a left cancellation table with no division hypothesis; "
       "finitely the two cannot be separated."});
  add({"TARKI-LCRD-LID", "TARKI_8811", LemmaKind::implication,
       {LC, RD, tar}, {law("(x / x) * y = y")},
       CompanionPolicy::derive_right, 5, std::nullopt, ""});
  add({"TARKI-LCRD-UNIQ", "TARKI_882", LemmaKind::implication,
       {LC, RD, tar}, {law("x / x = y / y")},
       CompanionPolicy::derive_right, 5, std::nullopt, ""});
  add({"TARKI-RDLC-GROUP", "TARKI_THEOR_9", LemmaKind::implication,
       {RD, LC, tar}, group_conclusions(),
       CompanionPolicy::none, 5, std::nullopt, ""});

  // Division-law bridges.
  add({"Q3", "left cancellation right division", LemmaKind::implication,
       {RD, LC}, {law(laws::div_link_left)},
       CompanionPolicy::derive_both, 5, std::nullopt, ""});
  add({"Q6", "right cancellation left division", LemmaKind::implication,
       {LD, RC}, {law(laws::div_link_right)},
       CompanionPolicy::derive_both, 5, std::nullopt, ""});
  add({"DEF-EQUIV", "quasigroup definitions", LemmaKind::implication,
       {law(laws::ldiv_cancel), law(laws::rdiv_cancel),
        law(laws::ldiv_recover), law(laws::rdiv_recover)},
       {law(laws::div_link_left), law(laws::div_link_right)},
       CompanionPolicy::none, 3, std::nullopt,
       "the \\ and / tables are part of the searched signature here."});

  // The conditional commutativity reduction.
  add({"TARKI-COMM-COND", "product coverage", LemmaKind::implication,
       {LD, prop(StructuralProperty::surjective_product), tar},
       {prop(StructuralProperty::commutative), law(laws::associativity),
        law(laws::grassmann), law(laws::left_permutable), law(laws::cyclic)},
       CompanionPolicy::none, 4, std::nullopt,
       "the product-coverage supposition is read per left translation (left "
       "division); reading it as mere union coverage fails on the "
       "right-division example table."});

  // The two-element right-division Tarski table that is neither commutative
  // nor unital.
  {
    LemmaSpec lemma;
    lemma.id = "TARKI-RD-NONCOMM";
    lemma.label = "TAR_EX1";
    lemma.kind = LemmaKind::existence;
    lemma.hypotheses = {RD, tar};
    lemma.conclusions = {not_prop(StructuralProperty::commutative),
                         not_prop(StructuralProperty::has_two_sided_identity)};
    lemma.companions = CompanionPolicy::none;
    lemma.default_max_order = 2;
    lemma.expected_witness = canonical_form(Algebra(2, Table{0, 0, 1, 1}));
    lemma.note =
        "existence entry: expects a right-division Tarski table that is "
        "neither commutative nor unital.";
    add(std::move(lemma));
  }

  return out;
}

bool conclusion_needs(const Constraint& c, Op op) {
  bool used[kOpCount] = {};
  c.collect_ops(used);
  return used[op_index(op)];
}

std::vector<Table> companions_or_empty(const Algebra& model, Op side) {
  try {
    return side == Op::ldiv ? all_left_companions(model)
                            : all_right_companions(model);
  } catch (const std::invalid_argument&) {
    return {};
  }
}

std::string compose_note(const LemmaSpec& lemma) {
  if (lemma.note.empty()) return kFiniteCaveat;
  return lemma.note + " " + kFiniteCaveat;
}

// Checks one conclusion on one hypothesis model, quantifying over every
// companion table the policy supplies for operations the model lacks.
// Returns the violating extended model and witness, if any.
struct ConclusionCheck {
  bool violated = false;
  std::optional<Algebra> model;
  std::optional<Witness> witness;
};

ConclusionCheck check_conclusion(const Algebra& model, const Constraint& c,
                                 const std::vector<Table>& left_companions,
                                 const std::vector<Table>& right_companions) {
  ConclusionCheck out;
  const bool wants_l = conclusion_needs(c, Op::ldiv) && !model.has(Op::ldiv);
  const bool wants_r = conclusion_needs(c, Op::rdiv) && !model.has(Op::rdiv);

  auto eval_on = [&](const Algebra& extended) {
    if (auto w = find_constraint_violation(extended, c)) {
      out.violated = true;
      out.model = extended;
      out.witness = std::move(w);
      return false;
    }
    return true;
  };

  if (!wants_l && !wants_r) {
    eval_on(model);
    return out;
  }

  // Quantify over all companions; an empty family leaves the conclusion
  // vacuously true (nothing to instantiate it with).
  const std::vector<Table> no_table{Table{}};
  const auto& ls = wants_l ? left_companions : no_table;
  const auto& rs = wants_r ? right_companions : no_table;
  for (const auto& l : ls) {
    for (const auto& r : rs) {
      Algebra extended = model;
      if (wants_l) extended.set_table(Op::ldiv, l);
      if (wants_r) extended.set_table(Op::rdiv, r);
      if (!eval_on(extended)) return out;
    }
  }
  return out;
}

void validate_spec(const LemmaSpec& lemma) {
  if (lemma.conclusions.empty())
    throw std::invalid_argument("lemma '" + lemma.id + "' has no conclusions");
  bool searched[kOpCount] = {};
  searched[op_index(Op::mul)] = true;
  for (const auto& h : lemma.hypotheses) h.collect_ops(searched);
  const bool gives_l = lemma.companions == CompanionPolicy::derive_left ||
                       lemma.companions == CompanionPolicy::derive_both;
  const bool gives_r = lemma.companions == CompanionPolicy::derive_right ||
                       lemma.companions == CompanionPolicy::derive_both;
  for (const auto& c : lemma.conclusions) {
    bool used[kOpCount] = {};
    c.collect_ops(used);
    if (used[op_index(Op::ldiv)] && !searched[op_index(Op::ldiv)] && !gives_l)
      throw std::invalid_argument("lemma '" + lemma.id +
                                  "' concludes about \\ without deriving it");
    if (used[op_index(Op::rdiv)] && !searched[op_index(Op::rdiv)] && !gives_r)
      throw std::invalid_argument("lemma '" + lemma.id +
                                  "' concludes about / without deriving it");
  }
}

VerificationReport verify_implication(const LemmaSpec& lemma, int max_order,
                                      const VerifyOptions& options) {
  VerificationReport report;
  report.lemma_id = lemma.id;
  report.max_order = max_order;
  report.note = compose_note(lemma);

  const bool need_l = lemma.companions == CompanionPolicy::derive_left ||
                      lemma.companions == CompanionPolicy::derive_both;
  const bool need_r = lemma.companions == CompanionPolicy::derive_right ||
                      lemma.companions == CompanionPolicy::derive_both;

  std::uint64_t spent = 0;
  for (int order = 1; order <= max_order; ++order) {
    ConstraintSet cs{order, lemma.hypotheses};
    SearchOptions so;
    so.mode = SearchMode::all;
    so.threads = options.threads;
    if (options.budget) {
      if (spent >= options.budget) {
        report.outcome = VerifyOutcome::inconclusive;
        return report;
      }
      so.node_budget = options.budget - spent;
    }

    std::uint64_t examined = 0;
    std::optional<Algebra> bad_model;
    std::optional<Witness> bad_witness;
    std::string violated;
    SearchStats stats;
    bool complete = search_stream(
        cs, so,
        [&](const Algebra& model) {
          ++examined;
          std::vector<Table> ls =
              need_l ? companions_or_empty(model, Op::ldiv)
                     : std::vector<Table>{};
          std::vector<Table> rs =
              need_r ? companions_or_empty(model, Op::rdiv)
                     : std::vector<Table>{};
          for (const auto& c : lemma.conclusions) {
            ConclusionCheck check = check_conclusion(model, c, ls, rs);
            if (check.violated) {
              bad_model = std::move(check.model);
              bad_witness = std::move(check.witness);
              violated = c.to_text();
              return false;
            }
          }
          return true;
        },
        stats);

    spent += stats.nodes;
    report.nodes += stats.nodes;
    report.models_per_order.push_back(examined);
    if (bad_model) {
      report.outcome = VerifyOutcome::counterexample;
      report.model = std::move(bad_model);
      report.witness = std::move(bad_witness);
      report.violated = violated;
      return report;
    }
    if (!complete) {
      report.outcome = VerifyOutcome::inconclusive;
      return report;
    }
  }
  report.outcome = VerifyOutcome::verified;
  return report;
}

VerificationReport verify_existence(const LemmaSpec& lemma, int max_order,
                                    const VerifyOptions& options) {
  VerificationReport report;
  report.lemma_id = lemma.id;
  report.max_order = max_order;
  report.note = compose_note(lemma);

  std::vector<Constraint> wanted = lemma.hypotheses;
  wanted.insert(wanted.end(), lemma.conclusions.begin(),
                lemma.conclusions.end());

  std::uint64_t spent = 0;
  for (int order = 1; order <= max_order; ++order) {
    ConstraintSet cs{order, wanted};
    SearchOptions so;
    so.mode = SearchMode::all;
    so.threads = options.threads;
    if (options.budget) {
      if (spent >= options.budget) {
        report.outcome = VerifyOutcome::inconclusive;
        return report;
      }
      so.node_budget = options.budget - spent;
    }

    std::uint64_t examined = 0;
    std::optional<Algebra> found;
    SearchStats stats;
    bool complete = search_stream(
        cs, so,
        [&](const Algebra& model) {
          ++examined;
          if (lemma.expected_witness &&
              canonical_form(model) != *lemma.expected_witness)
            return true;  // keep looking for the pinned witness
          found = model;
          return false;
        },
        stats);

    spent += stats.nodes;
    report.nodes += stats.nodes;
    report.models_per_order.push_back(examined);
    if (found) {
      report.outcome = VerifyOutcome::witnessed;
      report.model = std::move(found);
      return report;
    }
    if (!complete) {
      report.outcome = VerifyOutcome::inconclusive;
      return report;
    }
  }
  report.outcome = VerifyOutcome::no_witness;
  return report;
}

}  // namespace

const char* outcome_name(VerifyOutcome outcome) {
  switch (outcome) {
    case VerifyOutcome::verified:
      return "verified";
    case VerifyOutcome::witnessed:
      return "witnessed";
    case VerifyOutcome::counterexample:
      return "counterexample";
    case VerifyOutcome::no_witness:
      return "no-witness";
    case VerifyOutcome::inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::uint64_t VerificationReport::models_total() const {
  std::uint64_t total = 0;
  for (auto m : models_per_order) total += m;
  return total;
}

const std::vector<LemmaSpec>& catalog() {
  static const std::vector<LemmaSpec> entries = build_catalog();
  return entries;
}

const LemmaSpec* find_lemma(const std::string& id) {
  for (const auto& lemma : catalog())
    if (lemma.id == id) return &lemma;
  return nullptr;
}

VerificationReport verify_spec(const LemmaSpec& lemma,
                               const VerifyOptions& options) {
  validate_spec(lemma);
  const int max_order =
      options.max_order > 0 ? options.max_order : lemma.default_max_order;
  auto start = Clock::now();
  VerificationReport report =
      lemma.kind == LemmaKind::implication
          ? verify_implication(lemma, max_order, options)
          : verify_existence(lemma, max_order, options);
  report.millis =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return report;
}

VerificationReport verify(const std::string& id, const VerifyOptions& options) {
  const LemmaSpec* lemma = find_lemma(id);
  if (!lemma) throw std::invalid_argument("unknown lemma id '" + id + "'");
  return verify_spec(*lemma, options);
}

std::vector<VerificationReport> verify_all(const VerifyOptions& options) {
  const auto& entries = catalog();
  std::vector<VerificationReport> reports(entries.size());
  VerifyOptions per_lemma = options;
  per_lemma.threads = 1;  // parallelism is across lemmas

  int threads = std::max(1, options.threads);
#ifdef _OPENMP
#pragma omp parallel for num_threads(threads) schedule(dynamic, 1)
#endif
  for (std::size_t i = 0; i < entries.size(); ++i)
    reports[i] = verify_spec(entries[i], per_lemma);
  (void)threads;
  return reports;
}

bool ModelCheck::all_hold() const {
  for (const auto& [text, ok] : hypotheses)
    if (!ok) return false;
  for (const auto& [text, ok] : conclusions)
    if (!ok) return false;
  return true;
}

ModelCheck check_on_model(const LemmaSpec& lemma, const Algebra& model) {
  ModelCheck out;
  const bool need_l = lemma.companions == CompanionPolicy::derive_left ||
                      lemma.companions == CompanionPolicy::derive_both;
  const bool need_r = lemma.companions == CompanionPolicy::derive_right ||
                      lemma.companions == CompanionPolicy::derive_both;
  std::vector<Table> ls = need_l && !model.has(Op::ldiv)
                              ? companions_or_empty(model, Op::ldiv)
                              : std::vector<Table>{};
  std::vector<Table> rs = need_r && !model.has(Op::rdiv)
                              ? companions_or_empty(model, Op::rdiv)
                              : std::vector<Table>{};

  auto evaluate = [&](const Constraint& c) -> bool {
    bool used[kOpCount] = {};
    c.collect_ops(used);
    // A constraint that needs a table the model lacks and the policy cannot
    // supply is counted as not holding.
    if (used[op_index(Op::ldiv)] && !model.has(Op::ldiv) && !need_l)
      return false;
    if (used[op_index(Op::rdiv)] && !model.has(Op::rdiv) && !need_r)
      return false;
    return !check_conclusion(model, c, ls, rs).violated;
  };

  for (const auto& h : lemma.hypotheses)
    out.hypotheses.emplace_back(h.to_text(), evaluate(h));
  for (const auto& c : lemma.conclusions)
    out.conclusions.emplace_back(c.to_text(), evaluate(c));
  return out;
}

std::string report_line(const VerificationReport& report) {
  std::ostringstream ss;
  ss << report.lemma_id;
  for (std::size_t i = report.lemma_id.size(); i < 24; ++i) ss << ' ';
  ss << ' ' << outcome_name(report.outcome);
  ss << "  orders=1.." << report.max_order;
  ss << "  models=" << report.models_total();
  ss << "  millis=" << static_cast<std::uint64_t>(report.millis + 0.5);
  return ss.str();
}

void write_report_blocks(const std::vector<VerificationReport>& reports,
                         std::ostream& out) {
  for (const auto& report : reports) {
    const LemmaSpec* lemma = find_lemma(report.lemma_id);
    out << "lemma: " << report.lemma_id << "\n";
    if (lemma) {
      out << "label: " << lemma->label << "\n";
      out << "kind: "
          << (lemma->kind == LemmaKind::implication ? "implication"
                                                    : "existence")
          << "\n";
    }
    out << "outcome: " << outcome_name(report.outcome) << "\n";
    out << "max-order: " << report.max_order << "\n";
    out << "models-per-order:";
    for (auto m : report.models_per_order) out << ' ' << m;
    out << "\n";
    out << "models-total: " << report.models_total() << "\n";
    out << "nodes: " << report.nodes << "\n";
    out << "millis: " << report.millis << "\n";
    if (!report.violated.empty()) out << "violated: " << report.violated << "\n";
    if (report.witness) out << "witness: " << report.witness->to_text() << "\n";
    if (report.model) {
      out << "model: order=" << report.model->order();
      for (int t = 0; t < kOpCount; ++t) {
        Op op = static_cast<Op>(t);
        if (!report.model->has(op)) continue;
        out << ' ' << op_symbol(op) << '=';
        const Table& table = report.model->table(op);
        for (std::size_t i = 0; i < table.size(); ++i) {
          if (i) out << ',';
          out << table[i];
        }
      }
      out << "\n";
    }
    out << "note: " << report.note << "\n";
    out << "\n";
  }
}

}  // namespace magma
