// magma — command line front end for the groupoid workbench.
//
// Exit codes: 0 success / property holds / verified / witness found,
// 1 property false / counterexample / expected witness absent,
// 2 usage error, 3 parse or file-format error, 4 inconclusive (node budget).

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "magma/harness.hpp"
#include "magma/search.hpp"
#include "magma/table_io.hpp"
#include "magma/term.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kRefuted = 1;
constexpr int kUsage = 2;
constexpr int kBadInput = 3;
constexpr int kInconclusive = 4;

struct ParseArgs {
  std::string id;
  std::string file;
};

int run_parse(const ParseArgs& args) {
  std::vector<magma::Identity> identities;
  if (!args.id.empty()) identities.push_back(magma::parse_identity(args.id));
  if (!args.file.empty()) {
    std::ifstream in(args.file);
    if (!in) {
      std::cerr << "error: cannot open '" << args.file << "'\n";
      return kBadInput;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    for (auto& ident : magma::parse_identity_lines(buffer.str()))
      identities.push_back(std::move(ident));
  }
  if (identities.empty()) {
    std::cerr << "error: nothing to parse; pass --id or --file\n";
    return kUsage;
  }
  for (const auto& ident : identities) {
    std::cout << "parsed " << magma::to_text(ident) << "\n";
    std::cout << "canonical " << magma::to_text(magma::canonicalize(ident))
              << "\n";
    std::cout << "variables " << ident.variables().size() << "\n";
  }
  return kOk;
}

struct CheckArgs {
  std::string table;
  std::vector<std::string> ids;
  std::vector<std::string> props;
  bool report = false;
};

// Accepts the constraint mini-language's property payload, e.g.
// "commutative" or "!commutative".
magma::Constraint parse_prop_token(const std::string& token) {
  bool negated = !token.empty() && token[0] == '!';
  std::string name = negated ? token.substr(1) : token;
  auto p = magma::property_from_name(name);
  if (!p)
    throw std::invalid_argument("unknown structural property '" + name + "'");
  return negated ? magma::Constraint::fails(*p) : magma::Constraint::holds(*p);
}

void print_property_report(const magma::Algebra& algebra) {
  magma::PropertyReport r = magma::property_report(algebra);
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  std::cout << "order " << algebra.order() << "\n";
  std::cout << "left_cancellative " << yn(r.left_cancellative) << "\n";
  std::cout << "right_cancellative " << yn(r.right_cancellative) << "\n";
  std::cout << "left_division " << yn(r.left_division) << "\n";
  std::cout << "right_division " << yn(r.right_division) << "\n";
  std::cout << "quasigroup " << yn(r.quasigroup_like) << "\n";
  std::cout << "commutative " << yn(r.commutative) << "\n";
  std::cout << "associative " << yn(r.associative) << "\n";
  std::cout << "left_identities";
  for (int e : r.left_identities) std::cout << ' ' << e;
  std::cout << "\n";
  std::cout << "right_identities";
  for (int e : r.right_identities) std::cout << ' ' << e;
  std::cout << "\n";
  std::cout << "two_sided_identity ";
  if (r.two_sided_identity)
    std::cout << *r.two_sided_identity;
  else
    std::cout << "none";
  std::cout << "\n";
  std::cout << "abelian_group " << yn(r.abelian_group) << "\n";
}

int run_check(const CheckArgs& args) {
  magma::Algebra algebra = magma::read_table_file(args.table);
  bool any_failed = false;

  for (const auto& text : args.ids) {
    magma::Identity ident = magma::parse_identity(text);
    if (auto w = magma::find_violation(algebra, ident)) {
      any_failed = true;
      std::cout << "id \"" << magma::to_text(ident) << "\" fail witness "
                << w->to_text() << "\n";
    } else {
      std::cout << "id \"" << magma::to_text(ident) << "\" ok\n";
    }
  }
  for (const auto& token : args.props) {
    magma::Constraint c = parse_prop_token(token);
    if (auto w = magma::find_constraint_violation(algebra, c)) {
      any_failed = true;
      std::cout << "prop " << token;
      if (w->assignment.empty())
        std::cout << " fail\n";
      else
        std::cout << " fail witness " << w->values_csv() << "\n";
    } else {
      std::cout << "prop " << token << " ok\n";
    }
  }
  if (args.report) print_property_report(algebra);
  return any_failed ? kRefuted : kOk;
}

struct SearchArgs {
  int order = 0;
  std::string constraints;
  std::string mode = "all";
  bool up_to_iso = false;
  int parallel = 1;
  std::uint64_t budget = 0;
  bool count_only = false;
};

int run_search(const SearchArgs& args) {
  magma::ConstraintSet cs{args.order,
                          magma::parse_constraints(args.constraints)};
  magma::SearchOptions options;
  if (args.count_only || args.mode == "count")
    options.mode = magma::SearchMode::count;
  else if (args.mode == "first")
    options.mode = magma::SearchMode::first;
  else if (args.mode == "all")
    options.mode = magma::SearchMode::all;
  else {
    std::cerr << "error: unknown mode '" << args.mode << "'\n";
    return kUsage;
  }
  options.up_to_iso = args.up_to_iso;
  options.threads = args.parallel;
  options.node_budget = args.budget;

  magma::SearchOutcome outcome = magma::search(cs, options);
  if (options.mode == magma::SearchMode::count) {
    std::cout << outcome.count << "\n";
  } else {
    for (std::size_t i = 0; i < outcome.models.size(); ++i) {
      std::cout << "# model " << i;
      if (args.up_to_iso && i < outcome.orbit_sizes.size())
        std::cout << " orbit-size " << outcome.orbit_sizes[i];
      std::cout << "\n";
      magma::write_table(outcome.models[i], std::cout);
      std::cout << "\n";
    }
    std::cout << "# total " << outcome.count << "\n";
  }
  std::cerr << "nodes " << outcome.stats.nodes << " models "
            << outcome.stats.models << " millis " << outcome.stats.millis
            << "\n";
  return outcome.complete ? kOk : kInconclusive;
}

struct HosszuArgs {
  bool semantic = false;
  int order = 2;
};

// Group the variants by their satisfaction pattern over every table of
// order 1..max_order.
std::vector<std::vector<std::size_t>> semantic_groups(
    const std::vector<magma::Identity>& variants, int max_order) {
  std::vector<std::string> signature(variants.size());
  for (int n = 1; n <= max_order; ++n) {
    const std::size_t cells = static_cast<std::size_t>(n) * n;
    magma::Table table(cells, 0);
    while (true) {
      magma::Algebra algebra(n, table);
      for (std::size_t v = 0; v < variants.size(); ++v)
        signature[v] += magma::satisfies(algebra, variants[v]) ? '1' : '0';
      std::size_t i = cells;
      bool carried = true;
      while (i > 0 && carried) {
        --i;
        if (++table[i] < n) {
          carried = false;
        } else {
          table[i] = 0;
        }
      }
      if (carried) break;
    }
  }
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t v = 0; v < variants.size(); ++v)
    groups[signature[v]].push_back(v);
  // Order groups by their first member for stable output.
  std::vector<std::vector<std::size_t>> out;
  for (auto& [sig, members] : groups) out.push_back(members);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

int run_hosszu(const HosszuArgs& args) {
  std::vector<magma::Identity> variants = magma::hosszu_variants();
  std::vector<magma::VariantClass> classes = magma::classify_variants(variants);

  std::vector<std::size_t> class_of(variants.size(), 0);
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (std::size_t member : classes[c].members) class_of[member] = c + 1;

  for (std::size_t mask = 0; mask < variants.size(); ++mask) {
    std::cout << "mask " << magma::hosszu_mask_text(static_cast<unsigned>(mask))
              << "  " << magma::to_text(variants[mask]) << "  class "
              << class_of[mask] << "\n";
  }
  std::cout << "classes " << classes.size() << "\n";
  for (std::size_t c = 0; c < classes.size(); ++c) {
    std::cout << "class " << c + 1 << ": masks";
    for (std::size_t member : classes[c].members)
      std::cout << ' '
                << magma::hosszu_mask_text(static_cast<unsigned>(member));
    std::cout << "  rep " << magma::to_text(classes[c].representative) << "\n";
  }

  if (args.semantic) {
    if (args.order < 1 || args.order > 3) {
      std::cerr << "error: --semantic supports --order 1..3\n";
      return kUsage;
    }
    auto groups = semantic_groups(variants, args.order);
    std::cout << "semantic-order " << args.order << "\n";
    std::cout << "semantic-classes " << groups.size() << "\n";
    for (std::size_t g = 0; g < groups.size(); ++g) {
      std::cout << "semantic " << g + 1 << ": masks";
      for (std::size_t member : groups[g])
        std::cout << ' '
                  << magma::hosszu_mask_text(static_cast<unsigned>(member));
      std::cout << "\n";
    }
  }
  return kOk;
}

struct VerifyArgs {
  std::string id;
  int max_order = 0;
  std::uint64_t budget = 0;
  int parallel = 1;
  std::string table;
};

int run_verify(const VerifyArgs& args) {
  const magma::LemmaSpec* lemma = magma::find_lemma(args.id);
  if (!lemma) {
    std::cerr << "error: unknown lemma id '" << args.id << "'\n";
    return kUsage;
  }

  if (!args.table.empty()) {
    magma::Algebra model = magma::read_table_file(args.table);
    magma::ModelCheck check = magma::check_on_model(*lemma, model);
    for (const auto& [text, ok] : check.hypotheses)
      std::cout << "hypothesis " << text << (ok ? " ok" : " FAIL") << "\n";
    for (const auto& [text, ok] : check.conclusions)
      std::cout << "conclusion " << text << (ok ? " ok" : " FAIL") << "\n";
    return check.all_hold() ? kOk : kRefuted;
  }

  magma::VerifyOptions options;
  options.max_order = args.max_order;
  options.budget = args.budget;
  options.threads = args.parallel;
  magma::VerificationReport report = magma::verify(args.id, options);
  std::cout << magma::report_line(report) << "\n";
  if (report.model) {
    std::cout << "# " << (report.outcome == magma::VerifyOutcome::witnessed
                              ? "witness model"
                              : "counterexample")
              << "\n";
    magma::write_table(*report.model, std::cout);
  }
  if (!report.violated.empty())
    std::cout << "violated " << report.violated << "\n";
  if (report.witness)
    std::cout << "witness " << report.witness->to_text() << "\n";

  switch (report.outcome) {
    case magma::VerifyOutcome::verified:
    case magma::VerifyOutcome::witnessed:
      return kOk;
    case magma::VerifyOutcome::counterexample:
    case magma::VerifyOutcome::no_witness:
      return kRefuted;
    case magma::VerifyOutcome::inconclusive:
      return kInconclusive;
  }
  return kUsage;
}

struct VerifyAllArgs {
  int max_order = 0;
  std::uint64_t budget = 0;
  int parallel = 1;
  std::string report_path;
};

int run_verify_all(const VerifyAllArgs& args) {
  magma::VerifyOptions options;
  options.max_order = args.max_order;
  options.budget = args.budget;
  options.threads = args.parallel;
  std::vector<magma::VerificationReport> reports = magma::verify_all(options);

  int verified = 0, witnessed = 0, failed = 0, inconclusive = 0;
  double total_ms = 0;
  for (const auto& report : reports) {
    std::cout << magma::report_line(report) << "\n";
    total_ms += report.millis;
    switch (report.outcome) {
      case magma::VerifyOutcome::verified:
        ++verified;
        break;
      case magma::VerifyOutcome::witnessed:
        ++witnessed;
        break;
      case magma::VerifyOutcome::inconclusive:
        ++inconclusive;
        break;
      default:
        ++failed;
        break;
    }
  }
  std::cout << "catalog " << reports.size() << " verified " << verified
            << " witnessed " << witnessed << " failed " << failed
            << " inconclusive " << inconclusive << " millis "
            << static_cast<std::uint64_t>(total_ms + 0.5) << "\n";

  if (!args.report_path.empty()) {
    std::ofstream out(args.report_path);
    if (!out) {
      std::cerr << "error: cannot open '" << args.report_path
                << "' for writing\n";
      return kBadInput;
    }
    magma::write_report_blocks(reports, out);
  }
  if (failed) return kRefuted;
  if (inconclusive) return kInconclusive;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "magma: a finite-model workbench for binary groupoids.\n"
      "Parses identities over (*, \\, /), checks operation tables, "
      "enumerates finite models under constraints, and verifies the lemma "
      "catalog by exhaustive search."};
  app.require_subcommand(1);

  ParseArgs parse_args;
  auto* cmd_parse = app.add_subcommand("parse", "parse and print identities");
  cmd_parse->add_option("--id", parse_args.id, "identity text");
  cmd_parse->add_option("--file", parse_args.file,
                        "identity file, one identity per line");

  CheckArgs check_args;
  auto* cmd_check =
      app.add_subcommand("check", "check identities/properties on a table");
  cmd_check->add_option("--table", check_args.table, "table file")->required();
  cmd_check->add_option("--id", check_args.ids, "identity to check");
  cmd_check->add_option("--prop", check_args.props,
                        "structural property, '!' prefix negates");
  cmd_check->add_flag("--report", check_args.report,
                      "print the full property report");

  SearchArgs search_args;
  auto* cmd_search =
      app.add_subcommand("search", "enumerate models of a constraint set");
  cmd_search->add_option("--order", search_args.order, "carrier size")
      ->required();
  cmd_search->add_option("--constraints", search_args.constraints,
                         "constraint list, e.g. id:\"...\", prop:!commutative");
  cmd_search->add_option("--mode", search_args.mode, "first|all|count");
  cmd_search->add_flag("--up-to-iso", search_args.up_to_iso,
                       "emit canonical forms and count orbits");
  cmd_search->add_option("--parallel", search_args.parallel, "worker threads");
  cmd_search->add_option("--budget", search_args.budget, "node budget");

  SearchArgs count_args;
  count_args.count_only = true;
  auto* cmd_count = app.add_subcommand("count", "count models");
  cmd_count->add_option("--order", count_args.order, "carrier size")
      ->required();
  cmd_count->add_option("--constraints", count_args.constraints,
                        "constraint list");
  cmd_count->add_flag("--up-to-iso", count_args.up_to_iso, "count orbits");
  cmd_count->add_option("--parallel", count_args.parallel, "worker threads");
  cmd_count->add_option("--budget", count_args.budget, "node budget");

  HosszuArgs hosszu_args;
  auto* cmd_hosszu = app.add_subcommand(
      "hosszu", "the 16 neighbor-swap variants of the associative law");
  cmd_hosszu->add_flag("--semantic", hosszu_args.semantic,
                       "also group variants by model-equivalence");
  cmd_hosszu->add_option("--order", hosszu_args.order,
                         "bound for --semantic (1..3)");

  VerifyArgs verify_args;
  auto* cmd_verify = app.add_subcommand("verify", "verify one catalog lemma");
  cmd_verify->add_option("id", verify_args.id, "lemma id")->required();
  cmd_verify->add_option("--max-order", verify_args.max_order,
                         "order bound (default: the lemma's)");
  cmd_verify->add_option("--budget", verify_args.budget, "node budget");
  cmd_verify->add_option("--parallel", verify_args.parallel, "worker threads");
  cmd_verify->add_option("--table", verify_args.table,
                         "check the lemma on this table instead of searching");

  VerifyAllArgs verify_all_args;
  auto* cmd_verify_all =
      app.add_subcommand("verify-all", "verify the whole catalog");
  cmd_verify_all->add_option("--max-order", verify_all_args.max_order,
                             "order bound for every lemma");
  cmd_verify_all->add_option("--budget", verify_all_args.budget,
                             "node budget per lemma");
  cmd_verify_all->add_option("--parallel", verify_all_args.parallel,
                             "lemmas verified in parallel");
  cmd_verify_all->add_option("--report", verify_all_args.report_path,
                             "write the machine-readable report here");

  int rc = kOk;
  cmd_parse->callback([&]() { rc = run_parse(parse_args); });
  cmd_check->callback([&]() { rc = run_check(check_args); });
  cmd_search->callback([&]() { rc = run_search(search_args); });
  cmd_count->callback([&]() { rc = run_search(count_args); });
  cmd_hosszu->callback([&]() { rc = run_hosszu(hosszu_args); });
  cmd_verify->callback([&]() { rc = run_verify(verify_args); });
  cmd_verify_all->callback([&]() { rc = run_verify_all(verify_all_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const magma::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    std::cerr << "expected:";
    for (const auto& t : e.expected()) std::cerr << " " << t;
    std::cerr << "\n";
    return kBadInput;
  } catch (const magma::TableFormatError& e) {
    std::cerr << "table format error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return rc;
}
