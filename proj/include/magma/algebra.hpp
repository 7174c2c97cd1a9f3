// algebra.hpp — finite groupoids as operation tables
//
// An Algebra is a carrier {0..n-1} with a row-major n*n table per operation
// symbol; the * table is mandatory, \ and / optional.  Values are immutable
// once constructed and safe to share across threads.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "magma/term.hpp"

namespace magma {

using Table = std::vector<int>;  // row-major, order*order entries in 0..order-1

class Algebra {
 public:
  explicit Algebra(int order);
  Algebra(int order, Table mul);

  int order() const { return order_; }
  bool has(Op op) const { return tables_[op_index(op)].has_value(); }
  const Table& table(Op op) const;
  int at(Op op, int i, int j) const {
    return (*tables_[op_index(op)])[static_cast<std::size_t>(i) *
                                        static_cast<std::size_t>(order_) +
                                    static_cast<std::size_t>(j)];
  }

  // Validates dimensions and entry range.
  void set_table(Op op, Table table);

  bool operator==(const Algebra& other) const;
  bool operator!=(const Algebra& other) const { return !(*this == other); }

 private:
  int order_;
  std::optional<Table> tables_[kOpCount];
};

// A variable assignment, in the identity's canonical variable order.
using Assignment = std::vector<std::pair<std::string, int>>;

// A concrete refutation: the identity or predicate that failed, plus the
// assignment (or element tuple) demonstrating the failure.
struct Witness {
  std::string subject;
  Assignment assignment;

  std::string to_text() const;    // "x=0 y=1"
  std::string values_csv() const; // "0,1"
};

int eval_term(const Algebra& algebra, const Term& term,
              const Assignment& assignment);

// Checks all n^k assignments in lexicographic order over the identity's
// variables; returns the first failing assignment, if any.
std::optional<Witness> find_violation(const Algebra& algebra,
                                      const Identity& identity);
bool satisfies(const Algebra& algebra, const Identity& identity);

struct PropertyReport {
  bool left_cancellative = false;
  bool right_cancellative = false;
  bool left_division = false;
  bool right_division = false;
  bool quasigroup_like = false;  // all four of the above
  bool commutative = false;
  bool associative = false;
  std::vector<int> left_identities;
  std::vector<int> right_identities;
  std::optional<int> two_sided_identity;
  bool abelian_group = false;
};

// Every flag is computed by its own row/column scan of the * table.
PropertyReport property_report(const Algebra& algebra);

// Companion division tables (Evans-style).  A left companion is a \ table
// with x * (x \ y) = y on a left division table and x \ (x * y) = y on a
// left cancellative one; right companions mirror this on columns with
// (y / x) * x = y and (y * x) / x = y.  Ties break to the least valid value.
// Throws std::invalid_argument when the input is neither division nor
// cancellative on the relevant side, or a cell admits no valid value.
Algebra left_companion(const Algebra& algebra);
Algebra right_companion(const Algebra& algebra);

// Every companion table consistent with the applicable laws.  On a finite
// carrier whose rows (columns) are bijective the list has exactly one member.
std::vector<Table> all_left_companions(const Algebra& algebra);
std::vector<Table> all_right_companions(const Algebra& algebra);

// Lexicographically least relabeling of the * table over all carrier
// permutations (other tables permuted consistently, used as tie-breakers).
Algebra canonical_form(const Algebra& algebra);
bool is_isomorphic(const Algebra& a, const Algebra& b);

}  // namespace magma
