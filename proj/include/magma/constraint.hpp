// constraint.hpp — identities and structural predicates as search constraints
//
// Text form (comma separated; commas inside quotes do not split):
//
//   id:"x * (z * y) = (x * y) * z", prop:right_division, prop:!commutative
//
// A '!' directly after the colon negates the constraint.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "magma/algebra.hpp"
#include "magma/term.hpp"

namespace magma {

enum class StructuralProperty {
  left_cancellative,
  right_cancellative,
  left_division,
  right_division,
  commutative,
  associative,
  has_left_identity,
  has_right_identity,
  has_two_sided_identity,
  quasigroup,
  surjective_product,  // the set {x*y} covers the carrier
};

const char* property_name(StructuralProperty p);
std::optional<StructuralProperty> property_from_name(const std::string& name);

struct Constraint {
  enum class Kind { identity, structural };

  Kind kind;
  std::optional<Identity> identity;  // kind == identity
  StructuralProperty property = StructuralProperty::associative;
  bool negated = false;

  static Constraint holds(Identity ident);
  static Constraint fails(Identity ident);
  static Constraint holds(StructuralProperty p);
  static Constraint fails(StructuralProperty p);

  // Operation symbols the constraint mentions (structural predicates only
  // ever reference *).
  void collect_ops(bool used[kOpCount]) const;

  std::string to_text() const;
};

std::vector<Constraint> parse_constraints(const std::string& text);
std::string constraints_text(const std::vector<Constraint>& constraints);

// Complete-table check.  Returns the witness of the violation when the
// constraint does not hold; negated constraints that fail (the underlying
// property holds everywhere) yield a witness with an empty assignment.
std::optional<Witness> find_constraint_violation(const Algebra& algebra,
                                                 const Constraint& constraint);
bool satisfies(const Algebra& algebra, const Constraint& constraint);
bool satisfies_all(const Algebra& algebra,
                   const std::vector<Constraint>& constraints);

}  // namespace magma
