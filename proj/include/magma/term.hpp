// term.hpp — terms and identities over the signature (*, \, /)
//
// A Term is an immutable binary tree: leaves are variables, internal nodes
// apply one of the three fixed operations.  An Identity is a pair of terms,
// implicitly universally quantified over every variable that occurs on
// either side.  Everything in this header is a pure value; instances can be
// shared freely across threads.

#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace magma {

enum class Op : std::uint8_t { mul = 0, ldiv = 1, rdiv = 2 };

inline constexpr int kOpCount = 3;

constexpr char op_symbol(Op op) {
  switch (op) {
    case Op::mul:
      return '*';
    case Op::ldiv:
      return '\\';
    case Op::rdiv:
      return '/';
  }
  return '?';
}

constexpr int op_index(Op op) { return static_cast<int>(op); }

class Term {
 public:
  static Term variable(std::string name);
  static Term apply(Op op, Term left, Term right);

  bool is_variable() const { return node_->leaf; }
  bool is_application() const { return !node_->leaf; }

  const std::string& variable_name() const;
  Op op() const;
  Term left() const;
  Term right() const;

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }

  // Variables in order of first occurrence (preorder, left before right).
  std::vector<std::string> variables() const;
  void collect_variables(std::vector<std::string>& out) const;

  // Which operation symbols occur in the tree.
  void collect_ops(bool used[kOpCount]) const;

  std::size_t node_count() const;

 private:
  struct Node {
    bool leaf;
    Op op;
    std::string name;  // leaf only
    std::shared_ptr<const Node> left, right;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static bool equal(const Node& a, const Node& b);

  std::shared_ptr<const Node> node_;
};

struct Identity {
  Term lhs;
  Term rhs;

  bool operator==(const Identity& other) const {
    return lhs == other.lhs && rhs == other.rhs;
  }
  bool operator!=(const Identity& other) const { return !(*this == other); }

  // Union of both sides' variables, first occurrence order (lhs before rhs).
  std::vector<std::string> variables() const;
  void collect_ops(bool used[kOpCount]) const;
};

// Raised on malformed identity or term text.  Carries the byte offset of the
// offending token and the set of tokens that would have been accepted there.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t offset,
             std::vector<std::string> expected);

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

// Grammar (ASCII, whitespace between tokens insignificant):
//
//   identity := term "=" term
//   term     := app | atom            -- a side may omit its outer parentheses
//   app      := atom op atom
//   atom     := var | "(" atom op atom ")"
//   op       := "*" | "\" | "/"
//   var      := [a-z][a-z0-9]*
//
// Nested applications must be parenthesized explicitly; there is no
// precedence among the three operations.
Term parse_term(std::string_view text);
Identity parse_identity(std::string_view text);

// One identity per line; blank lines and lines starting with '#' skipped.
std::vector<Identity> parse_identity_lines(std::string_view text);

// Fully parenthesized rendering; an application at the top of a side drops
// its outer parentheses.  parse(to_text(x)) == x.
std::string to_text(const Term& term);
std::string to_text(const Identity& identity);

// Rename variables to v1, v2, ... in order of first occurrence (lhs then
// rhs).  Idempotent, and invariant under prior renaming.
Identity canonicalize(const Identity& identity);

// Swap the two arguments of every application, recursively.  Involution.
Term dual(const Term& term);
Identity dual(const Identity& identity);

// The 16 identities obtained from the associative law x*(y*z) = (x*y)*z by
// independently swapping the argument pair of each of its four products.
// Index = bitmask over (lhs-outer, lhs-inner, rhs-outer, rhs-inner), with
// lhs-outer in the least significant bit; mask 0 is the associative law
// itself.
std::vector<Identity> hosszu_variants();

// Render a variant mask as a 4-character string in tuple order
// (lhs-outer, lhs-inner, rhs-outer, rhs-inner).
std::string hosszu_mask_text(unsigned mask);

// Partition of the input under the group generated by variable renaming,
// swapping the two sides, and dualization.  Class representatives are the
// lexicographically least canonical forms; classes are ordered by
// representative text and members by input position.
struct VariantClass {
  Identity representative;
  std::vector<std::size_t> members;
};

std::vector<VariantClass> classify_variants(
    const std::vector<Identity>& identities);

// The named laws used throughout the workbench.
namespace laws {
inline constexpr std::string_view associativity = "x * (y * z) = (x * y) * z";
inline constexpr std::string_view grassmann = "x * (y * z) = z * (y * x)";
inline constexpr std::string_view left_permutable =
    "x * (y * z) = y * (x * z)";
inline constexpr std::string_view cyclic = "x * (y * z) = (z * x) * y";
inline constexpr std::string_view tarski = "x * (z * y) = (x * y) * z";
inline constexpr std::string_view left_invertible =
    "(x * y) * z = (z * y) * x";

// Division laws tying * to \ and /.
inline constexpr std::string_view ldiv_cancel = "x * (x \\ y) = y";
inline constexpr std::string_view rdiv_cancel = "(y / x) * x = y";
inline constexpr std::string_view ldiv_recover = "x \\ (x * y) = y";
inline constexpr std::string_view rdiv_recover = "(y * x) / x = y";
inline constexpr std::string_view div_link_left = "(x / y) \\ x = y";
inline constexpr std::string_view div_link_right = "y / (x \\ y) = x";
}  // namespace laws

}  // namespace magma
