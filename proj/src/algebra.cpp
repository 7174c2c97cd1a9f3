#include "magma/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace magma {

Algebra::Algebra(int order) : order_(order) {
  if (order < 1) throw std::invalid_argument("algebra order must be positive");
}

Algebra::Algebra(int order, Table mul) : Algebra(order) {
  set_table(Op::mul, std::move(mul));
}

const Table& Algebra::table(Op op) const {
  const auto& slot = tables_[op_index(op)];
  if (!slot)
    throw std::invalid_argument(std::string("no table for operation '") +
                                op_symbol(op) + "'");
  return *slot;
}

void Algebra::set_table(Op op, Table table) {
  const std::size_t expected =
      static_cast<std::size_t>(order_) * static_cast<std::size_t>(order_);
  if (table.size() != expected)
    throw std::invalid_argument("table size does not match algebra order");
  for (int v : table)
    if (v < 0 || v >= order_)
      throw std::invalid_argument("table entry out of range");
  tables_[op_index(op)] = std::move(table);
}

bool Algebra::operator==(const Algebra& other) const {
  if (order_ != other.order_) return false;
  for (int t = 0; t < kOpCount; ++t)
    if (tables_[t] != other.tables_[t]) return false;
  return true;
}

std::string Witness::to_text() const {
  std::string out;
  for (const auto& [name, value] : assignment) {
    if (!out.empty()) out += ' ';
    out += name + "=" + std::to_string(value);
  }
  return out;
}

std::string Witness::values_csv() const {
  std::string out;
  for (const auto& [name, value] : assignment) {
    if (!out.empty()) out += ',';
    out += std::to_string(value);
  }
  return out;
}

namespace {

int lookup(const Assignment& assignment, const std::string& name) {
  for (const auto& [var, value] : assignment)
    if (var == name) return value;
  throw std::invalid_argument("unbound variable '" + name + "'");
}

}  // namespace

int eval_term(const Algebra& algebra, const Term& term,
              const Assignment& assignment) {
  if (term.is_variable()) return lookup(assignment, term.variable_name());
  int l = eval_term(algebra, term.left(), assignment);
  int r = eval_term(algebra, term.right(), assignment);
  return algebra.at(term.op(), l, r);
}

std::optional<Witness> find_violation(const Algebra& algebra,
                                      const Identity& identity) {
  const std::vector<std::string> vars = identity.variables();
  const int n = algebra.order();
  Assignment assignment;
  assignment.reserve(vars.size());
  for (const auto& v : vars) assignment.emplace_back(v, 0);

  // Make sure all referenced tables exist before iterating.
  bool used[kOpCount] = {};
  identity.collect_ops(used);
  for (int t = 0; t < kOpCount; ++t)
    if (used[t]) (void)algebra.table(static_cast<Op>(t));

  while (true) {
    if (eval_term(algebra, identity.lhs, assignment) !=
        eval_term(algebra, identity.rhs, assignment))
      return Witness{to_text(identity), assignment};
    // Odometer: last variable varies fastest, so assignments come out in
    // lexicographic order over the canonical variable order.
    std::size_t i = assignment.size();
    while (i > 0) {
      --i;
      if (++assignment[i].second < n) break;
      assignment[i].second = 0;
      if (i == 0) return std::nullopt;
    }
    if (assignment.empty()) return std::nullopt;  // ground identity, checked once
  }
}

bool satisfies(const Algebra& algebra, const Identity& identity) {
  return !find_violation(algebra, identity).has_value();
}

PropertyReport property_report(const Algebra& algebra) {
  const int n = algebra.order();
  PropertyReport r;
  r.left_cancellative = true;
  r.right_cancellative = true;
  r.left_division = true;
  r.right_division = true;

  // Rows: injectivity and surjectivity of each left translation.
  for (int i = 0; i < n; ++i) {
    std::vector<int> count(static_cast<std::size_t>(n), 0);
    for (int j = 0; j < n; ++j) ++count[static_cast<std::size_t>(algebra.at(Op::mul, i, j))];
    for (int v = 0; v < n; ++v) {
      if (count[static_cast<std::size_t>(v)] > 1) r.left_cancellative = false;
      if (count[static_cast<std::size_t>(v)] == 0) r.left_division = false;
    }
  }
  // Columns: the right translations.
  for (int j = 0; j < n; ++j) {
    std::vector<int> count(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) ++count[static_cast<std::size_t>(algebra.at(Op::mul, i, j))];
    for (int v = 0; v < n; ++v) {
      if (count[static_cast<std::size_t>(v)] > 1) r.right_cancellative = false;
      if (count[static_cast<std::size_t>(v)] == 0) r.right_division = false;
    }
  }
  r.quasigroup_like = r.left_cancellative && r.right_cancellative &&
                      r.left_division && r.right_division;

  r.commutative = true;
  for (int i = 0; i < n && r.commutative; ++i)
    for (int j = i + 1; j < n; ++j)
      if (algebra.at(Op::mul, i, j) != algebra.at(Op::mul, j, i)) {
        r.commutative = false;
        break;
      }

  r.associative = true;
  for (int x = 0; x < n && r.associative; ++x)
    for (int y = 0; y < n && r.associative; ++y)
      for (int z = 0; z < n; ++z)
        if (algebra.at(Op::mul, x, algebra.at(Op::mul, y, z)) !=
            algebra.at(Op::mul, algebra.at(Op::mul, x, y), z)) {
          r.associative = false;
          break;
        }

  for (int f = 0; f < n; ++f) {
    bool left = true, right = true;
    for (int x = 0; x < n; ++x) {
      if (algebra.at(Op::mul, f, x) != x) left = false;
      if (algebra.at(Op::mul, x, f) != x) right = false;
    }
    if (left) r.left_identities.push_back(f);
    if (right) r.right_identities.push_back(f);
  }
  for (int e : r.left_identities)
    if (std::find(r.right_identities.begin(), r.right_identities.end(), e) !=
        r.right_identities.end()) {
      r.two_sided_identity = e;
      break;
    }

  r.abelian_group = r.quasigroup_like && r.associative && r.commutative &&
                    r.two_sided_identity.has_value();
  return r;
}

namespace {

// Candidate values for each companion cell.  For the left companion, cell
// (x, y) of \ may hold any z with x * z = y; when no such z exists (a row
// that is neither injective nor surjective cannot occur under the
// preconditions on a finite carrier) the cell is only reachable through the
// recovery law, which leaves it free.
std::vector<std::vector<int>> left_candidates(const Algebra& a) {
  const int n = a.order();
  std::vector<std::vector<int>> cand(
      static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x)
    for (int z = 0; z < n; ++z)
      cand[static_cast<std::size_t>(x) * static_cast<std::size_t>(n) +
           static_cast<std::size_t>(a.at(Op::mul, x, z))]
          .push_back(z);
  return cand;
}

std::vector<std::vector<int>> right_candidates(const Algebra& a) {
  const int n = a.order();
  // Cell (y, x) of / may hold any z with z * x = y.
  std::vector<std::vector<int>> cand(
      static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x)
    for (int z = 0; z < n; ++z)
      cand[static_cast<std::size_t>(a.at(Op::mul, z, x)) *
               static_cast<std::size_t>(n) +
           static_cast<std::size_t>(x)]
          .push_back(z);
  return cand;
}

Table pick_least(const std::vector<std::vector<int>>& cand, int n,
                 const char* side) {
  Table t(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (std::size_t c = 0; c < t.size(); ++c) {
    if (cand[c].empty())
      throw std::invalid_argument(std::string(side) +
                                  " companion cell has no valid value");
    t[c] = cand[c].front();
  }
  return t;
}

std::vector<Table> product_tables(const std::vector<std::vector<int>>& cand,
                                  int n) {
  std::vector<Table> out;
  Table current(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (const auto& c : cand)
    if (c.empty()) return out;

  const std::size_t cells = current.size();
  std::vector<std::size_t> pick(cells, 0);
  while (true) {
    for (std::size_t i = 0; i < cells; ++i) current[i] = cand[i][pick[i]];
    out.push_back(current);
    if (out.size() > 4096)
      throw std::invalid_argument("companion family unreasonably large");
    std::size_t i = cells;
    bool carried = true;
    while (i > 0 && carried) {
      --i;
      if (++pick[i] < cand[i].size()) {
        carried = false;
      } else {
        pick[i] = 0;
      }
    }
    if (carried) break;
  }
  return out;
}

}  // namespace

Algebra left_companion(const Algebra& algebra) {
  PropertyReport r = property_report(algebra);
  if (!r.left_division && !r.left_cancellative)
    throw std::invalid_argument(
        "left companion requires a left division or left cancellative table");
  Algebra out = algebra;
  out.set_table(Op::ldiv, pick_least(left_candidates(algebra), algebra.order(),
                                     "left"));
  return out;
}

Algebra right_companion(const Algebra& algebra) {
  PropertyReport r = property_report(algebra);
  if (!r.right_division && !r.right_cancellative)
    throw std::invalid_argument(
        "right companion requires a right division or right cancellative "
        "table");
  Algebra out = algebra;
  out.set_table(Op::rdiv, pick_least(right_candidates(algebra),
                                     algebra.order(), "right"));
  return out;
}

std::vector<Table> all_left_companions(const Algebra& algebra) {
  PropertyReport r = property_report(algebra);
  if (!r.left_division && !r.left_cancellative)
    throw std::invalid_argument(
        "left companions require a left division or left cancellative table");
  return product_tables(left_candidates(algebra), algebra.order());
}

std::vector<Table> all_right_companions(const Algebra& algebra) {
  PropertyReport r = property_report(algebra);
  if (!r.right_division && !r.right_cancellative)
    throw std::invalid_argument(
        "right companions require a right division or right cancellative "
        "table");
  return product_tables(right_candidates(algebra), algebra.order());
}

namespace {

std::vector<int> relabel_key(const Algebra& a, const std::vector<int>& p) {
  const int n = a.order();
  std::vector<int> key;
  for (int t = 0; t < kOpCount; ++t) {
    Op op = static_cast<Op>(t);
    if (!a.has(op)) continue;
    std::vector<int> table(static_cast<std::size_t>(n) *
                           static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        table[static_cast<std::size_t>(p[static_cast<std::size_t>(i)]) *
                  static_cast<std::size_t>(n) +
              static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] =
            p[static_cast<std::size_t>(a.at(op, i, j))];
    key.insert(key.end(), table.begin(), table.end());
  }
  return key;
}

}  // namespace

Algebra canonical_form(const Algebra& algebra) {
  const int n = algebra.order();
  if (n > 8)
    throw std::invalid_argument("canonical form supported up to order 8");
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<int> best = relabel_key(algebra, p);
  while (std::next_permutation(p.begin(), p.end())) {
    std::vector<int> key = relabel_key(algebra, p);
    if (key < best) best = key;
  }
  Algebra out(n);
  std::size_t offset = 0;
  const std::size_t cells =
      static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  for (int t = 0; t < kOpCount; ++t) {
    Op op = static_cast<Op>(t);
    if (!algebra.has(op)) continue;
    out.set_table(op, Table(best.begin() + static_cast<std::ptrdiff_t>(offset),
                            best.begin() +
                                static_cast<std::ptrdiff_t>(offset + cells)));
    offset += cells;
  }
  return out;
}

bool is_isomorphic(const Algebra& a, const Algebra& b) {
  if (a.order() != b.order()) return false;
  for (int t = 0; t < kOpCount; ++t)
    if (a.has(static_cast<Op>(t)) != b.has(static_cast<Op>(t))) return false;
  return canonical_form(a) == canonical_form(b);
}

}  // namespace magma
