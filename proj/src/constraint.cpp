#include "magma/constraint.hpp"

#include <array>
#include <stdexcept>

namespace magma {

namespace {

struct PropertyEntry {
  StructuralProperty property;
  const char* name;
};

constexpr std::array<PropertyEntry, 11> kProperties = {{
    {StructuralProperty::left_cancellative, "left_cancellative"},
    {StructuralProperty::right_cancellative, "right_cancellative"},
    {StructuralProperty::left_division, "left_division"},
    {StructuralProperty::right_division, "right_division"},
    {StructuralProperty::commutative, "commutative"},
    {StructuralProperty::associative, "associative"},
    {StructuralProperty::has_left_identity, "has_left_identity"},
    {StructuralProperty::has_right_identity, "has_right_identity"},
    {StructuralProperty::has_two_sided_identity, "has_two_sided_identity"},
    {StructuralProperty::quasigroup, "quasigroup"},
    {StructuralProperty::surjective_product, "surjective_product"},
}};

}  // namespace

const char* property_name(StructuralProperty p) {
  for (const auto& e : kProperties)
    if (e.property == p) return e.name;
  return "?";
}

std::optional<StructuralProperty> property_from_name(const std::string& name) {
  for (const auto& e : kProperties)
    if (name == e.name) return e.property;
  return std::nullopt;
}

Constraint Constraint::holds(Identity ident) {
  Constraint c;
  c.kind = Kind::identity;
  c.identity = std::move(ident);
  return c;
}

Constraint Constraint::fails(Identity ident) {
  Constraint c = holds(std::move(ident));
  c.negated = true;
  return c;
}

Constraint Constraint::holds(StructuralProperty p) {
  Constraint c;
  c.kind = Kind::structural;
  c.property = p;
  return c;
}

Constraint Constraint::fails(StructuralProperty p) {
  Constraint c = holds(p);
  c.negated = true;
  return c;
}

void Constraint::collect_ops(bool used[kOpCount]) const {
  used[op_index(Op::mul)] = true;
  if (kind == Kind::identity) identity->collect_ops(used);
}

std::string Constraint::to_text() const {
  std::string neg = negated ? "!" : "";
  if (kind == Kind::identity)
    return "id:" + neg + "\"" + magma::to_text(*identity) + "\"";
  return "prop:" + neg + property_name(property);
}

std::vector<Constraint> parse_constraints(const std::string& text) {
  std::vector<Constraint> out;
  std::size_t pos = 0;
  const std::size_t size = text.size();

  auto skip_blank = [&] {
    while (pos < size && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };

  while (true) {
    skip_blank();
    if (pos >= size) break;

    bool negated = false;
    auto take_prefix = [&](const char* prefix) {
      std::size_t len = std::string(prefix).size();
      if (text.compare(pos, len, prefix) == 0) {
        pos += len;
        return true;
      }
      return false;
    };

    if (take_prefix("id:")) {
      skip_blank();
      if (pos < size && text[pos] == '!') {
        negated = true;
        ++pos;
        skip_blank();
      }
      if (pos >= size || text[pos] != '"')
        throw ParseError("expected quoted identity after id:", pos, {"\""});
      ++pos;
      std::size_t close = text.find('"', pos);
      if (close == std::string::npos)
        throw ParseError("unterminated identity quote", pos, {"\""});
      Identity ident = parse_identity(text.substr(pos, close - pos));
      pos = close + 1;
      out.push_back(negated ? Constraint::fails(std::move(ident))
                            : Constraint::holds(std::move(ident)));
    } else if (take_prefix("prop:")) {
      skip_blank();
      if (pos < size && text[pos] == '!') {
        negated = true;
        ++pos;
        skip_blank();
      }
      std::size_t start = pos;
      while (pos < size && text[pos] != ',' && text[pos] != ' ' &&
             text[pos] != '\t')
        ++pos;
      std::string name = text.substr(start, pos - start);
      auto p = property_from_name(name);
      if (!p)
        throw ParseError("unknown structural property '" + name + "'", start,
                         {"property name"});
      out.push_back(negated ? Constraint::fails(*p) : Constraint::holds(*p));
    } else {
      throw ParseError("expected 'id:' or 'prop:'", pos, {"id:", "prop:"});
    }

    skip_blank();
    if (pos >= size) break;
    if (text[pos] != ',')
      throw ParseError("expected ',' between constraints", pos, {","});
    ++pos;
  }
  return out;
}

std::string constraints_text(const std::vector<Constraint>& constraints) {
  std::string out;
  for (const auto& c : constraints) {
    if (!out.empty()) out += ", ";
    out += c.to_text();
  }
  return out;
}

namespace {

// First failure of a structural predicate, as an element tuple.
std::optional<Witness> property_violation(const Algebra& a,
                                          StructuralProperty p) {
  const int n = a.order();
  const char* name = property_name(p);
  switch (p) {
    case StructuralProperty::left_cancellative:
      for (int i = 0; i < n; ++i)
        for (int x = 0; x < n; ++x)
          for (int y = x + 1; y < n; ++y)
            if (a.at(Op::mul, i, x) == a.at(Op::mul, i, y))
              return Witness{name, {{"a", i}, {"x", x}, {"y", y}}};
      return std::nullopt;
    case StructuralProperty::right_cancellative:
      for (int j = 0; j < n; ++j)
        for (int x = 0; x < n; ++x)
          for (int y = x + 1; y < n; ++y)
            if (a.at(Op::mul, x, j) == a.at(Op::mul, y, j))
              return Witness{name, {{"a", j}, {"x", x}, {"y", y}}};
      return std::nullopt;
    case StructuralProperty::left_division:
      for (int i = 0; i < n; ++i)
        for (int y = 0; y < n; ++y) {
          bool hit = false;
          for (int x = 0; x < n; ++x)
            if (a.at(Op::mul, i, x) == y) {
              hit = true;
              break;
            }
          if (!hit) return Witness{name, {{"a", i}, {"y", y}}};
        }
      return std::nullopt;
    case StructuralProperty::right_division:
      for (int j = 0; j < n; ++j)
        for (int y = 0; y < n; ++y) {
          bool hit = false;
          for (int x = 0; x < n; ++x)
            if (a.at(Op::mul, x, j) == y) {
              hit = true;
              break;
            }
          if (!hit) return Witness{name, {{"a", j}, {"y", y}}};
        }
      return std::nullopt;
    case StructuralProperty::commutative:
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (a.at(Op::mul, x, y) != a.at(Op::mul, y, x))
            return Witness{name, {{"x", x}, {"y", y}}};
      return std::nullopt;
    case StructuralProperty::associative:
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          for (int z = 0; z < n; ++z)
            if (a.at(Op::mul, x, a.at(Op::mul, y, z)) !=
                a.at(Op::mul, a.at(Op::mul, x, y), z))
              return Witness{name, {{"x", x}, {"y", y}, {"z", z}}};
      return std::nullopt;
    case StructuralProperty::has_left_identity: {
      PropertyReport r = property_report(a);
      if (r.left_identities.empty()) return Witness{name, {}};
      return std::nullopt;
    }
    case StructuralProperty::has_right_identity: {
      PropertyReport r = property_report(a);
      if (r.right_identities.empty()) return Witness{name, {}};
      return std::nullopt;
    }
    case StructuralProperty::has_two_sided_identity: {
      PropertyReport r = property_report(a);
      if (!r.two_sided_identity) return Witness{name, {}};
      return std::nullopt;
    }
    case StructuralProperty::quasigroup:
      for (StructuralProperty part :
           {StructuralProperty::left_cancellative,
            StructuralProperty::right_cancellative,
            StructuralProperty::left_division,
            StructuralProperty::right_division})
        if (auto w = property_violation(a, part)) {
          w->subject = name;
          return w;
        }
      return std::nullopt;
    case StructuralProperty::surjective_product: {
      std::vector<bool> seen(static_cast<std::size_t>(n), false);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          seen[static_cast<std::size_t>(a.at(Op::mul, x, y))] = true;
      for (int v = 0; v < n; ++v)
        if (!seen[static_cast<std::size_t>(v)])
          return Witness{name, {{"missing", v}}};
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Witness> find_constraint_violation(const Algebra& algebra,
                                                 const Constraint& c) {
  std::optional<Witness> w;
  if (c.kind == Constraint::Kind::identity)
    w = find_violation(algebra, *c.identity);
  else
    w = property_violation(algebra, c.property);

  if (!c.negated) return w;
  // Negated: the constraint is violated exactly when the underlying
  // property holds everywhere; there is no finite witness to report.
  if (w) return std::nullopt;
  return Witness{c.to_text(), {}};
}

bool satisfies(const Algebra& algebra, const Constraint& constraint) {
  return !find_constraint_violation(algebra, constraint).has_value();
}

bool satisfies_all(const Algebra& algebra,
                   const std::vector<Constraint>& constraints) {
  for (const auto& c : constraints)
    if (!satisfies(algebra, c)) return false;
  return true;
}

}  // namespace magma
