#include "magma/term.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace magma {

Term Term::variable(std::string name) {
  auto node = std::make_shared<Node>();
  node->leaf = true;
  node->op = Op::mul;
  node->name = std::move(name);
  return Term(std::move(node));
}

Term Term::apply(Op op, Term left, Term right) {
  auto node = std::make_shared<Node>();
  node->leaf = false;
  node->op = op;
  node->left = std::move(left.node_);
  node->right = std::move(right.node_);
  return Term(std::move(node));
}

const std::string& Term::variable_name() const {
  if (!node_->leaf) throw std::logic_error("variable_name on application");
  return node_->name;
}

Op Term::op() const {
  if (node_->leaf) throw std::logic_error("op on variable");
  return node_->op;
}

Term Term::left() const {
  if (node_->leaf) throw std::logic_error("left on variable");
  return Term(node_->left);
}

Term Term::right() const {
  if (node_->leaf) throw std::logic_error("right on variable");
  return Term(node_->right);
}

bool Term::equal(const Node& a, const Node& b) {
  if (a.leaf != b.leaf) return false;
  if (a.leaf) return a.name == b.name;
  return a.op == b.op && equal(*a.left, *b.left) && equal(*a.right, *b.right);
}

bool Term::operator==(const Term& other) const {
  return node_ == other.node_ || equal(*node_, *other.node_);
}

void Term::collect_variables(std::vector<std::string>& out) const {
  if (node_->leaf) {
    if (std::find(out.begin(), out.end(), node_->name) == out.end())
      out.push_back(node_->name);
    return;
  }
  Term(node_->left).collect_variables(out);
  Term(node_->right).collect_variables(out);
}

std::vector<std::string> Term::variables() const {
  std::vector<std::string> out;
  collect_variables(out);
  return out;
}

void Term::collect_ops(bool used[kOpCount]) const {
  if (node_->leaf) return;
  used[op_index(node_->op)] = true;
  Term(node_->left).collect_ops(used);
  Term(node_->right).collect_ops(used);
}

std::size_t Term::node_count() const {
  if (node_->leaf) return 1;
  return 1 + Term(node_->left).node_count() + Term(node_->right).node_count();
}

std::vector<std::string> Identity::variables() const {
  std::vector<std::string> out;
  lhs.collect_variables(out);
  rhs.collect_variables(out);
  return out;
}

void Identity::collect_ops(bool used[kOpCount]) const {
  lhs.collect_ops(used);
  rhs.collect_ops(used);
}

ParseError::ParseError(std::string message, std::size_t offset,
                       std::vector<std::string> expected)
    : std::runtime_error(std::move(message)),
      offset_(offset),
      expected_(std::move(expected)) {}

namespace {

struct Token {
  enum class Kind { variable, op, lparen, rparen, equals, end };
  Kind kind;
  std::string text;
  Op op = Op::mul;
  std::size_t offset = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    Token tok;
    tok.offset = pos_;
    if (pos_ >= text_.size()) {
      tok.kind = Token::Kind::end;
      return tok;
    }
    char c = text_[pos_];
    switch (c) {
      case '(':
        ++pos_;
        tok.kind = Token::Kind::lparen;
        tok.text = "(";
        return tok;
      case ')':
        ++pos_;
        tok.kind = Token::Kind::rparen;
        tok.text = ")";
        return tok;
      case '=':
        ++pos_;
        tok.kind = Token::Kind::equals;
        tok.text = "=";
        return tok;
      case '*':
      case '\\':
      case '/':
        ++pos_;
        tok.kind = Token::Kind::op;
        tok.text = std::string(1, c);
        tok.op = c == '*' ? Op::mul : (c == '\\' ? Op::ldiv : Op::rdiv);
        return tok;
      default:
        break;
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t start = pos_;
      ++pos_;
      while (pos_ < text_.size() &&
             ((text_[pos_] >= 'a' && text_[pos_] <= 'z') ||
              (text_[pos_] >= '0' && text_[pos_] <= '9')))
        ++pos_;
      tok.kind = Token::Kind::variable;
      tok.text = std::string(text_.substr(start, pos_ - start));
      return tok;
    }
    throw ParseError("unexpected character '" + std::string(1, c) +
                         "' at offset " + std::to_string(pos_),
                     pos_, {"variable", "(", ")", "*", "\\", "/", "="});
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text), tok_(lexer_.next()) {}

  Term parse_full_term() {
    Term t = parse_side();
    expect_end();
    return t;
  }

  Identity parse_full_identity() {
    Term lhs = parse_side();
    if (tok_.kind != Token::Kind::equals) {
      fail("missing '='", {"="});
    }
    advance();
    Term rhs = parse_side();
    expect_end();
    return Identity{lhs, rhs};
  }

 private:
  void advance() { tok_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string& what,
                         std::vector<std::string> expected) {
    std::string got =
        tok_.kind == Token::Kind::end ? "end of input" : "'" + tok_.text + "'";
    throw ParseError(what + " at offset " + std::to_string(tok_.offset) +
                         " (found " + got + ")",
                     tok_.offset, std::move(expected));
  }

  void expect_end() {
    if (tok_.kind != Token::Kind::end)
      fail("trailing input", {"end of input"});
  }

  Op expect_op() {
    if (tok_.kind != Token::Kind::op) fail("expected operator", {"*", "\\", "/"});
    Op op = tok_.op;
    advance();
    return op;
  }

  // atom := var | "(" atom op atom ")"
  Term parse_atom() {
    if (tok_.kind == Token::Kind::variable) {
      Term t = Term::variable(tok_.text);
      advance();
      return t;
    }
    if (tok_.kind == Token::Kind::lparen) {
      advance();
      Term left = parse_atom();
      Op op = expect_op();
      Term right = parse_atom();
      if (tok_.kind != Token::Kind::rparen) fail("expected ')'", {")"});
      advance();
      return Term::apply(op, left, right);
    }
    fail("expected term", {"variable", "("});
  }

  // side := atom [op atom]   -- the one place outer parentheses may be omitted
  Term parse_side() {
    Term first = parse_atom();
    if (tok_.kind == Token::Kind::op) {
      Op op = tok_.op;
      advance();
      Term second = parse_atom();
      return Term::apply(op, first, second);
    }
    return first;
  }

  Lexer lexer_;
  Token tok_;
};

void write_term(std::string& out, const Term& t, bool top) {
  if (t.is_variable()) {
    out += t.variable_name();
    return;
  }
  if (!top) out += '(';
  write_term(out, t.left(), false);
  out += ' ';
  out += op_symbol(t.op());
  out += ' ';
  write_term(out, t.right(), false);
  if (!top) out += ')';
}

Term rename(const Term& t, const std::map<std::string, std::string>& names) {
  if (t.is_variable()) return Term::variable(names.at(t.variable_name()));
  return Term::apply(t.op(), rename(t.left(), names), rename(t.right(), names));
}

}  // namespace

Term parse_term(std::string_view text) {
  return Parser(text).parse_full_term();
}

Identity parse_identity(std::string_view text) {
  return Parser(text).parse_full_identity();
}

std::vector<Identity> parse_identity_lines(std::string_view text) {
  std::vector<Identity> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? std::string_view::npos
                                           : eol - pos);
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#')
      out.push_back(parse_identity(line));
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return out;
}

std::string to_text(const Term& term) {
  std::string out;
  write_term(out, term, true);
  return out;
}

std::string to_text(const Identity& identity) {
  std::string out;
  write_term(out, identity.lhs, true);
  out += " = ";
  write_term(out, identity.rhs, true);
  return out;
}

Identity canonicalize(const Identity& identity) {
  std::vector<std::string> order = identity.variables();
  std::map<std::string, std::string> names;
  for (std::size_t i = 0; i < order.size(); ++i)
    names[order[i]] = "v" + std::to_string(i + 1);
  return Identity{rename(identity.lhs, names), rename(identity.rhs, names)};
}

Term dual(const Term& term) {
  if (term.is_variable()) return term;
  return Term::apply(term.op(), dual(term.right()), dual(term.left()));
}

Identity dual(const Identity& identity) {
  return Identity{dual(identity.lhs), dual(identity.rhs)};
}

std::vector<Identity> hosszu_variants() {
  Term x = Term::variable("x");
  Term y = Term::variable("y");
  Term z = Term::variable("z");
  std::vector<Identity> out;
  out.reserve(16);
  for (unsigned mask = 0; mask < 16; ++mask) {
    bool lhs_outer = mask & 1u;
    bool lhs_inner = mask & 2u;
    bool rhs_outer = mask & 4u;
    bool rhs_inner = mask & 8u;
    Term li = lhs_inner ? Term::apply(Op::mul, z, y) : Term::apply(Op::mul, y, z);
    Term lhs = lhs_outer ? Term::apply(Op::mul, li, x) : Term::apply(Op::mul, x, li);
    Term ri = rhs_inner ? Term::apply(Op::mul, y, x) : Term::apply(Op::mul, x, y);
    Term rhs = rhs_outer ? Term::apply(Op::mul, z, ri) : Term::apply(Op::mul, ri, z);
    out.push_back(Identity{lhs, rhs});
  }
  return out;
}

std::string hosszu_mask_text(unsigned mask) {
  std::string s(4, '0');
  for (int b = 0; b < 4; ++b)
    if (mask & (1u << b)) s[static_cast<std::size_t>(b)] = '1';
  return s;
}

std::vector<VariantClass> classify_variants(
    const std::vector<Identity>& identities) {
  // Orbit under {identity, dual, side swap, dual + side swap}: the two
  // generators commute and are involutions, so these four images modulo
  // renaming exhaust the orbit.
  auto orbit_key = [](const Identity& ident) {
    Identity swapped{ident.rhs, ident.lhs};
    std::set<std::string> orbit;
    orbit.insert(to_text(canonicalize(ident)));
    orbit.insert(to_text(canonicalize(dual(ident))));
    orbit.insert(to_text(canonicalize(swapped)));
    orbit.insert(to_text(canonicalize(dual(swapped))));
    return *orbit.begin();
  };

  std::map<std::string, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < identities.size(); ++i)
    classes[orbit_key(identities[i])].push_back(i);

  std::vector<VariantClass> out;
  out.reserve(classes.size());
  for (const auto& [key, members] : classes)
    out.push_back(VariantClass{parse_identity(key), members});
  return out;
}

}  // namespace magma
