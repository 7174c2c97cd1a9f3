#include "magma/table_io.hpp"

#include <fstream>
#include <optional>
#include <sstream>

namespace magma {

TableFormatError::TableFormatError(std::string message, int line)
    : std::runtime_error("line " + std::to_string(line) + ": " +
                         std::move(message)),
      line_(line) {}

namespace {

struct LineReader {
  std::istream& in;
  int line_no = 0;

  // Next meaningful line, tokenized; nullopt at end of input.
  std::optional<std::vector<std::string>> next() {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      std::istringstream ss(line);
      std::vector<std::string> tokens;
      std::string tok;
      while (ss >> tok) tokens.push_back(tok);
      if (tokens.empty()) continue;
      if (tokens.front()[0] == '#') continue;
      return tokens;
    }
    return std::nullopt;
  }
};

std::optional<Op> symbol_op(const std::string& s) {
  if (s == "*") return Op::mul;
  if (s == "\\") return Op::ldiv;
  if (s == "/") return Op::rdiv;
  return std::nullopt;
}

}  // namespace

Algebra read_table(std::istream& in) {
  LineReader reader{in};

  auto header = reader.next();
  if (!header || header->size() != 2 || (*header)[0] != "magma" ||
      (*header)[1] != "1")
    throw TableFormatError("expected header 'magma 1'", reader.line_no);

  auto order_line = reader.next();
  if (!order_line || order_line->size() != 2 || (*order_line)[0] != "order")
    throw TableFormatError("expected 'order <n>'", reader.line_no);
  int n = 0;
  try {
    n = std::stoi((*order_line)[1]);
  } catch (const std::exception&) {
    throw TableFormatError("order is not a number", reader.line_no);
  }
  if (n < 1 || n > 64)
    throw TableFormatError("order out of range (1..64)", reader.line_no);

  Algebra algebra(n);
  bool seen[kOpCount] = {};
  auto tokens = reader.next();
  while (tokens) {
    if (tokens->size() != 2 || (*tokens)[0] != "op")
      throw TableFormatError("expected 'op <sym>'", reader.line_no);
    auto op = symbol_op((*tokens)[1]);
    if (!op)
      throw TableFormatError("unknown operation '" + (*tokens)[1] + "'",
                             reader.line_no);
    if (seen[op_index(*op)])
      throw TableFormatError(
          std::string("duplicate block for operation '") + op_symbol(*op) +
              "'",
          reader.line_no);
    seen[op_index(*op)] = true;

    Table table;
    table.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      auto row = reader.next();
      if (!row)
        throw TableFormatError("unexpected end of file inside table block",
                               reader.line_no);
      if (row->size() != static_cast<std::size_t>(n))
        throw TableFormatError("expected " + std::to_string(n) +
                                   " entries in row",
                               reader.line_no);
      for (const auto& cell : *row) {
        int v = 0;
        try {
          v = std::stoi(cell);
        } catch (const std::exception&) {
          throw TableFormatError("table entry is not a number", reader.line_no);
        }
        if (v < 0 || v >= n)
          throw TableFormatError("table entry " + cell + " out of range 0.." +
                                     std::to_string(n - 1),
                                 reader.line_no);
        table.push_back(v);
      }
    }
    algebra.set_table(*op, std::move(table));
    tokens = reader.next();
  }

  if (!seen[op_index(Op::mul)])
    throw TableFormatError("missing mandatory 'op *' block", reader.line_no);
  return algebra;
}

Algebra read_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TableFormatError("cannot open '" + path + "'", 0);
  return read_table(in);
}

void write_table(const Algebra& algebra, std::ostream& out) {
  const int n = algebra.order();
  out << "magma 1\n";
  out << "order " << n << "\n";
  for (int t = 0; t < kOpCount; ++t) {
    Op op = static_cast<Op>(t);
    if (!algebra.has(op)) continue;
    out << "op " << op_symbol(op) << "\n";
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (j) out << ' ';
        out << algebra.at(op, i, j);
      }
      out << "\n";
    }
  }
}

void write_table_file(const Algebra& algebra, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw TableFormatError("cannot open '" + path + "' for writing", 0);
  write_table(algebra, out);
}

std::string table_text(const Algebra& algebra) {
  std::ostringstream ss;
  write_table(algebra, ss);
  return ss.str();
}

}  // namespace magma
