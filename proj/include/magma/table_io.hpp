// table_io.hpp — the ASCII operation-table file format
//
//   magma 1
//   order <n>
//   op <sym>          -- one block per symbol in {*, \, /}; * is mandatory
//   <n rows of n space-separated entries in 0..n-1>
//
// Lines whose first non-blank character is '#' are comments; blank lines are
// ignored; at most one block per symbol.  Writing then reading an algebra
// reproduces it exactly.

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "magma/algebra.hpp"

namespace magma {

class TableFormatError : public std::runtime_error {
 public:
  TableFormatError(std::string message, int line);
  int line() const { return line_; }

 private:
  int line_;
};

Algebra read_table(std::istream& in);
Algebra read_table_file(const std::string& path);

void write_table(const Algebra& algebra, std::ostream& out);
void write_table_file(const Algebra& algebra, const std::string& path);
std::string table_text(const Algebra& algebra);

}  // namespace magma
