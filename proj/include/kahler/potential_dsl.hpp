#pragma once

// Text syntax for custom potentials.
//
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := rational | 'z' '(' int ')' | 'conj' '(' expr ')' | 'modsq' '(' expr ')'
//           | 'log' '(' expr ')' | 'det' '(' '[' row (';' row)* ']' ')'
//           | 'radial' '(' rational (',' rational)* ')' | '(' expr ')'
//   row    := expr (',' expr)*
//   rational := int ('/' int)?
//
// z(i) is 1-based. radial(c0, c1, ...) is Σ c_m t^m with t = Σ|z_i|^2.
// There is no unary minus; write (0 - e).

#include "kahler/jet.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace kahler {

enum class ExprOp { number, coord, conj, add, sub, mul, log, det, modsq, radial };

struct PotentialExpr {
  ExprOp op = ExprOp::number;
  Rational value = 0;                  // number
  int index = 0;                       // coord, 1-based
  int rows = 0, cols = 0;              // det
  std::vector<PotentialExpr> args;     // operands; det entries row-major
  std::vector<Rational> coeffs;        // radial

  friend bool operator==(const PotentialExpr&, const PotentialExpr&) = default;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

/// `first_line` offsets reported line numbers.
PotentialExpr parse_potential(std::string_view text, int first_line = 1);

/// Canonical text; parse_potential(print(e)) == e for parsed trees.
std::string print(const PotentialExpr& e);

/// Jet at truncation D in n variables. log(c + s) elaborates as log1p(s/c)
/// for rational c > 0, dropping the constant log c.
Jet elaborate(const PotentialExpr& e, int n, int D);

struct PotFile {
  int dim = 0;
  PotentialExpr expr;
};

/// `.pot` format: `dim n` on the first non-comment line, then the expression.
/// `#` starts a comment.
PotFile parse_pot(std::string_view text);
PotFile load_pot_file(const std::string& path);

}  // namespace kahler
