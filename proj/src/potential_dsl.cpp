#include "kahler/potential_dsl.hpp"

#include "kahler/jet_matrix.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace kahler {

ParseError::ParseError(int line, int column, const std::string& message)
    : Error(Errc::parse_error,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line), column_(column) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, int first_line) : s_(text), line_(first_line) {}

  PotentialExpr parse_all() {
    PotentialExpr e = expr();
    skip_space();
    if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return e;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;
  std::size_t line_start_ = 0;

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(line_, static_cast<int>(pos_ - line_start_) + 1, message);
  }

  void skip_space() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '\n') {
        ++line_;
        line_start_ = ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool peek(char c) {
    skip_space();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= s_.size()) fail(std::string("expected '") + c + "' before end of input");
      fail(std::string("expected '") + c + "'");
    }
  }

  std::string integer_digits() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::string(s_.substr(start, pos_ - start));
  }

  Rational rational(bool allow_sign) {
    bool negative = allow_sign && accept('-');
    std::string num = integer_digits();
    std::string den = "1";
    if (accept('/')) {
      skip_space();
      std::size_t start = pos_;
      den = integer_digits();
      if (den.find_first_not_of('0') == std::string::npos) {
        pos_ = start;
        fail("zero denominator");
      }
    }
    Rational q = parse_rational(num + "/" + den);
    return negative ? Rational(-q) : q;
  }

  PotentialExpr expr() {
    PotentialExpr lhs = term();
    while (true) {
      ExprOp op;
      if (accept('+'))
        op = ExprOp::add;
      else if (accept('-'))
        op = ExprOp::sub;
      else
        return lhs;
      PotentialExpr node;
      node.op = op;
      node.args.push_back(std::move(lhs));
      node.args.push_back(term());
      lhs = std::move(node);
    }
  }

  PotentialExpr term() {
    PotentialExpr lhs = factor();
    while (accept('*')) {
      PotentialExpr node;
      node.op = ExprOp::mul;
      node.args.push_back(std::move(lhs));
      node.args.push_back(factor());
      lhs = std::move(node);
    }
    return lhs;
  }

  PotentialExpr unary(ExprOp op) {
    expect('(');
    PotentialExpr node;
    node.op = op;
    node.args.push_back(expr());
    expect(')');
    return node;
  }

  PotentialExpr factor() {
    skip_space();
    if (pos_ >= s_.size()) fail("expected expression before end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      PotentialExpr node;
      node.value = rational(false);
      return node;
    }
    if (c == '(') {
      ++pos_;
      PotentialExpr e = expr();
      expect(')');
      return e;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail(std::string("unexpected '") + c + "'");
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string name(s_.substr(start, pos_ - start));
    if (name == "z") {
      expect('(');
      std::string digits = integer_digits();
      PotentialExpr node;
      node.op = ExprOp::coord;
      if (digits.size() > 4 || std::stoi(digits) < 1) fail("coordinate index must be between 1 and 9999");
      node.index = std::stoi(digits);
      expect(')');
      return node;
    }
    if (name == "conj") return unary(ExprOp::conj);
    if (name == "modsq") return unary(ExprOp::modsq);
    if (name == "log") return unary(ExprOp::log);
    if (name == "det") {
      expect('(');
      expect('[');
      PotentialExpr node;
      node.op = ExprOp::det;
      int cols = -1;
      do {
        int count = 0;
        do {
          node.args.push_back(expr());
          ++count;
        } while (accept(','));
        if (cols >= 0 && count != cols) fail("det rows have different lengths");
        cols = count;
        ++node.rows;
      } while (accept(';'));
      node.cols = cols;
      expect(']');
      expect(')');
      if (node.rows != node.cols) fail("det needs a square matrix");
      return node;
    }
    if (name == "radial") {
      expect('(');
      PotentialExpr node;
      node.op = ExprOp::radial;
      do node.coeffs.push_back(rational(true));
      while (accept(','));
      expect(')');
      return node;
    }
    pos_ = start;
    fail("unknown identifier '" + name + "'");
  }
};

bool is_sum(const PotentialExpr& e) { return e.op == ExprOp::add || e.op == ExprOp::sub; }

std::string wrap(const PotentialExpr& e, bool paren) {
  std::string s = print(e);
  return paren ? "(" + s + ")" : s;
}

}  // namespace

PotentialExpr parse_potential(std::string_view text, int first_line) {
  return Parser(text, first_line).parse_all();
}

std::string print(const PotentialExpr& e) {
  switch (e.op) {
    case ExprOp::number:
      return e.value < 0 ? "(0 - " + Rational(-e.value).get_str() + ")" : e.value.get_str();
    case ExprOp::coord: return "z(" + std::to_string(e.index) + ")";
    case ExprOp::conj: return "conj(" + print(e.args[0]) + ")";
    case ExprOp::modsq: return "modsq(" + print(e.args[0]) + ")";
    case ExprOp::log: return "log(" + print(e.args[0]) + ")";
    case ExprOp::add:
    case ExprOp::sub:
      return print(e.args[0]) + (e.op == ExprOp::add ? " + " : " - ") + wrap(e.args[1], is_sum(e.args[1]));
    case ExprOp::mul:
      return wrap(e.args[0], is_sum(e.args[0])) + " * " +
             wrap(e.args[1], is_sum(e.args[1]) || e.args[1].op == ExprOp::mul);
    case ExprOp::det: {
      std::string s = "det([";
      for (int r = 0; r < e.rows; ++r) {
        if (r) s += "; ";
        for (int c = 0; c < e.cols; ++c) s += (c ? ", " : "") + print(e.args[r * e.cols + c]);
      }
      return s + "])";
    }
    case ExprOp::radial: {
      std::string s = "radial(";
      for (std::size_t i = 0; i < e.coeffs.size(); ++i) s += (i ? ", " : "") + e.coeffs[i].get_str();
      return s + ")";
    }
  }
  return "?";
}

Jet elaborate(const PotentialExpr& e, int n, int D) {
  if (n < 1 || n > kMaxVars) throw Error(Errc::invalid_argument, "dimension out of range");
  switch (e.op) {
    case ExprOp::number: return Jet::constant(n, e.value, D);
    case ExprOp::coord:
      if (e.index < 1 || e.index > n)
        throw Error(Errc::invalid_argument, "z(" + std::to_string(e.index) + ") is outside dimension " +
                                                std::to_string(n));
      return Jet::coordinate(n, e.index - 1).truncated(D);
    case ExprOp::conj: return elaborate(e.args[0], n, D).conj();
    case ExprOp::modsq: {
      Jet a = elaborate(e.args[0], n, D);
      return a * a.conj();
    }
    case ExprOp::add: return elaborate(e.args[0], n, D) + elaborate(e.args[1], n, D);
    case ExprOp::sub: return elaborate(e.args[0], n, D) - elaborate(e.args[1], n, D);
    case ExprOp::mul: return elaborate(e.args[0], n, D) * elaborate(e.args[1], n, D);
    case ExprOp::log: {
      Jet a = elaborate(e.args[0], n, D);
      Rational c = a.eval0();
      if (c <= 0)
        throw Error(Errc::invalid_argument, "log argument has constant term " + to_string(c) + ", need > 0");
      return jet_log1p(a.scaled(1 / c) - Jet::constant(n, 1, D));
    }
    case ExprOp::det: {
      std::vector<std::vector<Jet>> rows(e.rows);
      for (int r = 0; r < e.rows; ++r)
        for (int c = 0; c < e.cols; ++c) rows[r].push_back(elaborate(e.args[r * e.cols + c], n, D));
      return det(JetMatrix::from_rows(rows)).truncated(D);
    }
    case ExprOp::radial: return substitute_radial(Series::polynomial(e.coeffs), n, D);
  }
  throw Error(Errc::invalid_argument, "unhandled expression");
}

PotFile parse_pot(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::string cur;
    for (char c : text) {
      if (c == '\n') {
        lines.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    lines.push_back(cur);
  }
  for (auto& l : lines)
    if (auto h = l.find('#'); h != std::string::npos) l.erase(h);

  PotFile out;
  std::size_t i = 0;
  while (i < lines.size() && lines[i].find_first_not_of(" \t\r") == std::string::npos) ++i;
  if (i == lines.size()) throw ParseError(1, 1, "missing 'dim n' header");
  {
    std::istringstream header(lines[i]);
    std::string word, extra;
    int dim = 0;
    if (!(header >> word >> dim) || word != "dim" || (header >> extra))
      throw ParseError(static_cast<int>(i) + 1, 1, "expected 'dim n' header");
    if (dim < 1 || dim > kMaxVars)
      throw ParseError(static_cast<int>(i) + 1, 1, "dimension must be between 1 and " + std::to_string(kMaxVars));
    out.dim = dim;
  }
  std::string body;
  for (std::size_t j = 0; j < lines.size(); ++j) {
    if (j > i) body += lines[j];
    if (j + 1 < lines.size()) body += '\n';
  }
  out.expr = parse_potential(body);
  return out;
}

PotFile load_pot_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::invalid_argument, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_pot(buf.str());
}

}  // namespace kahler
