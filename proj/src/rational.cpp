#include "kahler/rational.hpp"

#include "kahler/error.hpp"

#include <cctype>

namespace kahler {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::degree_overflow: return "degree_overflow";
    case Errc::variable_mismatch: return "variable_mismatch";
    case Errc::validity_exhausted: return "validity_exhausted";
    case Errc::zero_constant_term: return "zero_constant_term";
    case Errc::nonzero_constant_term: return "nonzero_constant_term";
    case Errc::non_square: return "non_square";
    case Errc::singular: return "singular";
    case Errc::insufficient_order: return "insufficient_order";
    case Errc::gauge_violation: return "gauge_violation";
    case Errc::not_einstein: return "not_einstein";
    case Errc::rank_too_low: return "rank_too_low";
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::parse_error: return "parse_error";
    case Errc::unknown_space: return "unknown_space";
  }
  return "unknown";
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  auto bad = [&] {
    return Error(Errc::parse_error, "not a rational number: '" + std::string(text) + "'");
  };
  if (text.empty()) throw bad();
  std::size_t pos = 0;
  if (text[0] == '-' || text[0] == '+') pos = 1;
  std::size_t slash = text.find('/');
  auto digits = [&](std::size_t from, std::size_t to) {
    if (from >= to) return false;
    for (std::size_t i = from; i < to; ++i)
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    return true;
  };
  if (slash == std::string_view::npos) {
    if (!digits(pos, text.size())) throw bad();
  } else if (!digits(pos, slash) || !digits(slash + 1, text.size())) {
    throw bad();
  }
  std::string s(text[0] == '+' ? text.substr(1) : text);
  Rational q;
  if (q.set_str(s, 10) != 0) throw bad();
  if (q.get_den() == 0) throw bad();
  q.canonicalize();
  return q;
}

Rational factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n < 0 ? 0 : n));
  return Rational(f);
}

bool exact_sqrt(const Rational& q, Rational& root) {
  if (q < 0) return false;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return false;
  mpz_class a, b;
  mpz_sqrt(a.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(b.get_mpz_t(), den.get_mpz_t());
  root = Rational(a, b);
  root.canonicalize();
  return true;
}

}  // namespace kahler
