#pragma once

// Truncated power series in z_1..z_n and their conjugates with exact rational
// coefficients. Every jet carries the total degree up to which it is exact.

#include "kahler/error.hpp"
#include "kahler/rational.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

namespace kahler {

/// Maximum number of complex variables a jet may use.
inline constexpr int kMaxVars = 16;

/// Validity marker for exact polynomials (no truncation error at any degree
/// the engine can reach).
inline constexpr int kExact = 1 << 20;

enum class Kind { holomorphic, antiholomorphic };

/// Exponent vector of a holomorphic or antiholomorphic monomial factor.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);
  MultiIndex(std::initializer_list<int> exponents);

  static MultiIndex zero(int n) { return MultiIndex(std::vector<int>(n, 0)); }
  static MultiIndex unit(int n, int i);

  int size() const { return static_cast<int>(e_.size()); }
  int total() const;
  int operator[](int i) const { return e_[i]; }
  const std::vector<int>& exponents() const { return e_; }

  /// P! = Π P_i!.
  Rational factorial() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> e_;
};

std::string to_string(const MultiIndex& m);

/// Packed key for z^P z̄^Q. Holomorphic exponents live in slots [0, kMaxVars),
/// antiholomorphic ones in [kMaxVars, 2 kMaxVars). Ordered by total degree
/// first, so iteration over a jet visits low orders first.
class Monomial {
 public:
  static constexpr int kSlots = 2 * kMaxVars;

  Monomial() = default;
  Monomial(const MultiIndex& p, const MultiIndex& q);

  int hol(int i) const { return e_[i]; }
  int antihol(int i) const { return e_[kMaxVars + i]; }
  int degree() const { return degree_; }
  int hol_degree() const;
  int antihol_degree() const { return degree_ - hol_degree(); }

  MultiIndex p(int n) const;
  MultiIndex q(int n) const;

  /// True when P == Q.
  bool is_diagonal() const;

  /// z^P z̄^Q -> z^Q z̄^P.
  Monomial conj() const;

  /// Adds `delta` to one exponent; the result must stay non-negative.
  Monomial bumped(int var, Kind kind, int delta) const;

  /// Moves every variable index up by `offset` (for product spaces).
  Monomial shifted(int offset) const;

  /// Highest variable index in use plus one.
  int span() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && a.e_ == b.e_;
  }
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    return a.e_ <=> b.e_;
  }

  std::size_t hash() const;

 private:
  std::array<std::uint8_t, kSlots> e_{};
  std::uint16_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Truncated series sum of c_{P,Q} z^P z̄^Q over |P|+|Q| <= valid_degree.
/// Immutable value type: all operations return new jets.
class Jet {
 public:
  using Terms = std::map<Monomial, Rational>;

  Jet() = default;
  Jet(int n, int valid_degree);

  static Jet zero(int n, int valid_degree) { return Jet(n, valid_degree); }
  static Jet constant(int n, const Rational& c, int valid_degree);
  /// Single term c z^P z̄^Q; throws degree_overflow when |P|+|Q| > D.
  static Jet monomial(int n, const MultiIndex& p, const MultiIndex& q, const Rational& c,
                      int valid_degree);
  static Jet monomial(int n, const Monomial& m, const Rational& c, int valid_degree);
  /// z_i (holomorphic) or z̄_i (antiholomorphic), exact.
  static Jet coordinate(int n, int i, Kind kind = Kind::holomorphic);

  int n() const { return n_; }
  int valid_degree() const { return valid_; }
  bool exact() const { return valid_ >= kExact / 2; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coefficient(const Monomial& m) const;
  Rational coefficient(const MultiIndex& p, const MultiIndex& q) const;
  Rational eval0() const;
  /// Lowest total degree with a nonzero coefficient (valid_degree + 1 if zero).
  int min_degree() const;
  int max_degree() const;

  Jet operator+(const Jet& other) const;
  Jet operator-(const Jet& other) const;
  Jet operator*(const Jet& other) const;
  Jet operator-() const;
  Jet scaled(const Rational& c) const;

  /// Formal partial derivative; validity drops by one.
  Jet derive(int var, Kind kind) const;
  /// Multiplies by an exact monomial; validity grows by its degree.
  Jet shifted_by(const Monomial& m, const Rational& c = 1) const;
  Jet truncated(int degree) const;
  /// Coefficient c_{P,Q} -> c_{Q,P}: complex conjugation for rational coefficients.
  Jet conj() const;
  /// Re-embeds into `n_total` variables with variable i -> i + offset.
  Jet embedded(int n_total, int offset) const;
  /// Keeps only terms selected by `keep`.
  Jet filtered(const std::function<bool(const Monomial&)>& keep) const;
  /// Applies c_{P,Q} -> f(m) * c_{P,Q}.
  Jet reweighted(const std::function<Rational(const Monomial&)>& f) const;

  friend bool operator==(const Jet& a, const Jet& b) = default;

  /// Builds a jet from raw terms, pruning zeros and terms above validity.
  static Jet from_terms(int n, int valid_degree, Terms terms);

 private:
  int n_ = 0;
  int valid_ = 0;
  Terms terms_;
};

std::string to_string(const Jet& j);

/// Free-function spellings of the jet ring operations.
inline Jet jet_monomial(int n, const MultiIndex& p, const MultiIndex& q, const Rational& c,
                        int d) {
  return Jet::monomial(n, p, q, c, d);
}
inline Jet jet_derive(const Jet& j, int var, Kind kind) { return j.derive(var, kind); }
inline Rational jet_eval0(const Jet& j) { return j.eval0(); }

/// 1/j; requires a nonzero constant term.
Jet jet_reciprocal(const Jet& j);
/// log(1+s) = s - s^2/2 + ...; requires zero constant term.
Jet jet_log1p(const Jet& s);
/// j^e by repeated squaring under truncation.
Jet jet_pow(const Jet& j, int e);

/// Univariate rational series in t with a trusted order (highest exact power).
class Series {
 public:
  Series() = default;
  Series(std::vector<Rational> coeffs, int order);
  /// Exact polynomial: every coefficient beyond the list is zero.
  static Series polynomial(std::vector<Rational> coeffs);

  int order() const { return order_; }
  bool exact() const { return order_ >= kExact / 2; }
  /// Coefficient of t^m; throws insufficient_order when m > order.
  Rational operator[](int m) const;

  Series derivative() const;
  Series operator+(const Series& o) const;
  Series operator-(const Series& o) const;
  Series operator*(const Series& o) const;
  Series scaled(const Rational& c) const;
  /// t * f(t).
  Series times_t() const;
  Series reciprocal() const;
  Series truncated(int order) const;
  /// f(t) -> f(c t).
  Series rescaled_argument(const Rational& c) const;

  const std::vector<Rational>& coeffs() const { return c_; }

  friend bool operator==(const Series&, const Series&) = default;

 private:
  void trim();
  std::vector<Rational> c_;
  int order_ = 0;
};

/// f(|z_1|^2 + ... + |z_n|^2) truncated at total degree D.
Jet substitute_radial(const Series& f, int n, int valid_degree);

}  // namespace kahler
