#include "kahler/jet.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace kahler {

// ---------------------------------------------------------------- MultiIndex

MultiIndex::MultiIndex(std::vector<int> exponents) : e_(std::move(exponents)) {
  for (int v : e_)
    if (v < 0) throw Error(Errc::invalid_argument, "negative exponent in multi-index");
}

MultiIndex::MultiIndex(std::initializer_list<int> exponents)
    : MultiIndex(std::vector<int>(exponents)) {}

MultiIndex MultiIndex::unit(int n, int i) {
  std::vector<int> e(n, 0);
  e.at(i) = 1;
  return MultiIndex(std::move(e));
}

int MultiIndex::total() const {
  int s = 0;
  for (int v : e_) s += v;
  return s;
}

Rational MultiIndex::factorial() const {
  Rational f = 1;
  for (int v : e_) f *= kahler::factorial(v);
  return f;
}

std::string to_string(const MultiIndex& m) {
  std::string s = "(";
  for (int i = 0; i < m.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(m[i]);
  }
  return s + ")";
}

// ------------------------------------------------------------------ Monomial

Monomial::Monomial(const MultiIndex& p, const MultiIndex& q) {
  if (p.size() != q.size())
    throw Error(Errc::variable_mismatch, "holomorphic/antiholomorphic index lengths differ");
  if (p.size() > kMaxVars)
    throw Error(Errc::invalid_argument, "too many variables (max " + std::to_string(kMaxVars) + ")");
  int deg = 0;
  for (int i = 0; i < p.size(); ++i) {
    if (p[i] > 255 || q[i] > 255) throw Error(Errc::degree_overflow, "exponent too large");
    e_[i] = static_cast<std::uint8_t>(p[i]);
    e_[kMaxVars + i] = static_cast<std::uint8_t>(q[i]);
    deg += p[i] + q[i];
  }
  degree_ = static_cast<std::uint16_t>(deg);
}

int Monomial::hol_degree() const {
  int s = 0;
  for (int i = 0; i < kMaxVars; ++i) s += e_[i];
  return s;
}

MultiIndex Monomial::p(int n) const {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = e_[i];
  return MultiIndex(std::move(v));
}

MultiIndex Monomial::q(int n) const {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = e_[kMaxVars + i];
  return MultiIndex(std::move(v));
}

bool Monomial::is_diagonal() const {
  return std::equal(e_.begin(), e_.begin() + kMaxVars, e_.begin() + kMaxVars);
}

Monomial Monomial::conj() const {
  Monomial r = *this;
  std::swap_ranges(r.e_.begin(), r.e_.begin() + kMaxVars, r.e_.begin() + kMaxVars);
  return r;
}

Monomial Monomial::bumped(int var, Kind kind, int delta) const {
  Monomial r = *this;
  int slot = kind == Kind::holomorphic ? var : kMaxVars + var;
  int v = r.e_[slot] + delta;
  if (v < 0) throw Error(Errc::invalid_argument, "negative exponent");
  if (v > 255) throw Error(Errc::degree_overflow, "exponent too large");
  r.e_[slot] = static_cast<std::uint8_t>(v);
  r.degree_ = static_cast<std::uint16_t>(r.degree_ + delta);
  return r;
}

Monomial Monomial::shifted(int offset) const {
  if (offset == 0) return *this;
  if (span() + offset > kMaxVars)
    throw Error(Errc::invalid_argument, "too many variables (max " + std::to_string(kMaxVars) + ")");
  Monomial r;
  r.degree_ = degree_;
  for (int i = 0; i + offset < kMaxVars; ++i) {
    r.e_[i + offset] = e_[i];
    r.e_[kMaxVars + i + offset] = e_[kMaxVars + i];
  }
  return r;
}

int Monomial::span() const {
  for (int i = kMaxVars - 1; i >= 0; --i)
    if (e_[i] || e_[kMaxVars + i]) return i + 1;
  return 0;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < Monomial::kSlots; ++i) {
    int v = a.e_[i] + b.e_[i];
    if (v > 255) throw Error(Errc::degree_overflow, "exponent too large");
    r.e_[i] = static_cast<std::uint8_t>(v);
  }
  r.degree_ = static_cast<std::uint16_t>(a.degree_ + b.degree_);
  return r;
}

std::size_t Monomial::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (auto b : e_) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

// ----------------------------------------------------------------------- Jet

namespace {

void check_n(int n) {
  if (n < 0 || n > kMaxVars)
    throw Error(Errc::invalid_argument,
                "variable count " + std::to_string(n) + " outside [0, " + std::to_string(kMaxVars) + "]");
}

void check_same_n(const Jet& a, const Jet& b) {
  if (a.n() != b.n())
    throw Error(Errc::variable_mismatch, "jets over " + std::to_string(a.n()) + " and " +
                                             std::to_string(b.n()) + " variables");
}

using Accumulator = std::unordered_map<Monomial, Rational, MonomialHash>;

Jet::Terms drain(Accumulator& acc) {
  Jet::Terms out;
  for (auto& [k, v] : acc)
    if (v != 0) out.emplace(k, std::move(v));
  return out;
}

}  // namespace

Jet::Jet(int n, int valid_degree) : n_(n), valid_(valid_degree) {
  check_n(n);
  if (valid_degree < 0) throw Error(Errc::validity_exhausted, "negative validity");
}

Jet Jet::from_terms(int n, int valid_degree, Terms terms) {
  Jet j(n, valid_degree);
  for (auto it = terms.begin(); it != terms.end();) {
    it->second.canonicalize();
    if (it->second == 0 || it->first.degree() > valid_degree)
      it = terms.erase(it);
    else
      ++it;
  }
  j.terms_ = std::move(terms);
  return j;
}

Jet Jet::constant(int n, const Rational& c, int valid_degree) {
  Jet j(n, valid_degree);
  if (c != 0) j.terms_.emplace(Monomial(), c);
  return j;
}

Jet Jet::monomial(int n, const MultiIndex& p, const MultiIndex& q, const Rational& c,
                  int valid_degree) {
  if (p.size() != n || q.size() != n)
    throw Error(Errc::variable_mismatch, "multi-index length differs from variable count");
  return monomial(n, Monomial(p, q), c, valid_degree);
}

Jet Jet::monomial(int n, const Monomial& m, const Rational& c, int valid_degree) {
  if (m.degree() > valid_degree)
    throw Error(Errc::degree_overflow, "monomial degree " + std::to_string(m.degree()) +
                                           " exceeds validity " + std::to_string(valid_degree));
  if (m.span() > n) throw Error(Errc::variable_mismatch, "monomial uses more variables than the jet");
  Jet j(n, valid_degree);
  if (c != 0) j.terms_.emplace(m, c);
  return j;
}

Jet Jet::coordinate(int n, int i, Kind kind) {
  if (i < 0 || i >= n) throw Error(Errc::invalid_argument, "coordinate index out of range");
  return monomial(n, Monomial().bumped(i, kind, 1), 1, kExact);
}

Rational Jet::coefficient(const Monomial& m) const {
  if (m.degree() > valid_)
    throw Error(Errc::validity_exhausted, "coefficient of degree " + std::to_string(m.degree()) +
                                              " requested beyond validity " + std::to_string(valid_));
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Jet::coefficient(const MultiIndex& p, const MultiIndex& q) const {
  return coefficient(Monomial(p, q));
}

Rational Jet::eval0() const { return coefficient(Monomial()); }

int Jet::min_degree() const {
  return terms_.empty() ? valid_ + 1 : terms_.begin()->first.degree();
}

int Jet::max_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

Jet Jet::operator+(const Jet& other) const {
  check_same_n(*this, other);
  int d = std::min(valid_, other.valid_);
  Terms out;
  for (const auto& [k, v] : terms_)
    if (k.degree() <= d) out.emplace(k, v);
  for (const auto& [k, v] : other.terms_) {
    if (k.degree() > d) break;
    auto [it, inserted] = out.emplace(k, v);
    if (!inserted) it->second += v;
  }
  return from_terms(n_, d, std::move(out));
}

Jet Jet::operator-(const Jet& other) const { return *this + (-other); }

Jet Jet::operator-() const {
  Jet r = *this;
  for (auto& [k, v] : r.terms_) v = -v;
  return r;
}

Jet Jet::operator*(const Jet& other) const {
  check_same_n(*this, other);
  int d = std::min(valid_, other.valid_);
  Accumulator acc;
  Rational tmp;
  for (const auto& [ka, ca] : terms_) {
    if (ka.degree() > d) break;
    for (const auto& [kb, cb] : other.terms_) {
      if (ka.degree() + kb.degree() > d) break;
      tmp = ca * cb;
      acc[ka * kb] += tmp;
    }
  }
  return from_terms(n_, d, drain(acc));
}

Jet Jet::scaled(const Rational& c) const {
  if (c == 0) return Jet(n_, valid_);
  Jet r = *this;
  for (auto& [k, v] : r.terms_) v *= c;
  return r;
}

Jet Jet::derive(int var, Kind kind) const {
  if (var < 0 || var >= n_) throw Error(Errc::invalid_argument, "derivative variable out of range");
  if (valid_ == 0) throw Error(Errc::validity_exhausted, "cannot differentiate a jet of validity 0");
  Terms out;
  for (const auto& [k, v] : terms_) {
    int e = kind == Kind::holomorphic ? k.hol(var) : k.antihol(var);
    if (e == 0) continue;
    out.emplace(k.bumped(var, kind, -1), v * e);
  }
  return from_terms(n_, valid_ - 1, std::move(out));
}

Jet Jet::shifted_by(const Monomial& m, const Rational& c) const {
  if (m.span() > n_) throw Error(Errc::variable_mismatch, "monomial uses more variables than the jet");
  int d = exact() ? valid_ : valid_ + m.degree();
  if (c == 0) return Jet(n_, d);
  Terms out;
  for (const auto& [k, v] : terms_) out.emplace(k * m, v * c);
  return from_terms(n_, d, std::move(out));
}

Jet Jet::truncated(int degree) const {
  int d = std::min(valid_, degree);
  Terms out;
  for (const auto& [k, v] : terms_) {
    if (k.degree() > d) break;
    out.emplace(k, v);
  }
  return from_terms(n_, d, std::move(out));
}

Jet Jet::conj() const {
  Terms out;
  for (const auto& [k, v] : terms_) out.emplace(k.conj(), v);
  return from_terms(n_, valid_, std::move(out));
}

Jet Jet::embedded(int n_total, int offset) const {
  if (offset < 0 || offset + n_ > n_total)
    throw Error(Errc::invalid_argument, "embedding does not fit the target variable count");
  Terms out;
  for (const auto& [k, v] : terms_) out.emplace(k.shifted(offset), v);
  return from_terms(n_total, valid_, std::move(out));
}

Jet Jet::filtered(const std::function<bool(const Monomial&)>& keep) const {
  Terms out;
  for (const auto& [k, v] : terms_)
    if (keep(k)) out.emplace(k, v);
  return from_terms(n_, valid_, std::move(out));
}

Jet Jet::reweighted(const std::function<Rational(const Monomial&)>& f) const {
  Terms out;
  for (const auto& [k, v] : terms_) out.emplace(k, v * f(k));
  return from_terms(n_, valid_, std::move(out));
}

std::string to_string(const Jet& j) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : j.terms()) {
    if (!first) os << " + ";
    first = false;
    os << to_string(v);
    for (int i = 0; i < j.n(); ++i) {
      if (k.hol(i)) os << "*z" << i + 1 << (k.hol(i) > 1 ? "^" + std::to_string(k.hol(i)) : "");
      if (k.antihol(i))
        os << "*zb" << i + 1 << (k.antihol(i) > 1 ? "^" + std::to_string(k.antihol(i)) : "");
    }
  }
  if (first) os << "0";
  if (!j.exact()) os << " + O(" << j.valid_degree() + 1 << ")";
  return os.str();
}

Jet jet_reciprocal(const Jet& j) {
  Rational c = j.terms().empty() || j.terms().begin()->first.degree() != 0
                   ? Rational(0)
                   : j.terms().begin()->second;
  if (c == 0) throw Error(Errc::zero_constant_term, "reciprocal of a jet with zero constant term");
  if (j.exact() && j.size() > 1)
    throw Error(Errc::invalid_argument, "reciprocal of a non-constant exact polynomial needs a truncation");
  // 1/(c(1+u)) = (1/c) sum (-u)^m
  Rational inv = 1 / c;
  Jet u = (j.scaled(inv) - Jet::constant(j.n(), 1, j.valid_degree())).scaled(-1);
  Jet result = Jet::constant(j.n(), 1, j.valid_degree());
  Jet power = result;
  while (true) {
    power = power * u;
    if (power.is_zero()) break;
    result = result + power;
  }
  return result.scaled(inv);
}

Jet jet_log1p(const Jet& s) {
  if (s.eval0() != 0) throw Error(Errc::nonzero_constant_term, "log1p of a jet with nonzero constant term");
  if (s.exact() && !s.is_zero())
    throw Error(Errc::invalid_argument, "log1p of a non-constant exact polynomial needs a truncation");
  Jet result(s.n(), s.valid_degree());
  Jet power = Jet::constant(s.n(), 1, s.valid_degree());
  for (int m = 1;; ++m) {
    power = power * s;
    if (power.is_zero()) break;
    Rational c(m % 2 == 1 ? 1 : -1, m);
    result = result + power.scaled(c);
  }
  return result;
}

Jet jet_pow(const Jet& j, int e) {
  if (e < 0) throw Error(Errc::invalid_argument, "negative power");
  Jet result = Jet::constant(j.n(), 1, j.valid_degree());
  Jet base = j;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Jet substitute_radial(const Series& f, int n, int valid_degree) {
  int need = (valid_degree + 1) / 2;
  if (!f.exact() && f.order() < need)
    throw Error(Errc::insufficient_order, "radial profile known to t^" + std::to_string(f.order()) +
                                              ", degree " + std::to_string(valid_degree) +
                                              " needs t^" + std::to_string(need));
  Jet t(n, valid_degree);
  for (int i = 0; i < n && valid_degree >= 2; ++i)
    t = t + Jet::monomial(n, Monomial().bumped(i, Kind::holomorphic, 1).bumped(i, Kind::antiholomorphic, 1),
                          1, valid_degree);
  Jet result = Jet::constant(n, f[0], valid_degree);
  Jet power = Jet::constant(n, 1, valid_degree);
  for (int m = 1; 2 * m <= valid_degree; ++m) {
    power = power * t;
    Rational c = f[m];
    if (c != 0) result = result + power.scaled(c);
  }
  return result;
}

}  // namespace kahler
