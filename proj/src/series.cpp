#include "kahler/jet.hpp"

#include <algorithm>

namespace kahler {

Series::Series(std::vector<Rational> coeffs, int order) : c_(std::move(coeffs)), order_(order) {
  if (order < 0) throw Error(Errc::insufficient_order, "series order must be non-negative");
  trim();
}

Series Series::polynomial(std::vector<Rational> coeffs) { return Series(std::move(coeffs), kExact); }

void Series::trim() {
  if (static_cast<int>(c_.size()) > order_ + 1) c_.resize(order_ + 1);
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Series::operator[](int m) const {
  if (m < 0) return 0;
  if (m > order_)
    throw Error(Errc::insufficient_order, "coefficient t^" + std::to_string(m) +
                                              " beyond series order " + std::to_string(order_));
  return m < static_cast<int>(c_.size()) ? c_[m] : Rational(0);
}

Series Series::derivative() const {
  if (order_ == 0 && !exact()) throw Error(Errc::insufficient_order, "derivative of an order-0 series");
  std::vector<Rational> d;
  for (std::size_t m = 1; m < c_.size(); ++m) d.push_back(c_[m] * static_cast<long>(m));
  return Series(std::move(d), exact() ? kExact : order_ - 1);
}

Series Series::operator+(const Series& o) const {
  int ord = std::min(order_, o.order_);
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t m = 0; m < r.size(); ++m) {
    if (m < c_.size()) r[m] += c_[m];
    if (m < o.c_.size()) r[m] += o.c_[m];
  }
  return Series(std::move(r), ord);
}

Series Series::operator-(const Series& o) const { return *this + o.scaled(-1); }

Series Series::operator*(const Series& o) const {
  int ord = std::min(order_, o.order_);
  if (c_.empty() || o.c_.empty()) return Series({}, ord);
  std::size_t len = c_.size() + o.c_.size() - 1;
  if (ord < kExact / 2) len = std::min<std::size_t>(len, static_cast<std::size_t>(ord) + 1);
  std::vector<Rational> r(len);
  for (std::size_t a = 0; a < c_.size() && a < len; ++a)
    for (std::size_t b = 0; b < o.c_.size() && a + b < len; ++b) r[a + b] += c_[a] * o.c_[b];
  return Series(std::move(r), ord);
}

Series Series::scaled(const Rational& c) const {
  std::vector<Rational> r = c_;
  for (auto& v : r) v *= c;
  return Series(std::move(r), order_);
}

Series Series::times_t() const {
  std::vector<Rational> r;
  r.reserve(c_.size() + 1);
  r.push_back(0);
  r.insert(r.end(), c_.begin(), c_.end());
  return Series(std::move(r), exact() ? kExact : order_ + 1);
}

Series Series::reciprocal() const {
  Rational c0 = (*this)[0];
  if (c0 == 0) throw Error(Errc::zero_constant_term, "reciprocal of a series vanishing at t=0");
  if (exact() && c_.size() > 1)
    throw Error(Errc::invalid_argument, "reciprocal of a non-constant exact polynomial needs an order");
  int ord = order_;
  int len = exact() ? 1 : ord + 1;
  std::vector<Rational> r(len);
  r[0] = 1 / c0;
  for (int m = 1; m < len; ++m) {
    Rational s = 0;
    for (int j = 1; j <= m; ++j) s += (*this)[j] * r[m - j];
    r[m] = -s / c0;
  }
  return Series(std::move(r), ord);
}

Series Series::truncated(int order) const {
  return Series(c_, std::min(order_, order));
}

Series Series::rescaled_argument(const Rational& c) const {
  std::vector<Rational> r = c_;
  Rational p = 1;
  for (auto& v : r) {
    v *= p;
    p *= c;
  }
  return Series(std::move(r), order_);
}

}  // namespace kahler
