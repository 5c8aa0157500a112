#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kahler/jet.hpp"
#include "kahler/jet_matrix.hpp"

#include <random>

using namespace kahler;

namespace {

Monomial mono(std::initializer_list<int> p, std::initializer_list<int> q) {
  return Monomial(MultiIndex(p), MultiIndex(q));
}

Jet t1(int n, int D) { return Jet::monomial(n, MultiIndex::unit(n, 0), MultiIndex::unit(n, 0), 1, D); }

Jet random_jet(std::mt19937& rng, int n, int D, int terms) {
  std::uniform_int_distribution<int> coef(-5, 5), den(1, 4), ex(0, 2);
  Jet::Terms t;
  for (int i = 0; i < terms; ++i) {
    std::vector<int> p(n), q(n);
    for (int v = 0; v < n; ++v) {
      p[v] = ex(rng);
      q[v] = ex(rng);
    }
    Monomial m{MultiIndex(p), MultiIndex(q)};
    if (m.degree() > D) continue;
    t[m] += fraction(coef(rng), den(rng));
  }
  return Jet::from_terms(n, D, t);
}

}  // namespace

TEST_CASE("multi-index basics") {
  MultiIndex p{2, 0, 1};
  CHECK(p.total() == 3);
  CHECK(p.factorial() == 2);
  CHECK(MultiIndex::unit(3, 1) == MultiIndex{0, 1, 0});
  CHECK_THROWS(MultiIndex{1, -1});
}

TEST_CASE("jet_monomial") {
  Jet a = Jet::monomial(1, MultiIndex{1}, MultiIndex{1}, 1, 4);
  CHECK(a.valid_degree() == 4);
  CHECK(a.size() == 1);
  CHECK(a.coefficient(mono({1}, {1})) == 1);

  Jet b = Jet::monomial(2, MultiIndex{1, 0}, MultiIndex{0, 1}, -1, 2);
  CHECK(b.coefficient(mono({1, 0}, {0, 1})) == -1);

  try {
    Jet::monomial(1, MultiIndex{3}, MultiIndex{0}, 1, 2);
    FAIL("expected degree overflow");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::degree_overflow);
  }
}

TEST_CASE("jet arithmetic and truncation") {
  Jet z = Jet::coordinate(1, 0), zb = Jet::coordinate(1, 0, Kind::antiholomorphic);
  CHECK(z * zb == Jet::monomial(1, MultiIndex{1}, MultiIndex{1}, 1, kExact));

  Jet one_t = Jet::constant(1, 1, 2) + t1(1, 2);
  Jet sq = one_t * one_t;
  CHECK(sq.valid_degree() == 2);
  CHECK(sq.coefficient(mono({0}, {0})) == 1);
  CHECK(sq.coefficient(mono({1}, {1})) == 2);
  CHECK(sq.size() == 2);

  Jet j = one_t;
  CHECK((j + j.scaled(-1)).is_zero());

  CHECK_THROWS_AS(Jet::coordinate(1, 0) + Jet::coordinate(2, 0), Error);
  CHECK_THROWS_AS(sq.coefficient(mono({2}, {2})), Error);
}

TEST_CASE("jet_derive") {
  Jet j = Jet::monomial(1, MultiIndex{2}, MultiIndex{1}, 1, 6);
  Jet d = j.derive(0, Kind::holomorphic);
  CHECK(d.valid_degree() == 5);
  CHECK(d == Jet::monomial(1, MultiIndex{1}, MultiIndex{1}, 2, 5));

  Jet z1sq = Jet::monomial(2, MultiIndex{2, 0}, MultiIndex{0, 0}, 1, 4);
  CHECK(z1sq.derive(1, Kind::antiholomorphic).is_zero());

  Jet q = Jet::monomial(1, MultiIndex{2}, MultiIndex{2}, 1, 4);
  CHECK(q.derive(0, Kind::holomorphic).derive(0, Kind::antiholomorphic) ==
        Jet::monomial(1, MultiIndex{1}, MultiIndex{1}, 4, 2));

  try {
    Jet::constant(1, 1, 0).derive(0, Kind::holomorphic);
    FAIL("expected validity exhausted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::validity_exhausted);
  }
}

TEST_CASE("jet_eval0") {
  CHECK((Jet::constant(1, 1, 2) + t1(1, 2).scaled(2)).eval0() == 1);
  CHECK(Jet::monomial(2, MultiIndex{1, 0}, MultiIndex{0, 1}, 1, 2).eval0() == 0);
  CHECK(Jet(3, 4).eval0() == 0);
}

TEST_CASE("reciprocal and log1p") {
  Jet one_t = Jet::constant(1, 1, 4) + t1(1, 4);
  Jet r = jet_reciprocal(one_t);
  CHECK(r.coefficient(mono({0}, {0})) == 1);
  CHECK(r.coefficient(mono({1}, {1})) == -1);
  CHECK(r.coefficient(mono({2}, {2})) == 1);
  CHECK(r.size() == 3);

  Jet l = jet_log1p(t1(1, 4));
  CHECK(l.coefficient(mono({1}, {1})) == 1);
  CHECK(l.coefficient(mono({2}, {2})) == Rational(-1, 2));
  CHECK(l.size() == 2);

  try {
    jet_reciprocal(t1(1, 4));
    FAIL("expected zero constant term");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::zero_constant_term);
  }
  try {
    jet_log1p(one_t);
    FAIL("expected nonzero constant term");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::nonzero_constant_term);
  }
}

TEST_CASE("matrix operations") {
  int n = 1;
  JetMatrix m(2, 2, n, 2);
  m.set(0, 0, Jet::constant(n, 1, 2) + t1(n, 2));
  m.set(1, 1, Jet::constant(n, 1, 2));
  CHECK(det(m) == Jet::constant(n, 1, 2) + t1(n, 2));

  JetMatrix d1(1, 1, n, 2);
  d1.set(0, 0, Jet::constant(n, 1, 2) + t1(n, 2));
  JetMatrix inv = inverse(d1);
  CHECK(inv(0, 0) == Jet::constant(n, 1, 2) - t1(n, 2));

  JetMatrix e12(2, 2, n, kExact);
  e12.set(0, 1, Jet::coordinate(n, 0));
  JetMatrix c = e12.conj();
  CHECK(c(0, 1) == Jet::coordinate(n, 0, Kind::antiholomorphic));
  CHECK(c(1, 0).is_zero());
  CHECK(e12.transpose()(1, 0) == Jet::coordinate(n, 0));

  JetMatrix rect(2, 3, n, 2);
  CHECK_THROWS_AS(det(rect), Error);
  JetMatrix sing(1, 1, n, 2);
  sing.set(0, 0, t1(n, 2));
  try {
    inverse(sing);
    FAIL("expected singular");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::singular);
  }
}

TEST_CASE("substitute_radial") {
  Jet a = substitute_radial(Series::polynomial({0, 1}), 2, 2);
  CHECK(a == t1(2, 2) + Jet::monomial(2, MultiIndex{0, 1}, MultiIndex{0, 1}, 1, 2));

  Jet b = substitute_radial(Series({0, 1, Rational(-1, 2), Rational(1, 3)}, 3), 1, 6);
  CHECK(b.coefficient(mono({1}, {1})) == 1);
  CHECK(b.coefficient(mono({2}, {2})) == Rational(-1, 2));
  CHECK(b.coefficient(mono({3}, {3})) == Rational(1, 3));

  try {
    substitute_radial(Series({0, 1}, 1), 1, 4);
    FAIL("expected insufficient order");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::insufficient_order);
  }
}

TEST_CASE("ring axioms at matched truncation (seeded)") {
  std::mt19937 rng(20240501);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + trial % 3, D = 4 + trial % 3;
    Jet a = random_jet(rng, n, D, 8), b = random_jet(rng, n, D, 8), c = random_jet(rng, n, D, 8);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a + b) - b == a);
  }
}

TEST_CASE("derivative commutation (seeded)") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + trial % 2;
    Jet j = random_jet(rng, n, 6, 12);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        CHECK(j.derive(i, Kind::holomorphic).derive(k, Kind::antiholomorphic) ==
              j.derive(k, Kind::antiholomorphic).derive(i, Kind::holomorphic));
        CHECK(j.derive(i, Kind::holomorphic).derive(k, Kind::holomorphic) ==
              j.derive(k, Kind::holomorphic).derive(i, Kind::holomorphic));
      }
  }
}

TEST_CASE("reciprocal and inverse round trips (seeded)") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + trial % 2;
    Jet j = random_jet(rng, n, 5, 6).filtered([](const Monomial& m) { return m.degree() > 0; }) +
            Jet::constant(n, fraction(trial + 1, 3), 5);
    Jet prod = j * jet_reciprocal(j);
    CHECK(prod == Jet::constant(n, 1, 5));

    JetMatrix m(2, 2, n, 4);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        Jet e = random_jet(rng, n, 4, 4).filtered([](const Monomial& x) { return x.degree() > 0; });
        if (r == c) e = e + Jet::constant(n, r + 2, 4);
        m.set(r, c, e);
      }
    JetMatrix id = m * inverse(m);
    CHECK(id == JetMatrix::identity(2, n, 4));
  }
}

TEST_CASE("truncation stability of the ring operations (seeded)") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Jet a = random_jet(rng, 2, 6, 10), b = random_jet(rng, 2, 6, 10);
    Jet lo = (a.truncated(4) * b.truncated(4));
    CHECK(lo == (a * b).truncated(4));
    Jet s = a.filtered([](const Monomial& m) { return m.degree() > 0; });
    CHECK(jet_log1p(s.truncated(4)) == jet_log1p(s).truncated(4));
  }
}

TEST_CASE("series") {
  Series f = Series::polynomial({1, 2, 3});
  CHECK(f[5] == 0);
  CHECK(f.derivative() == Series::polynomial({2, 6}));
  Series g({1, 1}, 3);
  Series r = g.reciprocal();
  CHECK(r[0] == 1);
  CHECK(r[1] == -1);
  CHECK(r[3] == -1);
  CHECK_THROWS_AS(r[4], Error);
  CHECK(Series::polynomial({0, 2}).rescaled_argument(Rational(1, 2)) == Series::polynomial({0, 1}));
}
