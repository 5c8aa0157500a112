#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kahler/radial.hpp"

using namespace kahler;

namespace {

LaplacePolynomial poly(std::vector<Rational> c) {
  LaplacePolynomial p;
  p.k = static_cast<int>(c.size());
  p.coeffs = std::move(c);
  return p;
}

Series log_series(int order, bool hyperbolic) {
  std::vector<Rational> c(order + 1, Rational(0));
  for (int m = 1; m <= order; ++m) c[m] = hyperbolic ? Rational(1, m) : Rational(m % 2 ? 1 : -1, m);
  return Series(c, order);
}

// Σ_i ∂_i ∂̄_i applied l times by hand, then the constant term.
Rational flat_laplacian_power(Jet f, int l) {
  for (int s = 0; s < l; ++s) {
    Jet next(f.n(), f.valid_degree() - 2);
    for (int i = 0; i < f.n(); ++i)
      next = next + f.derive(i, Kind::holomorphic).derive(i, Kind::antiholomorphic);
    f = next;
  }
  return f.eval0();
}

Rational c_oracle(const Series& psi, const MultiIndex& P, int l) {
  int n = P.size();
  int D = 2 * l;
  Jet zP = Jet::monomial(n, Monomial(P, P), 1, kExact);
  Jet g = substitute_radial(psi.truncated(std::max(0, l)), n, D) * zP;
  return flat_laplacian_power(g.truncated(D), l) / (factorial(P.total()) * P.factorial());
}

std::vector<RadialProfile> oracle_profiles() {
  return {
      make_profile("log(1+t)", log_series(6, false)),
      make_profile("-log(1-t)", log_series(6, true)),
      make_profile("t", Series::polynomial({0, 1})),
      make_profile("t+t^2/2", Series::polynomial({0, 1, Rational(1, 2)})),
      make_profile("t-t^3/6", Series::polynomial({0, 1, 0, Rational(-1, 6)})),
  };
}

}  // namespace

TEST_CASE("profiles") {
  auto fs = profile_by_name("fubini-study", 4);
  CHECK(fs.normalized);
  CHECK(fs.phi == log_series(4, false));
  CHECK(profile_by_name("hyperbolic", 3).phi == log_series(3, true));
  CHECK(profile_by_name("flat", 3).phi.exact());
  try {
    profile_by_name("sphere", 4);
    FAIL("expected unknown profile");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unknown_space);
  }
  try {
    make_profile("bad", Series::polynomial({0, -1}));
    FAIL("expected invalid argument");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_argument);
  }
  RadialProfile bad{"bad", Series::polynomial({0, 0, 1}), false};
  CHECK_THROWS_AS(normalize(bad), Error);

  auto two = make_profile("2log(1+t)", log_series(4, false).scaled(2));
  CHECK_FALSE(two.normalized);
  auto n = normalize(two);
  CHECK(n.normalized);
  CHECK(n.phi[1] == 1);
  CHECK(n.phi[2] == Rational(-1, 4));
}

TEST_CASE("psi_functions") {
  // log(1+t): ψ1 = 1+t, ψ2 = -(1+t)
  auto fs = psi_functions(profile_by_name("fubini-study", 6));
  for (int m = 0; m <= 4; ++m) {
    CHECK(fs.psi1[m] == (m <= 1 ? 1 : 0));
    CHECK(fs.psi2[m] == (m <= 1 ? -1 : 0));
  }
  // -log(1-t): ψ1 = 1-t, ψ2 = 1-t
  auto ch = psi_functions(profile_by_name("hyperbolic", 6));
  CHECK(ch.psi1[1] == -1);
  CHECK(ch.psi2[0] == 1);
  CHECK(ch.psi2[1] == -1);
  CHECK(ch.psi2[2] == 0);

  auto flat = psi_functions(profile_by_name("flat", 1), 4);
  CHECK(flat.psi1[0] == 1);
  CHECK(flat.psi1[3] == 0);
  CHECK(flat.psi2[2] == 0);
  CHECK_THROWS_AS(psi_functions(profile_by_name("flat", 1)), Error);
}

TEST_CASE("c_constant examples") {
  auto fs = psi_functions(profile_by_name("fubini-study", 8));
  CHECK(c_constant(fs.psi2, 1, 1, 1) == -1);
  CHECK(c_constant(fs.psi1, 1, 2, 1) == 4);
  CHECK(c_constant(fs.psi1, MultiIndex{1}, 2) == c_oracle(fs.psi1, MultiIndex{1}, 2));
}

TEST_CASE("c_constant against the flat-Laplacian oracle") {
  for (const auto& prof : oracle_profiles()) {
    auto psi = psi_functions(prof, 6);
    for (int n = 1; n <= 3; ++n)
      for (int p = 0; p <= 3; ++p)
        for (int l = 0; l <= 4; ++l) {
          std::vector<int> e(n, 0);
          e[0] = p;
          CHECK(c_constant(psi.psi1, p, l, n) == c_oracle(psi.psi1, MultiIndex(e), l));
          CHECK(c_constant(psi.psi2, p, l, n) == c_oracle(psi.psi2, MultiIndex(e), l));
        }
  }
}

TEST_CASE("C is independent of the representative P") {
  auto psi = psi_functions(profile_by_name("fubini-study", 8));
  int n = 3;
  for (int p = 0; p <= 3; ++p)
    for (int l = p; l <= 4; ++l) {
      Rational ref = c_constant(psi.psi1, p, l, n);
      Rational ref2 = c_constant(psi.psi2, p, l, n);
      for (int a = 0; a <= p; ++a)
        for (int b = 0; a + b <= p; ++b) {
          MultiIndex P{a, b, p - a - b};
          CHECK(c_constant(psi.psi1, P, l) == ref);
          CHECK(c_constant(psi.psi2, P, l) == ref2);
        }
    }
}

TEST_CASE("C vanishes below the diagonal and equals ψ(0) on it") {
  for (const auto& prof : oracle_profiles()) {
    auto psi = psi_functions(prof, 6);
    for (int n = 1; n <= 3; ++n)
      for (int p = 0; p <= 4; ++p) {
        for (int l = 0; l < p; ++l) {
          CHECK(c_constant(psi.psi1, p, l, n) == 0);
          CHECK(c_constant(psi.psi2, p, l, n) == 0);
        }
        CHECK(c_constant(psi.psi1, p, p, n) == 1);
        CHECK(c_constant(psi.psi2, p, p, n) == psi.psi2[0]);
      }
  }
}

TEST_CASE("recursion examples") {
  auto cp1 = radial_pk(profile_by_name("fubini-study", 6), 1, 3);
  REQUIRE(cp1.size() == 3);
  CHECK(cp1[0] == poly({1}));
  CHECK(cp1[1] == poly({2, 1}));
  CHECK(cp1[2] == poly({8, 10, 1}));

  for (int n = 1; n <= 4; ++n) {
    auto cpn = radial_pk(profile_by_name("fubini-study", 4), n, 2);
    CHECK(cpn[1] == poly({n + 1, 1}));
    auto chn = radial_pk(profile_by_name("hyperbolic", 4), n, 2);
    CHECK(chn[1] == poly({-(n + 1), 1}));
  }

  auto flat = radial_pk(profile_by_name("flat", 1), 2, 4);
  for (int k = 1; k <= 4; ++k) CHECK(flat[k - 1] == LaplacePolynomial::monomial_power(k));

  // step-by-step agrees with the batch
  LaplacePolynomial a = LaplacePolynomial::monomial_power(1);
  auto prof = profile_by_name("hyperbolic", 6);
  auto batch = radial_pk(prof, 2, 4);
  for (int k = 1; k < 4; ++k) {
    a = recursion_step(a, prof, 2);
    CHECK(a == batch[k]);
  }

  CHECK_THROWS_AS(radial_pk(profile_by_name("fubini-study", 2), 1, 4), Error);
  CHECK_THROWS_AS(radial_pk(profile_by_name("fubini-study", 6), 1, 0), Error);
}

TEST_CASE("recursion agrees with direct fitting") {
  for (const auto& prof : oracle_profiles())
    for (int n = 1; n <= 3; ++n) {
      CAPTURE(prof.name);
      CAPTURE(n);
      auto rec = radial_pk(prof, n, 4);
      MetricJet m = metric_from_potential(radial_potential(prof, n, 8));
      auto fits = check_delta_property(m, 4);
      REQUIRE(fits.size() == 4);
      for (int k = 1; k <= 4; ++k) {
        REQUIRE(fits[k - 1].fitted());
        CHECK(fits[k - 1].polynomial() == rec[k - 1]);
      }
    }
}

TEST_CASE("unnormalized profiles use the rescaled frame") {
  auto two = make_profile("2log(1+t)", log_series(6, false).scaled(2));
  auto rec = radial_pk(two, 2, 3);
  CHECK(rec[1] == poly({Rational(3, 2), 1}));
  MetricJet m = metric_from_potential(radial_potential(two, 2, 6));
  auto fits = check_delta_property(m, 3);
  for (int k = 1; k <= 3; ++k) CHECK(fits[k - 1].polynomial() == rec[k - 1]);
}

TEST_CASE("off-diagonal monomials are annihilated") {
  for (const auto& prof : oracle_profiles()) {
    MetricJet m = metric_from_potential(radial_potential(prof, 2, 6));
    DeltaFunctional f(m);
    for (int k = 1; k <= 3; ++k)
      for (const Monomial& mono : monomial_test_set(2, k))
        if (!mono.is_diagonal()) CHECK(f.at(mono, k) == 0);
  }
}
