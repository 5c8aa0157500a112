// Acceptance suite. One PASS/FAIL line per criterion; nonzero exit if any fails.

#include "kahler/catalog.hpp"
#include "kahler/jet_matrix.hpp"
#include "kahler/radial.hpp"

#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace kahler;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail << what;
    ok = ok && cond;
  }
};

LaplacePolynomial poly(std::vector<Rational> c) {
  LaplacePolynomial p;
  p.k = static_cast<int>(c.size());
  p.coeffs = std::move(c);
  return p;
}

Space space(const std::string& name, int D = 6) { return build_space(parse_space(name), D); }

Monomial mono(std::vector<int> p, std::vector<int> q) { return Monomial(MultiIndex(p), MultiIndex(q)); }

Monomial modsq_pair(int n, int i, int j) {
  std::vector<int> e(n, 0);
  e[i] += 1;
  e[j] += 1;
  return mono(e, e);
}

std::string str(const Rational& q) { return to_string(q); }

// ---------------------------------------------------------------- criteria

void flat_spaces(Check& c) {
  for (int n = 1; n <= 3; ++n) {
    auto fits = check_delta_property(space("flat:n=" + std::to_string(n), 8).metric, 4);
    c.require(fits.size() == 4, "flat: stopped early");
    for (const auto& f : fits)
      c.require(f.fitted() && f.polynomial() == LaplacePolynomial::monomial_power(f.k),
                "flat n=" + std::to_string(n) + ": p_" + std::to_string(f.k) + " != x^k");
  }
}

void projective_line(Check& c) {
  MetricJet m = space("cp:n=1", 6).metric;
  auto fits = check_delta_property(m, 3);
  auto rec = radial_pk(profile_by_name("fubini-study", 6), 1, 3);
  c.require(fits.size() == 3 && fits[1].fitted() && fits[2].fitted(), "CP1: fit failed");
  if (!c.ok) return;
  c.require(fits[1].polynomial() == poly({2, 1}), "CP1: p2 = " + to_string(fits[1].polynomial()));
  c.require(fits[2].polynomial() == poly({8, 10, 1}), "CP1: p3 = " + to_string(fits[2].polynomial()));
  c.require(rec[1] == fits[1].polynomial() && rec[2] == fits[2].polynomial(), "CP1: recursion differs");
  Rational lambda = *einstein_constant(m).lambda;
  Rational v = DeltaFunctional(m).at(mono({2}, {2}), 3);
  c.require(lambda == 2 && v == 40 && v == 12 * lambda + 16, "CP1: Δ^3|z|^4 = " + str(v));
}

void space_forms(Check& c) {
  for (int sign : {1, -1})
    for (int n : sign > 0 ? std::vector<int>{2, 3} : std::vector<int>{1, 2}) {
      std::string name = (sign > 0 ? "cp:n=" : "ch:n=") + std::to_string(n);
      MetricJet m = space(name, 6).metric;
      EinsteinReport e = einstein_constant(m);
      c.require(e.lambda && *e.lambda == sign * (n + 1), name + ": λ wrong");
      auto fits = check_delta_property(m, 3);
      auto rec = radial_pk(profile_by_name(sign > 0 ? "fubini-study" : "hyperbolic", 6), n, 3);
      c.require(fits.size() == 3, name + ": fit failed");
      if (!c.ok) return;
      c.require(fits[1].fitted() && fits[1].polynomial() == poly({sign * (n + 1), 1}), name + ": p2 wrong");
      for (int k = 1; k <= 3; ++k)
        c.require(fits[k - 1].fitted() && fits[k - 1].polynomial() == rec[k - 1],
                  name + ": radial vs direct differ at k=" + std::to_string(k));
    }
}

void rank_two_pattern(Check& c, const std::string& name, bool verbose) {
  Space s = space(name, 6);
  EinsteinReport e = einstein_constant(s.metric);
  c.require(e.lambda.has_value(), name + ": not Einstein");
  if (!c.ok) return;
  ObstructionReport r = obstruction_report(s);
  int sgn = r.lambda > 0 ? 1 : -1;
  c.require(r.val1 == 12 * r.lambda + 16 * sgn, name + ": val1 = " + str(r.val1));
  c.require(r.val2 == 6 * r.lambda, name + ": val2 = " + str(r.val2));
  c.require(r.requirement == 16 * sgn, name + ": requirement = " + str(r.requirement));
  auto fits = check_delta_property(s.metric, 3);
  c.require(fits.size() == 3 && fits[0].fitted() && fits[1].fitted() && !fits[2].fitted(),
            name + ": expected pass at k=1,2 and failure at k=3");
  if (!c.ok) return;
  const ViolationWitness& w = fits[2].witness();
  auto again = fit_pk(s.metric, 3);
  c.require(!again.fitted() && again.witness().monomial == w.monomial && again.witness().lhs == w.lhs,
            name + ": witness not reproducible");
  c.require(rescaled_value(s.metric, w.monomial, 3) == w.lhs && w.lhs != w.expected, name + ": witness invalid");
  if (verbose)
    c.detail << name << ": λ=" << str(r.lambda) << " val1=" << str(r.val1) << " val2=" << str(r.val2)
             << " witness " << monomial_label(w.monomial, s.metric.n) << " " << str(w.lhs) << " vs "
             << str(w.expected) << "; ";
}

void grassmannian(Check& c) { rank_two_pattern(c, "grassmannian:k=2,N=4", true); }

void other_rank_two(Check& c) {
  for (const std::string s : {"sp:N=2", "so2n:N=4", "quadric-even:N=4", "quadric-odd:N=4"}) rank_two_pattern(c, s, false);
}

void duality(Check& c) {
  auto pair_sum = [&](const std::string& a, const std::string& b) {
    MetricJet ma = space(a).metric, mb = space(b).metric;
    DeltaFunctional fa(ma), fb(mb);
    for (int i = 0; i < ma.n; ++i)
      for (int j = i; j < ma.n; ++j) {
        Monomial m = modsq_pair(ma.n, i, j);
        c.require(fa.at(m, 3) + fb.at(m, 3) == 0, a + " / " + b + ": sum nonzero at " + monomial_label(m, ma.n));
      }
  };
  pair_sum("cp:n=1", "ch:n=1");
  pair_sum("cp:n=2", "ch:n=2");
  pair_sum("grassmannian:k=2,N=4", "dual(grassmannian:k=2,N=4)");
}

Jet perturbed_potential(int D) {
  Jet a = Jet::monomial(1, mono({1}, {1}), 1, D);
  Jet b = Jet::monomial(1, mono({3}, {2}), Rational(1, 12), D);
  Jet cc = Jet::monomial(1, mono({2}, {3}), Rational(1, 12), D);
  return a + b + cc;
}

void parallel_curvature(Check& c) {
  for (const std::string s :
       {"flat:n=2", "cp:n=1", "cp:n=2", "cp:n=3", "ch:n=1", "ch:n=2", "grassmannian:k=2,N=4", "grassmannian:k=2,N=5",
        "so2n:N=4", "sp:N=2", "quadric-even:N=4", "quadric-odd:N=4", "dual(grassmannian:k=2,N=4)",
        "product(cp:n=1;cp:n=1)"}) {
    MetricJet m = space(s).metric;
    c.require(third_deriv_obstruction(m) == 0, s + ": third-order obstruction nonzero");
    c.require(fifth_order_check(m) == 0, s + ": fifth-order sum nonzero");
  }
  MetricJet p = metric_from_potential(perturbed_potential(6));
  c.require(third_deriv_obstruction(p) != 0, "perturbed: third-order obstruction vanishes");
  c.require(fifth_order_check(p) != 0, "perturbed: fifth-order sum vanishes");
}

std::vector<RadialProfile> psi_corpus() {
  auto log_series = [](int order, bool hyperbolic) {
    std::vector<Rational> co(order + 1, Rational(0));
    for (int m = 1; m <= order; ++m) co[m] = hyperbolic ? Rational(1, m) : Rational(m % 2 ? 1 : -1, m);
    return Series(co, order);
  };
  return {make_profile("log(1+t)", log_series(8, false)), make_profile("-log(1-t)", log_series(8, true)),
          make_profile("t", Series::polynomial({0, 1})),
          make_profile("t+t^2/2", Series::polynomial({0, 1, Rational(1, 2)})),
          make_profile("t-t^3/6", Series::polynomial({0, 1, 0, Rational(-1, 6)}))};
}

void radial_constants(Check& c) {
  for (const auto& prof : psi_corpus()) {
    PsiPair psi = psi_functions(prof, 8);
    for (int n = 1; n <= 3; ++n) {
      for (int l = 0; l <= 4; ++l)
        for (int p = l + 1; p <= 4; ++p) {
          c.require(c_constant(psi.psi1, p, l, n) == 0, prof.name + ": C1 nonzero below diagonal");
          c.require(c_constant(psi.psi2, p, l, n) == 0, prof.name + ": C2 nonzero below diagonal");
        }
      for (int h = 0; h <= 4; ++h) c.require(c_constant(psi.psi1, h, h, n) == 1, prof.name + ": C1 diagonal != 1");
    }
    for (int p = 1; p <= 4; ++p)
      for (int l = 0; l <= 4; ++l) {
        Rational r1 = c_constant(psi.psi1, p, l, 3), r2 = c_constant(psi.psi2, p, l, 3);
        int reps = 0;
        for (int a = 0; a <= p; ++a)
          for (int b = 0; a + b <= p; ++b) {
            MultiIndex P{a, b, p - a - b};
            c.require(c_constant(psi.psi1, P, l) == r1 && c_constant(psi.psi2, P, l) == r2,
                      prof.name + ": C depends on the representative");
            ++reps;
          }
        c.require(reps >= 3, "too few representatives");
      }
  }
}

Jet random_jet(std::mt19937& rng, int n, int D, int terms) {
  std::uniform_int_distribution<int> co(-5, 5), den(1, 4), ex(0, 2);
  Jet::Terms t;
  for (int i = 0; i < terms; ++i) {
    std::vector<int> p(n), q(n);
    for (int v = 0; v < n; ++v) {
      p[v] = ex(rng);
      q[v] = ex(rng);
    }
    Monomial m{MultiIndex(p), MultiIndex(q)};
    if (m.degree() <= D) t[m] += fraction(co(rng), den(rng));
  }
  return Jet::from_terms(n, D, t);
}

Monomial permuted(const Monomial& m, const std::vector<int>& perm) {
  int n = static_cast<int>(perm.size());
  std::vector<int> p(n), q(n);
  for (int i = 0; i < n; ++i) {
    p[perm[i]] = m.hol(i);
    q[perm[i]] = m.antihol(i);
  }
  return mono(p, q);
}

void property_suites(Check& c) {
  std::mt19937 rng(20240917);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + trial % 3;
    Jet a = random_jet(rng, n, 6, 8), b = random_jet(rng, n, 6, 8), d = random_jet(rng, n, 6, 8);
    c.require((a * b) * d == a * (b * d) && a * (b + d) == a * b + a * d && a * b == b * a,
              "ring axioms fail");
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        c.require(a.derive(i, Kind::holomorphic).derive(k, Kind::antiholomorphic) ==
                      a.derive(k, Kind::antiholomorphic).derive(i, Kind::holomorphic),
                  "derivatives do not commute");
  }

  for (const std::string s : {"cp:n=2", "grassmannian:k=2,N=4", "sp:N=2", "quadric-even:N=4"}) {
    MetricJet m = space(s).metric;
    c.require(m.g * m.g_inv == JetMatrix::identity(m.n, m.n, m.g_inv.valid_degree()), s + ": g g^-1 != I");
  }

  // D vs D+2 on every pipeline output
  for (const std::string s : {"cp:n=2", "ch:n=1", "grassmannian:k=2,N=4", "sp:N=2"}) {
    MetricJet lo = space(s, 6).metric, hi = space(s, 8).metric;
    c.require(einstein_constant(lo).lambda == einstein_constant(hi).lambda, s + ": λ unstable");
    c.require(third_deriv_obstruction(lo) == third_deriv_obstruction(hi), s + ": third order unstable");
    c.require(fifth_order_check(lo) == fifth_order_check(hi), s + ": fifth order unstable");
    auto fl = check_delta_property(lo, 3), fh = check_delta_property(hi, 3);
    c.require(fl.size() == fh.size(), s + ": fits unstable");
    for (std::size_t i = 0; i < fl.size() && i < fh.size(); ++i) {
      c.require(fl[i].fitted() == fh[i].fitted(), s + ": fit status unstable");
      if (fl[i].fitted() && fh[i].fitted()) c.require(fl[i].polynomial() == fh[i].polynomial(), s + ": p_k unstable");
      if (!fl[i].fitted() && !fh[i].fitted())
        c.require(fl[i].witness().monomial == fh[i].witness().monomial && fl[i].witness().lhs == fh[i].witness().lhs,
                  s + ": witness unstable");
    }
  }

  for (const std::string s : {"cp:n=2", "ch:n=2", "grassmannian:k=2,N=4", "sp:N=2"}) {
    MetricJet m = space(s).metric;
    DeltaFunctional f(m);
    for (const Monomial& t : monomial_test_set(m.n, 3)) {
      Jet phi = Jet::monomial(m.n, t, 1, kExact);
      c.require(laplcube_expansion(m, phi) == f.at(t, 3), s + ": cube expansion differs at " + monomial_label(t, m.n));
      if (!c.ok) return;
    }
  }

  for (const std::string s : {"cp:n=2", "ch:n=3", "grassmannian:k=2,N=4"}) {
    MetricJet m = space(s).metric;
    DeltaFunctional f(m);
    std::vector<int> perm(m.n);
    for (int i = 0; i < m.n; ++i) perm[i] = (i + 1) % m.n;
    // Gr(2,4): swapping rows with columns, w_ab -> w_ba, is an isometry of the potential
    if (s.starts_with("grassmannian")) perm = {0, 2, 1, 3};
    for (int k = 1; k <= 3; ++k)
      for (const Monomial& t : monomial_test_set(m.n, k)) {
        Rational v = f.at(t, k);
        c.require(f.at(t.conj(), k) == v, s + ": Δ^k value not real");
        c.require(f.at(permuted(t, perm), k) == v, s + ": Δ^k value not permutation equivariant");
      }
  }
}

void product(Check& c) {
  auto fits = check_delta_property(space("product(cp:n=1;cp:n=1)").metric, 3);
  c.require(fits.size() == 3 && fits[0].fitted() && fits[1].fitted() && !fits[2].fitted(),
            "CP1 x CP1: expected failure exactly at k=3");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<void(Check&)> run;
  };
  std::vector<Criterion> criteria = {
      {1, "flat spaces have p_k = x^k", flat_spaces},
      {2, "CP1 polynomials and Δ^3|z|^4", projective_line},
      {3, "space forms: λ, p_2 and radial recursion", space_forms},
      {4, "Grassmannian(2,4) obstruction", grassmannian},
      {5, "Sp(2), SO(8)/U(4), quadrics obstruction", other_rank_two},
      {6, "compact/noncompact duality at third order", duality},
      {7, "parallel-curvature checks", parallel_curvature},
      {8, "radial constants", radial_constants},
      {9, "property suites", property_suites},
      {10, "CP1 x CP1 fails at k=3", product},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    Check c;
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail << "exception: " << e.what();
    }
    if (!c.ok) ++failures;
    std::string detail = c.detail.str();
    std::cout << "criterion " << cr.id << ": " << (c.ok ? "PASS" : "FAIL") << "  " << cr.title
              << (detail.empty() ? "" : "  [" + detail + "]") << "\n";
  }
  return failures == 0 ? 0 : 1;
}
