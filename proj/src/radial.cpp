#include "kahler/radial.hpp"

#include <algorithm>

namespace kahler {

RadialProfile make_profile(std::string name, Series phi) {
  if (phi.order() < 1) throw Error(Errc::insufficient_order, "radial profile needs Φ to order t^1");
  if (phi[1] <= 0)
    throw Error(Errc::invalid_argument, "radial profile needs Φ'(0) > 0, got " + to_string(phi[1]));
  RadialProfile p;
  p.name = std::move(name);
  p.phi = std::move(phi);
  p.normalized = p.phi[1] == 1;
  return p;
}

RadialProfile profile_by_name(std::string_view name, int order) {
  if (order < 1) throw Error(Errc::insufficient_order, "profile order must be >= 1");
  std::vector<Rational> c(order + 1, Rational(0));
  if (name == "fubini-study") {
    for (int m = 1; m <= order; ++m) c[m] = Rational(m % 2 == 1 ? 1 : -1, m);
    return make_profile(std::string(name), Series(c, order));
  }
  if (name == "hyperbolic") {
    for (int m = 1; m <= order; ++m) c[m] = Rational(1, m);
    return make_profile(std::string(name), Series(c, order));
  }
  if (name == "flat") return make_profile("flat", Series::polynomial({0, 1}));
  throw Error(Errc::unknown_space, "unknown radial profile '" + std::string(name) + "'");
}

RadialProfile normalize(const RadialProfile& profile) {
  Rational d = profile.phi[1];
  if (d <= 0) throw Error(Errc::invalid_argument, "cannot normalize: Φ'(0) <= 0");
  RadialProfile out = profile;
  out.phi = profile.phi.rescaled_argument(1 / d);
  out.normalized = true;
  return out;
}

PsiPair psi_functions(const RadialProfile& profile, int order) {
  Series phi = order >= 0 ? profile.phi.truncated(order) : profile.phi;
  if (phi.exact())
    throw Error(Errc::invalid_argument, "psi functions of an exact profile need a working order");
  if (phi.order() < 2) throw Error(Errc::insufficient_order, "psi functions need Φ to order t^2");
  Series d1 = phi.derivative();
  Series d2 = d1.derivative();
  Series denom = d1 * (d1 + d2.times_t());
  if (denom[0] == 0) throw Error(Errc::zero_constant_term, "Φ'(Φ' + tΦ'') vanishes at t = 0");
  return {d1.reciprocal(), d2 * denom.reciprocal()};
}

Rational c_constant(const Series& psi, const MultiIndex& P, int l) {
  int n = P.size();
  int p = P.total();
  if (l < 0) throw Error(Errc::invalid_argument, "negative Laplacian power");
  int d_psi = std::max(0, 2 * (l - p));
  Jet base = substitute_radial(psi, n, d_psi);
  Jet phi = base.shifted_by(Monomial(P, P));
  return euclidean_power_at0(phi, l) / (factorial(p) * P.factorial());
}

Rational c_constant(const Series& psi, int p, int l, int n) {
  std::vector<int> e(n, 0);
  e.at(0) = p;
  return c_constant(psi, MultiIndex(e), l);
}

Rational CTable::at(int p, int l) {
  auto key = std::make_pair(p, l);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  Rational v = c_constant(psi_, p, l, n_);
  cache_.emplace(key, v);
  return v;
}

LaplacePolynomial recursion_step(const LaplacePolynomial& a, CTable& c1, CTable& c2) {
  int k = a.k;
  LaplacePolynomial next;
  next.k = k + 1;
  next.coeffs.assign(k + 1, Rational(0));
  for (int p = 1; p <= k + 1; ++p) {
    Rational s = a.coeff(p - 1);
    for (int l = p; l <= k; ++l) {
      if (a.coeff(l) == 0) continue;
      s += a.coeff(l) * (c1.at(p - 1, l) - Rational(p * p) * c2.at(p, l));
    }
    next.coeffs[p - 1] = s;
  }
  return next;
}

namespace {

Series working_phi(const RadialProfile& normalized, int k_target) {
  int need = std::max(2, k_target);
  if (!normalized.phi.exact() && normalized.phi.order() < need)
    throw Error(Errc::insufficient_order, "p_" + std::to_string(k_target) + " needs Φ to order t^" +
                                              std::to_string(need) + ", profile has t^" +
                                              std::to_string(normalized.phi.order()));
  return normalized.phi.truncated(need);
}

}  // namespace

LaplacePolynomial recursion_step(const LaplacePolynomial& a, const RadialProfile& profile, int n) {
  RadialProfile norm = profile.normalized ? profile : normalize(profile);
  RadialProfile work = norm;
  work.phi = working_phi(norm, a.k + 1);
  PsiPair psi = psi_functions(work);
  CTable c1(psi.psi1, PsiTag::psi1, n), c2(psi.psi2, PsiTag::psi2, n);
  return recursion_step(a, c1, c2);
}

std::vector<LaplacePolynomial> radial_pk(const RadialProfile& profile, int n, int k_max) {
  if (k_max < 1) throw Error(Errc::invalid_argument, "k_max must be positive");
  if (n < 1 || n > kMaxVars) throw Error(Errc::invalid_argument, "dimension out of range");
  std::vector<LaplacePolynomial> out{LaplacePolynomial::monomial_power(1)};
  if (k_max == 1) return out;
  RadialProfile work = profile.normalized ? profile : normalize(profile);
  work.phi = working_phi(work, k_max);
  PsiPair psi = psi_functions(work);
  CTable c1(psi.psi1, PsiTag::psi1, n), c2(psi.psi2, PsiTag::psi2, n);
  while (static_cast<int>(out.size()) < k_max) out.push_back(recursion_step(out.back(), c1, c2));
  return out;
}

Jet radial_potential(const RadialProfile& profile, int n, int D) {
  return substitute_radial(profile.phi, n, D);
}

}  // namespace kahler
