#pragma once

// Radial potentials Φ(t), t = |z_1|^2 + ... + |z_n|^2, and the recursion that
// produces p_k for them without applying the Kähler Laplacian.

#include "kahler/delta_fit.hpp"

#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace kahler {

struct RadialProfile {
  std::string name;
  Series phi;               // Taylor coefficients of Φ(t)
  bool normalized = false;  // Φ'(0) = 1

  int order() const { return phi.order(); }
  Rational first_derivative_at0() const { return phi[1]; }
};

/// Throws invalid_argument unless Φ'(0) > 0.
RadialProfile make_profile(std::string name, Series phi);

/// fubini-study = log(1+t), hyperbolic = -log(1-t), flat = t; `order` terms.
RadialProfile profile_by_name(std::string_view name, int order);

/// Substitutes t -> t / Φ'(0).
RadialProfile normalize(const RadialProfile& profile);

struct PsiPair {
  Series psi1;  // 1/Φ'
  Series psi2;  // Φ''/(Φ'(Φ' + tΦ''))
};

/// `order` caps the working t-order (required when Φ is an exact polynomial).
PsiPair psi_functions(const RadialProfile& profile, int order = -1);

/// C with (Δ_c)^l(|z^P|^2 ψ(|z|^2))(0) = C · p! P!, computed at P = (p, 0, ..., 0).
Rational c_constant(const Series& psi, int p, int l, int n);
/// Same at an arbitrary representative P.
Rational c_constant(const Series& psi, const MultiIndex& P, int l);

enum class PsiTag { psi1, psi2, custom };

class CTable {
 public:
  CTable(Series psi, PsiTag tag, int n) : psi_(std::move(psi)), tag_(tag), n_(n) {}
  Rational at(int p, int l);
  PsiTag tag() const { return tag_; }
  int n() const { return n_; }

 private:
  Series psi_;
  PsiTag tag_;
  int n_;
  std::map<std::pair<int, int>, Rational> cache_;
};

/// a_{k+1,p} = a_{k,p-1} + Σ_{l=p..k} a_{k,l} (C1_{p-1,l} - p^2 C2_{p,l}).
LaplacePolynomial recursion_step(const LaplacePolynomial& a, CTable& c1, CTable& c2);
LaplacePolynomial recursion_step(const LaplacePolynomial& a, const RadialProfile& profile, int n);

/// p_1 .. p_{k_max}; needs Φ to t-order k_max unless Φ is exact.
std::vector<LaplacePolynomial> radial_pk(const RadialProfile& profile, int n, int k_max);

/// Φ(|z|^2) as a jet in n variables at truncation D.
Jet radial_potential(const RadialProfile& profile, int n, int D);

}  // namespace kahler
