#pragma once

// Fitting Δ^k φ(0) = p_k(Δ_c) φ(0) at the origin over a sufficient set of
// monomials, or producing the first monomial that refutes it.

#include "kahler/metric.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace kahler {

/// p_k(x) = Σ_{l=1..k} a_{k,l} x^l. coeffs[l-1] = a_{k,l}.
struct LaplacePolynomial {
  int k = 0;
  std::vector<Rational> coeffs;

  static LaplacePolynomial monomial_power(int k);  // x^k
  Rational coeff(int l) const;                     // 0 outside 1..k
  bool monic() const { return k >= 1 && coeff(k) == 1; }
  /// Σ a_l (Δ_c)^l φ(0) in the frame with origin diagonal `diag`.
  Rational apply(const Jet& phi, const std::vector<Rational>& diag) const;

  friend bool operator==(const LaplacePolynomial&, const LaplacePolynomial&) = default;
};

std::string to_string(const LaplacePolynomial& p);

enum class WitnessKind { off_diagonal_nonzero, diagonal_inconsistent, non_monic };
const char* witness_kind_name(WitnessKind k);

struct ViolationWitness {
  WitnessKind kind = WitnessKind::off_diagonal_nonzero;
  int n = 0;
  Monomial monomial;
  /// Rescaled Δ^k value at `monomial` (raw value for off-diagonal monomials).
  Rational lhs = 0;
  /// What the fitted polynomial demands at `monomial`.
  Rational expected = 0;
  /// Diagonal monomial that fixed the coefficient a_{k,p} (diagonal_inconsistent only).
  std::optional<Monomial> reference;
  Rational reference_value = 0;
};

struct FitResult {
  int k = 0;
  std::variant<LaplacePolynomial, ViolationWitness> outcome;

  bool fitted() const { return std::holds_alternative<LaplacePolynomial>(outcome); }
  const LaplacePolynomial& polynomial() const { return std::get<LaplacePolynomial>(outcome); }
  const ViolationWitness& witness() const { return std::get<ViolationWitness>(outcome); }
};

/// All z^P z̄^Q with |P|+|Q| <= 2k, by ascending total degree and, within one
/// degree, descending lexicographic order of (P, Q).
std::vector<Monomial> monomial_test_set(int n, int k);

/// Δ^k(z^P z̄^Q)(0) · Π d_i^{(P_i+Q_i)/2}. Throws invalid_argument when the
/// factor is irrational and the value is nonzero.
Rational rescaled_value(const MetricJet& m, const Monomial& mono, int k);
Rational rescaled_value(DeltaFunctional& f, const MetricJet& m, const Monomial& mono, int k);

FitResult fit_pk(const MetricJet& m, int k);
FitResult fit_pk(DeltaFunctional& f, const MetricJet& m, int k);

/// k = 1..k_max, stopping after the first violation.
std::vector<FitResult> check_delta_property(const MetricJet& m, int k_max);

}  // namespace kahler
