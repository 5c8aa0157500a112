#pragma once

// Kähler metric data at the origin of a coordinate chart and the iterated
// Laplacian evaluations built on it.
//
// Conventions: g(i,j) = ∂_i ∂̄_j Φ and g_inv is the matrix inverse, so the
// Kähler Laplacian reads Δ = Σ_{i,j} g_inv(i,j) ∂_j ∂̄_i.
//
// Coordinates are required to be in diagonal gauge: g(0) = diag(d_1..d_n) with
// every d_i > 0. Identities that are stated in normal coordinates are
// evaluated in the virtual frame x_i = sqrt(d_i) w_i; every quantity they
// involve picks up a rational factor, so no square root is ever taken.

#include "kahler/jet.hpp"
#include "kahler/jet_matrix.hpp"

#include <optional>
#include <unordered_map>
#include <vector>

namespace kahler {

struct MetricJet {
  int n = 0;
  Jet potential;
  JetMatrix g;
  JetMatrix g_inv;
  /// d_i = g(i,i)(0).
  std::vector<Rational> origin_diag;
  /// g(0) = I and Φ has no monomial of total degree 3.
  bool normal_gauge = false;
  /// Φ has no monomial of total degree 3 (first derivatives of g vanish at 0).
  bool rescaled_normal = false;

  int valid_degree() const { return potential.valid_degree(); }
  bool unit_diagonal() const;
};

/// Throws gauge_violation if g(0) is not diagonal with positive entries.
MetricJet metric_from_potential(const Jet& potential);

/// Δφ as a jet.
Jet laplacian_apply(const MetricJet& m, const Jet& phi);

/// Δ^k φ (0) by k explicit applications of the Laplacian.
Rational delta_power_at0(const MetricJet& m, const Jet& phi, int k);

/// (Δ_c)^l φ (0) with the unit Euclidean Laplacian Σ ∂_i ∂̄_i.
Rational euclidean_power_at0(const Jet& phi, int l);
Rational euclidean_power_at0(const MultiIndex& p, const MultiIndex& q, int l);
/// Same with the frame Laplacian Σ d_i^{-1} ∂_i ∂̄_i (Δ_c in x-coordinates).
Rational euclidean_power_at0(const Jet& phi, int l, const std::vector<Rational>& diag);

/// Batch evaluator for φ ↦ Δ^k φ(0) on monomials. Uses
///   Δ^k(z^P z̄^Q)(0) = Σ_{i,j} P_j Q_i · Δ^{k-1}(g_inv(i,j) z^{P-e_j} z̄^{Q-e_i})(0)
/// with per-level memo tables, which is far cheaper than applying the
/// Laplacian monomial by monomial. Not thread-safe.
class DeltaFunctional {
 public:
  explicit DeltaFunctional(const MetricJet& m);

  Rational at(const Monomial& mono, int k);
  Rational apply(const Jet& phi, int k);

 private:
  const MetricJet* m_;
  std::vector<std::unordered_map<Monomial, Rational, MonomialHash>> memo_;
};

struct EinsteinReport {
  std::optional<Rational> lambda;
  Rational residual = 0;
};

/// Reads λ from Σ_h ∂_h ∂̄_h g^{ij̄}(0) = λ δ^{ij} in the normal frame.
EinsteinReport einstein_constant(const MetricJet& m);

struct K2Check {
  bool holds = false;
  Rational lhs = 0;        // Δ^2 φ(0)
  Rational rhs = 0;        // (Δ_c^2 + λ Δ_c) φ(0)
  Rational discrepancy = 0;
};

K2Check check_k2_identity(const MetricJet& m, const Jet& phi);

/// max |∂^3 g_{αβ̄} / ∂z_γ ∂z̄_δ ∂z_ε (0)| over all index tuples.
Rational third_deriv_obstruction(const MetricJet& m);

/// max over (i,j,h,k,l) of |∂_{hk̄l}g^{ij̄} + ∂_{ik̄l}g^{hj̄} + ∂_{ik̄h}g^{lj̄}
///                       + ∂_{hj̄l}g^{ik̄} + ∂_{ij̄l}g^{hk̄} + ∂_{ij̄h}g^{lk̄}| at 0.
Rational fifth_order_check(const MetricJet& m);

/// Right-hand side of the cube expansion
///   (Δ_c^3 + 3λΔ_c^2 + λ^2Δ_c)φ + 2Σ ∂_{lh̄}g^{ij̄} ∂_{jhl̄ī}φ + Σ ∂_{lh}g^{ij̄} ∂_{jh̄l̄ī}φ
///   + Σ ∂_{l̄h̄}g^{ij̄} ∂_{jhlī}φ + Σ ∂_{lhl̄h̄}g^{ij̄} ∂_{jī}φ      at 0,
/// evaluated term by term in the normal frame.
Rational laplcube_expansion(const MetricJet& m, const Jet& phi);

/// Derivative ∂^A ∂̄^B of a jet at the origin, A and B packed in `m`.
Rational derivative_at0(const Jet& j, const Monomial& m);

}  // namespace kahler
