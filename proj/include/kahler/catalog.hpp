#pragma once

// Concrete spaces as potential jets: complex space forms, the classical
// Hermitian symmetric spaces in matrix/quadric coordinates, Kähler products
// and compact/noncompact duals.
//
// Coordinates per family (0-based variable indices):
//   grassmannian:k,N  W is (N-k) x k, w_ab -> a*k + b;  Φ = log det(I_k + W̄ᵀW)
//   so2n:N            W skew, w_ij (i<j) row by row;   Φ = 1/2 log det(I_N + W̄ᵀW)
//   sp:N              W symmetric, w_ij (i<=j) row by row; Φ = log det(I_N + W̄W)
//   quadric-even:N    v_2..v_N, then v'_2..v'_N;
//                     Φ = log(1 + Σ|v|^2 + Σ|v'|^2 + 4|Σ v_j v'_j|^2)
//   quadric-odd:N     as above plus u last;
//                     Φ = log(1 + Σ|v|^2 + Σ|v'|^2 + |u|^2 + 4|Σ v_j v'_j - u^2/2|^2)
//   cp:n  log(1 + |z|^2)     ch:n  -log(1 - |z|^2)     flat:n  |z|^2

#include "kahler/delta_fit.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kahler {

enum class Family {
  Flat,
  ProjectiveSpace,
  HyperbolicSpace,
  Grassmannian,
  SO2N_UN,
  SpN_UN,
  QuadricEven,
  QuadricOdd,
  Product,
  Dual,
};

struct SpaceDescriptor {
  Family family = Family::Flat;
  int k = 0;  // Grassmannian
  int N = 0;  // Grassmannian, SO2N_UN, SpN_UN, quadrics
  int n = 0;  // Flat, ProjectiveSpace, HyperbolicSpace
  std::vector<SpaceDescriptor> parts;  // Product factors, or the single Dual operand

  int complex_dim() const;
  /// Flat counts as rank 0.
  int rank() const;
  /// True when the Δ-property is expected to hold at every order.
  bool expected_rank1() const;
  /// Canonical spelling accepted by parse_space.
  std::string name() const;

  friend bool operator==(const SpaceDescriptor&, const SpaceDescriptor&) = default;
};

/// e.g. "grassmannian:k=2,N=4", "dual(cp:n=1)", "product(cp:n=1;cp:n=1)".
/// Throws unknown_space or invalid_argument.
SpaceDescriptor parse_space(std::string_view text);

/// Potential jet at truncation D with additive constants dropped.
Jet catalog_potential(const SpaceDescriptor& desc, int D);

struct Space {
  SpaceDescriptor desc;
  MetricJet metric;
};

Space build_space(const SpaceDescriptor& desc, int D);

/// c_{P,Q} -> -(-1)^{|Q|} c_{P,Q}, i.e. Φ(z, z̄) -> -Φ(z, -z̄).
Jet dual_potential(const Jet& phi);

/// Φ_a(z') + Φ_b(z'') on disjoint variable blocks.
MetricJet product_space(const MetricJet& a, const MetricJet& b);

/// Linear form s·Σ_{i in vars} z_i; `scale2` = s^2.
struct TestDirection {
  std::vector<int> vars;
  Rational scale2 = 1;
};

struct TestFunctionPair {
  Jet f1;  // |L_1|^4
  Jet f2;  // |L_1 L_2|^2
  TestDirection dir1, dir2;
  std::string frame_note;
};

/// Throws rank_too_low below rank 2.
TestFunctionPair embedded_test_polys(const SpaceDescriptor& desc);

struct ObstructionReport {
  Rational lambda = 0;
  std::vector<Rational> mu;  // metric along the two test directions
  Rational val1 = 0;         // Δ^3 f1(0) μ_1^2
  Rational val2 = 0;         // Δ^3 f2(0) μ_1 μ_2
  Rational requirement = 0;  // val1 - 2 val2, zero if p_3 exists
  Rational predicted1 = 0;   // 12λ + 16 sgn λ
  Rational predicted2 = 0;   // 6λ
};

ObstructionReport obstruction_report(const SpaceDescriptor& desc, int D = 6);
ObstructionReport obstruction_report(const Space& space);

struct DualRow {
  Monomial monomial;
  Rational compact = 0;
  Rational noncompact = 0;
};

/// Δ^3 |z_i z_j|^2 (0) for all i <= j on the space and on its dual. The
/// side with negative Einstein constant is reported as noncompact.
std::vector<DualRow> dual_compare(const SpaceDescriptor& desc, int D = 6);

struct FamilyInfo {
  std::string name;
  std::string params;
  std::string range;
  std::string dim;
  std::string rank;
  std::string example;
};

std::vector<FamilyInfo> catalog_listing();

std::string monomial_label(const Monomial& m, int n);

}  // namespace kahler
