#include "kahler/metric.hpp"

#include <algorithm>
#include <set>

namespace kahler {

namespace {

Monomial mono_of(std::initializer_list<int> hol, std::initializer_list<int> antihol) {
  Monomial m;
  for (int i : hol) m = m.bumped(i, Kind::holomorphic, 1);
  for (int i : antihol) m = m.bumped(i, Kind::antiholomorphic, 1);
  return m;
}

Rational exponent_factorial(const Monomial& m) {
  Rational f = 1;
  for (int i = 0; i < kMaxVars; ++i) {
    if (m.hol(i) > 1) f *= factorial(m.hol(i));
    if (m.antihol(i) > 1) f *= factorial(m.antihol(i));
  }
  return f;
}

// All distinct orderings of the variables of one side of a monomial.
std::vector<std::vector<int>> orderings(const Monomial& m, Kind kind) {
  std::vector<int> vars;
  for (int i = 0; i < kMaxVars; ++i) {
    int e = kind == Kind::holomorphic ? m.hol(i) : m.antihol(i);
    for (int r = 0; r < e; ++r) vars.push_back(i);
  }
  std::vector<std::vector<int>> out;
  std::sort(vars.begin(), vars.end());
  do out.push_back(vars);
  while (std::next_permutation(vars.begin(), vars.end()));
  return out;
}

void require_match(const MetricJet& m, const Jet& phi) {
  if (phi.n() != m.n)
    throw Error(Errc::variable_mismatch, "test function over " + std::to_string(phi.n()) +
                                             " variables, metric over " + std::to_string(m.n));
}

void require_degree(const MetricJet& m, int needed, const char* what) {
  if (m.valid_degree() < needed)
    throw Error(Errc::insufficient_order, std::string(what) + " needs potential truncation degree >= " +
                                              std::to_string(needed) + " (have " +
                                              std::to_string(m.valid_degree()) + ")");
}

void require_rescaled_normal(const MetricJet& m, const char* what) {
  if (!m.rescaled_normal)
    throw Error(Errc::gauge_violation,
                std::string(what) + " needs a potential without cubic terms at the origin");
}

}  // namespace

bool MetricJet::unit_diagonal() const {
  return std::all_of(origin_diag.begin(), origin_diag.end(), [](const Rational& d) { return d == 1; });
}

Rational derivative_at0(const Jet& j, const Monomial& m) {
  return j.coefficient(m) * exponent_factorial(m);
}

MetricJet metric_from_potential(const Jet& potential) {
  if (potential.valid_degree() < 2)
    throw Error(Errc::validity_exhausted, "potential must be valid to degree >= 2");
  int n = potential.n();
  if (n < 1) throw Error(Errc::invalid_argument, "potential needs at least one variable");
  MetricJet m;
  m.n = n;
  m.potential = potential;
  std::vector<Jet> first;
  first.reserve(n);
  for (int i = 0; i < n; ++i) first.push_back(potential.derive(i, Kind::holomorphic));
  std::vector<std::vector<Jet>> rows(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rows[i].push_back(first[i].derive(j, Kind::antiholomorphic));
  m.g = JetMatrix::from_rows(rows);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rational v = m.g(i, j).eval0();
      if (i == j && v <= 0)
        throw Error(Errc::gauge_violation, "g(0) has non-positive diagonal entry " + to_string(v));
      if (i != j && v != 0)
        throw Error(Errc::gauge_violation, "g(0) is not diagonal");
    }
  for (int i = 0; i < n; ++i) m.origin_diag.push_back(m.g(i, i).eval0());
  m.g_inv = inverse(m.g);
  bool cubic = std::any_of(potential.terms().begin(), potential.terms().end(),
                           [](const auto& t) { return t.first.degree() == 3; });
  m.rescaled_normal = !cubic;
  m.normal_gauge = !cubic && m.unit_diagonal();
  return m;
}

Jet laplacian_apply(const MetricJet& m, const Jet& phi) {
  require_match(m, phi);
  if (phi.valid_degree() < 2)
    throw Error(Errc::validity_exhausted, "Laplacian needs a test function valid to degree >= 2");
  int n = m.n;
  int valid = std::min(m.g_inv.valid_degree(), phi.valid_degree() - 2);
  Jet result(n, valid);
  for (int j = 0; j < n; ++j) {
    Jet dj = phi.derive(j, Kind::holomorphic);
    if (dj.is_zero()) continue;
    for (int i = 0; i < n; ++i) {
      Jet dji = dj.derive(i, Kind::antiholomorphic);
      if (dji.is_zero() || m.g_inv(i, j).is_zero()) continue;
      result = result + m.g_inv(i, j).truncated(valid) * dji.truncated(valid);
    }
  }
  return result.truncated(valid);
}

Rational delta_power_at0(const MetricJet& m, const Jet& phi, int k) {
  if (k < 1) throw Error(Errc::invalid_argument, "Laplacian power must be positive");
  require_match(m, phi);
  require_degree(m, 2 * k, ("Delta^" + std::to_string(k)).c_str());
  if (phi.valid_degree() < 2 * k)
    throw Error(Errc::insufficient_order, "test function must be valid to degree 2k");
  Jet cur = phi.truncated(2 * k);
  for (int step = 0; step < k; ++step) cur = laplacian_apply(m, cur);
  return cur.eval0();
}

Rational euclidean_power_at0(const Jet& phi, int l) {
  return euclidean_power_at0(phi, l, std::vector<Rational>(phi.n(), Rational(1)));
}

Rational euclidean_power_at0(const MultiIndex& p, const MultiIndex& q, int l) {
  if (p != q || p.total() != l) return 0;
  return factorial(l) * p.factorial();
}

Rational euclidean_power_at0(const Jet& phi, int l, const std::vector<Rational>& diag) {
  if (l < 0) throw Error(Errc::invalid_argument, "negative Laplacian power");
  if (l == 0) return phi.eval0();
  if (phi.valid_degree() < 2 * l)
    throw Error(Errc::validity_exhausted, "test function not valid to degree 2l");
  Rational sum = 0;
  for (const auto& [k, c] : phi.terms()) {
    if (k.degree() > 2 * l) break;
    if (k.degree() != 2 * l || !k.is_diagonal()) continue;
    Rational w = factorial(l);
    for (int i = 0; i < phi.n(); ++i) {
      int e = k.hol(i);
      if (!e) continue;
      w *= factorial(e);
      for (int r = 0; r < e; ++r) w /= diag.at(i);
    }
    sum += c * w;
  }
  return sum;
}

// ---------------------------------------------------------- DeltaFunctional

DeltaFunctional::DeltaFunctional(const MetricJet& m) : m_(&m) {}

Rational DeltaFunctional::at(const Monomial& mono, int k) {
  if (k == 0) return mono.degree() == 0 ? Rational(1) : Rational(0);
  if (mono.degree() == 0 || mono.degree() > 2 * k) return 0;
  if (m_->valid_degree() < 2 * k)
    throw Error(Errc::insufficient_order, "Delta^" + std::to_string(k) +
                                              " needs potential truncation degree >= " +
                                              std::to_string(2 * k));
  if (static_cast<int>(memo_.size()) <= k) memo_.resize(k + 1);
  if (auto it = memo_[k].find(mono); it != memo_[k].end()) return it->second;

  Rational sum = 0;
  int n = m_->n;
  for (int j = 0; j < n; ++j) {
    int pj = mono.hol(j);
    if (!pj) continue;
    Monomial after_j = mono.bumped(j, Kind::holomorphic, -1);
    for (int i = 0; i < n; ++i) {
      int qi = mono.antihol(i);
      if (!qi) continue;
      Monomial base = after_j.bumped(i, Kind::antiholomorphic, -1);
      int room = 2 * (k - 1) - base.degree();
      if (room < 0) continue;
      Rational partial = 0;
      for (const auto& [t, c] : m_->g_inv(i, j).terms()) {
        if (t.degree() > room) break;
        Rational v = at(t * base, k - 1);
        if (v != 0) partial += c * v;
      }
      if (partial != 0) sum += partial * (pj * qi);
    }
  }
  memo_[k].emplace(mono, sum);
  return sum;
}

Rational DeltaFunctional::apply(const Jet& phi, int k) {
  if (phi.n() != m_->n) throw Error(Errc::variable_mismatch, "test function over different variables");
  if (phi.valid_degree() < 2 * k)
    throw Error(Errc::insufficient_order, "test function must be valid to degree 2k");
  Rational sum = 0;
  for (const auto& [mono, c] : phi.terms()) {
    if (mono.degree() > 2 * k) break;
    Rational v = at(mono, k);
    if (v != 0) sum += c * v;
  }
  return sum;
}

// ------------------------------------------------------------------ Einstein

EinsteinReport einstein_constant(const MetricJet& m) {
  require_rescaled_normal(m, "einstein_constant");
  require_degree(m, 4, "einstein_constant");
  int n = m.n;
  const auto& d = m.origin_diag;
  // S(i,j) = Σ_h d_h^{-1} ∂_h ∂̄_h g_inv(i,j)(0), raw construction coordinates
  auto S = [&](int i, int j) -> Rational {
    Rational s = 0;
    for (int h = 0; h < n; ++h) s += m.g_inv(i, j).coefficient(mono_of({h}, {h})) / d[h];
    return s;
  };
  EinsteinReport rep;
  Rational lambda = d[0] * S(0, 0);
  Rational residual = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rational s = S(i, j);
      Rational dev;
      if (i == j) {
        dev = abs_value(d[i] * s - lambda);
      } else {
        // normal-frame entry is sqrt(d_i d_j) s; reported raw when that is irrational
        Rational root;
        dev = exact_sqrt(d[i] * d[j], root) ? abs_value(root * s) : abs_value(s);
      }
      if (dev > residual) residual = dev;
    }
  rep.residual = residual;
  if (residual == 0) rep.lambda = lambda;
  return rep;
}

K2Check check_k2_identity(const MetricJet& m, const Jet& phi) {
  require_match(m, phi);
  EinsteinReport e = einstein_constant(m);
  if (!e.lambda) throw Error(Errc::not_einstein, "metric is not Einstein at the origin");
  K2Check out;
  out.lhs = delta_power_at0(m, phi, 2);
  out.rhs = euclidean_power_at0(phi, 2, m.origin_diag) +
            *e.lambda * euclidean_power_at0(phi, 1, m.origin_diag);
  out.discrepancy = out.lhs - out.rhs;
  out.holds = out.discrepancy == 0;
  return out;
}

// ------------------------------------------------- parallel-curvature checks

Rational third_deriv_obstruction(const MetricJet& m) {
  require_rescaled_normal(m, "third_deriv_obstruction");
  require_degree(m, 5, "third_deriv_obstruction");
  Rational worst = 0;
  for (int a = 0; a < m.n; ++a)
    for (int b = 0; b < m.n; ++b)
      for (const auto& [t, c] : m.g(a, b).terms()) {
        if (t.degree() > 3) break;
        if (t.degree() != 3 || t.hol_degree() != 2) continue;
        Rational v = abs_value(c * exponent_factorial(t));
        if (v > worst) worst = v;
      }
  return worst;
}

Rational fifth_order_check(const MetricJet& m) {
  require_degree(m, 5, "fifth_order_check");
  const int n = m.n;
  // D3[(((row*n+col)*n+a)*n+b)*n+c] = ∂_a ∂_b ∂̄_c g_inv(row,col)(0)
  auto idx = [n](int row, int col, int a, int b, int c) {
    return (((static_cast<std::size_t>(row) * n + col) * n + a) * n + b) * n + c;
  };
  std::vector<Rational> d3(static_cast<std::size_t>(n) * n * n * n * n);
  bool any = false;
  for (int row = 0; row < n; ++row)
    for (int col = 0; col < n; ++col)
      for (const auto& [t, c] : m.g_inv(row, col).terms()) {
        if (t.degree() > 3) break;
        if (t.degree() != 3 || t.hol_degree() != 2) continue;
        std::vector<int> hol;
        int bar = -1;
        for (int v = 0; v < n; ++v) {
          for (int r = 0; r < t.hol(v); ++r) hol.push_back(v);
          if (t.antihol(v)) bar = v;
        }
        Rational val = c * exponent_factorial(t);
        d3[idx(row, col, hol[0], hol[1], bar)] = val;
        d3[idx(row, col, hol[1], hol[0], bar)] = val;
        any = true;
      }
  if (!any) return 0;
  Rational worst = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int h = 0; h < n; ++h)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            Rational s = d3[idx(i, j, h, l, k)] + d3[idx(h, j, i, l, k)] + d3[idx(l, j, i, h, k)] +
                         d3[idx(i, k, h, l, j)] + d3[idx(h, k, i, l, j)] + d3[idx(l, k, i, h, j)];
            Rational v = abs_value(s);
            if (v > worst) worst = v;
          }
  return worst;
}

// ------------------------------------------------------------ cube expansion

Rational laplcube_expansion(const MetricJet& m, const Jet& phi) {
  require_match(m, phi);
  require_rescaled_normal(m, "laplcube_expansion");
  require_degree(m, 6, "laplcube_expansion");
  if (phi.valid_degree() < 6)
    throw Error(Errc::insufficient_order, "test function must be valid to degree 6");
  EinsteinReport e = einstein_constant(m);
  if (!e.lambda) throw Error(Errc::not_einstein, "metric is not Einstein at the origin");
  const Rational lambda = *e.lambda;
  const auto& d = m.origin_diag;
  const int n = m.n;

  Rational total = 0;
  for (const auto& [mono, c] : phi.terms()) {
    if (mono.degree() > 6) break;
    Rational term = 0;
    const int deg = mono.degree();
    const int hd = mono.hol_degree();
    const Rational mono_fact = exponent_factorial(mono);

    // Euclidean part (Δ_c^3 + 3λΔ_c^2 + λ^2Δ_c) in the normal frame
    if (mono.is_diagonal() && deg > 0) {
      int p = deg / 2;
      Rational w = factorial(p);
      for (int v = 0; v < n; ++v) {
        if (!mono.hol(v)) continue;
        w *= factorial(mono.hol(v));
        for (int r = 0; r < mono.hol(v); ++r) w /= d[v];
      }
      Rational weight = p == 3 ? Rational(1) : p == 2 ? Rational(3 * lambda) : Rational(lambda * lambda);
      term += weight * w;
    }

    if (deg == 4 && hd == 2) {
      // 2 Σ ∂_{l h̄} g^{ij̄} ∂_{j h l̄ ī} φ with P = e_j + e_h, Q = e_l + e_i
      for (const auto& jh : orderings(mono, Kind::holomorphic))
        for (const auto& li : orderings(mono, Kind::antiholomorphic)) {
          int j = jh[0], h = jh[1], l = li[0], i = li[1];
          Rational g2 = m.g_inv(i, j).coefficient(mono_of({l}, {h}));
          if (g2 != 0) term += 2 * g2 * mono_fact / (d[l] * d[h]);
        }
    } else if (deg == 4 && hd == 1) {
      // Σ ∂_{lh} g^{ij̄} ∂_{j h̄ l̄ ī} φ with P = e_j, Q = e_h + e_l + e_i
      int j = orderings(mono, Kind::holomorphic)[0][0];
      for (const auto& hli : orderings(mono, Kind::antiholomorphic)) {
        int h = hli[0], l = hli[1], i = hli[2];
        Monomial lh = mono_of({l, h}, {});
        Rational g2 = m.g_inv(i, j).coefficient(lh) * exponent_factorial(lh);
        if (g2 != 0) term += g2 * mono_fact / (d[l] * d[h]);
      }
    } else if (deg == 4 && hd == 3) {
      // Σ ∂_{l̄h̄} g^{ij̄} ∂_{j h l ī} φ with P = e_j + e_h + e_l, Q = e_i
      int i = orderings(mono, Kind::antiholomorphic)[0][0];
      for (const auto& jhl : orderings(mono, Kind::holomorphic)) {
        int j = jhl[0], h = jhl[1], l = jhl[2];
        Monomial lh = mono_of({}, {l, h});
        Rational g2 = m.g_inv(i, j).coefficient(lh) * exponent_factorial(lh);
        if (g2 != 0) term += g2 * mono_fact / (d[l] * d[h]);
      }
    } else if (deg == 2 && hd == 1) {
      // Σ ∂_{l h l̄ h̄} g^{ij̄} ∂_{jī} φ with P = e_j, Q = e_i
      int j = orderings(mono, Kind::holomorphic)[0][0];
      int i = orderings(mono, Kind::antiholomorphic)[0][0];
      for (int l = 0; l < n; ++l)
        for (int h = 0; h < n; ++h) {
          Monomial q4 = mono_of({l, h}, {l, h});
          Rational g4 = m.g_inv(i, j).coefficient(q4) * exponent_factorial(q4);
          if (g4 != 0) term += g4 / (d[l] * d[h]);
        }
    }
    if (term != 0) total += c * term;
  }
  return total;
}

}  // namespace kahler
