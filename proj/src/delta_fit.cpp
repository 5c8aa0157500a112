#include "kahler/delta_fit.hpp"

namespace kahler {

LaplacePolynomial LaplacePolynomial::monomial_power(int k) {
  LaplacePolynomial p;
  p.k = k;
  p.coeffs.assign(k, Rational(0));
  if (k >= 1) p.coeffs[k - 1] = 1;
  return p;
}

Rational LaplacePolynomial::coeff(int l) const {
  if (l < 1 || l > k) return 0;
  return coeffs[l - 1];
}

Rational LaplacePolynomial::apply(const Jet& phi, const std::vector<Rational>& diag) const {
  Rational s = 0;
  for (int l = 1; l <= k; ++l)
    if (coeff(l) != 0) s += coeff(l) * euclidean_power_at0(phi, l, diag);
  return s;
}

std::string to_string(const LaplacePolynomial& p) {
  std::string out;
  for (int l = p.k; l >= 1; --l) {
    Rational c = p.coeff(l);
    if (c == 0) continue;
    Rational mag = abs_value(c);
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    if (mag != 1) out += mag.get_den() == 1 ? mag.get_str() : "(" + mag.get_str() + ")";
    out += "x";
    if (l > 1) out += "^" + std::to_string(l);
  }
  return out.empty() ? "0" : out;
}

const char* witness_kind_name(WitnessKind k) {
  switch (k) {
    case WitnessKind::off_diagonal_nonzero: return "off_diagonal_nonzero";
    case WitnessKind::diagonal_inconsistent: return "diagonal_inconsistent";
    case WitnessKind::non_monic: return "non_monic";
  }
  return "?";
}

namespace {

// Compositions of `degree` into `slots` parts, first part largest first.
void compositions(int degree, int slot, int slots, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
  if (slot == slots - 1) {
    cur[slot] = degree;
    out.push_back(cur);
    return;
  }
  for (int e = degree; e >= 0; --e) {
    cur[slot] = e;
    compositions(degree - e, slot + 1, slots, cur, out);
  }
}

// Π d_i^{P_i} for a diagonal monomial.
Rational diagonal_scale(const MetricJet& m, const Monomial& mono) {
  Rational s = 1;
  for (int i = 0; i < m.n; ++i)
    for (int r = 0; r < mono.hol(i); ++r) s *= m.origin_diag[i];
  return s;
}

Rational scale_value(const MetricJet& m, const Monomial& mono, const Rational& raw) {
  if (raw == 0) return 0;
  if (mono.is_diagonal()) return raw * diagonal_scale(m, mono);
  Rational sq = 1;
  for (int i = 0; i < m.n; ++i)
    for (int r = 0; r < mono.hol(i) + mono.antihol(i); ++r) sq *= m.origin_diag[i];
  Rational root;
  if (!exact_sqrt(sq, root))
    throw Error(Errc::invalid_argument, "irrational rescaling factor for a nonzero off-diagonal value");
  return raw * root;
}

}  // namespace

std::vector<Monomial> monomial_test_set(int n, int k) {
  if (n < 1 || n > kMaxVars) throw Error(Errc::invalid_argument, "dimension out of range");
  if (k < 1) throw Error(Errc::invalid_argument, "test set needs k >= 1");
  std::vector<Monomial> out;
  for (int degree = 0; degree <= 2 * k; ++degree) {
    std::vector<std::vector<int>> comps;
    std::vector<int> cur(2 * n, 0);
    compositions(degree, 0, 2 * n, cur, comps);
    for (const auto& c : comps) {
      std::vector<int> p(c.begin(), c.begin() + n), q(c.begin() + n, c.end());
      out.emplace_back(MultiIndex(p), MultiIndex(q));
    }
  }
  return out;
}

Rational rescaled_value(const MetricJet& m, const Monomial& mono, int k) {
  Jet phi = Jet::monomial(m.n, mono, 1, kExact);
  return scale_value(m, mono, delta_power_at0(m, phi, k));
}

Rational rescaled_value(DeltaFunctional& f, const MetricJet& m, const Monomial& mono, int k) {
  return scale_value(m, mono, f.at(mono, k));
}

FitResult fit_pk(const MetricJet& m, int k) {
  DeltaFunctional f(m);
  return fit_pk(f, m, k);
}

FitResult fit_pk(DeltaFunctional& f, const MetricJet& m, int k) {
  if (k < 1) throw Error(Errc::invalid_argument, "fit order must be positive");
  if (m.valid_degree() < 2 * k)
    throw Error(Errc::insufficient_order, "fitting p_" + std::to_string(k) +
                                              " needs potential truncation degree >= " +
                                              std::to_string(2 * k));
  FitResult result;
  result.k = k;
  std::vector<std::optional<Rational>> a(k + 1);
  std::vector<Monomial> ref(k + 1);
  std::vector<Rational> ref_value(k + 1);

  auto violation = [&](WitnessKind kind, const Monomial& mono, const Rational& lhs,
                       const Rational& expected) {
    ViolationWitness w;
    w.kind = kind;
    w.n = m.n;
    w.monomial = mono;
    w.lhs = lhs;
    w.expected = expected;
    result.outcome = w;
    return result;
  };

  for (const Monomial& mono : monomial_test_set(m.n, k)) {
    Rational raw = f.at(mono, k);
    if (!mono.is_diagonal()) {
      if (raw != 0) return violation(WitnessKind::off_diagonal_nonzero, mono, raw, 0);
      continue;
    }
    int p = mono.degree() / 2;
    Rational value = raw * diagonal_scale(m, mono);
    if (p == 0) {
      if (value != 0) return violation(WitnessKind::non_monic, mono, value, 0);
      continue;
    }
    Rational norm = factorial(p) * mono.p(m.n).factorial();
    Rational ratio = value / norm;
    if (p == k) {
      if (ratio != 1) return violation(WitnessKind::non_monic, mono, value, norm);
      continue;
    }
    if (!a[p]) {
      a[p] = ratio;
      ref[p] = mono;
      ref_value[p] = value;
    } else if (*a[p] != ratio) {
      FitResult r = violation(WitnessKind::diagonal_inconsistent, mono, value, *a[p] * norm);
      auto& w = std::get<ViolationWitness>(r.outcome);
      w.reference = ref[p];
      w.reference_value = ref_value[p];
      return r;
    }
  }
  LaplacePolynomial poly = LaplacePolynomial::monomial_power(k);
  for (int p = 1; p < k; ++p) poly.coeffs[p - 1] = a[p].value_or(Rational(0));
  result.outcome = poly;
  return result;
}

std::vector<FitResult> check_delta_property(const MetricJet& m, int k_max) {
  if (k_max < 1) throw Error(Errc::invalid_argument, "k_max must be positive");
  if (m.valid_degree() < 2 * k_max)
    throw Error(Errc::insufficient_order, "checking to k=" + std::to_string(k_max) +
                                              " needs potential truncation degree >= " +
                                              std::to_string(2 * k_max));
  DeltaFunctional f(m);
  std::vector<FitResult> out;
  for (int k = 1; k <= k_max; ++k) {
    out.push_back(fit_pk(f, m, k));
    if (!out.back().fitted()) break;
  }
  return out;
}

}  // namespace kahler
