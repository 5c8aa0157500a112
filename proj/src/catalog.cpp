#include "kahler/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace kahler {

// ------------------------------------------------------------- descriptors

int SpaceDescriptor::complex_dim() const {
  switch (family) {
    case Family::Flat:
    case Family::ProjectiveSpace:
    case Family::HyperbolicSpace: return n;
    case Family::Grassmannian: return k * (N - k);
    case Family::SO2N_UN: return N * (N - 1) / 2;
    case Family::SpN_UN: return N * (N + 1) / 2;
    case Family::QuadricEven: return 2 * N - 2;
    case Family::QuadricOdd: return 2 * N - 1;
    case Family::Product: {
      int d = 0;
      for (const auto& p : parts) d += p.complex_dim();
      return d;
    }
    case Family::Dual: return parts.at(0).complex_dim();
  }
  return 0;
}

int SpaceDescriptor::rank() const {
  switch (family) {
    case Family::Flat: return 0;
    case Family::ProjectiveSpace:
    case Family::HyperbolicSpace: return 1;
    case Family::Grassmannian: return std::min(k, N - k);
    case Family::SO2N_UN: return N / 2;
    case Family::SpN_UN: return N;
    case Family::QuadricEven:
    case Family::QuadricOdd: return 2;
    case Family::Product: {
      int r = 0;
      for (const auto& p : parts) r += p.rank();
      return r;
    }
    case Family::Dual: return parts.at(0).rank();
  }
  return 0;
}

bool SpaceDescriptor::expected_rank1() const { return rank() <= 1; }

std::string SpaceDescriptor::name() const {
  switch (family) {
    case Family::Flat: return "flat:n=" + std::to_string(n);
    case Family::ProjectiveSpace: return "cp:n=" + std::to_string(n);
    case Family::HyperbolicSpace: return "ch:n=" + std::to_string(n);
    case Family::Grassmannian: return "grassmannian:k=" + std::to_string(k) + ",N=" + std::to_string(N);
    case Family::SO2N_UN: return "so2n:N=" + std::to_string(N);
    case Family::SpN_UN: return "sp:N=" + std::to_string(N);
    case Family::QuadricEven: return "quadric-even:N=" + std::to_string(N);
    case Family::QuadricOdd: return "quadric-odd:N=" + std::to_string(N);
    case Family::Product: {
      std::string s = "product(";
      for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ";" : "") + parts[i].name();
      return s + ")";
    }
    case Family::Dual: return "dual(" + parts.at(0).name() + ")";
  }
  return "?";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool wrapped(std::string_view s, std::string_view head) {
  return s.size() > head.size() + 1 && s.substr(0, head.size()) == head && s[head.size()] == '(' &&
         s.back() == ')';
}

std::map<std::string, int> parse_params(std::string_view text, std::string_view whole) {
  std::map<std::string, int> out;
  while (!text.empty()) {
    std::size_t comma = text.find(',');
    std::string_view item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    std::size_t eq = item.find('=');
    if (eq == std::string_view::npos)
      throw Error(Errc::invalid_argument, "bad parameter '" + std::string(item) + "' in '" + std::string(whole) + "'");
    std::string key(trim(item.substr(0, eq)));
    std::string value(trim(item.substr(eq + 1)));
    if (value.empty() || !std::all_of(value.begin(), value.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
        value.size() > 6)
      throw Error(Errc::invalid_argument, "parameter " + key + " must be a small non-negative integer");
    if (!out.emplace(key, std::stoi(value)).second)
      throw Error(Errc::invalid_argument, "duplicate parameter " + key);
  }
  return out;
}

void expect_keys(const std::map<std::string, int>& params, std::initializer_list<const char*> keys,
                 std::string_view whole) {
  for (const char* k : keys)
    if (!params.count(k))
      throw Error(Errc::invalid_argument, "missing parameter " + std::string(k) + " in '" + std::string(whole) + "'");
  if (params.size() != keys.size())
    throw Error(Errc::invalid_argument, "unexpected parameter in '" + std::string(whole) + "'");
}

void check_range(bool ok, const std::string& what) {
  if (!ok) throw Error(Errc::invalid_argument, what);
}

std::vector<std::string_view> split_top(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == sep && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

}  // namespace

SpaceDescriptor parse_space(std::string_view text) {
  std::string_view s = trim(text);
  SpaceDescriptor d;
  if (wrapped(s, "dual")) {
    d.family = Family::Dual;
    d.parts.push_back(parse_space(s.substr(5, s.size() - 6)));
    return d;
  }
  if (wrapped(s, "product")) {
    d.family = Family::Product;
    for (auto part : split_top(s.substr(8, s.size() - 9), ';')) d.parts.push_back(parse_space(part));
    check_range(d.parts.size() >= 2, "product needs at least two factors");
    check_range(d.complex_dim() <= kMaxVars, "product dimension exceeds " + std::to_string(kMaxVars));
    return d;
  }
  std::size_t colon = s.find(':');
  std::string family(trim(s.substr(0, colon)));
  std::string_view rest = colon == std::string_view::npos ? std::string_view{} : s.substr(colon + 1);
  static const std::map<std::string, Family> families = {
      {"flat", Family::Flat},
      {"cp", Family::ProjectiveSpace},
      {"ch", Family::HyperbolicSpace},
      {"grassmannian", Family::Grassmannian},
      {"so2n", Family::SO2N_UN},
      {"sp", Family::SpN_UN},
      {"quadric-even", Family::QuadricEven},
      {"quadric-odd", Family::QuadricOdd},
  };
  auto it = families.find(family);
  if (it == families.end()) throw Error(Errc::unknown_space, "unknown space '" + std::string(s) + "'");
  d.family = it->second;
  auto params = parse_params(rest, s);
  switch (d.family) {
    case Family::Flat:
    case Family::ProjectiveSpace:
    case Family::HyperbolicSpace:
      expect_keys(params, {"n"}, s);
      d.n = params["n"];
      check_range(d.n >= 1, "n must be >= 1");
      break;
    case Family::Grassmannian:
      expect_keys(params, {"k", "N"}, s);
      d.k = params["k"];
      d.N = params["N"];
      check_range(d.k >= 1 && d.k < d.N, "grassmannian needs 1 <= k < N");
      break;
    case Family::SO2N_UN:
      expect_keys(params, {"N"}, s);
      d.N = params["N"];
      check_range(d.N >= 2, "so2n needs N >= 2");
      break;
    case Family::SpN_UN:
      expect_keys(params, {"N"}, s);
      d.N = params["N"];
      check_range(d.N >= 1, "sp needs N >= 1");
      break;
    case Family::QuadricEven:
    case Family::QuadricOdd:
      expect_keys(params, {"N"}, s);
      d.N = params["N"];
      check_range(d.N >= 4, "quadrics need N >= 4");
      break;
    default: break;
  }
  check_range(d.complex_dim() <= kMaxVars,
              "dimension " + std::to_string(d.complex_dim()) + " exceeds " + std::to_string(kMaxVars));
  return d;
}

// -------------------------------------------------------------- potentials

namespace {

Jet coord(int n, int i, int D) { return Jet::coordinate(n, i).truncated(D); }
Jet coord_bar(int n, int i, int D) { return Jet::coordinate(n, i, Kind::antiholomorphic).truncated(D); }

// log det(I + lhs W)
Jet log_det_one_plus(const JetMatrix& lhs, const JetMatrix& w, int D) {
  JetMatrix m = lhs * w;
  JetMatrix id = JetMatrix::identity(m.rows(), m.n(), D);
  Jet d = det(id + m);
  return jet_log1p(d - Jet::constant(d.n(), 1, D));
}

Jet grassmannian_potential(int k, int N, int D) {
  int rows = N - k, n = k * (N - k);
  JetMatrix w(rows, k, n, D);
  for (int a = 0; a < rows; ++a)
    for (int b = 0; b < k; ++b) w.set(a, b, coord(n, a * k + b, D));
  return log_det_one_plus(w.conj().transpose(), w, D);
}

Jet so2n_potential(int N, int D) {
  int n = N * (N - 1) / 2;
  JetMatrix w(N, N, n, D);
  int idx = 0;
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j, ++idx) {
      w.set(i, j, coord(n, idx, D));
      w.set(j, i, -coord(n, idx, D));
    }
  return log_det_one_plus(w.conj().transpose(), w, D).scaled(Rational(1, 2));
}

Jet sp_potential(int N, int D) {
  int n = N * (N + 1) / 2;
  JetMatrix w(N, N, n, D);
  int idx = 0;
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j, ++idx) {
      w.set(i, j, coord(n, idx, D));
      w.set(j, i, coord(n, idx, D));
    }
  return log_det_one_plus(w.conj(), w, D);
}

Jet quadric_potential(int N, bool odd, int D) {
  int m = N - 1;
  int n = 2 * m + (odd ? 1 : 0);
  Jet s(n, D), bilinear(n, D);
  for (int i = 0; i < n; ++i) s = s + coord(n, i, D) * coord_bar(n, i, D);
  for (int j = 0; j < m; ++j) bilinear = bilinear + coord(n, j, D) * coord(n, m + j, D);
  if (odd) bilinear = bilinear - (coord(n, 2 * m, D) * coord(n, 2 * m, D)).scaled(Rational(1, 2));
  s = s + (bilinear * bilinear.conj()).scaled(4);
  return jet_log1p(s);
}

Jet radial_form(int n, int D, bool hyperbolic) {
  int order = D / 2 + 1;
  std::vector<Rational> c(order + 1, Rational(0));
  for (int m = 1; m <= order; ++m) c[m] = hyperbolic ? Rational(1, m) : Rational(m % 2 ? 1 : -1, m);
  return substitute_radial(Series(c, order), n, D);
}

}  // namespace

Jet catalog_potential(const SpaceDescriptor& desc, int D) {
  if (D < 2) throw Error(Errc::insufficient_order, "catalog potentials need truncation degree >= 2");
  int n = desc.complex_dim();
  switch (desc.family) {
    case Family::Flat: {
      Jet s(n, D);
      for (int i = 0; i < n; ++i) s = s + coord(n, i, D) * coord_bar(n, i, D);
      return s;
    }
    case Family::ProjectiveSpace: return radial_form(n, D, false);
    case Family::HyperbolicSpace: return radial_form(n, D, true);
    case Family::Grassmannian: return grassmannian_potential(desc.k, desc.N, D);
    case Family::SO2N_UN: return so2n_potential(desc.N, D);
    case Family::SpN_UN: return sp_potential(desc.N, D);
    case Family::QuadricEven: return quadric_potential(desc.N, false, D);
    case Family::QuadricOdd: return quadric_potential(desc.N, true, D);
    case Family::Product: {
      Jet sum(n, D);
      int offset = 0;
      for (const auto& p : desc.parts) {
        sum = sum + catalog_potential(p, D).embedded(n, offset);
        offset += p.complex_dim();
      }
      return sum;
    }
    case Family::Dual: return dual_potential(catalog_potential(desc.parts.at(0), D));
  }
  throw Error(Errc::unknown_space, "unhandled family");
}

Space build_space(const SpaceDescriptor& desc, int D) {
  return Space{desc, metric_from_potential(catalog_potential(desc, D))};
}

Jet dual_potential(const Jet& phi) {
  return phi.reweighted([](const Monomial& m) { return m.antihol_degree() % 2 == 0 ? Rational(-1) : Rational(1); });
}

MetricJet product_space(const MetricJet& a, const MetricJet& b) {
  int n = a.n + b.n;
  if (n > kMaxVars) throw Error(Errc::invalid_argument, "product dimension too large");
  return metric_from_potential(a.potential.embedded(n, 0) + b.potential.embedded(n, a.n));
}

// ------------------------------------------------------------- test data

namespace {

std::pair<TestDirection, TestDirection> directions(const SpaceDescriptor& d) {
  switch (d.family) {
    case Family::Grassmannian: return {{{0}, 1}, {{d.k + 1}, 1}};
    case Family::SO2N_UN: {
      // w_34 sits after the (N-1) + (N-2) entries of rows 1 and 2
      int w34 = (d.N - 1) + (d.N - 2);
      return {{{0}, 1}, {{w34}, 1}};
    }
    case Family::SpN_UN: return {{{0}, 1}, {{d.N}, 1}};
    case Family::QuadricEven:
    case Family::QuadricOdd: {
      int m = d.N - 1;
      // (v_2 + v'_3)/sqrt2 and (v_3 + v'_4)/sqrt2
      return {{{0, m + 1}, Rational(1, 2)}, {{1, m + 2}, Rational(1, 2)}};
    }
    case Family::Dual: return directions(d.parts.at(0));
    case Family::Product: {
      std::vector<TestDirection> found;
      int offset = 0;
      for (const auto& p : d.parts) {
        if (p.rank() >= 2) {
          auto [a, b] = directions(p);
          for (auto* t : {&a, &b}) {
            for (int& v : t->vars) v += offset;
            found.push_back(*t);
          }
        } else if (p.rank() == 1) {
          found.push_back({{offset}, 1});
        }
        offset += p.complex_dim();
      }
      return {found.at(0), found.at(1)};
    }
    default: break;
  }
  throw Error(Errc::rank_too_low, "space has rank < 2");
}

Jet linear_form_modsq(int n, const TestDirection& t) {
  Jet l(n, kExact);
  for (int v : t.vars) l = l + Jet::coordinate(n, v);
  return (l * l.conj()).scaled(t.scale2);
}

}  // namespace

TestFunctionPair embedded_test_polys(const SpaceDescriptor& desc) {
  if (desc.rank() < 2) throw Error(Errc::rank_too_low, desc.name() + " has rank " + std::to_string(desc.rank()));
  auto [d1, d2] = directions(desc);
  int n = desc.complex_dim();
  Jet l1 = linear_form_modsq(n, d1);
  Jet l2 = linear_form_modsq(n, d2);
  TestFunctionPair t;
  t.f1 = l1 * l1;
  t.f2 = l1 * l2;
  t.dir1 = d1;
  t.dir2 = d2;
  auto describe = [](const TestDirection& d) {
    std::string s;
    for (int v : d.vars) s += (s.empty() ? "z" : " + z") + std::to_string(v + 1);
    if (d.scale2 != 1) s = "(" + s + ")*sqrt(" + d.scale2.get_str() + ")";
    return s;
  };
  t.frame_note = "L1 = " + describe(d1) + ", L2 = " + describe(d2);
  return t;
}

ObstructionReport obstruction_report(const SpaceDescriptor& desc, int D) {
  if (desc.rank() < 2) throw Error(Errc::rank_too_low, desc.name() + " has rank " + std::to_string(desc.rank()));
  return obstruction_report(build_space(desc, std::max(D, 6)));
}

ObstructionReport obstruction_report(const Space& space) {
  TestFunctionPair t = embedded_test_polys(space.desc);
  const MetricJet& m = space.metric;
  EinsteinReport e = einstein_constant(m);
  if (!e.lambda) throw Error(Errc::not_einstein, space.desc.name() + " is not Einstein at the origin");
  auto mu_of = [&](const TestDirection& d) -> Rational {
    Rational s = 0;
    for (int v : d.vars) s += m.origin_diag.at(v);
    return s * d.scale2;
  };
  DeltaFunctional f(m);
  ObstructionReport r;
  r.lambda = *e.lambda;
  r.mu = {mu_of(t.dir1), mu_of(t.dir2)};
  r.val1 = f.apply(t.f1, 3) * r.mu[0] * r.mu[0];
  r.val2 = f.apply(t.f2, 3) * r.mu[0] * r.mu[1];
  r.requirement = r.val1 - 2 * r.val2;
  int sign = r.lambda > 0 ? 1 : r.lambda < 0 ? -1 : 0;
  r.predicted1 = 12 * r.lambda + 16 * sign;
  r.predicted2 = 6 * r.lambda;
  return r;
}

std::vector<DualRow> dual_compare(const SpaceDescriptor& desc, int D) {
  D = std::max(D, 6);
  SpaceDescriptor dual_desc;
  dual_desc.family = Family::Dual;
  dual_desc.parts.push_back(desc);
  Space a = build_space(desc, D);
  Space b = build_space(dual_desc, D);
  EinsteinReport ea = einstein_constant(a.metric), eb = einstein_constant(b.metric);
  if (!ea.lambda || !eb.lambda) throw Error(Errc::not_einstein, "dual comparison needs Einstein metrics on both sides");
  bool swap = *ea.lambda < 0;
  DeltaFunctional fa(a.metric), fb(b.metric);
  std::vector<DualRow> rows;
  int n = a.metric.n;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Monomial mono = Monomial()
                          .bumped(i, Kind::holomorphic, 1)
                          .bumped(j, Kind::holomorphic, 1)
                          .bumped(i, Kind::antiholomorphic, 1)
                          .bumped(j, Kind::antiholomorphic, 1);
      DualRow r;
      r.monomial = mono;
      r.compact = fa.at(mono, 3);
      r.noncompact = fb.at(mono, 3);
      if (swap) std::swap(r.compact, r.noncompact);
      rows.push_back(r);
    }
  return rows;
}

std::vector<FamilyInfo> catalog_listing() {
  return {
      {"flat", "n", "n >= 1", "n", "0", "flat:n=2"},
      {"cp", "n", "n >= 1", "n", "1", "cp:n=1"},
      {"ch", "n", "n >= 1", "n", "1", "ch:n=1"},
      {"grassmannian", "k,N", "1 <= k < N", "k(N-k)", "min(k,N-k)", "grassmannian:k=2,N=4"},
      {"so2n", "N", "N >= 2", "N(N-1)/2", "floor(N/2)", "so2n:N=4"},
      {"sp", "N", "N >= 1", "N(N+1)/2", "N", "sp:N=2"},
      {"quadric-even", "N", "N >= 4", "2N-2", "2", "quadric-even:N=4"},
      {"quadric-odd", "N", "N >= 4", "2N-1", "2", "quadric-odd:N=4"},
  };
}

std::string monomial_label(const Monomial& m, int n) {
  std::string s;
  auto add = [&](const std::string& var, int e) {
    if (!e) return;
    if (!s.empty()) s += "*";
    s += var;
    if (e > 1) s += "^" + std::to_string(e);
  };
  for (int i = 0; i < n; ++i) add("z" + std::to_string(i + 1), m.hol(i));
  for (int i = 0; i < n; ++i) add("zb" + std::to_string(i + 1), m.antihol(i));
  return s.empty() ? "1" : s;
}

}  // namespace kahler
