// kahler: iterated Kähler Laplacians at the origin of catalog or custom spaces.
//
// Exit status: 0 all requested checks pass, 1 a check is violated,
// 2 usage error, unknown space or unreadable input.

#include "kahler/catalog.hpp"
#include "kahler/potential_dsl.hpp"
#include "kahler/radial.hpp"
#include "kahler/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace kahler;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct Output {
  bool as_json = false;
  std::string out_file;

  // JSON goes to --out when given, and to stdout under --json.
  bool emit(const json& j, const std::string& text) const {
    std::string dumped = j.dump(2) + "\n";
    if (!out_file.empty()) {
      std::ofstream f(out_file);
      if (!f) {
        std::cerr << "error: cannot write " << out_file << "\n";
        return false;
      }
      f << dumped;
    }
    std::cout << (as_json ? dumped : text);
    return true;
  }
};

std::string join_exponents(const std::vector<int>& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s + ")";
}

std::string pk_text(const std::map<std::string, std::string>& pk, int k) {
  LaplacePolynomial p;
  p.k = k;
  for (int l = 1; l <= k; ++l) p.coeffs.push_back(parse_rational(pk.at(std::to_string(l))));
  return to_string(p);
}

void delta_text(std::ostringstream& os, const std::vector<DeltaRecord>& delta) {
  for (const auto& d : delta) {
    os << "k=" << d.k << ": ";
    if (!d.witness) {
      os << "fitted p_" << d.k << " = " << pk_text(d.pk, d.k) << "\n";
      continue;
    }
    const auto& w = *d.witness;
    os << "violated (" << w.kind << ") at P=" << join_exponents(w.P) << " Q=" << join_exponents(w.Q)
       << ": value " << w.lhs << ", expected " << w.expected;
    if (w.reference_P)
      os << "; reference P=" << join_exponents(*w.reference_P) << " Q=" << join_exponents(*w.reference_Q)
         << " value " << *w.reference_value;
    os << "\n";
  }
}

std::string report_text(const Report& r) {
  std::ostringstream os;
  os << "space: " << r.space << "  dim " << r.dim << "  truncation " << r.truncation << "\n";
  if (r.einstein) {
    if (r.einstein->lambda)
      os << "einstein: lambda = " << *r.einstein->lambda << "\n";
    else
      os << "einstein: not Einstein at the origin (residual " << r.einstein->residual << ")\n";
  }
  delta_text(os, r.delta);
  if (r.third_order) os << "third-order obstruction: " << *r.third_order << "\n";
  if (r.fifth_order) os << "fifth-order check: " << *r.fifth_order << "\n";
  if (r.obstruction) {
    const auto& o = *r.obstruction;
    os << "obstruction: lambda " << o.lambda << ", mu (" << o.mu[0] << ", " << o.mu[1] << "), val1 "
       << o.val1 << ", val2 " << o.val2 << ", val1 - 2 val2 = " << o.requirement << "; predicted ("
       << o.prediction[0] << ", " << o.prediction[1] << ")\n";
  }
  for (const auto& d : r.dual)
    os << "  " << d.monomial << ": compact " << d.compact << ", noncompact " << d.noncompact << "\n";
  if (r.radial) {
    const auto& rr = *r.radial;
    os << "radial profile " << rr.profile << ", n = " << rr.n << "\n";
    for (std::size_t i = 0; i < rr.recursion.size(); ++i) {
      int k = static_cast<int>(i) + 1;
      os << "  p_" << k << ": recursion " << pk_text(rr.recursion[i], k);
      if (i < rr.direct.size()) os << ", direct " << pk_text(rr.direct[i], k);
      os << "\n";
    }
    os << (rr.equal ? "recursion and direct fit agree\n" : "recursion and direct fit DIFFER\n");
  }
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  return os.str();
}

bool ends_with(const std::string& s, const std::string& tail) {
  return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

int cmd_catalog(const Output& out, const std::string& family) {
  auto all = catalog_listing();
  std::vector<FamilyInfo> rows;
  for (const auto& f : all)
    if (family.empty() || f.name == family) rows.push_back(f);
  if (rows.empty()) {
    std::cerr << "error: unknown family '" << family << "'\n";
    return kExitUsage;
  }
  json j = json::array();
  std::ostringstream os;
  os << "family        params  range        dim        rank        example\n";
  for (const auto& f : rows) {
    j.push_back({{"family", f.name}, {"params", f.params}, {"range", f.range}, {"dim", f.dim},
                 {"rank", f.rank}, {"example", f.example}});
    char line[256];
    std::snprintf(line, sizeof line, "%-13s %-7s %-12s %-10s %-11s %s\n", f.name.c_str(), f.params.c_str(),
                  f.range.c_str(), f.dim.c_str(), f.rank.c_str(), f.example.c_str());
    os << line;
  }
  return out.emit(j, os.str()) ? kExitPass : kExitUsage;
}

int cmd_check(const Output& out, const std::string& target, int kmax, int degree) {
  if (kmax < 1) {
    std::cerr << "error: --kmax must be >= 1\n";
    return kExitUsage;
  }
  Report rep;
  int D = degree > 0 ? degree : std::max(6, 2 * kmax);
  if (D < 2 * kmax) {
    std::cerr << "error: --degree " << D << " is below 2*kmax = " << 2 * kmax << "\n";
    return kExitUsage;
  }
  std::optional<SpaceDescriptor> desc;
  MetricJet metric;
  try {
    if (ends_with(target, ".pot")) {
      PotFile pf = load_pot_file(target);
      metric = metric_from_potential(elaborate(pf.expr, pf.dim, D));
      rep.space = target;
    } else {
      desc = parse_space(target);
      metric = build_space(*desc, D).metric;
      rep.space = desc->name();
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  rep.dim = metric.n;
  rep.truncation = D;
  if (degree <= 0 && D > 2 * kmax) rep.notes.push_back("truncation raised to " + std::to_string(D));

  std::optional<Rational> lambda;
  if (metric.rescaled_normal) {
    EinsteinReport e = einstein_constant(metric);
    lambda = e.lambda;
    rep.einstein = einstein_record(e);
  } else {
    rep.notes.push_back("potential has cubic terms at the origin; Einstein and parallel-curvature checks skipped");
  }
  bool pass = true;
  for (const auto& f : check_delta_property(metric, kmax)) {
    rep.delta.push_back(delta_record(f));
    pass = pass && f.fitted();
  }
  if (D >= 5 && metric.rescaled_normal) {
    rep.third_order = to_string(third_deriv_obstruction(metric));
    rep.fifth_order = to_string(fifth_order_check(metric));
  }
  if (desc && desc->rank() >= 2 && lambda && D >= 6) {
    rep.obstruction = obstruction_record(obstruction_report(Space{*desc, metric}));
  }
  if (!out.emit(to_json(rep), report_text(rep))) return kExitUsage;
  return pass ? kExitPass : kExitViolation;
}

int cmd_radial(const Output& out, const std::string& name, const std::vector<std::string>& coeffs, int n,
               int kmax) {
  if (name.empty() == coeffs.empty()) {
    std::cerr << "error: give exactly one of --name or --coeffs\n";
    return kExitUsage;
  }
  if (kmax < 1 || n < 1 || n > kMaxVars) {
    std::cerr << "error: need --kmax >= 1 and 1 <= --n <= " << kMaxVars << "\n";
    return kExitUsage;
  }
  int D = 2 * kmax;
  RadialProfile profile;
  try {
    if (!name.empty()) {
      profile = profile_by_name(name, kmax + 2);
    } else {
      std::vector<Rational> c;
      std::string label;
      for (const auto& s : coeffs) {
        c.push_back(parse_rational(s));
        label += (label.empty() ? "" : ",") + s;
      }
      profile = make_profile("coeffs:" + label, Series::polynomial(c));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  Report rep;
  rep.space = "radial:" + profile.name;
  rep.dim = n;
  rep.truncation = D;
  RadialRecord rr;
  rr.profile = profile.name;
  rr.n = n;
  std::vector<LaplacePolynomial> rec = radial_pk(profile, n, kmax);
  for (const auto& p : rec) rr.recursion.push_back(pk_record(p));
  MetricJet metric = metric_from_potential(radial_potential(profile, n, D));
  bool equal = true;
  auto fits = check_delta_property(metric, kmax);
  for (std::size_t i = 0; i < fits.size(); ++i) {
    rep.delta.push_back(delta_record(fits[i]));
    if (!fits[i].fitted()) {
      equal = false;
      continue;
    }
    rr.direct.push_back(pk_record(fits[i].polynomial()));
    equal = equal && fits[i].polynomial() == rec[i];
  }
  rr.equal = equal && fits.size() == rec.size();
  rep.radial = rr;
  if (!out.emit(to_json(rep), report_text(rep))) return kExitUsage;
  return rr.equal ? kExitPass : kExitViolation;
}

int cmd_dual(const Output& out, const std::string& target) {
  SpaceDescriptor desc;
  std::vector<DualRow> rows;
  try {
    desc = parse_space(target);
    rows = dual_compare(desc, 6);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  Report rep;
  rep.space = desc.name();
  rep.dim = desc.complex_dim();
  rep.truncation = 6;
  bool ok = true;
  for (const auto& r : rows) {
    rep.dual.push_back(dual_record(r, rep.dim));
    ok = ok && r.compact + r.noncompact == 0;
  }
  rep.notes.push_back(ok ? "every pair sums to zero" : "some pair does not sum to zero");
  if (!out.emit(to_json(rep), report_text(rep))) return kExitUsage;
  return ok ? kExitPass : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iterated Kähler Laplacians at the origin and the Δ-property"};
  app.require_subcommand(1);
  Output out;
  app.add_flag("--json", out.as_json, "Print the JSON report on stdout");
  app.add_option("--out", out.out_file, "Also write the JSON report to FILE");

  std::string family;
  auto* catalog = app.add_subcommand("catalog", "List the catalog families");
  catalog->add_option("--family", family, "Show a single family");
  catalog->fallthrough();

  std::string target;
  int kmax = 3, degree = 0;
  auto* check = app.add_subcommand("check", "Check the Δ-property on a catalog space or .pot file");
  check->add_option("space", target, "Space name (e.g. grassmannian:k=2,N=4) or path to a .pot file")->required();
  check->add_option("--kmax", kmax, "Highest Laplacian power (default 3)");
  check->add_option("--degree", degree, "Potential truncation degree (default max(6, 2*kmax))");
  check->fallthrough();

  std::string name;
  std::vector<std::string> coeffs;
  int n = 1, radial_kmax = 3;
  auto* radial = app.add_subcommand("radial", "Compare the radial recursion with the direct fit");
  radial->add_option("--name", name, "fubini-study, hyperbolic or flat");
  radial->add_option("--coeffs", coeffs, "Taylor coefficients of Φ(t), comma separated")->delimiter(',');
  radial->add_option("--n", n, "Complex dimension (default 1)");
  radial->add_option("--kmax", radial_kmax, "Highest Laplacian power (default 3)");
  radial->fallthrough();

  std::string dual_target;
  auto* dual = app.add_subcommand("dual", "Compare Δ^3 |z_i z_j|^2 (0) on a space and its dual");
  dual->add_option("space", dual_target, "Space name")->required();
  dual->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*catalog) return cmd_catalog(out, family);
    if (*check) return cmd_check(out, target, kmax, degree);
    if (*radial) return cmd_radial(out, name, coeffs, n, radial_kmax);
    if (*dual) return cmd_dual(out, dual_target);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
