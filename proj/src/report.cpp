#include "kahler/report.hpp"

namespace kahler {

using nlohmann::json;

namespace {

std::vector<int> exponents(const Monomial& m, int n, bool hol) {
  std::vector<int> e(n);
  for (int i = 0; i < n; ++i) e[i] = hol ? m.hol(i) : m.antihol(i);
  return e;
}

json witness_json(const WitnessRecord& w) {
  json j = {{"P", w.P}, {"Q", w.Q}, {"kind", w.kind}, {"lhs", w.lhs}, {"expected", w.expected}};
  if (w.reference_P) {
    j["reference"] = {{"P", *w.reference_P}, {"Q", *w.reference_Q}, {"value", w.reference_value.value_or("")}};
  }
  return j;
}

WitnessRecord witness_from(const json& j) {
  WitnessRecord w;
  w.P = j.at("P").get<std::vector<int>>();
  w.Q = j.at("Q").get<std::vector<int>>();
  w.kind = j.at("kind").get<std::string>();
  w.lhs = j.at("lhs").get<std::string>();
  w.expected = j.at("expected").get<std::string>();
  if (j.contains("reference")) {
    const json& r = j.at("reference");
    w.reference_P = r.at("P").get<std::vector<int>>();
    w.reference_Q = r.at("Q").get<std::vector<int>>();
    w.reference_value = r.at("value").get<std::string>();
  }
  return w;
}

}  // namespace

json to_json(const Report& r) {
  json j;
  j["space"] = r.space;
  j["dim"] = r.dim;
  j["truncation"] = r.truncation;
  if (r.einstein) {
    j["einstein"] = {{"lambda", r.einstein->lambda ? json(*r.einstein->lambda) : json(nullptr)},
                     {"residual", r.einstein->residual}};
  }
  json delta = json::array();
  for (const auto& d : r.delta) {
    json e = {{"k", d.k}, {"status", d.status}};
    if (d.witness)
      e["witness"] = witness_json(*d.witness);
    else
      e["pk"] = d.pk;
    delta.push_back(e);
  }
  j["delta"] = delta;
  if (r.third_order) j["third_order"] = *r.third_order;
  if (r.fifth_order) j["fifth_order"] = *r.fifth_order;
  if (r.obstruction) {
    const auto& o = *r.obstruction;
    j["obstruction"] = {{"lambda", o.lambda},   {"mu", o.mu},
                        {"val1", o.val1},       {"val2", o.val2},
                        {"requirement", o.requirement}, {"prediction", o.prediction}};
  }
  json dual = json::array();
  for (const auto& d : r.dual)
    dual.push_back({{"monomial", d.monomial}, {"compact", d.compact}, {"noncompact", d.noncompact}});
  j["dual"] = dual;
  if (r.radial) {
    const auto& rr = *r.radial;
    j["radial"] = {{"profile", rr.profile},
                   {"n", rr.n},
                   {"recursion", rr.recursion},
                   {"direct", rr.direct},
                   {"equal", rr.equal}};
  }
  if (!r.notes.empty()) j["notes"] = r.notes;
  j["engine"] = {{"version", r.version}};
  return j;
}

Report report_from_json(const json& j) {
  Report r;
  r.space = j.at("space").get<std::string>();
  r.dim = j.at("dim").get<int>();
  r.truncation = j.at("truncation").get<int>();
  if (j.contains("einstein")) {
    EinsteinRecord e;
    const json& l = j.at("einstein").at("lambda");
    if (!l.is_null()) e.lambda = l.get<std::string>();
    e.residual = j.at("einstein").at("residual").get<std::string>();
    r.einstein = e;
  }
  for (const auto& e : j.at("delta")) {
    DeltaRecord d;
    d.k = e.at("k").get<int>();
    d.status = e.at("status").get<std::string>();
    if (e.contains("witness"))
      d.witness = witness_from(e.at("witness"));
    else
      d.pk = e.at("pk").get<std::map<std::string, std::string>>();
    r.delta.push_back(d);
  }
  if (j.contains("third_order")) r.third_order = j.at("third_order").get<std::string>();
  if (j.contains("fifth_order")) r.fifth_order = j.at("fifth_order").get<std::string>();
  if (j.contains("obstruction")) {
    const json& o = j.at("obstruction");
    ObstructionRecord rec;
    rec.lambda = o.at("lambda").get<std::string>();
    rec.mu = o.at("mu").get<std::vector<std::string>>();
    rec.val1 = o.at("val1").get<std::string>();
    rec.val2 = o.at("val2").get<std::string>();
    rec.requirement = o.at("requirement").get<std::string>();
    rec.prediction = o.at("prediction").get<std::vector<std::string>>();
    r.obstruction = rec;
  }
  for (const auto& d : j.at("dual"))
    r.dual.push_back({d.at("monomial").get<std::string>(), d.at("compact").get<std::string>(),
                      d.at("noncompact").get<std::string>()});
  if (j.contains("radial")) {
    const json& rj = j.at("radial");
    RadialRecord rr;
    rr.profile = rj.at("profile").get<std::string>();
    rr.n = rj.at("n").get<int>();
    rr.recursion = rj.at("recursion").get<std::vector<std::map<std::string, std::string>>>();
    rr.direct = rj.at("direct").get<std::vector<std::map<std::string, std::string>>>();
    rr.equal = rj.at("equal").get<bool>();
    r.radial = rr;
  }
  if (j.contains("notes")) r.notes = j.at("notes").get<std::vector<std::string>>();
  r.version = j.at("engine").at("version").get<std::string>();
  return r;
}

std::map<std::string, std::string> pk_record(const LaplacePolynomial& p) {
  std::map<std::string, std::string> out;
  for (int l = 1; l <= p.k; ++l) out[std::to_string(l)] = to_string(p.coeff(l));
  return out;
}

DeltaRecord delta_record(const FitResult& f) {
  DeltaRecord d;
  d.k = f.k;
  if (f.fitted()) {
    d.status = "fitted";
    d.pk = pk_record(f.polynomial());
    return d;
  }
  const ViolationWitness& w = f.witness();
  d.status = "violated";
  WitnessRecord rec;
  rec.P = exponents(w.monomial, w.n, true);
  rec.Q = exponents(w.monomial, w.n, false);
  rec.kind = witness_kind_name(w.kind);
  rec.lhs = to_string(w.lhs);
  rec.expected = to_string(w.expected);
  if (w.reference) {
    rec.reference_P = exponents(*w.reference, w.n, true);
    rec.reference_Q = exponents(*w.reference, w.n, false);
    rec.reference_value = to_string(w.reference_value);
  }
  d.witness = rec;
  return d;
}

EinsteinRecord einstein_record(const EinsteinReport& e) {
  EinsteinRecord r;
  if (e.lambda) r.lambda = to_string(*e.lambda);
  r.residual = to_string(e.residual);
  return r;
}

ObstructionRecord obstruction_record(const ObstructionReport& o) {
  ObstructionRecord r;
  r.lambda = to_string(o.lambda);
  for (const auto& m : o.mu) r.mu.push_back(to_string(m));
  r.val1 = to_string(o.val1);
  r.val2 = to_string(o.val2);
  r.requirement = to_string(o.requirement);
  r.prediction = {to_string(o.predicted1), to_string(o.predicted2)};
  return r;
}

DualRecord dual_record(const DualRow& row, int n) {
  return {monomial_label(row.monomial, n), to_string(row.compact), to_string(row.noncompact)};
}

}  // namespace kahler
