#pragma once

// Machine-readable check report. Rationals are carried as canonical strings
// ("p" or "p/q") so serialization is exact and deterministic.

#include "kahler/catalog.hpp"
#include "kahler/radial.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace kahler {

inline constexpr const char* kEngineVersion = "0.1.0";

struct WitnessRecord {
  std::vector<int> P, Q;
  std::string kind;
  std::string lhs, expected;
  std::optional<std::vector<int>> reference_P, reference_Q;
  std::optional<std::string> reference_value;
  friend bool operator==(const WitnessRecord&, const WitnessRecord&) = default;
};

struct DeltaRecord {
  int k = 0;
  std::string status;                     // "fitted" | "violated"
  std::map<std::string, std::string> pk;  // "l" -> a_{k,l}
  std::optional<WitnessRecord> witness;
  friend bool operator==(const DeltaRecord&, const DeltaRecord&) = default;
};

struct EinsteinRecord {
  std::optional<std::string> lambda;
  std::string residual;
  friend bool operator==(const EinsteinRecord&, const EinsteinRecord&) = default;
};

struct ObstructionRecord {
  std::string lambda;
  std::vector<std::string> mu;
  std::string val1, val2, requirement;
  std::vector<std::string> prediction;
  friend bool operator==(const ObstructionRecord&, const ObstructionRecord&) = default;
};

struct DualRecord {
  std::string monomial, compact, noncompact;
  friend bool operator==(const DualRecord&, const DualRecord&) = default;
};

struct RadialRecord {
  std::string profile;
  int n = 0;
  std::vector<std::map<std::string, std::string>> recursion, direct;
  bool equal = false;
  friend bool operator==(const RadialRecord&, const RadialRecord&) = default;
};

struct Report {
  std::string space;
  int dim = 0;
  int truncation = 0;
  std::optional<EinsteinRecord> einstein;
  std::vector<DeltaRecord> delta;
  std::optional<std::string> third_order;  // third_deriv_obstruction
  std::optional<std::string> fifth_order;  // fifth_order_check
  std::optional<ObstructionRecord> obstruction;
  std::vector<DualRecord> dual;
  std::optional<RadialRecord> radial;
  std::vector<std::string> notes;
  std::string version = kEngineVersion;
  friend bool operator==(const Report&, const Report&) = default;
};

nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

std::map<std::string, std::string> pk_record(const LaplacePolynomial& p);
DeltaRecord delta_record(const FitResult& f);
EinsteinRecord einstein_record(const EinsteinReport& e);
ObstructionRecord obstruction_record(const ObstructionReport& o);
DualRecord dual_record(const DualRow& row, int n);

}  // namespace kahler
