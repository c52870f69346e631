#pragma once

#include <algorithm>
#include <cstdio>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "surfcert/int_types.hpp"

namespace surfcert::report {

// Bump when the serialized layout changes.
inline constexpr int kSchemaVersion = 1;

enum class Status { pass, fail, skip };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skip: return "skip";
  }
  return "?";
}

// Where an expected value comes from: a constant stated by the source
// construction ("reference"), a value computed by an independent oracle
// ("derived"), or a direct arithmetic fact ("direct").
enum class Provenance { reference, derived, direct };

inline const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::reference: return "reference";
    case Provenance::derived: return "derived";
    case Provenance::direct: return "direct";
  }
  return "?";
}

// Deterministic float formatting (shortest round-trip is overkill; 17
// significant digits reproduce doubles exactly).
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Witness {
  std::string label;
  bool exact = true;
  std::string value;       // decimal string for exact witnesses
  double float_value = 0;  // float witnesses only
  double tolerance = 0;    // float witnesses only
  Provenance prov = Provenance::direct;

  static Witness exact_value(std::string label, const Int& v, Provenance p) {
    Witness w;
    w.label = std::move(label);
    w.value = v.str();
    w.prov = p;
    return w;
  }
  static Witness exact_value(std::string label, const Rat& v, Provenance p) {
    Witness w;
    w.label = std::move(label);
    w.value = to_string(v);
    w.prov = p;
    return w;
  }
  static Witness text(std::string label, std::string v, Provenance p) {
    Witness w;
    w.label = std::move(label);
    w.value = std::move(v);
    w.prov = p;
    return w;
  }
  static Witness boolean(std::string label, bool v, Provenance p) {
    return text(std::move(label), v ? "true" : "false", p);
  }
  static Witness floating(std::string label, double v, double tol, Provenance p) {
    Witness w;
    w.label = std::move(label);
    w.exact = false;
    w.float_value = v;
    w.tolerance = tol;
    w.prov = p;
    return w;
  }
};

struct CertReport {
  std::string claim;
  Status status = Status::pass;
  std::string detail;  // optional one-line human note
  std::vector<Witness> witnesses;
  std::vector<CertReport> children;

  static CertReport pass(std::string claim, std::string detail = "") {
    CertReport r;
    r.claim = std::move(claim);
    r.detail = std::move(detail);
    return r;
  }
  static CertReport fail(std::string claim, std::string detail = "") {
    CertReport r;
    r.claim = std::move(claim);
    r.status = Status::fail;
    r.detail = std::move(detail);
    return r;
  }
  static CertReport skip(std::string claim, std::string detail = "") {
    CertReport r;
    r.claim = std::move(claim);
    r.status = Status::skip;
    r.detail = std::move(detail);
    return r;
  }

  CertReport& with(Witness w) {
    witnesses.push_back(std::move(w));
    return *this;
  }

  // Record a checked equality; failure flips the report status.
  CertReport& check(const std::string& label, bool ok, Provenance p = Provenance::direct) {
    witnesses.push_back(Witness::boolean(label, ok, p));
    if (!ok) status = Status::fail;
    return *this;
  }

  void add_child(CertReport child) {
    children.push_back(std::move(child));
    if (children.back().status == Status::fail)
      status = Status::fail;
    else if (children.back().status == Status::skip && status == Status::pass)
      status = Status::skip;
  }

  bool passed() const { return status == Status::pass; }
};

// Deterministic aggregation: children sorted by claim id, duplicate ids
// rejected.
inline CertReport merge(std::vector<CertReport> reports, std::string claim,
                        std::string detail = "") {
  std::stable_sort(reports.begin(), reports.end(),
                   [](const CertReport& a, const CertReport& b) { return a.claim < b.claim; });
  std::set<std::string> seen;
  CertReport out = CertReport::pass(std::move(claim), std::move(detail));
  for (auto& r : reports) {
    if (!seen.insert(r.claim).second)
      throw std::invalid_argument("duplicate claim id: " + r.claim);
    out.add_child(std::move(r));
  }
  return out;
}

inline nlohmann::ordered_json witness_to_json(const Witness& w) {
  nlohmann::ordered_json j;
  j["label"] = w.label;
  if (w.exact) {
    j["kind"] = "exact";
    j["value"] = w.value;
  } else {
    j["kind"] = "float";
    j["value"] = w.float_value;
    j["tolerance"] = w.tolerance;
  }
  j["provenance"] = provenance_name(w.prov);
  return j;
}

inline nlohmann::ordered_json report_to_json(const CertReport& r) {
  nlohmann::ordered_json j;
  j["claim"] = r.claim;
  j["status"] = status_name(r.status);
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (!r.witnesses.empty()) {
    auto arr = nlohmann::ordered_json::array();
    for (const Witness& w : r.witnesses) {
      if (!w.exact && !(w.tolerance > 0))
        throw std::logic_error("float witness '" + w.label + "' lacks a tolerance");
      arr.push_back(witness_to_json(w));
    }
    j["witnesses"] = std::move(arr);
  }
  if (!r.children.empty()) {
    auto arr = nlohmann::ordered_json::array();
    for (const CertReport& c : r.children) arr.push_back(report_to_json(c));
    j["children"] = std::move(arr);
  }
  return j;
}

inline nlohmann::ordered_json document(const CertReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = kSchemaVersion;
  j["report"] = report_to_json(r);
  return j;
}

namespace detail {
inline void collect_lines(const CertReport& r, const std::string& prefix, bool failing_only,
                          std::vector<std::string>& out) {
  const std::string id = prefix.empty() ? r.claim : prefix + "/" + r.claim;
  if (!failing_only || r.status != Status::pass) {
    std::string line = std::string("[") + status_name(r.status) + "] " + id;
    if (!r.detail.empty()) line += " — " + r.detail;
    out.push_back(std::move(line));
  }
  for (const CertReport& c : r.children) collect_lines(c, id, failing_only, out);
}
}  // namespace detail

// One line per claim; failing claims listed first.
inline std::string summary(const CertReport& r) {
  std::vector<std::string> failing, all;
  detail::collect_lines(r, "", true, failing);
  detail::collect_lines(r, "", false, all);
  std::string out;
  if (!failing.empty() && r.status != Status::pass) {
    out += "failures:\n";
    for (const auto& l : failing) out += "  " + l + "\n";
  }
  for (const auto& l : all) out += l + "\n";
  return out;
}

}  // namespace surfcert::report
