#pragma once

// Machine-readable command reports. Every value is a string so that exact
// rationals survive the trip through JSON. Needs nlohmann/json on the include
// path; the rest of the library does not.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "multclass/classes.hpp"
#include "multclass/multivar.hpp"
#include "multclass/suites.hpp"

namespace multclass::report {

inline constexpr const char* kSchemaVersion = "1.0";

using KeyValues = std::vector<std::pair<std::string, std::string>>;

struct Record {
  KeyValues inputs;
  KeyValues outputs;
  std::string formula;
  friend bool operator==(const Record&, const Record&) = default;
};

struct WitnessRecord {
  std::string relation;
  std::string m;
  std::string n;
  std::string lhs;
  std::string rhs;
  friend bool operator==(const WitnessRecord&, const WitnessRecord&) = default;
};

/// One prime's factor table: (exponent or signature, value) rows.
struct FactorTable {
  std::string prime;
  KeyValues entries;
  friend bool operator==(const FactorTable&, const FactorTable&) = default;
};

struct VerdictRecord {
  std::string check;
  std::string verdict;
  std::string method;
  std::optional<std::string> c;
  std::optional<std::string> a;
  std::optional<std::string> constant;
  std::vector<FactorTable> tables;
  std::optional<WitnessRecord> witness;
  KeyValues equations;
  std::vector<std::string> notes;
  friend bool operator==(const VerdictRecord&, const VerdictRecord&) = default;
};

struct Report {
  std::string schema_version = kSchemaVersion;
  std::string command;
  KeyValues args;
  std::vector<Record> results;
  std::vector<VerdictRecord> verdicts;
  std::string status = "pass";
  std::optional<double> elapsed_ms;
  friend bool operator==(const Report&, const Report&) = default;
};

using json = nlohmann::ordered_json;

namespace detail {

inline json kv_to_json(const KeyValues& kv) {
  json o = json::object();
  for (const auto& [k, v] : kv) o[k] = v;
  return o;
}

inline KeyValues kv_from_json(const json& j) {
  KeyValues kv;
  for (auto it = j.begin(); it != j.end(); ++it) kv.emplace_back(it.key(), it.value().get<std::string>());
  return kv;
}

inline json rows_to_json(const KeyValues& kv, const char* key, const char* value) {
  json a = json::array();
  for (const auto& [k, v] : kv) a.push_back({{key, k}, {value, v}});
  return a;
}

inline KeyValues rows_from_json(const json& j, const char* key, const char* value) {
  KeyValues kv;
  for (const auto& row : j) kv.emplace_back(row.at(key).get<std::string>(), row.at(value).get<std::string>());
  return kv;
}

}  // namespace detail

inline json to_json(const Report& r) {
  json j;
  j["schema_version"] = r.schema_version;
  j["command"] = {{"name", r.command}, {"args", detail::kv_to_json(r.args)}};
  j["status"] = r.status;
  json results = json::array();
  for (const auto& rec : r.results) {
    results.push_back({{"inputs", detail::kv_to_json(rec.inputs)},
                       {"outputs", detail::kv_to_json(rec.outputs)},
                       {"formula", rec.formula}});
  }
  j["results"] = std::move(results);
  json verdicts = json::array();
  for (const auto& v : r.verdicts) {
    json o;
    o["check"] = v.check;
    o["verdict"] = v.verdict;
    o["method"] = v.method;
    if (v.c) o["c"] = *v.c;
    if (v.a) o["a"] = *v.a;
    if (v.constant) o["constant"] = *v.constant;
    if (!v.tables.empty()) {
      json t = json::array();
      for (const auto& ft : v.tables) t.push_back({{"prime", ft.prime}, {"entries", detail::rows_to_json(ft.entries, "exponent", "value")}});
      o["tables"] = std::move(t);
    }
    if (v.witness) {
      o["witness"] = {{"relation", v.witness->relation},
                      {"m", v.witness->m},
                      {"n", v.witness->n},
                      {"lhs", v.witness->lhs},
                      {"rhs", v.witness->rhs}};
    }
    if (!v.equations.empty()) o["equations"] = detail::rows_to_json(v.equations, "point", "value");
    if (!v.notes.empty()) o["notes"] = v.notes;
    verdicts.push_back(std::move(o));
  }
  j["verdicts"] = std::move(verdicts);
  if (r.elapsed_ms) j["timing"] = {{"elapsed_ms", *r.elapsed_ms}};
  return j;
}

inline Report from_json(const json& j) {
  Report r;
  r.schema_version = j.at("schema_version").get<std::string>();
  r.command = j.at("command").at("name").get<std::string>();
  r.args = detail::kv_from_json(j.at("command").at("args"));
  r.status = j.at("status").get<std::string>();
  for (const auto& rec : j.at("results")) {
    r.results.push_back({detail::kv_from_json(rec.at("inputs")), detail::kv_from_json(rec.at("outputs")),
                         rec.at("formula").get<std::string>()});
  }
  for (const auto& o : j.at("verdicts")) {
    VerdictRecord v;
    v.check = o.at("check").get<std::string>();
    v.verdict = o.at("verdict").get<std::string>();
    v.method = o.at("method").get<std::string>();
    if (o.contains("c")) v.c = o["c"].get<std::string>();
    if (o.contains("a")) v.a = o["a"].get<std::string>();
    if (o.contains("constant")) v.constant = o["constant"].get<std::string>();
    if (o.contains("tables")) {
      for (const auto& t : o["tables"]) {
        v.tables.push_back({t.at("prime").get<std::string>(), detail::rows_from_json(t.at("entries"), "exponent", "value")});
      }
    }
    if (o.contains("witness")) {
      const auto& w = o["witness"];
      v.witness = WitnessRecord{w.at("relation").get<std::string>(), w.at("m").get<std::string>(),
                                w.at("n").get<std::string>(), w.at("lhs").get<std::string>(),
                                w.at("rhs").get<std::string>()};
    }
    if (o.contains("equations")) v.equations = detail::rows_from_json(o["equations"], "point", "value");
    if (o.contains("notes")) v.notes = o["notes"].get<std::vector<std::string>>();
    r.verdicts.push_back(std::move(v));
  }
  if (j.contains("timing")) r.elapsed_ms = j["timing"].at("elapsed_ms").get<double>();
  return r;
}

// Conversions from checker output.

inline VerdictRecord verdict_of(const ClassReport& cr) {
  VerdictRecord v;
  v.check = to_string(cr.cls);
  v.verdict = to_string(cr.verdict);
  v.method = cr.method;
  if (cr.params) {
    v.c = cr.params->c.str();
    v.a = std::to_string(cr.params->a);
    if (cr.params->selberg) {
      const auto& s = *cr.params->selberg;
      v.constant = s.constant.str();
      for (const auto& [p, t] : s.tables) {
        FactorTable ft{std::to_string(p), {}};
        for (const auto& [e, val] : t) ft.entries.emplace_back(std::to_string(e), val.str());
        v.tables.push_back(std::move(ft));
      }
    }
  }
  if (cr.witness) {
    const auto& w = *cr.witness;
    v.witness = WitnessRecord{to_string(w.relation), std::to_string(w.m), std::to_string(w.n), w.lhs.str(), w.rhs.str()};
  }
  for (const auto& e : cr.equations) v.equations.emplace_back(point_str(e.point), e.value.str());
  return v;
}

inline void add_factor_system(VerdictRecord& v, const FactorSystem& fs) {
  v.constant = fs.constant.str();
  for (const auto& [p, t] : fs.tables) {
    FactorTable ft{std::to_string(p), {}};
    for (const auto& [sig, val] : t) ft.entries.emplace_back(signature_str(sig), val.str());
    v.tables.push_back(std::move(ft));
  }
}

inline VerdictRecord verdict_of(const MultiClassReport& mr) {
  VerdictRecord v;
  v.check = to_string(mr.cls);
  v.verdict = to_string(mr.verdict);
  v.method = mr.method;
  if (mr.params) {
    v.c = mr.params->c.str();
    v.a = point_str(mr.params->a);
    if (mr.params->selberg) add_factor_system(v, *mr.params->selberg);
  }
  if (mr.witness) {
    const auto& w = *mr.witness;
    v.witness = WitnessRecord{to_string(w.relation), point_str(w.m), point_str(w.n), w.lhs.str(), w.rhs.str()};
  }
  for (const auto& s : mr.shift_chain) {
    v.notes.push_back("f" + point_str(s.point) + " = " + s.value.str() + ", a divides " + point_str(s.bound));
  }
  for (const auto& e : mr.equations) v.equations.emplace_back(point_str(e.point), e.value.str());
  return v;
}

inline VerdictRecord verdict_of(const suites::SuiteResult& s) {
  VerdictRecord v;
  v.check = s.name;
  v.verdict = s.passed ? "pass" : "fail";
  v.method = "suite";
  v.notes.push_back("checks: " + std::to_string(s.checks));
  for (const auto& f : s.failures) v.notes.push_back(f);
  return v;
}

}  // namespace multclass::report
