#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "nt/error.hpp"
#include "nt/harness.hpp"

namespace nt::harness {

json ExperimentConfig::echo() const {
  json j;
  j["experiment"] = experiment;
  j["lemma"] = lemma;
  j["D"] = D;
  j["x"] = x;
  j["y"] = y;
  j["alpha"] = alpha;
  j["delta"] = delta;
  j["T"] = T;
  j["beta"] = beta;
  j["c"] = c;
  j["c1"] = c1;
  j["c0"] = c0;
  j["k"] = k;
  j["seed"] = seed;
  j["g"] = g;
  j["format"] = format;
  return j;
}

VerificationRow VerificationRow::make(std::string lemma, json params, double lhs, double rhs,
                                      std::string status) {
  VerificationRow r;
  r.lemma = std::move(lemma);
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.ratio = rhs != 0.0 ? lhs / rhs : (lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  r.status = std::move(status);
  return r;
}

namespace {

json number(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

}  // namespace

json to_json(const VerificationRow& r) {
  json j;
  j["lemma"] = r.lemma;
  j["params"] = r.params;
  j["lhs"] = number(r.lhs);
  j["rhs"] = number(r.rhs);
  j["ratio"] = number(r.ratio);
  j["status"] = r.status;
  if (r.calibration) j["calibration"] = number(*r.calibration);
  return j;
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json character_json(const Character& chi) {
  json j;
  j["D"] = chi.group().modulus();
  j["exponents"] = std::vector<std::int64_t>(chi.exponents().begin(), chi.exponents().end());
  j["index"] = chi.index();
  j["order"] = chi.order();
  return j;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (const char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

namespace {

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

std::string render(const Report& r, const ExperimentConfig& cfg) {
  json doc = r.body;
  doc["version"] = kVersion;
  doc["config"] = cfg.echo();
  doc["disclaimer"] = kDisclaimer;
  doc["flagged"] = r.flagged;
  if (!r.rows.empty()) {
    json rows = json::array();
    for (const auto& row : r.rows) rows.push_back(to_json(row));
    doc["rows"] = rows;
  }
  if (cfg.format == "json") return doc.dump(2) + "\n";
  if (cfg.format != "csv") throw ConfigError("format must be json or csv");

  std::ostringstream os;
  if (!r.rows.empty()) {
    os << "lemma,params,lhs,rhs,ratio,status,calibration\r\n";
    for (const auto& row : r.rows) {
      const json j = to_json(row);
      os << csv_escape(row.lemma) << ',' << csv_escape(row.params.dump()) << ','
         << csv_escape(scalar_text(j["lhs"])) << ',' << csv_escape(scalar_text(j["rhs"])) << ','
         << csv_escape(scalar_text(j["ratio"])) << ',' << csv_escape(row.status) << ','
         << (j.contains("calibration") ? csv_escape(scalar_text(j["calibration"])) : "") << "\r\n";
    }
    return os.str();
  }
  // Non-tabular reports: one row per leaf, JSON-pointer key.
  os << "key,value\r\n";
  for (const auto& [k, v] : doc.flatten().items()) os << csv_escape(k) << ',' << csv_escape(scalar_text(v)) << "\r\n";
  return os.str();
}

void write_report(const Report& r, const ExperimentConfig& cfg) {
  const std::string text = render(r, cfg);
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file " + cfg.out);
  f << text;
}

LadderVerdict ladder_policy(std::span<const double> values) {
  LadderVerdict v;
  double m = -std::numeric_limits<double>::infinity();
  for (const double x : values) {
    m = std::max(m, x);
    v.running_max.push_back(m);
  }
  for (std::size_t k = 2; k < v.running_max.size(); ++k)
    if (v.running_max[k] > v.running_max[1]) v.pass = false;
  return v;
}

std::shared_ptr<const PrimeTable> shared_table(std::int64_t bound) {
  static std::mutex mu;
  static std::shared_ptr<const PrimeTable> table;
  const std::lock_guard lock(mu);
  if (!table || table->bound() < bound) table = std::make_shared<const PrimeTable>(bound);
  return table;
}

}  // namespace nt::harness
