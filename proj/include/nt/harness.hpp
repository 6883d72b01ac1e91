#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "nt/arith.hpp"
#include "nt/dirichlet.hpp"

namespace nt::harness {

// std::map-backed objects, so keys are always emitted sorted.
using json = nlohmann::json;

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kDisclaimer =
    "Suprema over continuous ranges (s in the semi-strip, t in [-T, T], intervals I) are "
    "taken over finite grids; reported maxima are lower bounds for the true suprema and "
    "exceptional sets may be under-covered.";

struct ExperimentConfig {
  std::string experiment;
  std::string lemma;
  std::int64_t D = 5;
  std::int64_t x = 1'000'000;
  std::int64_t y = 0;  // 0: use x
  double alpha = 0.5;
  double delta = 1e-4;
  double T = 0.0;  // 0: experiment default
  double beta = 1.0;
  double c = 1.0;
  double c1 = 1.0;
  double c0 = 0.0;
  int k = 1;
  std::uint64_t seed = 1;
  std::string g;  // empty: experiment default
  std::string out;
  std::string format = "json";

  json echo() const;
};

struct VerificationRow {
  std::string lemma;
  json params = json::object();
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs, computed once here
  std::string status;  // pass | fail | calibration | report
  std::optional<double> calibration;

  static VerificationRow make(std::string lemma, json params, double lhs, double rhs, std::string status);
};
json to_json(const VerificationRow& r);

struct Report {
  json body = json::object();
  std::vector<VerificationRow> rows;
  bool flagged = false;  // exit code 1 when set
};

json complex_json(std::complex<double> z);
json character_json(const Character& chi);

// JSON (sorted keys, two-space indent) or CSV (RFC 4180 quoting).
std::string render(const Report& r, const ExperimentConfig& cfg);
std::string csv_escape(const std::string& field);
void write_report(const Report& r, const ExperimentConfig& cfg);

// Running max R_k of values; passes when R_k = R_2 for every k >= 2.
struct LadderVerdict {
  std::vector<double> running_max;
  bool pass = true;
};
LadderVerdict ladder_policy(std::span<const double> values);

// Shared prime table sized to the largest x any experiment needs.
std::shared_ptr<const PrimeTable> shared_table(std::int64_t bound);

Report run_verify(const std::string& lemma, const ExperimentConfig& cfg);
std::vector<std::string> verify_lemmas();

Report run_decompose(const ExperimentConfig& cfg);
Report run_exceptional(const ExperimentConfig& cfg);
Report run_taxonomy(const ExperimentConfig& cfg);
Report run_halasz(const ExperimentConfig& cfg);
Report run_linnik(const ExperimentConfig& cfg);
Report run_sieve_stats(const ExperimentConfig& cfg);

// Pieces reused by the acceptance checks.
struct EnvelopeLadder {
  std::int64_t D = 0;
  std::vector<std::int64_t> ys;
  std::vector<double> worst_ratio;  // max over reduced a of |residual| / envelope
  std::size_t J_size = 0;
  LadderVerdict verdict;
};
EnvelopeLadder envelope_ladder(std::int64_t D, std::span<const std::int64_t> ys, double alpha,
                               const PrimeTable& table);

struct HalaszExperiment {
  std::vector<std::int64_t> xs;
  std::vector<double> mertens;  // |M(mu, x)|
  std::vector<double> bound;
  double calibration = 0.0;     // |M(x_0)| / bound(x_0)
  std::vector<double> lambda_T; // lambda(T) on the T ladder at the largest x
  std::vector<double> Ts;
  bool bound_ok = true;
  bool lambda_monotone = true;
};
HalaszExperiment halasz_experiment(std::span<const std::int64_t> xs, double T,
                                   std::span<const double> Ts, const PrimeTable& table);

struct CalibrationRung {
  std::int64_t x = 0;
  double c = 0.0;   // Lemma I3 constant
  double c0 = 0.0;  // Lemma A3 constant
  std::int64_t c_D = 0;
  double c_t = 0.0, c0_t = 0.0, c0_y = 0.0;
};
struct CalibrationLadder {
  std::int64_t D_max = 0;
  std::vector<CalibrationRung> rungs;
  LadderVerdict c_verdict, c0_verdict;
};
CalibrationRung calibrate_rung(std::int64_t D_max, std::int64_t x, const PrimeTable& table);
CalibrationLadder calibrate_ladder(std::int64_t D_max, std::span<const std::int64_t> xs,
                                   const PrimeTable& table);

struct LinnikRow {
  std::int64_t D = 0;
  std::int64_t worst_a = 0;
  std::int64_t least_prime = 0;  // max over reduced a of the least prime = a mod D
  double exponent = 0.0;
  std::optional<Character> chi;
  double discrepancy = 0.0;  // max over a of |lhs - rhs|
  double shape = 0.0;        // (log D / log N)^tau
};
struct LinnikResult {
  std::int64_t D_max = 0, N = 0;
  double gamma = 0.5, tau = 0.0;
  std::vector<LinnikRow> rows;
  bool all_found = true;
  double max_exponent = 0.0;
  double calibration = 0.0;  // max over D <= 20 of discrepancy / shape
  std::size_t violations = 0;
};
LinnikResult linnik_experiment(std::int64_t D_max, std::int64_t N, double gamma,
                               const PrimeTable& table);

}  // namespace nt::harness
