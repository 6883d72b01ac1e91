#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nt/arith.hpp"
#include "nt/dirichlet.hpp"
#include "nt/lseries.hpp"
#include "nt/multfun.hpp"

namespace nt {

enum class Metric { intro, window };

// intro:  (sum_{p <= x} p^{-sigma} |g(p) - h(p)|^2)^{1/2}
// window: ((1/4L) sum_{D < p <= x} |g(p) - h(p)|^2 / p)^{1/2}, L = sum_{D < p <= x} 1/p
class DistanceContext {
 public:
  DistanceContext(std::int64_t D, std::int64_t x, const PrimeTable& table,
                  Metric metric = Metric::window, double sigma = 1.5);
  std::int64_t D() const { return D_; }
  std::int64_t x() const { return x_; }
  double L() const { return L_; }
  Metric metric() const { return metric_; }
  double sigma() const { return sigma_; }
  const PrimeTable& table() const { return *table_; }
  // Primes over which the metric sums.
  std::span<const std::uint32_t> primes() const;

 private:
  std::int64_t D_, x_;
  const PrimeTable* table_;
  Metric metric_;
  double sigma_;
  double L_ = 0.0;
};

using PrimeValues = std::function<cplx(std::int64_t p)>;

double rho(const PrimeValues& g, const PrimeValues& h, const DistanceContext& ctx);
double rho(const MF& g, const MF& h, const DistanceContext& ctx);

// log(log T / log D) + c.
double delta_T(std::int64_t D, double T, double c);

struct LambdaResult {
  double T = 0.0;
  double t_star = 0.0;
  double lambda = 0.0;
  double spacing = 0.0;         // coarse spacing
  double refined_spacing = 0.0;
  std::size_t evaluations = 0;
};

// min over |t| <= T of sum_{Y < p <= x} (|g(p)| - Re g(p) p^{it}) / p.
// Coarse grid k * spacing (anchored at 0), then x100 refinement around the
// best cell; seeds are extra candidate points. Ties go to the smallest t.
LambdaResult lambda_min(const PrimeValues& g, double Y, std::int64_t x, double T, double spacing,
                        const PrimeTable& table, std::span<const double> seeds = {});

// Rungs T_1 <= T_2 <= ..., each rung seeded with every earlier t_star.
std::vector<LambdaResult> lambda_ladder(const PrimeValues& g, double Y, std::int64_t x,
                                        std::span<const double> Ts, const PrimeTable& table);

struct HalaszResult {
  LambdaResult lambda;
  double main_factor = 0.0;  // x / log x prod_{p <= x} (1 + |g(p)|/p)
  double exp_term = 0.0;     // main_factor exp(-lambda c/(c + beta))
  double T_term = 0.0;       // main_factor T^{-1/2}
  double bound = 0.0;
  double max_abs_g = 0.0;
  double min_tail_sum = 0.0;  // min over w of sum_{w < p <= x} (|g(p)| - c)/p
  double gamma = 0.0;
  double higher_power_series = 0.0;  // sum over p^k <= x, k >= 2 of |g(q)| (log q)^gamma / q
  bool beta_ok = false;
  bool lower_bound_ok = false;
  bool applicable = false;
};
HalaszResult halasz_bound(const MF& g, double Y, std::int64_t x, double T, double beta, double c,
                          double c1, const PrimeTable& table);

struct SpacingResult {
  double distance = 0.0;
  double bound = 0.0;  // 0 when 1/2 - Delta(2T)/(2L) <= 0
  bool bound_positive = false;
};
SpacingResult spacing_lower_bound(const Character& chi1, double t1, const Character& chi2, double t2,
                                  const DistanceContext& ctx, double T, double c);

double fejer_kernel(int N, double theta);
double fejer_kernel_sum(int N, double theta);

using PrimeWeight = std::function<double(std::int64_t p)>;

enum class OrderVerdict { order_bound, sum_bound };
const char* to_string(OrderVerdict v);

struct OrderTestResult {
  double delta = 0.0;
  int N = 0;  // kernel length [2 delta^{-1/3}]
  double L = 0.0;
  double hypothesis_sum = 0.0;  // sum h(p)/p |1 - chi(p) p^{it}|^2
  double lhs = 0.0;             // sum h(p)/p
  double threshold = 0.0;       // 4 delta^{1/3} L + Delta(delta^{-1/3} T)
  std::int64_t order = 0;
  double order_limit = 0.0;     // 2 delta^{-1/3}
  OrderVerdict verdict = OrderVerdict::sum_bound;
  bool consistent = false;  // order-bound verdict implies order < order_limit
};
// Throws HypothesisError when the hypothesis sum exceeds delta L.
OrderTestResult order_test_A1(const PrimeWeight& h, const Character& chi, double t, double delta,
                              std::int64_t x, double T, double c, const PrimeTable& table);

struct OrderTestA2Result {
  int r = 2;
  double delta = 0.0;
  double L = 0.0;
  double hypothesis_sum = 0.0;
  double lhs = 0.0;
  double bound = 0.0;  // (1 + (r^3 delta)^{1/2}) L / r + Delta((r - 1) T)
  std::int64_t order = 0;
  bool applies = false;  // order >= r
  bool holds = false;    // lhs <= bound
};
OrderTestA2Result order_test_A2(const PrimeWeight& h, const Character& chi, double t, double delta,
                                int r, std::int64_t x, double T, double c, const PrimeTable& table);

struct PsiValue {
  double value = 0.0;
  int branch = 0;  // 1: |t| > 1/log y, 2: 1/log x < |t| <= 1/log y, 3: |t| <= 1/log x
  bool boundary_tie = false;
};
PsiValue psi_bound(double y, double x, double t, double c0);

struct ATestResult {
  double delta = 0.0;
  double L1 = 0.0;
  double hypothesis_sum = 0.0;
  double lhs = 0.0;
  PsiValue psi_scaled;  // psi(2 delta^{-1/3} t)
  PsiValue psi_t;
  double rhs = 0.0;  // 4 delta^{1/3} L1 + 3 psi(2 delta^{-1/3} t) + 3 psi(t)
  bool holds = false;
};
// Throws HypothesisError when sum h(p)/p |1 - p^{it}|^2 > delta L1.
ATestResult t_test_A4(const PrimeWeight& h, double t, double delta, std::int64_t y, std::int64_t x,
                      double c0, const PrimeTable& table);

struct TaxonomyEntry {
  Character chi;
  double max_logG = 0.0;
  LambdaResult lambda;   // twisted g chi, Y = D, |t| <= T_A / 2
  bool removable = false;  // lambda > delta L / 8
  double Z_sum = 0.0;      // sum_{D < p <= Z} (|g(p)| - Re g(p) chi(p)) / p
  double exceptional_sum = 0.0;  // |sum_{n <= x} g(n) chi(n)|
  double exceptional_bound = 0.0;
};

struct TaxonomyReport {
  std::int64_t D = 2, x = 4;
  double c = 1.0, c1 = 1.0, alpha = 0.5, delta = 0.0;
  int k = 1;
  double L = 0.0;
  double T_A = 0.0;  // max(D, (log x/log D)^4)
  double Z = 0.0;    // exp(log D (log x/log D)^{1/30})
  double min_tail_sum = 0.0;
  double min_tail_sum_k = 0.0;  // restricted to g(p)^k real
  bool applicable = false;
  bool applicable_k = false;
  ExceptionalReport classifier;
  std::vector<TaxonomyEntry> entries;
  double pair_order_limit = 0.0;  // 10 / c
  double order_limit_k = 0.0;     // 20 k / c
  std::vector<ExceptionalReport::PairOrder> pair_orders;  // among non-removable members
  bool pair_orders_ok = true;
  bool orders_k_ok = true;
};

TaxonomyReport taxonomy_pipeline(const MF& g, std::int64_t D, std::int64_t x, double c, double c1,
                                 int k, double alpha, const PrimeTable& table);

// min over the 64-point geometric grid of w in [lo, x] of sum_{w < p <= x} (|g(p)| - c)/p,
// optionally restricted to primes with g(p)^k real.
double lower_bound_scan(const PrimeValues& g, double lo, std::int64_t x, double c,
                        const PrimeTable& table, int k = 0);

}  // namespace nt
