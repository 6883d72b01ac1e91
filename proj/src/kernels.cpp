#include "nt/kernels.hpp"

#include <cmath>
#include <numeric>

#include "nt/error.hpp"

namespace nt::kernels {

ClassScanner::ClassScanner(const ClassScanSpec& spec) {
  if (spec.endpoints.size() < 2) throw DomainError("class scan needs at least two endpoints");
  if (spec.weights.size() != spec.primes.size()) throw DomainError("weights/primes length mismatch");
  const std::int64_t D = spec.D;
  rows_ = spec.endpoints.size();
  nt_ = spec.nt;
  t0_ = spec.t0;
  dt_ = spec.dt;

  std::vector<std::int64_t> cls(static_cast<std::size_t>(D), -1);
  for (std::int64_t r = 0; r < D; ++r)
    if (std::gcd(r, D) == 1 || D == 1) cls[static_cast<std::size_t>(r)] = static_cast<std::int64_t>(cols_++);

  // Bucket primes by class, keeping ascending order inside each bucket.
  std::vector<std::size_t> count(cols_ + 1, 0);
  for (const auto p : spec.primes) {
    if (static_cast<std::int64_t>(p) <= spec.endpoints.front() ||
        static_cast<std::int64_t>(p) > spec.endpoints.back())
      throw DomainError("class scan prime outside (e_0, e_m]");
    const auto c = cls[static_cast<std::size_t>(p % D)];
    if (c >= 0) ++count[static_cast<std::size_t>(c) + 1];
  }
  std::partial_sum(count.begin(), count.end(), count.begin());
  const std::size_t total = count.back();
  logp_.resize(total);
  wr_.resize(total);
  wi_.resize(total);
  step_r_.resize(total);
  step_i_.resize(total);
  std::vector<std::uint32_t> slot_prime(total);
  std::vector<std::size_t> fill(count.begin(), count.end() - 1);
  for (std::size_t i = 0; i < spec.primes.size(); ++i) {
    const auto p = spec.primes[i];
    const auto c = cls[static_cast<std::size_t>(p % D)];
    if (c < 0) continue;
    const std::size_t s = fill[static_cast<std::size_t>(c)]++;
    slot_prime[s] = p;
    logp_[s] = std::log(static_cast<double>(p));
    wr_[s] = spec.weights[i].real();
    wi_[s] = spec.weights[i].imag();
    const double a = -dt_ * logp_[s];
    step_r_[s] = std::cos(a);
    step_i_[s] = std::sin(a);
  }
  // seg_[c * rows + j] = first slot of class c holding a prime > e_j.
  seg_.resize(cols_ * rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    std::size_t s = count[c];
    for (std::size_t j = 0; j < rows_; ++j) {
      while (s < count[c + 1] && static_cast<std::int64_t>(slot_prime[s]) <= spec.endpoints[j]) ++s;
      seg_[c * rows_ + j] = s;
    }
  }
}

ClassScanner::State ClassScanner::make_state() const {
  State s;
  s.zr.resize(logp_.size());
  s.zi.resize(logp_.size());
  return s;
}

void ClassScanner::anchor(State& s, std::size_t k) const {
  const double t = t_at(k);
  for (std::size_t i = 0; i < logp_.size(); ++i) {
    const double a = -t * logp_[i];
    const double c = std::cos(a), sn = std::sin(a);
    s.zr[i] = wr_[i] * c - wi_[i] * sn;
    s.zi[i] = wr_[i] * sn + wi_[i] * c;
  }
}

void ClassScanner::accumulate(const State& s, ClassPrefix& out) const {
  out.rows = rows_;
  out.cols = cols_;
  out.re.assign(rows_ * cols_, 0.0);
  out.im.assign(rows_ * cols_, 0.0);
  const double* zr = s.zr.data();
  const double* zi = s.zi.data();
  for (std::size_t c = 0; c < cols_; ++c) {
    const std::size_t* seg = &seg_[c * rows_];
    double run_r = 0.0, run_i = 0.0;
    for (std::size_t j = 1; j < rows_; ++j) {
      double sr = 0.0, si = 0.0;
#pragma omp simd reduction(+ : sr, si)
      for (std::size_t i = seg[j - 1]; i < seg[j]; ++i) {
        sr += zr[i];
        si += zi[i];
      }
      run_r += sr;
      run_i += si;
      out.re[j * cols_ + c] = run_r;
      out.im[j * cols_ + c] = run_i;
    }
  }
}

void ClassScanner::advance(State& s) const {
  const std::size_t n = logp_.size();
  double* zr = s.zr.data();
  double* zi = s.zi.data();
  const double* cr = step_r_.data();
  const double* ci = step_i_.data();
#pragma omp simd
  for (std::size_t i = 0; i < n; ++i) {
    const double r = zr[i] * cr[i] - zi[i] * ci[i];
    const double m = zr[i] * ci[i] + zi[i] * cr[i];
    zr[i] = r;
    zi[i] = m;
  }
}

CharacterMatrix character_matrix(const CharacterGroup& group, std::span<const Character> chars) {
  CharacterMatrix m;
  m.nchars = chars.size();
  const auto reduced = group.reduced_residues();
  m.cols = reduced.size();
  m.re.resize(m.cols * m.nchars);
  m.im.resize(m.cols * m.nchars);
  for (std::size_t c = 0; c < m.cols; ++c)
    for (std::size_t i = 0; i < m.nchars; ++i) {
      const cplx v = chars[i](reduced[c]);
      m.re[c * m.nchars + i] = v.real();
      m.im[c * m.nchars + i] = v.imag();
    }
  return m;
}

void to_characters(const CharacterMatrix& chi, const ClassPrefix& p, std::vector<double>& s_re,
                   std::vector<double>& s_im) {
  const std::size_t n = chi.nchars;
  s_re.assign(p.rows * n, 0.0);
  s_im.assign(p.rows * n, 0.0);
  for (std::size_t j = 1; j < p.rows; ++j) {
    double* sr = &s_re[j * n];
    double* si = &s_im[j * n];
    for (std::size_t c = 0; c < p.cols; ++c) {
      const double pr = p.re[j * p.cols + c], pi = p.im[j * p.cols + c];
      const double* xr = &chi.re[c * n];
      const double* xi = &chi.im[c * n];
#pragma omp simd
      for (std::size_t i = 0; i < n; ++i) {
        sr[i] += xr[i] * pr - xi[i] * pi;
        si[i] += xr[i] * pi + xi[i] * pr;
      }
    }
  }
}

void to_characters_real(const CharacterMatrix& chi, const ClassPrefix& p, std::vector<double>& s_re) {
  const std::size_t n = chi.nchars;
  s_re.assign(p.rows * n, 0.0);
  for (std::size_t j = 1; j < p.rows; ++j) {
    double* sr = &s_re[j * n];
    for (std::size_t c = 0; c < p.cols; ++c) {
      const double pr = p.re[j * p.cols + c], pi = p.im[j * p.cols + c];
      const double* xr = &chi.re[c * n];
      const double* xi = &chi.im[c * n];
#pragma omp simd
      for (std::size_t i = 0; i < n; ++i) sr[i] += xr[i] * pr - xi[i] * pi;
    }
  }
}

std::vector<std::vector<cplx>> character_prefix(const ClassScanSpec& spec,
                                                const CharacterGroup& group,
                                                std::span<const Character> chars) {
  const auto matrix = character_matrix(group, chars);
  return scan_classes(spec, [&](std::size_t, double, const ClassPrefix& p) {
    std::vector<double> sr, si;
    to_characters(matrix, p, sr, si);
    std::vector<cplx> s(sr.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = {sr[i], si[i]};
    return s;
  });
}

std::vector<double> lambda_values(const LambdaPrimes& primes, std::span<const double> ts) {
  std::vector<double> out(ts.size());
  const std::size_t n = primes.logp.size();
#pragma omp parallel for schedule(dynamic, 4)
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const double t = ts[k];
    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = t * primes.logp[i];
      f += (primes.abs_g[i] - (primes.re_g[i] * std::cos(a) - primes.im_g[i] * std::sin(a))) *
           primes.inv_p[i];
    }
    out[k] = f;
  }
  return out;
}

std::vector<cplx> class_sums(std::span<const cplx> f, std::int64_t D, std::int64_t x) {
  if (x >= static_cast<std::int64_t>(f.size())) throw DomainError("class_sums: x beyond data");
  std::vector<cplx> s(static_cast<std::size_t>(D));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t a = 0; a < D; ++a) {
    cplx acc{};
    for (std::int64_t n = (a == 0 ? D : a); n <= x; n += D) acc += f[static_cast<std::size_t>(n)];
    s[static_cast<std::size_t>(a)] = acc;
  }
  return s;
}

std::vector<double> max_partial_sums(std::span<const Character> chars, std::int64_t V) {
  std::vector<double> out(chars.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < chars.size(); ++i) {
    cplx s{};
    double best = 0.0;
    for (std::int64_t n = 1; n <= V; ++n) {
      s += chars[i](n);
      best = std::max(best, std::abs(s));
    }
    out[i] = best;
  }
  return out;
}

}  // namespace nt::kernels
