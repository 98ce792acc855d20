#pragma once

#include <utility>
#include <vector>

#include "mlab/characters.hpp"
#include "mlab/core.hpp"
#include "mlab/explicit_formula.hpp"
#include "mlab/identities.hpp"
#include "mlab/sieve.hpp"
#include "mlab/zeta.hpp"

namespace mlab {

// ---------------------------------------------------------------------------
// Ratio traces and extreme scans
// ---------------------------------------------------------------------------

struct RatioRow {
  u64 x = 0;
  i64 value = 0;
  double ratio = 0.0;  // value / sqrt(x)
};

/// (x, S(x), S(x)/sqrt(x)) at trace checkpoints, S = M or L.
inline std::vector<RatioRow> ratio_trace(Kind kind, u64 x_max, const StepPolicy& policy = {},
                                         const SieveOptions& opts = {}) {
  if (x_max > 1'000'000'000ull) throw capacity_error("ratio_trace: x_max exceeds 1e9");
  auto trace = summatory_trace(kind, x_max, policy, opts);
  std::vector<RatioRow> rows;
  rows.reserve(trace.checkpoints.size());
  for (const auto& p : trace.checkpoints)
    rows.push_back({p.x, p.value,
                    static_cast<double>(p.value) / std::sqrt(static_cast<double>(p.x))});
  return rows;
}

/// Exact per-integer extrema of S(x)/sqrt(x), plus the longest observed run
/// of consecutive n with f(n) = +1. Thread-count invariant by construction.
struct ExtremeScanResult {
  double min_ratio = 0.0;
  u64 argmin = 0;
  double max_ratio = 0.0;
  u64 argmax = 0;
  u64 longest_plus_run = 0;
  u64 longest_plus_run_start = 0;
};

inline ExtremeScanResult extreme_scan(Kind kind, u64 x_max, const SieveOptions& opts = {}) {
  if (x_max < 1) throw std::domain_error("extreme_scan: x_max must be >= 1");
  if (x_max > 1'000'000'000ull) throw capacity_error("extreme_scan: x_max exceeds 1e9");

  const u64 seg_size = resolved_segment_size(opts);
  const u64 n_segments = (x_max + seg_size - 1) / seg_size;
  const auto base_primes = primes_up_to(static_cast<u32>(isqrt(x_max)));

  auto segment_bounds = [&](std::size_t si) {
    u64 lo = 1 + static_cast<u64>(si) * seg_size;
    u64 hi = std::min<u64>(lo + seg_size, x_max + 1);
    return std::pair<u64, u64>{lo, hi};
  };
  auto sieve_into = [&](u64 lo, u64 hi, std::vector<std::int8_t>& mu,
                        std::vector<std::int8_t>& lambda) -> const std::int8_t* {
    mu.resize(static_cast<std::size_t>(hi - lo));
    lambda.resize(static_cast<std::size_t>(hi - lo));
    detail::sieve_block(lo, hi, base_primes, mu.data(), lambda.data());
    return (kind == Kind::Mobius) ? mu.data() : lambda.data();
  };

  // phase 1: segment totals
  auto totals = parallel_map<i64>(static_cast<std::size_t>(n_segments), opts.threads,
                                  [&](std::size_t si) {
                                    auto [lo, hi] = segment_bounds(si);
                                    thread_local std::vector<std::int8_t> mu, lambda;
                                    const std::int8_t* f = sieve_into(lo, hi, mu, lambda);
                                    i64 t = 0;
                                    for (u64 i = 0; i < hi - lo; ++i) t += f[i];
                                    return t;
                                  });
  std::vector<i64> bases(n_segments, 0);
  for (std::size_t i = 1; i < n_segments; ++i) bases[i] = bases[i - 1] + totals[i - 1];

  // phase 2: per-integer extrema with known bases
  struct SegScan {
    double min_ratio = 1e300, max_ratio = -1e300;
    u64 argmin = 0, argmax = 0;
    u64 lead_plus = 0, trail_plus = 0, best_run = 0, best_run_start = 0;
    bool all_plus = false;
  };
  auto scans = parallel_map<SegScan>(
      static_cast<std::size_t>(n_segments), opts.threads, [&](std::size_t si) {
        auto [lo, hi] = segment_bounds(si);
        thread_local std::vector<std::int8_t> mu, lambda;
        const std::int8_t* f = sieve_into(lo, hi, mu, lambda);
        SegScan sc;
        i64 run_sum = bases[si];
        u64 run_len = 0, run_start = 0;
        bool leading = true;
        for (u64 i = 0; i < hi - lo; ++i) {
          u64 n = lo + i;
          run_sum += f[i];
          double ratio = static_cast<double>(run_sum) / std::sqrt(static_cast<double>(n));
          if (ratio < sc.min_ratio) {
            sc.min_ratio = ratio;
            sc.argmin = n;
          }
          if (ratio > sc.max_ratio) {
            sc.max_ratio = ratio;
            sc.argmax = n;
          }
          if (f[i] == 1) {
            if (run_len == 0) run_start = n;
            ++run_len;
            if (run_len > sc.best_run) {
              sc.best_run = run_len;
              sc.best_run_start = run_start;
            }
          } else {
            if (leading) sc.lead_plus = run_len;
            leading = false;
            run_len = 0;
          }
        }
        if (leading) {
          sc.lead_plus = run_len;
          sc.all_plus = (run_len == hi - lo);
        }
        sc.trail_plus = run_len;
        return sc;
      });

  ExtremeScanResult out;
  out.min_ratio = 1e300;
  out.max_ratio = -1e300;
  u64 carry_run = 0, carry_start = 0;
  for (std::size_t si = 0; si < scans.size(); ++si) {
    const auto& sc = scans[si];
    auto [lo, hi] = segment_bounds(si);
    if (sc.min_ratio < out.min_ratio) {
      out.min_ratio = sc.min_ratio;
      out.argmin = sc.argmin;
    }
    if (sc.max_ratio > out.max_ratio) {
      out.max_ratio = sc.max_ratio;
      out.argmax = sc.argmax;
    }
    if (sc.all_plus) {
      if (carry_run == 0) carry_start = lo;
      carry_run += hi - lo;
      continue;
    }
    u64 cross = carry_run + sc.lead_plus;
    u64 cross_start = carry_run > 0 ? carry_start : lo;
    if (cross > out.longest_plus_run) {
      out.longest_plus_run = cross;
      out.longest_plus_run_start = cross_start;
    }
    if (sc.best_run > out.longest_plus_run) {
      out.longest_plus_run = sc.best_run;
      out.longest_plus_run_start = sc.best_run_start;
    }
    carry_run = sc.trail_plus;
    carry_start = hi - sc.trail_plus;
  }
  if (carry_run > out.longest_plus_run) {
    out.longest_plus_run = carry_run;
    out.longest_plus_run_start = carry_start;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Integral probes toward 1/zeta(1/2+eps)
// ---------------------------------------------------------------------------

struct ProbeRow {
  u64 X = 0;
  double integral = 0.0;
  double target = 0.0;
  double gap = 0.0;
};

/// For each X: the exact step integral (1/2+eps) int_1^X A(x) x^{-3/2-eps} dx
/// with A = M (theorem 1 form) or, for the L version, the same integral
/// without the s prefactor; target 1/zeta(s) resp. 1/(s zeta(s)). Raw data:
/// whether the sequence approaches the target is the experiment's question.
inline std::vector<ProbeRow> theorem_probe(int theorem, double epsilon, std::vector<u64> x_list,
                                           const SieveOptions& opts = {}) {
  if (theorem != 1 && theorem != 2) throw std::domain_error("theorem_probe: theorem must be 1 or 2");
  if (epsilon <= 0.0) throw std::domain_error("theorem_probe: epsilon must be positive");
  if (x_list.empty()) throw std::domain_error("theorem_probe: empty X list");
  for (std::size_t i = 1; i < x_list.size(); ++i)
    if (x_list[i] <= x_list[i - 1]) throw std::domain_error("theorem_probe: X list must increase");

  const double sigma = 0.5 + epsilon;
  ComplexPoint s(sigma, 0.0);
  double zeta_s = zeta_eta(s).value.real();  // rejects the s=1 singularity
  const Kind kind = (theorem == 1) ? Kind::Mobius : Kind::Liouville;
  const double target = (theorem == 1) ? 1.0 / zeta_s : 1.0 / (sigma * zeta_s);

  std::vector<ProbeRow> rows;
  const u64 X_final = x_list.back();
  CompensatedSum acc;
  std::size_t next = 0;
  const u64 seg = resolved_segment_size(opts);
  const auto primes = primes_up_to(static_cast<u32>(isqrt(X_final)));
  i64 running = 0;
  detail::for_each_segment(1, X_final, seg, [&](u64 lo, u64 hi) {
    const std::size_t w = static_cast<std::size_t>(hi - lo);
    thread_local std::vector<std::int8_t> mu, lambda;
    mu.resize(w);
    lambda.resize(w);
    detail::sieve_block(lo, hi, primes, mu.data(), lambda.data());
    const std::int8_t* f = (kind == Kind::Mobius) ? mu.data() : lambda.data();
    for (std::size_t i = 0; i < w; ++i) {
      u64 n = lo + i;
      while (next < x_list.size() && n == x_list[next]) {
        double integral = (theorem == 1) ? acc.value() : acc.value() / sigma;
        rows.push_back({x_list[next], integral, target, std::abs(integral - target)});
        ++next;
      }
      running += f[i];
      if (running != 0)
        acc.add(static_cast<double>(running) *
                (std::pow(static_cast<double>(n), -sigma) - std::pow(static_cast<double>(n + 1), -sigma)));
    }
  });
  while (next < x_list.size()) {  // X_final itself
    double integral = (theorem == 1) ? acc.value() : acc.value() / sigma;
    rows.push_back({x_list[next], integral, target, std::abs(integral - target)});
    ++next;
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Short-interval study
// ---------------------------------------------------------------------------

enum class YPolicy { Sqrt, LogPower };

struct IntervalRow {
  u64 x = 0;
  u64 y = 0;
  i64 sum = 0;
};

struct IntervalStudy {
  std::vector<IntervalRow> rows;
  std::size_t dropped_zero = 0;  // zero sums dropped from the fit (log undefined)
  bool beta_valid = false;
  double beta = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
};

/// |sum_{x<n<=x+y} f(n)| over an x grid with y from the policy, plus an OLS
/// fit of beta in log|sum| ~ beta log y.
inline IntervalStudy short_interval_study(Kind kind, const std::vector<u64>& x_grid, YPolicy policy,
                                          double log_power_c = 2.0, const SieveOptions& opts = {}) {
  if (x_grid.size() < 3) throw std::invalid_argument("short_interval_study: need at least 3 grid points");
  IntervalStudy study;
  for (u64 x : x_grid) {
    double xd = static_cast<double>(x);
    u64 y = (policy == YPolicy::Sqrt)
                ? static_cast<u64>(std::sqrt(xd))
                : static_cast<u64>(std::pow(std::log(xd), log_power_c));
    i64 sum = (y == 0) ? 0 : short_interval_sum(kind, x, y, opts);
    study.rows.push_back({x, y, sum});
  }
  double s1 = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : study.rows) {
    if (r.sum == 0 || r.y == 0) {
      ++study.dropped_zero;
      continue;
    }
    double lx = std::log(static_cast<double>(r.y));
    double ly = std::log(std::abs(static_cast<double>(r.sum)));
    pts.emplace_back(lx, ly);
    s1 += 1;
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  if (pts.size() >= 3 && s1 * sxx - sx * sx != 0.0) {
    study.beta_valid = true;
    study.beta = (s1 * sxy - sx * sy) / (s1 * sxx - sx * sx);
    study.intercept = (sy - study.beta * sx) / s1;
    double ss = 0;
    for (auto [lx, ly] : pts) {
      double r = ly - (study.beta * lx + study.intercept);
      ss += r * r;
    }
    study.residual_rms = std::sqrt(ss / static_cast<double>(pts.size()));
  }
  return study;
}

}  // namespace mlab
