#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <vector>

#include "mlab/core.hpp"
#include "mlab/zeta.hpp"

namespace mlab {

/// Riemann-Siegel phase by the log-Gamma asymptotic with the first two
/// correction terms; adequate for t <= 500.
inline double riemann_siegel_theta(double t) {
  using std::numbers::pi;
  return 0.5 * t * std::log(t / (2.0 * pi)) - 0.5 * t - pi / 8.0 + 1.0 / (48.0 * t) +
         7.0 / (5760.0 * t * t * t);
}

/// Z(t) = e^{i theta(t)} zeta(1/2 + it), real-valued on the critical line up
/// to evaluation error; zeros of zeta show as sign changes.
inline double hardy_z(double t) {
  cplx z = zeta_eta(ComplexPoint(0.5, t)).value;
  double th = riemann_siegel_theta(t);
  return (cplx(std::cos(th), std::sin(th)) * z).real();
}

/// Riemann-von Mangoldt zero-count estimate N(T) ~ (T/2pi) log(T/2pi e) + 7/8.
inline double rvm_zero_count(double T) {
  using std::numbers::pi;
  return T / (2.0 * pi) * std::log(T / (2.0 * pi * std::numbers::e)) + 7.0 / 8.0;
}

/// Ordered imaginary parts of critical-line zeros, each bracketed by a sign
/// change of Z(t) refined to bracket_width.
struct ZeroTable {
  std::vector<double> gammas;
  double bracket_width = 1e-6;
  u64 count_estimate = 0;    // rounded counting-formula value at T
  bool count_mismatch = false;  // |found - estimate| > 1: possible missed zeros

  std::size_t size() const { return gammas.size(); }
};

/// All zeros with 0 < gamma <= T by sign-change scanning of Z plus bisection.
/// T is capped at 500, the validity ceiling of the accelerated eta series.
inline ZeroTable find_zeros(double T, double grid_step = 0.05, double bracket_width = 1e-6,
                            unsigned threads = 0) {
  if (T <= 0.0) throw std::domain_error("find_zeros: T must be positive");
  if (T > 500.0) throw capacity_error("find_zeros: T beyond the 500 desk ceiling");

  ZeroTable table;
  table.bracket_width = bracket_width;

  const double t_lo = 2.0;  // first zero is far above
  if (T > t_lo) {
    const std::size_t n_intervals = static_cast<std::size_t>(std::ceil((T - t_lo) / grid_step));
    const std::size_t chunk = 256;
    const std::size_t n_chunks = (n_intervals + chunk - 1) / chunk;

    auto chunks = parallel_map<std::vector<double>>(
        n_chunks, threads, [&](std::size_t c) {
          std::vector<double> found;
          std::size_t i0 = c * chunk;
          std::size_t i1 = std::min(n_intervals, i0 + chunk);
          double a = t_lo + static_cast<double>(i0) * grid_step;
          double za = hardy_z(a);
          for (std::size_t i = i0; i < i1; ++i) {
            double b = std::min(T, t_lo + static_cast<double>(i + 1) * grid_step);
            double zb = hardy_z(b);
            if ((za < 0.0) != (zb < 0.0)) {
              double lo = a, hi = b, zlo = za;
              while (hi - lo > bracket_width) {
                double mid = 0.5 * (lo + hi);
                double zm = hardy_z(mid);
                if ((zlo < 0.0) != (zm < 0.0))
                  hi = mid;
                else {
                  lo = mid;
                  zlo = zm;
                }
              }
              found.push_back(0.5 * (lo + hi));
            }
            a = b;
            za = zb;
          }
          return found;
        });
    for (const auto& c : chunks) table.gammas.insert(table.gammas.end(), c.begin(), c.end());
  }

  table.count_estimate = static_cast<u64>(std::llround(std::max(0.0, rvm_zero_count(T))));
  u64 found = table.gammas.size();
  table.count_mismatch =
      (found > table.count_estimate ? found - table.count_estimate : table.count_estimate - found) > 1;
  return table;
}

// ---------------------------------------------------------------------------
// Chebyshev psi
// ---------------------------------------------------------------------------

/// psi(x) = sum of log p over prime powers p^k <= x, by segmented prime sieve
/// with compensated summation. Capacity x <= 1e8.
inline double chebyshev_psi(u64 x) {
  if (x > 100'000'000ull) throw capacity_error("chebyshev_psi: x exceeds the 1e8 capacity");
  if (x < 2) return 0.0;

  const auto base = primes_up_to(static_cast<u32>(isqrt(x)));
  CompensatedSum acc;
  // prime powers p^k, k >= 2 (their p is always <= sqrt(x))
  for (u32 p : base) {
    double lp = std::log(static_cast<double>(p));
    for (u64 pk = static_cast<u64>(p) * p; pk <= x; pk *= p) {
      acc.add(lp);
      if (pk > x / p) break;
    }
  }
  // primes themselves, segmented
  const u64 seg_size = 1ull << 20;
  std::vector<std::uint8_t> composite;
  for (u64 lo = 2; lo <= x; lo += seg_size) {
    u64 hi = std::min(x, lo + seg_size - 1);
    composite.assign(static_cast<std::size_t>(hi - lo + 1), 0);
    for (u32 p : base) {
      u64 p64 = p;
      u64 start = std::max(p64 * p64, ((lo + p64 - 1) / p64) * p64);
      for (u64 m = start; m <= hi; m += p64) composite[static_cast<std::size_t>(m - lo)] = 1;
    }
    for (u64 n = lo; n <= hi; ++n)
      if (!composite[static_cast<std::size_t>(n - lo)]) acc.add(std::log(static_cast<double>(n)));
  }
  return acc.value();
}

/// Truncated explicit formula at K zero pairs:
///   x - sum_{k<=K} 2 Re(x^{rho_k}/rho_k) - log 2pi - (1/2) log(1 - x^{-2}).
/// Evaluate at half-integers; at jumps the series converges to the midpoint.
inline double explicit_psi(double x, std::size_t K, const ZeroTable& zeros) {
  if (x < 2.0) throw std::domain_error("explicit_psi: x must be >= 2");
  if (K > zeros.gammas.size()) throw std::invalid_argument("explicit_psi: K exceeds zero table size");
  double lx = std::log(x);
  double rx = std::sqrt(x);
  CompensatedSum zero_sum;
  for (std::size_t k = 0; k < K; ++k) {
    double g = zeros.gammas[k];
    cplx rho(0.5, g);
    cplx xrho = rx * cplx(std::cos(g * lx), std::sin(g * lx));
    zero_sum.add(2.0 * (xrho / rho).real());
  }
  return x - zero_sum.value() - std::log(2.0 * std::numbers::pi) - 0.5 * std::log1p(-1.0 / (x * x));
}

// ---------------------------------------------------------------------------
// Prime-free factorial intervals
// ---------------------------------------------------------------------------

struct PrimefreeEvidence {
  bool by_divisibility = true;  // k | n!+k certificate for every element
  bool by_primality = true;     // Miller-Rabin says composite for every element
};

inline u64 factorial_u64(u64 n) {
  if (n > 20) throw std::domain_error("factorial_u64: overflows past 20!");
  u64 f = 1;
  for (u64 k = 2; k <= n; ++k) f *= k;
  return f;
}

/// Evidence that every integer in (n!+2, n!+n-1] is composite, via both the
/// divisibility certificate and an independent primality test.
inline PrimefreeEvidence primefree_interval_evidence(u64 n) {
  if (n < 3 || n > 20) throw std::domain_error("primefree_interval: n must be in [3, 20]");
  PrimefreeEvidence ev;
  u64 f = factorial_u64(n);
  for (u64 k = 3; k + 1 <= n; ++k) {
    u64 m = f + k;
    if (m % k != 0 || m / k <= 1) ev.by_divisibility = false;
    if (is_prime_u64(m)) ev.by_primality = false;
  }
  return ev;
}

/// True iff the interval (n!+2, n!+n-1] is certified prime-free by both routes.
inline bool primefree_interval(u64 n) {
  PrimefreeEvidence ev = primefree_interval_evidence(n);
  return ev.by_divisibility && ev.by_primality;
}

/// CSV persistence: `index,gamma,bracket_width` (1-based index).
inline void write_zeros_csv(std::ostream& os, const ZeroTable& table) {
  os << "index,gamma,bracket_width\n";
  for (std::size_t i = 0; i < table.gammas.size(); ++i)
    os << (i + 1) << ',' << table.gammas[i] << ',' << table.bracket_width << '\n';
}

}  // namespace mlab
