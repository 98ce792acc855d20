#pragma once

#include <algorithm>
#include <ostream>
#include <vector>

#include "mlab/arith.hpp"
#include "mlab/complex_eval.hpp"
#include "mlab/core.hpp"
#include "mlab/zeta.hpp"

namespace mlab {

inline constexpr double kInequalityTolerance = 1e-9;
inline constexpr double kExclusionRadius = 1e-2;

/// a(n) = sum_{d|n} (-1)^{n/d+1} mu(d), by direct divisor enumeration.
/// Case table: 1 at n=1, -2 at n=2, 0 otherwise.
inline i64 convolution_coefficient(u64 n) {
  if (n == 0) throw std::domain_error("convolution_coefficient: n must be >= 1");
  i64 acc = 0;
  auto add = [&](u64 d) {
    int mu = mobius_point(d);
    if (mu == 0) return;
    u64 cod = n / d;
    acc += (cod % 2 == 1) ? mu : -mu;
  };
  for (u64 d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    add(d);
    if (d != n / d) add(n / d);
  }
  return acc;
}

/// Expected a(n) from the case table.
inline i64 convolution_coefficient_expected(u64 n) {
  if (n == 1) return 1;
  if (n == 2) return -2;
  return 0;
}

/// Residual |(1-2^{1-s})^{-1} (sum (-1)^{n+1} n^{-s}) (sum mu(n) n^{-s}) - 1|
/// at matched truncation N. Expected to shrink with N for Re(s) > 1.
inline double product_identity_check(ComplexPoint s, u64 N, const SieveOptions& opts = {}) {
  if (N < 1) throw std::domain_error("product_identity_check: N must be >= 1");
  cplx sv = s.value();
  cplx pref_den = eta_prefactor_denominator(sv);
  if (std::abs(pref_den) < kEtaPrefactorTol)
    throw std::domain_error("product_identity_check: eta prefactor vanishes");
  CompensatedComplexSum eta_sum;
  for (u64 n = 1; n <= N; ++n) {
    cplx term = nps(n, sv);
    eta_sum.add((n % 2 == 1) ? term : -term);
  }
  EvalResult mu_sum = inv_zeta_series(s, N, opts);
  cplx prod = (eta_sum.value() / pref_den) * mu_sum.value;
  return std::abs(prod - 1.0);
}

/// Local-factor comparison: for p != 2, |1 - p^{-s}| vs |1 + p^{-s}|; for
/// p = 2 the composite 2-factors of the rearranged product quotient.
struct LocalFactorResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

inline LocalFactorResult local_factor_check(u64 p, ComplexPoint s) {
  if (!is_prime_u64(p)) throw std::domain_error("local_factor_check: p must be prime");
  if (s.sigma <= 0.0) throw std::domain_error("local_factor_check: requires Re(s) > 0");
  cplx sv = s.value();
  LocalFactorResult r;
  if (p == 2) {
    cplx two_s = std::exp(sv * std::numbers::ln2);
    if (std::abs(two_s - 1.0) < kEtaPrefactorTol || std::abs(two_s - 2.0) < kEtaPrefactorTol)
      throw std::domain_error("local_factor_check: 2^s singularity");
    r.lhs = std::abs(1.0 - nps(2, sv));
    r.rhs = std::abs((1.0 / (1.0 - 2.0 / two_s)) * (1.0 - 1.0 / (two_s - 1.0)) *
                     (1.0 - 1.0 / (two_s * two_s)));
  } else {
    cplx ps = nps(p, sv);
    r.lhs = std::abs(1.0 - ps);
    r.rhs = std::abs(1.0 + ps);
  }
  r.holds = r.lhs <= r.rhs + kInequalityTolerance;
  return r;
}

// ---------------------------------------------------------------------------
// Inequality scans
// ---------------------------------------------------------------------------

struct InequalityRow {
  double sigma = 0.0;
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  double margin = 0.0;  // rhs - lhs
};

struct InequalityReport {
  std::vector<InequalityRow> rows;
  std::vector<ComplexPoint> skipped;  // points inside exclusion radii
  u64 violations = 0;
  double min_margin = 0.0;
  double argmin_sigma = 0.0;
  double argmin_t = 0.0;

  void finalize() {
    violations = 0;
    bool first = true;
    for (const auto& r : rows) {
      if (!r.holds) ++violations;
      if (first || r.margin < min_margin) {
        min_margin = r.margin;
        argmin_sigma = r.sigma;
        argmin_t = r.t;
        first = false;
      }
    }
  }
};

struct ScanGrid {
  std::vector<double> sigmas;
  std::vector<double> ts;

  static std::vector<double> linspace(double lo, double hi, double step) {
    std::vector<double> v;
    std::size_t count = static_cast<std::size_t>(std::llround((hi - lo) / step));
    for (std::size_t i = 0; i <= count; ++i) v.push_back(lo + static_cast<double>(i) * step);
    return v;
  }
};

/// Default grid bracketing the first three critical zeros.
inline ScanGrid theorem18_default_grid() {
  return {ScanGrid::linspace(0.55, 2.0, 0.05), ScanGrid::linspace(0.0, 50.0, 0.5)};
}

/// Default grid for the absolutely convergent regime.
inline ScanGrid theorem16_default_grid() {
  return {ScanGrid::linspace(1.05, 4.0, 0.05), ScanGrid::linspace(0.0, 100.0, 0.5)};
}

inline const std::vector<double>& reference_zero_ordinates() {
  static const std::vector<double> gammas = {14.134725, 21.022040, 25.010858};
  return gammas;
}

/// Per-point |1/zeta(s)| vs |zeta(s)/zeta(2s)| over a grid with Re(s) > 1/2,
/// skipping the poles s=1, s=1/2 and listed zeros within the exclusion
/// radius. Records the empirical truth; asserts nothing.
inline InequalityReport theorem18_scan(const ScanGrid& grid = theorem18_default_grid(),
                                       const std::vector<double>& zero_ordinates = reference_zero_ordinates()) {
  InequalityReport report;
  for (double sigma : grid.sigmas) {
    for (double t : grid.ts) {
      bool excluded = std::hypot(sigma - 1.0, t) < kExclusionRadius ||
                      std::hypot(sigma - 0.5, t) < kExclusionRadius;
      for (double g : zero_ordinates)
        excluded = excluded || std::hypot(sigma - 0.5, t - g) < kExclusionRadius;
      if (excluded) {
        report.skipped.emplace_back(sigma, t);
        continue;
      }
      ComplexPoint s(sigma, t);
      ComplexPoint s2(2.0 * sigma, 2.0 * t);
      cplx zs = zeta_eta(s).value;
      cplx z2s = zeta_eta(s2).value;
      InequalityRow row;
      row.sigma = sigma;
      row.t = t;
      row.lhs = 1.0 / std::abs(zs);
      row.rhs = std::abs(zs / z2s);
      row.margin = row.rhs - row.lhs;
      row.holds = row.lhs <= row.rhs + kInequalityTolerance;
      report.rows.push_back(row);
    }
  }
  report.finalize();
  return report;
}

/// Same comparison on a grid with Re(s) > 1.
inline InequalityReport theorem16_check(const ScanGrid& grid = theorem16_default_grid()) {
  for (double sigma : grid.sigmas)
    if (sigma <= 1.0) throw std::domain_error("theorem16_check: grid must have Re(s) > 1");
  InequalityReport report;
  for (double sigma : grid.sigmas) {
    for (double t : grid.ts) {
      ComplexPoint s(sigma, t);
      cplx zs = zeta_eta(s).value;
      cplx z2s = zeta_eta(ComplexPoint(2.0 * sigma, 2.0 * t)).value;
      InequalityRow row;
      row.sigma = sigma;
      row.t = t;
      row.lhs = 1.0 / std::abs(zs);
      row.rhs = std::abs(zs / z2s);
      row.margin = row.rhs - row.lhs;
      row.holds = row.lhs <= row.rhs + kInequalityTolerance;
      report.rows.push_back(row);
    }
  }
  report.finalize();
  return report;
}

/// Report CSV: `sigma,t,lhs,rhs,holds,margin`.
inline void write_inequality_csv(std::ostream& os, const InequalityReport& report) {
  os << "sigma,t,lhs,rhs,holds,margin\n";
  for (const auto& r : report.rows)
    os << r.sigma << ',' << r.t << ',' << r.lhs << ',' << r.rhs << ',' << (r.holds ? 1 : 0) << ','
       << r.margin << '\n';
}

inline void write_inequality_summary(std::ostream& os, const InequalityReport& report) {
  os << "points=" << report.rows.size() << " skipped=" << report.skipped.size()
     << " violations=" << report.violations << " min_margin=" << report.min_margin
     << " argmin=(" << report.argmin_sigma << "," << report.argmin_t << ")\n";
}

}  // namespace mlab
