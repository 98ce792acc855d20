#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "mlab/complex_eval.hpp"
#include "mlab/core.hpp"
#include "mlab/gamma.hpp"
#include "mlab/sieve.hpp"

namespace mlab {

inline constexpr double kEtaPrefactorTol = 1e-9;

inline cplx npow(double x, cplx e) { return std::exp(e * std::log(x)); }

/// n^{-s}; the one power routine shared by every series and step integral, so
/// telescoping identities cancel the same rounded values on both sides.
inline cplx nps(u64 n, cplx s) { return std::exp(-s * std::log(static_cast<double>(n))); }

inline cplx eta_prefactor_denominator(cplx s) {
  return 1.0 - std::exp((1.0 - s) * std::numbers::ln2);
}

// ---------------------------------------------------------------------------
// Direct Dirichlet series
// ---------------------------------------------------------------------------

/// Partial sum of n^{-s} for Re(s) > 1, with the integral tail bound
/// N^{1-sigma}/(sigma-1) recorded.
inline EvalResult zeta_dirichlet(ComplexPoint s, u64 N) {
  if (s.sigma <= 1.0) throw std::domain_error("zeta_dirichlet: requires Re(s) > 1");
  if (N < 1) throw std::domain_error("zeta_dirichlet: N must be >= 1");
  cplx sv = s.value();
  CompensatedComplexSum acc;
  for (u64 n = 1; n <= N; ++n) acc.add(nps(n, sv));
  EvalResult r;
  r.value = acc.value();
  r.method = Method::Dirichlet;
  r.truncation = N;
  r.error_estimate = std::pow(static_cast<double>(N), 1.0 - s.sigma) / (s.sigma - 1.0);
  return r;
}

namespace detail {

// B_{2k}/(2k)! for the Euler-Maclaurin tail.
inline constexpr double kBernoulliOverFact[8] = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    7.0 / (6.0 * 87178291200.0),
    -3617.0 / (510.0 * 20922789888000.0),
};

}  // namespace detail

/// Dirichlet partial sum with the Euler-Maclaurin tail attached; valid for
/// Re(s) > 0, s != 1. N = 0 picks a cutoff from |t|.
inline EvalResult zeta_dirichlet_corrected(ComplexPoint s, u64 N = 0) {
  if (s.sigma <= 0.0) throw std::domain_error("zeta_dirichlet_corrected: requires Re(s) > 0");
  cplx sv = s.value();
  if (std::abs(sv - 1.0) < 1e-12) throw std::domain_error("zeta_dirichlet_corrected: pole at s = 1");
  if (N == 0) N = 48 + static_cast<u64>(std::ceil(std::abs(s.t) * 0.75));
  CompensatedComplexSum acc;
  for (u64 n = 1; n < N; ++n) acc.add(nps(n, sv));
  double Nd = static_cast<double>(N);
  cplx tail = npow(Nd, 1.0 - sv) / (sv - 1.0) + 0.5 * nps(N, sv);
  cplx rising = sv;  // s(s+1)...(s+2k-2)
  cplx npow_run = npow(Nd, -sv - 1.0);
  for (int k = 1; k <= 8; ++k) {
    tail += detail::kBernoulliOverFact[k - 1] * rising * npow_run;
    rising *= (sv + 2.0 * k - 1.0) * (sv + 2.0 * k);
    npow_run /= Nd * Nd;
  }
  // First omitted term (B_18/18! = 8.59e-15) scaled by the standard
  // |(s+17)/(sigma+17)| remainder factor.
  double omitted = 8.5927e-15 * std::abs(rising * npow_run);
  EvalResult r;
  r.value = acc.value() + tail;
  r.method = Method::Dirichlet;
  r.truncation = N;
  r.error_estimate = omitted * (std::abs(sv + 17.0) / (s.sigma + 17.0)) + 4e-16 * std::abs(r.value);
  return r;
}

// ---------------------------------------------------------------------------
// Alternating (eta) series with acceleration
// ---------------------------------------------------------------------------

/// Acceleration depth needed for ~1e-16 at height t; never below the fixed
/// floor of 64. The pi|t|/2 term is the growth of the acceleration error
/// bound along vertical lines.
inline u64 eta_depth_for(double t, u64 requested = 0) {
  if (requested > 0) return requested;
  const double ln_base = std::log(3.0 + std::sqrt(8.0));
  double need = (38.0 + std::numbers::pi * std::abs(t) / 2.0 + std::log(3.0 + 2.0 * std::abs(t))) / ln_base;
  u64 n = static_cast<u64>(std::ceil(need));
  return std::clamp<u64>(n, 64, 4000);
}

/// zeta via the alternating series (1 - 2^{1-s})^{-1} sum (-1)^{n+1} n^{-s},
/// accelerated with the Chebyshev-coefficient scheme. Valid for Re(s) > 0
/// away from s = 1 and the other zeros of the prefactor denominator.
/// Internally long double so the coefficient scale (3+sqrt8)^n stays finite
/// up to the t <= 500 desk ceiling.
inline EvalResult zeta_eta(ComplexPoint s, u64 depth = 0) {
  using cplxl = std::complex<long double>;
  if (s.sigma <= 0.0) throw std::domain_error("zeta_eta: requires Re(s) > 0");
  cplx pref_den = eta_prefactor_denominator(s.value());
  if (std::abs(pref_den) < kEtaPrefactorTol)
    throw std::domain_error("zeta_eta: prefactor 1 - 2^{1-s} vanishes (s = 1 or a sibling on Re(s) = 1)");

  const u64 n = eta_depth_for(s.t, depth);
  const cplxl sl(static_cast<long double>(s.sigma), static_cast<long double>(s.t));
  const long double base = 3.0L + sqrtl(8.0L);
  long double d = powl(base, static_cast<long double>(n));
  d = (d + 1.0L / d) / 2.0L;
  long double b = -1.0L;
  long double c = -d;
  cplxl acc(0.0L, 0.0L);
  for (u64 k = 0; k < n; ++k) {
    c = b - c;
    acc += c * std::exp(-sl * logl(static_cast<long double>(k + 1)));
    long double kd = static_cast<long double>(k);
    long double nd = static_cast<long double>(n);
    b *= (kd + nd) * (kd - nd) / ((kd + 0.5L) * (kd + 1.0L));
  }
  cplxl eta = acc / d;
  cplxl zl = eta / cplxl(pref_den.real(), pref_den.imag());

  EvalResult r;
  r.value = cplx(static_cast<double>(zl.real()), static_cast<double>(zl.imag()));
  r.method = Method::Eta;
  r.truncation = n;
  // Acceleration error bound: 3 (1+2|t|) e^{pi|t|/2} (3+sqrt8)^{-n}, valid
  // for sigma >= 1/2; inflated 100x below that as a conservative margin.
  double log_err = std::log(3.0) + std::log1p(2.0 * std::abs(s.t)) +
                   std::numbers::pi * std::abs(s.t) / 2.0 -
                   static_cast<double>(n) * std::log(3.0 + std::sqrt(8.0));
  double trunc_err = std::exp(std::min(log_err, 700.0)) / std::abs(pref_den);
  if (s.sigma < 0.5) trunc_err *= 100.0;
  r.error_estimate = trunc_err + 1e-15 * (1.0 + std::abs(r.value));
  return r;
}

/// True when the fixed-depth acceleration is degraded at this height and the
/// depth had to be raised well past the floor.
inline bool eta_depth_warning(double t) { return std::abs(t) > 100.0; }

// ---------------------------------------------------------------------------
// Fractional-part integral
// ---------------------------------------------------------------------------

/// zeta(s) = s/(s-1) - s * integral_1^X ((x)) x^{-s-1} dx, the integrand
/// integrated exactly on each unit interval. Remainder bound |s| X^{-sigma} / sigma.
inline EvalResult zeta_fracpart_integral(ComplexPoint s, u64 X) {
  if (s.sigma <= 0.0) throw std::domain_error("zeta_fracpart_integral: requires Re(s) > 0");
  cplx sv = s.value();
  if (std::abs(sv - 1.0) < 1e-12) throw std::domain_error("zeta_fracpart_integral: pole at s = 1");
  if (X < 1) throw std::domain_error("zeta_fracpart_integral: X must be >= 1");

  // integral_n^{n+1} (x - n) x^{-s-1} dx
  //   = [x^{1-s}/(1-s)]_n^{n+1} + (n/s) [x^{-s}]_n^{n+1}
  CompensatedComplexSum integral;
  cplx pow_n = 1.0;          // n^{-s} at n=1
  cplx pow1_n = 1.0;         // n^{1-s} at n=1
  for (u64 n = 1; n < X; ++n) {
    double nd1 = static_cast<double>(n + 1);
    cplx pow_n1 = nps(n + 1, sv);
    cplx pow1_n1 = pow_n1 * nd1;
    integral.add((pow1_n1 - pow1_n) / (1.0 - sv) + (static_cast<double>(n) / sv) * (pow_n1 - pow_n));
    pow_n = pow_n1;
    pow1_n = pow1_n1;
  }
  EvalResult r;
  r.value = sv / (sv - 1.0) - sv * integral.value();
  r.method = Method::FracpartIntegral;
  r.truncation = X;
  r.error_estimate = std::abs(sv) * std::pow(static_cast<double>(X), -s.sigma) / s.sigma +
                     4e-16 * std::abs(r.value);
  return r;
}

// ---------------------------------------------------------------------------
// Functional equation
// ---------------------------------------------------------------------------

enum class ReflectVariant {
  Corrected,     // 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
  PaperPrinted,  // 2   pi^{s-1} ... ; fails cross-checks by a factor 2^{s-1}
};

/// zeta by reflection, for Re(s) < 0.5; the right side is evaluated by the
/// eta series at 1-s. Computed in log space so sin/Gamma growth cancels
/// before exponentiation. Trivial zeros return exact 0.
inline EvalResult zeta_reflect(ComplexPoint s, ReflectVariant variant = ReflectVariant::Corrected) {
  using std::numbers::pi;
  cplx sv = s.value();
  if (s.t == 0.0 && s.sigma < 0.0 && s.sigma == std::floor(s.sigma) &&
      static_cast<long long>(-s.sigma) % 2 == 0) {
    EvalResult r;
    r.value = 0.0;
    r.method = Method::Reflect;
    r.error_estimate = 0.0;
    return r;
  }
  if (detail::is_nonpositive_integer(1.0 - sv))
    throw std::domain_error("zeta_reflect: Gamma(1-s) pole (s a positive integer)");
  ComplexPoint reflected(1.0 - s.sigma, -s.t);
  EvalResult tail = zeta_eta(reflected);

  cplx log_pref = (variant == ReflectVariant::Corrected) ? sv * std::numbers::ln2
                                                         : cplx(std::numbers::ln2, 0.0);
  log_pref += (sv - 1.0) * std::log(pi) + log_sin_half_pi(sv) + log_gamma(1.0 - sv);

  EvalResult r;
  r.value = std::exp(log_pref) * tail.value;
  r.method = Method::Reflect;
  r.truncation = tail.truncation;
  double tail_rel = tail.error_estimate / std::max(std::abs(tail.value), 1e-300);
  r.error_estimate = std::abs(r.value) * (tail_rel + 1e-13) + 1e-300;
  return r;
}

// ---------------------------------------------------------------------------
// Growth probe (vertical-line magnitude vs. the band bounds)
// ---------------------------------------------------------------------------

enum class SigmaBand { GE2, From1To2, From0To1, LE0 };

inline SigmaBand sigma_band(double sigma) {
  if (sigma >= 2.0) return SigmaBand::GE2;
  if (sigma >= 1.0) return SigmaBand::From1To2;
  if (sigma >= 0.0) return SigmaBand::From0To1;
  return SigmaBand::LE0;
}

inline const char* sigma_band_name(SigmaBand b) {
  switch (b) {
    case SigmaBand::GE2: return "sigma>=2";
    case SigmaBand::From1To2: return "1<=sigma<2";
    case SigmaBand::From0To1: return "0<=sigma<1";
    case SigmaBand::LE0: return "sigma<0";
  }
  return "?";
}

inline double sigma_band_bound(double sigma, double t) {
  switch (sigma_band(sigma)) {
    case SigmaBand::GE2: return 1.0;
    case SigmaBand::From1To2: return std::log(t);
    case SigmaBand::From0To1: return std::pow(t, (1.0 - sigma) / 2.0) * std::log(t);
    case SigmaBand::LE0: return std::pow(t, 0.5 - sigma) * std::log(t);
  }
  return 1.0;
}

struct GrowthRow {
  double sigma = 0.0;
  SigmaBand band = SigmaBand::GE2;
  double max_ratio = 0.0;
  double t_at_max = 0.0;
  double max_abs = 0.0;
  std::size_t skipped = 0;
};

/// Max of |zeta(sigma+it)| / band_bound over a t grid, one row per sigma.
/// Points where the evaluator rejects (prefactor singularities) are skipped
/// and counted.
inline std::vector<GrowthRow> growth_probe(const std::vector<double>& sigmas, double t0 = 2.0,
                                           double t_max = 500.0, std::size_t steps = 500) {
  if (t0 <= 0.0 || t_max < t0) throw std::domain_error("growth_probe: need 0 < t0 <= t_max");
  if (t_max > 500.0) throw capacity_error("growth_probe: t_max beyond the 500 desk ceiling");
  std::vector<GrowthRow> rows;
  for (double sigma : sigmas) {
    GrowthRow row;
    row.sigma = sigma;
    row.band = sigma_band(sigma);
    for (std::size_t i = 0; i <= steps; ++i) {
      double t = t0 + (t_max - t0) * static_cast<double>(i) / static_cast<double>(steps);
      double az;
      try {
        az = (sigma > 0.0) ? std::abs(zeta_eta(ComplexPoint(sigma, t)).value)
                           : std::abs(zeta_reflect(ComplexPoint(sigma, t)).value);
      } catch (const std::domain_error&) {
        ++row.skipped;
        continue;
      }
      double ratio = az / sigma_band_bound(sigma, t);
      if (ratio > row.max_ratio) {
        row.max_ratio = ratio;
        row.t_at_max = t;
        row.max_abs = az;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Mobius / Liouville series and step integrals
// ---------------------------------------------------------------------------

namespace detail {

template <class Term>
EvalResult dirichlet_coefficient_series(Kind kind, ComplexPoint s, u64 N, const SieveOptions& opts,
                                        Method method, Term&& coefficient) {
  cplx sv = s.value();
  CompensatedComplexSum acc;
  const u64 seg = resolved_segment_size(opts);
  const auto primes = primes_up_to(static_cast<u32>(isqrt(N)));
  for_each_segment(1, N, seg, [&](u64 lo, u64 hi) {
    const std::size_t w = static_cast<std::size_t>(hi - lo);
    thread_local std::vector<std::int8_t> mu, lambda;
    mu.resize(w);
    lambda.resize(w);
    sieve_block(lo, hi, primes, mu.data(), lambda.data());
    const std::int8_t* f = (kind == Kind::Mobius) ? mu.data() : lambda.data();
    for (std::size_t i = 0; i < w; ++i) {
      if (f[i] != 0) acc.add(static_cast<double>(f[i]) * coefficient(lo + i, sv));
    }
  });
  EvalResult r;
  r.value = acc.value();
  r.method = method;
  r.truncation = N;
  r.conditional = (s.sigma <= 1.0);
  r.error_estimate = r.conditional
                         ? std::pow(static_cast<double>(N), -s.sigma)
                         : std::pow(static_cast<double>(N), 1.0 - s.sigma) / (s.sigma - 1.0);
  return r;
}

template <class StepFn>
EvalResult summatory_step_integral(Kind kind, ComplexPoint s, u64 X, const SieveOptions& opts,
                                   Method method, StepFn&& weight) {
  // s * integral_1^X A(x) x^{-s-1} dx over the step function A = M or L:
  //   sum_{n < X} A(n) (n^{-s} - (n+1)^{-s})
  cplx sv = s.value();
  CompensatedComplexSum acc;
  const u64 seg = resolved_segment_size(opts);
  const auto primes = primes_up_to(static_cast<u32>(isqrt(X)));
  i64 running = 0;
  for_each_segment(1, X, seg, [&](u64 lo, u64 hi) {
    const std::size_t w = static_cast<std::size_t>(hi - lo);
    thread_local std::vector<std::int8_t> mu, lambda;
    mu.resize(w);
    lambda.resize(w);
    sieve_block(lo, hi, primes, mu.data(), lambda.data());
    const std::int8_t* f = (kind == Kind::Mobius) ? mu.data() : lambda.data();
    for (std::size_t i = 0; i < w; ++i) {
      u64 n = lo + i;
      running += f[i];
      if (n < X && running != 0) acc.add(static_cast<double>(running) * weight(n, sv));
    }
  });
  EvalResult r;
  r.value = acc.value();
  r.method = method;
  r.truncation = X;
  r.conditional = (s.sigma <= 1.0);
  double Xd = static_cast<double>(X);
  r.error_estimate = r.conditional
                         ? static_cast<double>(std::abs(running)) * std::pow(Xd, -s.sigma)
                         : std::abs(sv) * std::pow(Xd, 1.0 - s.sigma) / (s.sigma - 1.0);
  return r;
}

}  // namespace detail

/// Partial sum of mu(n) n^{-s} from the sieve; conditional outside Re(s) > 1.
inline EvalResult inv_zeta_series(ComplexPoint s, u64 N, const SieveOptions& opts = {}) {
  if (N < 1) throw std::domain_error("inv_zeta_series: N must be >= 1");
  return detail::dirichlet_coefficient_series(Kind::Mobius, s, N, opts, Method::MobiusSeries,
                                              [](u64 n, cplx sv) { return nps(n, sv); });
}

/// Exact step integral s * integral_1^X M(x) x^{-s-1} dx. Telescopes to
/// inv_zeta_series(s, X) minus the boundary term M(X) X^{-s}.
inline EvalResult inv_zeta_integral(ComplexPoint s, u64 X, const SieveOptions& opts = {}) {
  if (X < 1) throw std::domain_error("inv_zeta_integral: X must be >= 1");
  return detail::summatory_step_integral(Kind::Mobius, s, X, opts, Method::MIntegral,
                                         [](u64 n, cplx sv) { return nps(n, sv) - nps(n + 1, sv); });
}

enum class LambdaRatioMethod { Series, Integral, Quotient };

/// zeta(2s)/zeta(s): by the lambda Dirichlet series, by the exact step
/// integral over L(x), or by a direct quotient of eta evaluations.
inline EvalResult lambda_ratio(ComplexPoint s, LambdaRatioMethod method, u64 truncation,
                               const SieveOptions& opts = {}) {
  switch (method) {
    case LambdaRatioMethod::Series: {
      if (truncation < 1) throw std::domain_error("lambda_ratio: truncation must be >= 1");
      EvalResult r = detail::dirichlet_coefficient_series(
          Kind::Liouville, s, truncation, opts, Method::LambdaSeries,
          [](u64 n, cplx sv) { return nps(n, sv); });
      return r;
    }
    case LambdaRatioMethod::Integral: {
      if (truncation < 1) throw std::domain_error("lambda_ratio: truncation must be >= 1");
      EvalResult r = detail::summatory_step_integral(
          Kind::Liouville, s, truncation, opts, Method::LIntegral,
          [](u64 n, cplx sv) { return nps(n, sv) - nps(n + 1, sv); });
      return r;
    }
    case LambdaRatioMethod::Quotient: {
      if (std::abs(s.value() - 0.5) < 1e-9)
        throw std::domain_error("lambda_ratio: zeta(2s) pole at s = 1/2");
      EvalResult den = zeta_eta(s);
      if (std::abs(den.value) < 1e-6)
        throw std::domain_error("lambda_ratio: s is a zero of zeta; quotient is a pole of 1/zeta");
      EvalResult num = zeta_eta(ComplexPoint(2.0 * s.sigma, 2.0 * s.t));
      EvalResult r;
      r.value = num.value / den.value;
      r.method = Method::Quotient;
      r.truncation = std::max(num.truncation, den.truncation);
      double rel = num.error_estimate / std::max(std::abs(num.value), 1e-300) +
                   den.error_estimate / std::abs(den.value);
      r.error_estimate = std::abs(r.value) * rel;
      return r;
    }
  }
  throw std::logic_error("lambda_ratio: unknown method");
}

// ---------------------------------------------------------------------------
// Euler products
// ---------------------------------------------------------------------------

enum class ProductVariant { Classical, EtaRearranged, Inverse };

/// Truncated Euler products over primes p <= P.
///   Classical:     prod (1 - p^{-s})^{-1}           (Re(s) > 1)
///   EtaRearranged: eta-prefactored rearrangement with the 2-factor expanded
///   Inverse:       prod (1 - p^{-s})
inline EvalResult euler_product(ComplexPoint s, u64 P, ProductVariant variant) {
  if (P < 2) throw std::domain_error("euler_product: prime cutoff P must be >= 2");
  cplx sv = s.value();
  if (variant == ProductVariant::Classical && s.sigma <= 1.0)
    throw std::domain_error("euler_product: classical product requires Re(s) > 1");
  if (s.sigma <= 0.0) throw std::domain_error("euler_product: requires Re(s) > 0");

  cplx two_s = std::exp(sv * std::numbers::ln2);
  if (variant == ProductVariant::EtaRearranged) {
    if (std::abs(two_s - 1.0) < kEtaPrefactorTol)
      throw std::domain_error("euler_product: 2^s = 1 singularity");
    if (std::abs(eta_prefactor_denominator(sv)) < kEtaPrefactorTol)
      throw std::domain_error("euler_product: eta prefactor vanishes");
  }

  auto primes = primes_up_to(static_cast<u32>(P));
  cplx prod = 1.0;
  switch (variant) {
    case ProductVariant::Classical:
      for (u32 p : primes) prod *= 1.0 / (1.0 - nps(p, sv));
      break;
    case ProductVariant::Inverse:
      for (u32 p : primes) prod *= 1.0 - nps(p, sv);
      break;
    case ProductVariant::EtaRearranged:
      prod = (1.0 / eta_prefactor_denominator(sv)) * (1.0 - 1.0 / (two_s - 1.0));
      for (u32 p : primes)
        if (p > 2) prod *= 1.0 / (1.0 - nps(p, sv));
      break;
  }

  EvalResult r;
  r.value = prod;
  r.method = Method::EulerProduct;
  r.truncation = P;
  r.conditional = (s.sigma <= 1.0);
  double Pd = static_cast<double>(P);
  if (!r.conditional) {
    // |log tail| <= sum_{n>P} n^{-sigma} <= P^{1-sigma}/(sigma-1)
    double logtail = std::pow(Pd, 1.0 - s.sigma) / (s.sigma - 1.0);
    r.error_estimate = std::abs(r.value) * std::expm1(logtail);
  } else {
    r.error_estimate = std::pow(Pd, -s.sigma);
  }
  return r;
}

}  // namespace mlab
