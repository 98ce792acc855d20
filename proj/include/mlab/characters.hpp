#pragma once

#include <algorithm>
#include <numeric>
#include <ostream>
#include <vector>

#include "mlab/complex_eval.hpp"
#include "mlab/core.hpp"
#include "mlab/sieve.hpp"
#include "mlab/zeta.hpp"

namespace mlab {

namespace detail {

// exp(2 pi i num/den) with the components snapped onto the exactly
// representable values {0, +-1/2, +-1} they hit for orders dividing 4 or 6.
inline cplx root_of_unity(u64 num, u64 den) {
  u64 g = std::gcd(num, den);
  u64 nn = num / g, dd = den / g;
  switch (dd) {
    case 1: return {1.0, 0.0};
    case 2: return {-1.0, 0.0};
    case 4: return (nn == 1) ? cplx{0.0, 1.0} : cplx{0.0, -1.0};
    default: break;
  }
  double theta = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
  auto snap = [](double v) {
    for (double c : {0.0, 0.5, -0.5, 1.0, -1.0})
      if (std::abs(v - c) < 1e-14) return c;
    return v;
  };
  return {snap(std::cos(theta)), snap(std::sin(theta))};
}

// One cyclic piece of (Z/qZ)*: a generator's order and the discrete log of
// every unit of the prime-power component.
struct UnitGroupGen {
  u64 modulus = 1;
  u64 order = 1;
  std::vector<u32> dlog;  // indexed by residue mod `modulus`; units only
};

inline u64 find_primitive_root(u64 p) {
  // prime factors of p-1
  std::vector<u64> fs;
  u64 m = p - 1;
  for (u64 d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      fs.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) fs.push_back(m);
  for (u64 g = 2; g < p; ++g) {
    bool ok = true;
    for (u64 f : fs)
      if (pow_mod(g, (p - 1) / f, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw std::logic_error("find_primitive_root: no generator found");
}

inline std::vector<UnitGroupGen> unit_group_generators(u32 q) {
  std::vector<UnitGroupGen> gens;
  u64 m = q;
  for (u64 p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    u64 pe = 1;
    while (m % p == 0) {
      m /= p;
      pe *= p;
    }
    if (p == 2) {
      if (pe == 2) continue;  // trivial unit group
      if (pe == 4) {
        UnitGroupGen g;
        g.modulus = 4;
        g.order = 2;
        g.dlog.assign(4, 0);
        g.dlog[3] = 1;
        gens.push_back(std::move(g));
      } else {
        // (Z/2^e)* = <-1> x <5> for e >= 3
        UnitGroupGen sign, five;
        sign.modulus = five.modulus = pe;
        sign.order = 2;
        five.order = pe / 4;
        sign.dlog.assign(pe, 0);
        five.dlog.assign(pe, 0);
        u64 v = 1;
        for (u64 k = 0; k < five.order; ++k) {
          five.dlog[v] = static_cast<u32>(k);
          sign.dlog[v] = 0;
          u64 w = pe - v;
          five.dlog[w] = static_cast<u32>(k);
          sign.dlog[w] = 1;
          v = (v * 5) % pe;
        }
        gens.push_back(std::move(sign));
        gens.push_back(std::move(five));
      }
    } else {
      UnitGroupGen g;
      g.modulus = pe;
      g.order = pe - pe / p;  // phi(p^e)
      u64 root = find_primitive_root(p);
      if (pe > p && pow_mod(root, p - 1, p * p) == 1) root += p;
      g.dlog.assign(pe, 0);
      u64 v = 1;
      for (u64 k = 0; k < g.order; ++k) {
        g.dlog[v] = static_cast<u32>(k);
        v = (v * root) % pe;
      }
      gens.push_back(std::move(g));
    }
  }
  if (m > 2) {  // leftover odd prime > sqrt(q); a leftover 2 has a trivial unit group
    UnitGroupGen g;
    g.modulus = m;
    g.order = m - 1;
    u64 root = find_primitive_root(m);
    g.dlog.assign(m, 0);
    u64 v = 1;
    for (u64 k = 0; k < g.order; ++k) {
      g.dlog[v] = static_cast<u32>(k);
      v = (v * root) % m;
    }
    gens.push_back(std::move(g));
  }
  return gens;
}

}  // namespace detail

/// A Dirichlet character mod q as a full value table over residues 0..q-1.
struct DirichletCharacter {
  u32 q = 1;
  u32 index = 0;  // 0 = principal
  bool is_principal = true;
  u32 order = 1;  // multiplicative order; values are roots of unity of this order
  std::vector<cplx> values;

  cplx operator()(u64 n) const { return values[n % q]; }
  /// Components are exactly representable (sums of these stay exact integers
  /// or Gaussian integers) iff the order divides 4.
  bool exact_values() const { return order <= 2 || order == 4; }
};

struct CharacterOptions {
  u32 max_q = 10'000;
};

/// Euler totient by factorization (small arguments).
inline u64 totient(u64 q) {
  u64 phi = q, m = q;
  for (u64 p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    phi -= phi / p;
    while (m % p == 0) m /= p;
  }
  if (m > 1) phi -= phi / m;
  return phi;
}

/// The full character group mod q: exactly phi(q) characters, principal first,
/// built from the CRT decomposition of (Z/qZ)* into cyclic pieces.
inline std::vector<DirichletCharacter> character_group(u32 q, const CharacterOptions& opts = {}) {
  if (q == 0) throw std::domain_error("character_group: q must be >= 1");
  if (q > opts.max_q) throw capacity_error("character_group: q exceeds configured bound");

  auto gens = detail::unit_group_generators(q);
  u64 n_chars = 1;
  for (const auto& g : gens) n_chars *= g.order;

  u64 lcm_order = 1;
  for (const auto& g : gens) lcm_order = std::lcm(lcm_order, g.order);

  std::vector<DirichletCharacter> group;
  group.reserve(n_chars);
  std::vector<u64> exps(gens.size(), 0);
  for (u64 index = 0; index < n_chars; ++index) {
    DirichletCharacter chi;
    chi.q = q;
    chi.index = static_cast<u32>(index);
    chi.is_principal = std::all_of(exps.begin(), exps.end(), [](u64 k) { return k == 0; });
    u64 ord = 1;
    for (std::size_t j = 0; j < gens.size(); ++j)
      ord = std::lcm(ord, gens[j].order / std::gcd(exps[j], gens[j].order));
    chi.order = static_cast<u32>(ord);
    chi.values.assign(q, cplx{0.0, 0.0});
    for (u64 a = 0; a < q; ++a) {
      if (q > 1 && std::gcd(a, static_cast<u64>(q)) != 1) continue;
      u64 rot = 0;
      for (std::size_t j = 0; j < gens.size(); ++j) {
        u64 d = gens[j].dlog[a % gens[j].modulus];
        rot = (rot + exps[j] * d * (lcm_order / gens[j].order)) % lcm_order;
      }
      chi.values[a] = detail::root_of_unity(rot, lcm_order);
    }
    group.push_back(std::move(chi));

    // next exponent tuple, mixed radix
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (++exps[j] < gens[j].order) break;
      exps[j] = 0;
    }
  }
  return group;
}

// ---------------------------------------------------------------------------
// Twisted summatory function
// ---------------------------------------------------------------------------

struct TwistedPoint {
  u64 x = 0;
  cplx value{0.0, 0.0};
};

/// Checkpointed M_chi(x) = sum mu(n) chi(n). Values are exact for characters
/// of order dividing 4; otherwise double accumulation with error tracking.
struct TwistedTrace {
  u32 q = 1;
  u32 char_index = 0;
  std::vector<TwistedPoint> checkpoints;
  std::string step_policy;
  u64 final_x = 0;
  double error_estimate = 0.0;  // 0 for exact accumulations

  cplx final_value() const { return checkpoints.empty() ? cplx{} : checkpoints.back().value; }
};

inline TwistedTrace twisted_summatory(const DirichletCharacter& chi, u64 X,
                                      const StepPolicy& policy = {}, const SieveOptions& opts = {}) {
  if (X < 1) throw std::domain_error("twisted_summatory: X must be >= 1");
  if (X > opts.max_x) throw capacity_error("twisted_summatory: X exceeds configured maximum");

  struct Fold {
    std::vector<TwistedPoint> partials;
    cplx total{0.0, 0.0};
    u64 nonzero_terms = 0;
  };
  const u64 seg_size = resolved_segment_size(opts);
  const u64 n_segments = (X + seg_size - 1) / seg_size;
  const auto base_primes = primes_up_to(static_cast<u32>(isqrt(X)));

  auto results = parallel_map<Fold>(
      static_cast<std::size_t>(n_segments), opts.threads, [&](std::size_t si) {
        const u64 lo = 1 + static_cast<u64>(si) * seg_size;
        const u64 hi = std::min<u64>(lo + seg_size, X + 1);
        const std::size_t w = static_cast<std::size_t>(hi - lo);
        thread_local std::vector<std::int8_t> mu, lambda;
        mu.resize(w);
        lambda.resize(w);
        detail::sieve_block(lo, hi, base_primes, mu.data(), lambda.data());

        Fold fold;
        auto xs = policy.positions(lo, hi - 1, X);
        cplx run{0.0, 0.0};
        std::size_t xi = 0;
        for (std::size_t i = 0; i < w; ++i) {
          if (mu[i] != 0) {
            cplx cv = chi.values[(lo + i) % chi.q];
            if (cv != cplx{0.0, 0.0}) {
              run += static_cast<double>(mu[i]) * cv;
              ++fold.nonzero_terms;
            }
          }
          if (xi < xs.size() && lo + i == xs[xi]) {
            fold.partials.push_back({xs[xi], run});
            ++xi;
          }
        }
        fold.total = run;
        return fold;
      });

  TwistedTrace trace;
  trace.q = chi.q;
  trace.char_index = chi.index;
  trace.step_policy = policy.description();
  trace.final_x = X;
  cplx base{0.0, 0.0};
  u64 terms = 0;
  for (const auto& fold : results) {
    for (const auto& p : fold.partials) trace.checkpoints.push_back({p.x, base + p.value});
    base += fold.total;
    terms += fold.nonzero_terms;
  }
  trace.error_estimate = chi.exact_values() ? 0.0 : static_cast<double>(terms) * 2.5e-16;
  return trace;
}

/// Partial sum of mu(n) chi(n) n^{-s}; conditional outside Re(s) > 1.
inline EvalResult l_inverse_series(ComplexPoint s, const DirichletCharacter& chi, u64 N,
                                   const SieveOptions& opts = {}) {
  if (N < 1) throw std::domain_error("l_inverse_series: N must be >= 1");
  return detail::dirichlet_coefficient_series(
      Kind::Mobius, s, N, opts, Method::MobiusSeries,
      [&chi](u64 n, cplx sv) { return chi.values[n % chi.q] * nps(n, sv); });
}

/// Exact step integral s * integral_1^X M_chi(x) x^{-s-1} dx.
inline EvalResult l_inverse_integral(ComplexPoint s, const DirichletCharacter& chi, u64 X,
                                     const SieveOptions& opts = {}) {
  if (X < 1) throw std::domain_error("l_inverse_integral: X must be >= 1");
  cplx sv = s.value();
  CompensatedComplexSum acc;
  const u64 seg = resolved_segment_size(opts);
  const auto primes = primes_up_to(static_cast<u32>(isqrt(X)));
  cplx running{0.0, 0.0};
  detail::for_each_segment(1, X, seg, [&](u64 lo, u64 hi) {
    const std::size_t w = static_cast<std::size_t>(hi - lo);
    thread_local std::vector<std::int8_t> mu, lambda;
    mu.resize(w);
    lambda.resize(w);
    detail::sieve_block(lo, hi, primes, mu.data(), lambda.data());
    for (std::size_t i = 0; i < w; ++i) {
      u64 n = lo + i;
      if (mu[i] != 0) running += static_cast<double>(mu[i]) * chi.values[n % chi.q];
      if (n < X && running != cplx{0.0, 0.0})
        acc.add(running * (nps(n, sv) - nps(n + 1, sv)));
    }
  });
  EvalResult r;
  r.value = acc.value();
  r.method = Method::MIntegral;
  r.truncation = X;
  r.conditional = (s.sigma <= 1.0);
  r.error_estimate = std::abs(running) * std::pow(static_cast<double>(X), -s.sigma) +
                     (r.conditional ? 0.0 : std::abs(sv) * std::pow(static_cast<double>(X), 1.0 - s.sigma) /
                                                (s.sigma - 1.0));
  return r;
}

// ---------------------------------------------------------------------------
// Lemma-14 style inequality scan
// ---------------------------------------------------------------------------

struct TwistedBoundRow {
  u32 q = 1;
  u32 char_index = 0;
  bool holds_running_max = true;  // |M_chi(x)| <= phi(q) max_{t<=x}|M(t)| for every x
  u64 first_violation_x = 0;
  double max_excess = 0.0;  // max over x of |M_chi(x)| - phi(q) runmax (negative when holding)
  u64 max_excess_x = 0;
  bool holds_endpoint = true;  // looser reading: phi(q) |M(x)| at the same endpoint
};

struct TwistedBoundReport {
  u64 x_max = 0;
  u32 q_max = 0;
  std::vector<TwistedBoundRow> rows;
  u64 running_max_violations = 0;  // rows failing the running-max form
  u64 endpoint_violations = 0;
};

/// Scans |M_chi(x)| against phi(q) * max_{t<=x}|M(t)| (and against the looser
/// endpoint form phi(q)|M(x)|) for every character of every modulus q <= q_max
/// and every x <= x_max. Reports; asserts nothing.
inline TwistedBoundReport twisted_bound_scan(u32 q_max, u64 x_max, const SieveOptions& opts = {},
                                             double tolerance = 1e-9) {
  TwistedBoundReport report;
  report.x_max = x_max;
  report.q_max = q_max;

  auto seg = sieve_segment(1, x_max + 1, SieveOptions{.max_segment_width = x_max + 1,
                                                      .threads = opts.threads});
  std::vector<i64> M(x_max + 1, 0);
  std::vector<i64> runmax(x_max + 1, 0);
  for (u64 n = 1; n <= x_max; ++n) {
    M[n] = M[n - 1] + seg.mu[n - 1];
    runmax[n] = std::max<i64>(runmax[n - 1], std::llabs(M[n]));
  }

  for (u32 q = 1; q <= q_max; ++q) {
    auto group = character_group(q);
    double phi = static_cast<double>(group.size());
    std::vector<cplx> acc(group.size(), cplx{0.0, 0.0});
    std::vector<TwistedBoundRow> rows(group.size());
    for (std::size_t ci = 0; ci < group.size(); ++ci) {
      rows[ci].q = q;
      rows[ci].char_index = static_cast<u32>(ci);
      rows[ci].max_excess = -1e300;
    }
    for (u64 n = 1; n <= x_max; ++n) {
      double mu_n = static_cast<double>(seg.mu[n - 1]);
      u64 res = n % q;
      for (std::size_t ci = 0; ci < group.size(); ++ci) {
        if (mu_n != 0.0) {
          cplx cv = group[ci].values[res];
          if (cv != cplx{0.0, 0.0}) acc[ci] += mu_n * cv;
        }
        double lhs = std::abs(acc[ci]);
        double excess = lhs - phi * static_cast<double>(runmax[n]);
        if (excess > rows[ci].max_excess) {
          rows[ci].max_excess = excess;
          rows[ci].max_excess_x = n;
        }
        if (excess > tolerance && rows[ci].holds_running_max) {
          rows[ci].holds_running_max = false;
          rows[ci].first_violation_x = n;
        }
        if (lhs > phi * std::abs(static_cast<double>(M[n])) + tolerance)
          rows[ci].holds_endpoint = false;
      }
    }
    for (auto& row : rows) {
      if (!row.holds_running_max) ++report.running_max_violations;
      if (!row.holds_endpoint) ++report.endpoint_violations;
      report.rows.push_back(row);
    }
  }
  return report;
}

/// CSV persistence for twisted traces: `x,re,im,q,char_index`.
inline void write_twisted_csv(std::ostream& os, const TwistedTrace& trace) {
  os << "x,re,im,q,char_index\n";
  for (const auto& p : trace.checkpoints) {
    os << p.x << ',' << p.value.real() << ',' << p.value.imag() << ',' << trace.q << ','
       << trace.char_index << '\n';
  }
}

}  // namespace mlab
