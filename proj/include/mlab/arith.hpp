#pragma once

#include <stdexcept>

#include "mlab/core.hpp"

namespace mlab {

/// Prime-factor counts of a single integer, by trial division. This is the
/// slow reference route; bulk work goes through sieve_segment.
struct FactorCounts {
  u32 omega = 0;      // distinct prime factors
  u32 big_omega = 0;  // prime factors with multiplicity
  bool squarefree = true;
};

inline FactorCounts factor_counts(u64 n) {
  if (n == 0) throw std::domain_error("factor_counts: n must be >= 1");
  FactorCounts fc;
  auto strip = [&](u64 p) {
    if (n % p != 0) return;
    ++fc.omega;
    u32 e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    fc.big_omega += e;
    if (e > 1) fc.squarefree = false;
  };
  strip(2);
  strip(3);
  for (u64 d = 5; d * d <= n; d += 6) {
    strip(d);
    strip(d + 2);
  }
  if (n > 1) {
    ++fc.omega;
    ++fc.big_omega;
  }
  return fc;
}

/// mu(n): (-1)^omega(n) on squarefree n, 0 otherwise.
inline int mobius_point(u64 n) {
  FactorCounts fc = factor_counts(n);
  if (!fc.squarefree) return 0;
  return (fc.omega & 1) ? -1 : 1;
}

/// lambda(n) = (-1)^Omega(n); never zero.
inline int liouville_point(u64 n) {
  FactorCounts fc = factor_counts(n);
  return (fc.big_omega & 1) ? -1 : 1;
}

}  // namespace mlab
