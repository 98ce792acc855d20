#pragma once

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <string>
#include <utility>

#include "mlab/arith.hpp"
#include "mlab/core.hpp"

namespace mlab {

constexpr u64 kIntegerWidthCap = (1ull << 63);  // n < 2^63 everywhere

enum class Kind { Mobius, Liouville, Twisted };

inline const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Mobius: return "mobius";
    case Kind::Liouville: return "liouville";
    case Kind::Twisted: return "twisted";
  }
  return "?";
}

/// A block of (mu, lambda) values over [lo, hi).
struct ArithmeticSegment {
  u64 lo = 0;
  u64 hi = 0;
  std::vector<std::int8_t> mu;
  std::vector<std::int8_t> lambda;
};

struct SieveOptions {
  u64 segment_size = 1ull << 20;
  u64 max_segment_width = 1ull << 26;
  unsigned threads = 0;            // 0 = hardware concurrency
  u64 max_x = kIntegerWidthCap - 1;
};

/// Effective segment size after applying the MLAB_MAX_MEMORY cap (bytes).
/// Scratch costs ~12 bytes per element per worker thread.
inline u64 resolved_segment_size(const SieveOptions& opts) {
  u64 seg = opts.segment_size;
  if (const char* cap = std::getenv("MLAB_MAX_MEMORY")) {
    u64 budget = std::strtoull(cap, nullptr, 10);
    unsigned t = opts.threads ? opts.threads : std::thread::hardware_concurrency();
    if (t == 0) t = 1;
    u64 per_thread = budget / (12ull * t);
    u64 floor_size = std::min<u64>(seg, 1ull << 14);
    seg = std::clamp<u64>(per_thread, floor_size, seg);
  }
  return seg;
}

namespace detail {

// Divide-out block sieve over [lo, hi). For every prime power p^j <= hi with
// p <= sqrt(hi-1), each resident multiple accumulates the factor p and one
// Omega-parity flip; multiples of p^2 lose squarefreeness. A cofactor left
// over at the end (prod != n) is a single prime > sqrt(hi-1). The factor is
// accumulated by multiplication rather than division; same bookkeeping,
// cheaper per element.
inline void sieve_block(u64 lo, u64 hi, const std::vector<u32>& base_primes,
                        std::int8_t* mu_out, std::int8_t* lambda_out) {
  const std::size_t w = static_cast<std::size_t>(hi - lo);
  thread_local std::vector<u64> prod;
  thread_local std::vector<std::uint8_t> flags;  // bit0: Omega parity, bit1: non-squarefree
  prod.assign(w, 1);
  flags.assign(w, 0);

  for (u32 p : base_primes) {
    const u64 p64 = p;
    if (p64 * p64 > hi - 1) break;
    u64 start = ((lo + p64 - 1) / p64) * p64;
    for (u64 m = start; m < hi; m += p64) {
      std::size_t i = static_cast<std::size_t>(m - lo);
      prod[i] *= p64;
      flags[i] ^= 1;
    }
    bool first_power = true;
    for (u64 q = p64 * p64; q < hi;) {
      u64 qs = ((lo + q - 1) / q) * q;
      for (u64 m = qs; m < hi; m += q) {
        std::size_t i = static_cast<std::size_t>(m - lo);
        prod[i] *= p64;
        flags[i] ^= 1;
        if (first_power) flags[i] |= 2;
      }
      first_power = false;
      if (q > (hi - 1) / p64) break;
      q *= p64;
    }
  }

  for (std::size_t i = 0; i < w; ++i) {
    u64 n = lo + i;
    std::uint8_t parity = flags[i] & 1;
    if (prod[i] != n) parity ^= 1;  // one prime factor beyond the base bound
    std::int8_t val = parity ? std::int8_t{-1} : std::int8_t{1};
    lambda_out[i] = val;
    mu_out[i] = (flags[i] & 2) ? std::int8_t{0} : val;
  }
}

}  // namespace detail

/// Segment sieve for mu and lambda over [lo, hi).
inline ArithmeticSegment sieve_segment(u64 lo, u64 hi, const SieveOptions& opts = {}) {
  if (lo < 1 || hi <= lo) throw std::domain_error("sieve_segment: need 1 <= lo < hi");
  if (hi > kIntegerWidthCap) throw std::domain_error("sieve_segment: hi exceeds the 2^63 integer width");
  if (hi - lo > opts.max_segment_width)
    throw capacity_error("sieve_segment: width exceeds configured segment capacity");
  ArithmeticSegment seg;
  seg.lo = lo;
  seg.hi = hi;
  seg.mu.resize(static_cast<std::size_t>(hi - lo));
  seg.lambda.resize(static_cast<std::size_t>(hi - lo));
  auto primes = primes_up_to(static_cast<u32>(isqrt(hi - 1)));
  detail::sieve_block(lo, hi, primes, seg.mu.data(), seg.lambda.data());
  return seg;
}

/// Checkpoint spacing for summatory traces: every `stride` integers plus
/// powers of ten (and always the final X).
struct StepPolicy {
  u64 stride = 10'000;
  bool decades = true;

  std::string description() const {
    std::string d = "stride=" + std::to_string(stride);
    if (decades) d += "+decades";
    return d;
  }

  // Checkpoint positions in [a, b], ascending, deduplicated.
  std::vector<u64> positions(u64 a, u64 b, u64 final_x) const {
    std::vector<u64> xs;
    if (stride > 0) {
      for (u64 x = ((a + stride - 1) / stride) * stride; x <= b && x >= a; x += stride)
        xs.push_back(x);
    }
    if (decades) {
      for (u64 d = 1; d <= b; d *= 10) {
        if (d >= a) xs.push_back(d);
        if (d > b / 10) break;
      }
    }
    if (final_x >= a && final_x <= b) xs.push_back(final_x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
  }
};

struct TracePoint {
  u64 x = 0;
  i64 value = 0;
};

/// Checkpointed cumulative sums of mu or lambda. Values are exact integers.
struct SummatoryTrace {
  Kind kind = Kind::Mobius;
  std::vector<TracePoint> checkpoints;
  std::string step_policy;
  u64 final_x = 0;

  i64 final_value() const { return checkpoints.empty() ? 0 : checkpoints.back().value; }
};

namespace detail {

struct SegmentFold {
  std::vector<TracePoint> partials;  // value = sum over [seg_lo, x]
  i64 total = 0;
};

template <class Consumer>
void for_each_segment(u64 first, u64 last_inclusive, u64 seg_size, Consumer&& consume) {
  for (u64 lo = first; lo <= last_inclusive;) {
    u64 span = std::min<u64>(seg_size, last_inclusive - lo + 1);
    consume(lo, lo + span);
    lo += span;
  }
}

}  // namespace detail

/// Exact checkpointed trace of M(x) or L(x) up to X. Deterministic for any
/// thread count: segments are folded in index order.
inline SummatoryTrace summatory_trace(Kind kind, u64 X, const StepPolicy& policy = {},
                                      const SieveOptions& opts = {}) {
  if (kind == Kind::Twisted) throw std::domain_error("summatory_trace: twisted traces live in characters");
  if (X < 1) throw std::domain_error("summatory_trace: X must be >= 1");
  if (X > opts.max_x) throw capacity_error("summatory_trace: X exceeds configured maximum");

  const u64 seg_size = resolved_segment_size(opts);
  const u64 n_segments = (X + seg_size - 1) / seg_size;
  const auto base_primes = primes_up_to(static_cast<u32>(isqrt(X)));

  auto results = parallel_map<detail::SegmentFold>(
      static_cast<std::size_t>(n_segments), opts.threads, [&](std::size_t si) {
        const u64 lo = 1 + static_cast<u64>(si) * seg_size;
        const u64 hi = std::min<u64>(lo + seg_size, X + 1);
        const std::size_t w = static_cast<std::size_t>(hi - lo);
        thread_local std::vector<std::int8_t> mu, lambda;
        mu.resize(w);
        lambda.resize(w);
        detail::sieve_block(lo, hi, base_primes, mu.data(), lambda.data());
        const std::int8_t* f = (kind == Kind::Mobius) ? mu.data() : lambda.data();

        detail::SegmentFold fold;
        auto xs = policy.positions(lo, hi - 1, X);
        i64 run = 0;
        std::size_t xi = 0;
        for (std::size_t i = 0; i < w; ++i) {
          run += f[i];
          if (xi < xs.size() && lo + i == xs[xi]) {
            fold.partials.push_back({xs[xi], run});
            ++xi;
          }
        }
        fold.total = run;
        return fold;
      });

  SummatoryTrace trace;
  trace.kind = kind;
  trace.step_policy = policy.description();
  trace.final_x = X;
  i64 base = 0;
  for (const auto& fold : results) {
    for (const auto& p : fold.partials) trace.checkpoints.push_back({p.x, base + p.value});
    base += fold.total;
  }
  return trace;
}

/// Exact sum of mu or lambda over [a, b), segmented, no checkpoints.
inline i64 range_sum(Kind kind, u64 a, u64 b, const SieveOptions& opts = {}) {
  if (a >= b) return 0;
  if (b - 1 > opts.max_x) throw capacity_error("range_sum: endpoint exceeds configured maximum");
  const u64 seg_size = resolved_segment_size(opts);
  const auto base_primes = primes_up_to(static_cast<u32>(isqrt(b - 1)));
  i64 total = 0;
  detail::for_each_segment(a, b - 1, seg_size, [&](u64 lo, u64 hi) {
    const std::size_t w = static_cast<std::size_t>(hi - lo);
    thread_local std::vector<std::int8_t> mu, lambda;
    mu.resize(w);
    lambda.resize(w);
    detail::sieve_block(lo, hi, base_primes, mu.data(), lambda.data());
    const std::int8_t* f = (kind == Kind::Mobius) ? mu.data() : lambda.data();
    for (std::size_t i = 0; i < w; ++i) total += f[i];
  });
  return total;
}

/// Sum of mu or lambda over the interval (x, x+y].
inline i64 short_interval_sum(Kind kind, u64 x, u64 y, const SieveOptions& opts = {}) {
  if (x < 1) throw std::domain_error("short_interval_sum: x must be >= 1");
  if (y == 0) return 0;
  return range_sum(kind, x + 1, x + y + 1, opts);
}

/// CSV persistence: header `x,value,kind`, exact decimal integers.
inline void write_trace_csv(std::ostream& os, const SummatoryTrace& trace) {
  os << "x,value,kind\n";
  for (const auto& p : trace.checkpoints)
    os << p.x << ',' << p.value << ',' << kind_name(trace.kind) << '\n';
}

}  // namespace mlab
