#include <catch2/catch_amalgamated.hpp>

#include "mlab/experiments.hpp"
#include "oracles.hpp"

using namespace mlab;

TEST_CASE("ratio trace rows carry S(x) and S(x)/sqrt(x)") {
  auto rows = ratio_trace(Kind::Mobius, 100);
  REQUIRE(!rows.empty());
  i64 m100 = oracle::summatory_brute(Kind::Mobius, 100);
  CHECK(m100 == 1);
  CHECK(rows.back().x == 100);
  CHECK(rows.back().value == m100);
  CHECK(rows.back().ratio == Catch::Approx(0.1).margin(1e-15));

  auto lrows = ratio_trace(Kind::Liouville, 10);
  CHECK(lrows.back().ratio == 0.0);

  CHECK_THROWS_AS(ratio_trace(Kind::Mobius, 2'000'000'000ull), capacity_error);
}

TEST_CASE("extreme scan finds exact per-integer extrema") {
  auto small = extreme_scan(Kind::Mobius, 10);
  CHECK(small.max_ratio == 1.0);
  CHECK(small.argmax == 1);

  auto scan = extreme_scan(Kind::Mobius, 10'000);
  // brute pass over every integer
  double mn = 1e300, mx = -1e300;
  u64 amn = 0, amx = 0;
  i64 run = 0;
  for (u64 n = 1; n <= 10'000; ++n) {
    run += mobius_point(n);
    double r = static_cast<double>(run) / std::sqrt(static_cast<double>(n));
    if (r < mn) {
      mn = r;
      amn = n;
    }
    if (r > mx) {
      mx = r;
      amx = n;
    }
  }
  CHECK(scan.min_ratio == mn);
  CHECK(scan.argmin == amn);
  CHECK(scan.max_ratio == mx);
  CHECK(scan.argmax == amx);
  CHECK(amn == 5);  // M(5) = -2 gives -0.894
}

TEST_CASE("extreme scan regression pins at 1e6") {
  auto m = extreme_scan(Kind::Mobius, 1'000'000);
  CHECK(m.max_ratio == 1.0);
  CHECK(m.argmax == 1);
  CHECK(m.min_ratio == Catch::Approx(-2.0 / std::sqrt(5.0)).margin(1e-15));
  CHECK(m.argmin == 5);
  auto l = extreme_scan(Kind::Liouville, 1'000'000);
  CHECK(l.max_ratio == 1.0);
  CHECK(l.min_ratio == Catch::Approx(-1.3302204651592284).margin(1e-12));
  CHECK(l.argmin == 96862);
}

TEST_CASE("extreme scan is thread and segment invariant") {
  SieveOptions tiny{.segment_size = 1 << 10, .threads = 3};
  SieveOptions serial{.segment_size = 1 << 20, .threads = 1};
  auto a = extreme_scan(Kind::Liouville, 60'000, tiny);
  auto b = extreme_scan(Kind::Liouville, 60'000, serial);
  CHECK(a.min_ratio == b.min_ratio);
  CHECK(a.argmin == b.argmin);
  CHECK(a.max_ratio == b.max_ratio);
  CHECK(a.argmax == b.argmax);
  CHECK(a.longest_plus_run == b.longest_plus_run);
  CHECK(a.longest_plus_run_start == b.longest_plus_run_start);
}

TEST_CASE("longest run of mu = +1 matches a brute scan") {
  const u64 X = 100'000;
  auto scan = extreme_scan(Kind::Mobius, X, SieveOptions{.segment_size = 1 << 12});
  u64 best = 0, best_start = 0, cur = 0, cur_start = 0;
  auto seg = sieve_segment(1, X + 1, SieveOptions{.max_segment_width = X + 1});
  for (u64 n = 1; n <= X; ++n) {
    if (seg.mu[n - 1] == 1) {
      if (cur == 0) cur_start = n;
      if (++cur > best) {
        best = cur;
        best_start = cur_start;
      }
    } else {
      cur = 0;
    }
  }
  CHECK(scan.longest_plus_run == best);
  CHECK(scan.longest_plus_run_start == best_start);
  CHECK(best == 3);  // four consecutive +1 values would need a multiple of 4 to be squarefree
  CHECK(best_start == 33);
}

TEST_CASE("theorem probe converges to the inverse zeta target at eps = 1.5") {
  auto rows = theorem_probe(1, 1.5, {1'000, 10'000, 100'000, 1'000'000});
  REQUIRE(rows.size() == 4);
  long double target = 1.0L / oracle::em_zeta_real(2.0L);
  for (const auto& r : rows) CHECK(r.target == Catch::Approx(static_cast<double>(target)).margin(1e-10));
  CHECK(rows[0].gap > rows[1].gap);
  CHECK(rows[1].gap > rows[2].gap);
  CHECK(rows[2].gap > rows[3].gap);
  CHECK(rows[3].gap < 1e-6);
}

TEST_CASE("theorem probe edge cases") {
  auto one = theorem_probe(1, 1.5, {1});
  CHECK(one[0].integral == 0.0);

  CHECK_THROWS_AS(theorem_probe(1, 0.0, {10}), std::domain_error);
  CHECK_THROWS_AS(theorem_probe(1, 0.5, {10}), std::domain_error);  // s = 1 pole
  CHECK_THROWS_AS(theorem_probe(3, 1.0, {10}), std::domain_error);
  CHECK_THROWS_AS(theorem_probe(1, 1.0, {10, 10}), std::domain_error);
  CHECK_THROWS_AS(theorem_probe(1, 1.0, {}), std::domain_error);
}

TEST_CASE("theorem probe reproduces the telescoping identity in the unconditional zone") {
  const double eps = 1.0;  // s = 1.5
  const u64 X = 100'000;
  auto rows = theorem_probe(1, eps, {X});
  ComplexPoint s(1.5, 0.0);
  auto series = inv_zeta_series(s, X);
  i64 MX = range_sum(Kind::Mobius, 1, X + 1);
  double closed = (series.value - static_cast<double>(MX) * nps(X, s.value())).real();
  CHECK(std::abs(rows[0].integral - closed) < 1e-10);
}

TEST_CASE("liouville probe integral approaches the lambda ratio, not the printed target") {
  auto rows = theorem_probe(2, 1.5, {1'000'000});
  long double z2 = oracle::em_zeta_real(2.0L), z4 = oracle::em_zeta_real(4.0L);
  // the step integral converges to zeta(2s)/(s zeta(s)) at s = 2
  double truth = static_cast<double>(z4 / (2.0L * z2));
  CHECK(std::abs(rows[0].integral - truth) < 1e-4);
  // the emitted target column is 1/(s zeta(s)); the persistent gap is the data
  CHECK(rows[0].target == Catch::Approx(static_cast<double>(1.0L / (2.0L * z2))).margin(1e-10));
  CHECK(rows[0].gap > 0.02);
}

TEST_CASE("short interval study fits an exponent over nonzero sums") {
  auto study = short_interval_study(Kind::Mobius, {10'000, 31'623, 100'000, 316'228, 1'000'000},
                                    YPolicy::Sqrt);
  REQUIRE(study.rows.size() == 5);
  for (const auto& r : study.rows) {
    CHECK(r.y == static_cast<u64>(std::sqrt(static_cast<double>(r.x))));
    CHECK(r.sum == short_interval_sum(Kind::Mobius, r.x, r.y));
  }
  if (study.beta_valid) {
    CHECK(std::isfinite(study.beta));
    CHECK(study.residual_rms >= 0.0);
  }
  CHECK_THROWS_AS(short_interval_study(Kind::Mobius, {10, 20}, YPolicy::Sqrt),
                  std::invalid_argument);
}

TEST_CASE("short interval study drops zero sums from the fit") {
  // (log x)^0.1 stays below 2, giving y = 1 and frequent zero sums
  auto study = short_interval_study(Kind::Mobius, {100, 101, 102, 103, 104, 105}, YPolicy::LogPower, 0.1);
  u64 zero_rows = 0;
  for (const auto& r : study.rows)
    if (r.sum == 0) ++zero_rows;
  CHECK(study.dropped_zero == zero_rows);
}
