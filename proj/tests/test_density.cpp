#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lpfact/density.hpp"
#include "lpfact/error.hpp"
#include "oracles.hpp"

using namespace lpfact;

namespace {

HitStore store_of(std::initializer_list<std::pair<u64, u64>> hits) {
  std::vector<HitRecord> rs;
  for (const auto& [p, n] : hits) rs.push_back({p, n, Valuation::exactly(1), 0});
  return HitStore::from_records(rs);
}

}  // namespace

TEST_CASE("bound table examples") {
  const auto t = BoundTable::build(store_of({{7, 3}, {661, 8}, {11, 5}, {61, 8}}), 10);
  CHECK(t.at(3) == 7u);
  CHECK(t.at(8) == 661u);
  CHECK(t.at(5) == 11u);
  CHECK_FALSE(t.at(4).has_value());
  CHECK_FALSE(t.at(11).has_value());
  CHECK(t.p_max() == 661);
  const auto empty = BoundTable::build(HitStore{}, 10);
  for (u64 n = 1; n <= 10; ++n) CHECK_FALSE(empty.at(n).has_value());
}

TEST_CASE("density examples") {
  const auto t = BoundTable::build(store_of({{7, 3}, {11, 5}, {661, 8}}), 10);
  const auto r = density_above(t, 2.0, 1, 10);
  CHECK(r.count_above == 3);
  CHECK(r.density == doctest::Approx(0.3));
  CHECK(r.caveat == "lower bound only");
  CHECK(density_above(t, 1e6, 1, 10).count_above == 0);
  CHECK(density_above(BoundTable::build(HitStore{}, 10), 2.0, 1, 10).density == 0.0);
  CHECK_THROWS_AS(density_above(t, 1.0, 1, 10), PreconditionViolated);
}

TEST_CASE("enlarging the sieve range never lowers bounds or counts") {
  SieveConfig cfg;
  cfg.ord = OrdMode::Off;
  cfg.prime_hi = 3000;
  const auto small = BoundTable::build(run_sieve(cfg), 400);
  cfg.prime_hi = 9000;
  const auto large = BoundTable::build(run_sieve(cfg), 400);
  for (u64 n = 1; n <= 400; ++n)
    if (small.at(n)) {
      REQUIRE(large.at(n).has_value());
      CHECK(*large.at(n) >= *small.at(n));
    }
  for (const double lambda : {1.5, 2.0, 4.0, 7.0})
    CHECK(density_above(large, lambda, 1, 400).count_above >= density_above(small, lambda, 1, 400).count_above);
}

TEST_CASE("bounds exceed n and divide n! + 1") {
  SieveConfig cfg;
  cfg.prime_hi = 2000;
  const auto t = BoundTable::build(run_sieve(cfg), 60);
  for (u64 n = 1; n <= 60; ++n)
    if (const auto b = t.at(n)) {
      CHECK(*b > n);
      CHECK(*b <= t.p_max());
      CHECK(oracle::divides(*b, oracle::value(n, {1})));
    }
}

TEST_CASE("constants") {
  const auto c = paper_constants();
  CHECK(c.one_plus_9log2 > 7.238);
  CHECK(c.one_plus_9log2 == doctest::Approx(7.23832462503951).epsilon(1e-14));
  CHECK(c.stewart_least == doctest::Approx(1.380199322349037).epsilon(1e-14));
  CHECK(c.improved_least == doctest::Approx(1.2930638132258836).epsilon(1e-14));
  CHECK(c.ls_2n_minus_1 == doctest::Approx(1.2632893778988175).epsilon(1e-14));
  CHECK(c.improved_2n_minus_1 == doctest::Approx(1.3202639682204262).epsilon(1e-14));
  CHECK(c.named().front().first == "1+9log2");
  CHECK(lambda_of_eps(1e-15) == doctest::Approx(c.one_plus_9log2).epsilon(1e-12));
  CHECK(target_lambda(0.005) == doctest::Approx(c.one_plus_9log2 - 0.5));
}

TEST_CASE("audit config enforces the lambda formula") {
  const auto cfg = AuditConfig::make(100000, 0.005);
  CHECK(cfg.lambda == target_lambda(0.005));
  AuditConfig off = cfg;
  off.lambda = std::nextafter(cfg.lambda, 10.0);
  CHECK_NOTHROW(off.validate());
  off.lambda = std::nextafter(off.lambda, 10.0);
  off.lambda = std::nextafter(off.lambda, 10.0);
  CHECK_THROWS_AS(off.validate(), PreconditionViolated);
  CHECK_THROWS_AS(AuditConfig::make(100000, 0.0), PreconditionViolated);
  CHECK_THROWS_AS(AuditConfig::make(100000, 0.01), PreconditionViolated);
  CHECK_THROWS_AS(AuditConfig::make(300, 0.005), PreconditionViolated);  // eps0 x <= n0
}

TEST_CASE("audit window sum against a direct floating sum") {
  const auto cfg = AuditConfig::make(20000, 0.005);
  const auto r = audit_logZ(cfg);
  double direct = 0.0;
  const double x = 20000.0;
  for (const u64 p : oracle::primes_between(2, static_cast<u64>(cfg.lambda * x))) {
    const double lo = std::max(static_cast<double>(p) / cfg.lambda, 0.005 * x);
    const double hi = std::min(static_cast<double>(p), x);
    if (hi > lo) direct += hi - lo;
  }
  CHECK(r.window_sum_lo <= r.window_sum_hi);
  CHECK(r.window_sum == doctest::Approx(direct).epsilon(1e-9));
  CHECK((r.window_sum_hi - r.window_sum_lo) / r.window_sum < 1e-9);
  CHECK(r.lower_coefficient == doctest::Approx(0.49));
  CHECK(r.ratio == doctest::Approx(r.window_sum / r.asymptotic_sum).epsilon(1e-12));
  // The split evaluation ignores only the eps0 x floor, which touches few primes.
  CHECK(std::abs(r.split_sum - r.window_sum) / r.window_sum < 1e-3);
}

TEST_CASE("audit needs x >= 1000") {
  CHECK_THROWS_AS(audit_logZ(AuditConfig{900, 0.009, target_lambda(0.009)}), PreconditionViolated);
}

TEST_CASE("Stirling bracket") {
  const auto r = stirling_check(10, Poly::constant(1));
  CHECK(r.log_value == doctest::Approx(std::log(3628801.0)).epsilon(1e-12));
  CHECK(r.n_log_n == doctest::Approx(23.02585093).epsilon(1e-9));
  CHECK(r.normalized == doctest::Approx(-0.7922).epsilon(1e-3));
  CHECK(r.in_bracket);
  CHECK(stirling_check(10, Poly::constant(-1)).in_bracket);
  CHECK(stirling_check(2, Poly::constant(1)).n == 2);
  CHECK_THROWS_AS(stirling_check(2, Poly::constant(-1)), ValueNotAboveOne);
  for (u64 n = 10; n <= 3000; n += 37) CHECK(stirling_check(n, Poly::parse("3,0,1")).in_bracket);
  CHECK(log_big(BigInt(1) << 2000) == doctest::Approx(2000 * std::numbers::ln2));
}
