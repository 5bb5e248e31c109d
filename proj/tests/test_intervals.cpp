#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "lpfact/error.hpp"
#include "lpfact/instances.hpp"
#include "lpfact/intervals.hpp"
#include "oracles.hpp"

using namespace lpfact;

TEST_CASE("build_intervals examples") {
  const std::vector<u64> pts{3, 7, 5};
  const auto fam = IntervalFamily::build(pts);
  CHECK(fam.intervals() == std::vector<Interval>{{3, 5}, {5, 7}});
  CHECK(IntervalFamily::build(std::vector<u64>{1, 2}).intervals() == std::vector<Interval>{{1, 2}});
  CHECK_THROWS_AS(IntervalFamily::build(std::vector<u64>{4, 9, 4}), DuplicatePoints);
  CHECK_THROWS_AS(IntervalFamily::build(std::vector<u64>{4}), PreconditionViolated);
}

TEST_CASE("families: disjoint, covering, and removal adds at most two intervals") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 2000; ++trial) {
    std::set<u64> s;
    const std::size_t t = 2 + rng() % 30;
    while (s.size() < t) s.insert(1 + rng() % 500);
    std::vector<u64> pts(s.begin(), s.end());
    std::shuffle(pts.begin(), pts.end(), rng);
    const auto fam = IntervalFamily::build(pts);
    REQUIRE(fam.intervals().size() == t - 1);
    u64 covered = 0;
    for (std::size_t i = 0; i < fam.intervals().size(); ++i) {
      covered += fam.intervals()[i].length();
      for (std::size_t j = i + 1; j < fam.intervals().size(); ++j)
        REQUIRE(fam.intervals()[i].disjoint_from(fam.intervals()[j]));
    }
    CHECK(covered == *s.rbegin() - *s.begin());
    for (std::size_t k = 2; k < t; ++k) {
      const auto big = IntervalFamily::build(std::span<const u64>(pts.data(), k + 1));
      const auto small = IntervalFamily::build(std::span<const u64>(pts.data(), k));
      CHECK(family_difference(big, small).size() <= 2);
    }
  }
}

TEST_CASE("goodness examples") {
  const PrimeOracle primes(1, 6000);
  CHECK(is_good({5000, 5100}, GoodnessParams{1e4, 10, 0}, primes));
  CHECK(is_good({89, 97}, GoodnessParams{100, 50, 0}, primes));
  CHECK_FALSE(is_good({24, 28}, GoodnessParams{100, 50, 2}, primes));
  CHECK_THROWS_AS(GoodnessParams({0.5, 10, 0}).validate(), PreconditionViolated);
  CHECK_THROWS_AS(GoodnessParams({10, 1, 0}).validate(), PreconditionViolated);
}

TEST_CASE("classification is exhaustive and permutation invariant") {
  const PrimeOracle primes(1, 3000);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    std::set<u64> s;
    while (s.size() < 12) s.insert(1 + rng() % 2900);
    std::vector<u64> pts(s.begin(), s.end());
    const GoodnessParams params{static_cast<double>(1000 + rng() % 5000), 12, static_cast<unsigned>(rng() % 3)};
    const auto base = classify_good(IntervalFamily::build(pts), params, primes);
    CHECK(base.good.size() + base.not_good.size() == 11);
    std::shuffle(pts.begin(), pts.end(), rng);
    const auto again = classify_good(IntervalFamily::build(pts), params, primes);
    CHECK(again.good == base.good);
    CHECK(again.not_good == base.not_good);
  }
  CHECK_THROWS_AS(classify_good(IntervalFamily::build(std::vector<u64>{10, 5000}), GoodnessParams{10, 2, 0}, primes),
                  OracleGap);
}

TEST_CASE("non-good count: bound is not binding at desk scale") {
  const PrimeOracle primes(1, 1000);
  const std::vector<u64> ten{10, 50, 90, 130, 170, 210, 250, 290, 330, 370};
  const auto r = check_cor6(IntervalFamily::build(ten), GoodnessParams{1000, 10, 0}, primes);
  CHECK(r.bound < 0);
  CHECK_FALSE(r.binding);
  CHECK(r.holds);
  const auto two = check_cor6(IntervalFamily::build(std::vector<u64>{4, 5}), GoodnessParams{100, 2, 0}, primes);
  CHECK(two.count_not_good == 0);
  CHECK(two.holds);
}

TEST_CASE("divisibility chain example at p = 11") {
  // 5! + 1 = 11^2, 10! + 1 = 11 * 329891; endpoint 7 is a non-hit (ord 0).
  const PrimeOracle primes(1, 20);
  Lemma4Instance in;
  in.p = 11;
  in.first = {5, 10};
  in.second = {2, 7};
  CHECK_THROWS_AS(lemma4_exact_check(Poly::constant(1), in, primes), AssumptionViolated);  // overlap

  in.first = {2, 3};
  in.second = {5, 10};
  in.ords = {0, 0, 2, 1};
  in.x = 10;
  const auto r = lemma4_exact_check(Poly::constant(1), in, primes);
  CHECK(r.v == 0);
  CHECK(r.D == 1);
  CHECK(r.all_hold());
}

TEST_CASE("divisibility chain: first clause value for (5, 10]") {
  // f(5) * 6*7*8*9*10 - f(10) = 30239 = 11 * 2749.
  const mpz_class v = mpz_class(6 * 7 * 8 * 9 * 10) - 1;
  CHECK(v == 30239);
  CHECK(oracle::divides(11, v));
  const PrimeOracle primes(1, 20);
  Lemma4Instance in;
  in.p = 11;
  in.first = {3, 5};  // 3! + 1 = 7, ord 0 at 3
  in.second = {5, 10};
  in.ords = {0, 2, 2, 1};
  in.x = 10;
  const auto r = lemma4_exact_check(Poly::constant(1), in, primes);
  CHECK(r.D == 1);
  CHECK(r.all_hold());
}

TEST_CASE("divisibility chain preconditions") {
  const PrimeOracle primes(1, 100);
  Lemma4Instance in;
  in.p = 11;
  in.first = {5, 10};
  in.second = {5, 10};
  in.x = 10;
  try {
    lemma4_exact_check(Poly::constant(1), in, primes);
    FAIL("identical intervals accepted");
  } catch (const AssumptionViolated& e) {
    CHECK(e.clause() == "distinct");
  }
  in.first = {2, 5};
  in.second = {6, 7};
  try {
    lemma4_exact_check(Poly::constant(1), in, primes);
    FAIL("length order not enforced");
  } catch (const AssumptionViolated& e) {
    CHECK(e.clause() == "length-order");
  }
  in.first = {5, 10};
  in.second = {2, 3};
  std::swap(in.first, in.second);
  in.ords = {0, 0, 3, 1};  // 11^3 does not divide 5! + 1
  try {
    lemma4_exact_check(Poly::constant(1), in, primes);
    FAIL("wrong ord accepted");
  } catch (const AssumptionViolated& e) {
    CHECK(e.clause() == "ords");
  }
}

TEST_CASE("divisibility chain holds on every configuration from real hits (p < 1500)") {
  SieveConfig cfg;
  cfg.prime_hi = 1500;
  cfg.ord = OrdMode::On;
  const auto store = run_sieve(cfg);
  const PrimeOracle primes(1, 1500);
  const auto all = lemma4_candidates(store, Poly::constant(1), 2, 2000, primes);
  REQUIRE(all.size() > 50);
  u64 positive = 0;
  for (const auto& in : all) {
    const auto r = lemma4_exact_check(Poly::constant(1), in, primes);
    CHECK(r.all_hold());
    CHECK(r.D >= in.p);
    positive += r.bound2 == Certified::Holds;
  }
  CHECK(positive == all.size());
}

TEST_CASE("divisibility chain with a quadratic f") {
  const Poly f = Poly::parse("1,0,1");
  SieveConfig cfg;
  cfg.f = f;
  cfg.prime_hi = 1200;
  cfg.ord = OrdMode::On;
  const auto store = run_sieve(cfg);
  const PrimeOracle primes(1, 1200);
  const auto all = lemma4_candidates(store, f, 2, 2000, primes);
  REQUIRE(!all.empty());
  for (const auto& in : all) CHECK(lemma4_exact_check(f, in, primes).all_hold());
}

TEST_CASE("cascade trace examples") {
  const PrimeOracle primes(1, 10007);
  Lemma7Input in;
  in.p = 10007;
  in.x = 10007;
  in.J = HalfOpen{100, 200};
  for (u64 n = 110; n < 126; ++n) in.points.push_back({n, Valuation::exactly(1)});
  const auto tr = lemma7_margin(in, primes);
  const u64 start = static_cast<u64>(std::ceil(1.005 / 2 * 16));
  CHECK(tr.lhs == doctest::Approx(std::log(10007.0) * static_cast<double>(16 - start + 1)));
  CHECK(tr.structural_ok());
  CHECK(tr.label == "report-only, hypothesis scaled down");

  for (auto& pt : in.points) pt.ord = Valuation::exactly(0);
  CHECK(lemma7_margin(in, primes).lhs == 0.0);
}

TEST_CASE("cascade trace preconditions") {
  const PrimeOracle primes(1, 2000);
  Lemma7Input in;
  in.p = 1009;
  in.x = 1009;
  in.J = HalfOpen{100, 400};
  for (u64 n = 0; n < 10; ++n) in.points.push_back({150 + n, Valuation::exactly(0)});
  auto clause = [&](const Lemma7Input& bad) {
    try {
      lemma7_margin(bad, primes);
    } catch (const PreconditionViolated& e) {
      return e.clause();
    }
    return std::string("none");
  };
  CHECK(clause(in) == "t_min");
  for (u64 n = 10; n < 16; ++n) in.points.push_back({150 + n, Valuation::exactly(0)});
  CHECK(clause(in) == "none");
  auto j_low = in;
  j_low.J = HalfOpen{1, 400};
  CHECK(clause(j_low) == "J");
  auto eps = in;
  eps.eps0 = 0.02;
  CHECK(clause(eps) == "eps0");
  auto inexact = in;
  inexact.points[0].ord = Valuation::at_least(1);
  CHECK(clause(inexact) == "ords");
}

TEST_CASE("cascade trace structure on sieve instances") {
  SieveConfig cfg;
  cfg.prime_hi = 3000;
  cfg.ord = OrdMode::On;
  const auto store = run_sieve(cfg);
  const PrimeOracle primes(1, 3000);
  const auto insts = sample_lemma7(store, Poly::constant(1), 60, 5);
  REQUIRE(insts.size() == 60);
  for (const auto& in : insts) {
    const auto tr = lemma7_margin(in, primes);
    CHECK(tr.structural_ok());
    CHECK(tr.gamma_ascending == CheckStatus::Holds);
    CHECK(tr.sum_gamma_within_J == CheckStatus::Holds);
    CHECK(tr.t1 <= tr.t - 1);
    CHECK(tr.nominal_k_range_empty);
  }
}

TEST_CASE("seeded instance selection is reproducible") {
  SieveConfig cfg;
  cfg.prime_hi = 2000;
  const auto store = run_sieve(cfg);
  const PrimeOracle primes(1, 2000);
  const auto a = sample_lemma4(store, Poly::constant(1), 2, 40, 9, 2000, primes);
  const auto b = sample_lemma4(store, Poly::constant(1), 2, 40, 9, 2000, primes);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].p == b[i].p);
    CHECK(a[i].first == b[i].first);
    CHECK(a[i].second == b[i].second);
  }
  SeededRng r1(1), r2(1);
  for (int i = 0; i < 100; ++i) CHECK(r1.below(97) == r2.below(97));
}
