#pragma once

#include <array>
#include <compare>
#include <span>
#include <string>
#include <vector>

#include "lpfact/arith.hpp"
#include "lpfact/primes.hpp"
#include "lpfact/sieve.hpp"

namespace lpfact {

/// Half-open-on-the-left interval (left, right].
struct Interval {
  u64 left = 0;
  u64 right = 0;

  u64 length() const { return right - left; }
  bool contains(u64 n) const { return left < n && n <= right; }
  bool disjoint_from(const Interval& o) const { return right <= o.left || o.right <= left; }
  friend auto operator<=>(const Interval&, const Interval&) = default;
};

/// Orders by length, ties broken by left endpoint.
inline bool shorter(const Interval& a, const Interval& b) {
  return a.length() != b.length() ? a.length() < b.length() : a.left < b.left;
}

/// The t-1 intervals between consecutive sorted points. Depends only on the
/// set of points.
class IntervalFamily {
 public:
  /// Throws DuplicatePoints on repeated points, PreconditionViolated for t < 2.
  static IntervalFamily build(std::span<const u64> points);

  std::span<const u64> points() const { return points_; }
  const std::vector<Interval>& intervals() const { return intervals_; }
  std::size_t t() const { return points_.size(); }

 private:
  std::vector<u64> points_;
  std::vector<Interval> intervals_;
};

/// Intervals of `a` that are not in `b`.
std::vector<Interval> family_difference(const IntervalFamily& a, const IntervalFamily& b);

struct GoodnessParams {
  double x = 1.0;
  u64 t = 2;
  unsigned c1 = 0;

  /// Throws PreconditionViolated unless t >= 2 and x >= 1.
  void validate() const;
  /// x^0.99 / t
  double short_length() const;
  u64 primes_needed() const { return 2 * u64{c1} + 1; }
};

/// Good: length <= x^0.99/t, or at least 2*c1+1 primes inside.
bool is_good(const Interval& iv, const GoodnessParams& params, const PrimeOracle& primes);

struct Classification {
  std::vector<Interval> good;
  std::vector<Interval> not_good;
};

/// Throws OracleGap if the oracle does not cover the family's span.
Classification classify_good(const IntervalFamily& fam, const GoodnessParams& params, const PrimeOracle& primes);

struct Cor6Report {
  u64 t = 0;
  u64 count_not_good = 0;            // m
  double bound = 0.0;                // t - 2 t^0.99
  bool binding = false;              // bound > 0
  bool holds = false;                // t - 1 - m >= bound
  bool t_in_range = false;           // t <= c0 * x^(2/3)
  double interior_bound = 0.0;       // t^2 / x^(13/18 - 0.03), report-only
  bool within_interior_bound = false;
};

Cor6Report check_cor6(const IntervalFamily& fam, const GoodnessParams& params, const PrimeOracle& primes,
                      double c0 = 1.0);

// ---------------------------------------------------------------------------
// Divisibility chain across two intervals of hits

struct Lemma4Instance {
  u64 p = 0;
  Interval first;   // I1
  Interval second;  // I2, |I2| >= |I1|
  /// Valuations at first.left, first.right, second.left, second.right.
  std::array<u64, 4> ords{};
  u64 x = 0;
  unsigned c1 = 0;
  u64 n0 = 2;
};

enum class Certified { Holds, Fails, Undecided };

struct Lemma4Report {
  unsigned v = 0;  // min ord
  BigInt D;        // p^v

  BigInt divi1_value;    // f(a1) * prod_{k=1..|I1|}(a1+k) - f(b1)
  bool divi1 = false;
  bool divi1_nonzero = false;

  BigInt cross_value;    // f(a1) f(b2) P1 - f(a2) f(b1) P2
  bool divi3 = false;
  bool cross_nonzero = false;

  bool factorial_divides = false;  // |I1|! | cross_value
  bool divi4 = false;              // D | cross_value / |I1|!

  bool magnitude1 = false;         // |divi1_value| <= 2 x^(c1+|I1|)
  bool magnitude2 = false;         // |cross_value| <= 2 x^(2 c1+|I2|)
  bool bound1 = false;             // D <= 2 x^(c1+|I1|)
  bool bound_quotient = false;     // D <= |cross_value| / |I1|!
  Certified bound2 = Certified::Undecided;  // D <= 2 x^(|I2|-|I1|+2c1) (e x/|I1|)^|I1|

  /// Name of the first failing clause, empty when everything holds.
  std::string failed_clause() const;
  bool all_hold() const { return failed_clause().empty(); }
};

/// Exact big-integer check of the divisibility chain and the closed-form
/// bounds on D for one pair of disjoint intervals.
///
/// Preconditions (AssumptionViolated names the clause): intervals distinct,
/// disjoint, |I2| >= |I1| >= 1; endpoints in [max(2, n0), min(p-1, x)];
/// |f(n)| <= n^c1 at endpoints; p^ord divides n! + f(n) at each endpoint;
/// the interval on the far side holds at least 2 c1 + 1 primes whose product
/// exceeds the matching |f f| term (the hypothesis behind nonvanishing).
/// Throws DivisibilityFailed when a clause is false.
Lemma4Report lemma4_exact_check(const Poly& f, const Lemma4Instance& inst, const PrimeOracle& primes);

// ---------------------------------------------------------------------------
// Selection cascade over hits in J

struct Lemma7Point {
  u64 n = 0;
  Valuation ord;
};

struct Lemma7Input {
  u64 p = 0;
  std::vector<Lemma7Point> points;
  HalfOpen J;
  double x = 0.0;
  double eps0 = 0.005;
  unsigned c1 = 0;
  /// Stand-in for the (10/eps0)^100 lower bound on t, which is out of reach.
  u64 t_min = 16;
};

enum class CheckStatus { Holds, Fails, NotApplicable };

const char* to_string(CheckStatus s);
const char* to_string(Certified c);

struct Lemma7Trace {
  u64 p = 0;
  u64 t = 0;
  std::vector<u64> order;           // n_1..n_t, ord descending (ties: n ascending)
  std::vector<std::uint32_t> ords;  // matching valuations
  u64 t1 = 0;
  std::vector<Interval> good;       // ascending by (length, left)
  std::vector<u64> gamma;           // lengths of `good`
  long long t2 = 0;                 // floor(t - 3 t^0.99)
  long long t3 = 0;                 // floor((t - 5 t^0.99) / 2)
  u64 selection_size = 0;           // ceil(t^0.99) + 1
  bool nominal_k_range_empty = true;  // t3 < 0
  /// selections[k]: the shortest selection_size intervals of
  /// I(n_1..n_{t-k}) ∩ I_good(n_1..n_t) (fewer if not available).
  std::vector<std::vector<Interval>> selections;

  CheckStatus gamma_ascending = CheckStatus::NotApplicable;
  CheckStatus sum_gamma_within_J = CheckStatus::NotApplicable;
  CheckStatus gamma_t2 = CheckStatus::NotApplicable;
  CheckStatus selection_bound = CheckStatus::NotApplicable;
  u64 selection_checks = 0;

  u64 sum_start = 0;  // ceil((1+eps0)/2 * t)
  double lhs = 0.0;
  double rhs_main = 0.0;
  double margin = 0.0;  // lhs - rhs_main; report-only
  std::string label = "report-only, hypothesis scaled down";

  bool structural_ok() const;
};

/// Cascade bookkeeping behind the key inequality. Throws PreconditionViolated
/// naming the failed hypothesis.
Lemma7Trace lemma7_margin(const Lemma7Input& in, const PrimeOracle& primes);

}  // namespace lpfact
