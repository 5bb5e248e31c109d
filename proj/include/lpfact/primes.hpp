#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lpfact/arith.hpp"

namespace lpfact {

/// Deterministic primality for every 64-bit integer (Miller-Rabin with a
/// witness set proven sufficient below 2^64).
bool is_prime(u64 n);

/// Smallest prime strictly greater than n. Throws RangeTooLarge near 2^64.
u64 next_prime(u64 n);

struct SieveOptions {
  u64 segment_size = u64{1} << 20;
  /// Largest accepted hi - lo.
  u64 max_span = 2'000'000'000;
  unsigned threads = 1;
};

/// All primes in [lo, hi], ascending.
struct PrimeRange {
  u64 lo = 0;
  u64 hi = 0;
  std::vector<u64> primes;
};

/// Segmented sieve of Eratosthenes over [lo, hi]. Requires 2 <= lo <= hi.
/// Throws RangeTooLarge when hi - lo exceeds opts.max_span.
PrimeRange primes_in(u64 lo, u64 hi, const SieveOptions& opts = {});

/// Primes <= y (empty for y < 2).
std::vector<u64> primes_up_to(u64 y, const SieveOptions& opts = {});

/// pi(y): number of primes <= y.
u64 prime_pi(u64 y);

struct PrimeSum {
  BigInt sum;
  /// sum / (y^2 / (2 log y)); report-only.
  double ratio = 0.0;
};

/// Sum of the primes <= y. Requires y >= 2.
PrimeSum sum_primes(u64 y);

/// Rows (p_k, p_{k+1} - p_k) for every prime p_k <= y; the last gap reaches
/// the first prime above y.
struct GapTable {
  std::vector<u64> primes;
  std::vector<u64> gaps;
  u64 y = 0;
  u64 next_after_y = 0;
};

GapTable gap_table(u64 y);

struct GapSquareSum {
  u64 y = 0;
  BigInt sum;
  /// sum / y^(23/18 + 0.001); report-only, the bounding constant is unknown.
  double ratio_23_18 = 0.0;
  u64 prime_count = 0;       // pi(y)
  u64 next_after_y = 0;      // p_{pi(y)+1}
  BigInt gap_total;          // telescopes to next_after_y - 2
};

/// Sum over primes p_k <= y of (p_{k+1} - p_k)^2. Requires y >= 2.
GapSquareSum heath_brown_sum(u64 y);

/// Sorted prime list covering a closed range, answering counts in (a, b].
class PrimeOracle {
 public:
  PrimeOracle() = default;
  /// Sieves [lo, hi] (lo may be below 2).
  PrimeOracle(u64 lo, u64 hi);
  PrimeOracle(u64 lo, u64 hi, std::vector<u64> primes);

  u64 lo() const { return lo_; }
  u64 hi() const { return hi_; }
  bool covers(u64 a, u64 b) const { return lo_ <= a && b <= hi_; }

  /// Number of primes q with a < q <= b. Throws OracleGap if (a, b] is not covered.
  u64 count_open_closed(u64 a, u64 b) const;
  /// The primes in (a, b], ascending.
  std::span<const u64> primes_open_closed(u64 a, u64 b) const;
  std::span<const u64> primes() const { return primes_; }

 private:
  u64 lo_ = 0;
  u64 hi_ = 0;
  std::vector<u64> primes_;
};

}  // namespace lpfact
