#include "lpfact/primes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "lpfact/error.hpp"

namespace lpfact {

namespace {

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool miller_rabin(u64 n, u64 a) {
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  u64 x = powmod(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

std::vector<u64> simple_sieve(u64 limit) {
  std::vector<u64> out;
  if (limit < 2) return out;
  std::vector<char> composite(limit + 1, 0);
  for (u64 i = 2; i * i <= limit; ++i)
    if (!composite[i])
      for (u64 j = i * i; j <= limit; j += i) composite[j] = 1;
  for (u64 i = 2; i <= limit; ++i)
    if (!composite[i]) out.push_back(i);
  return out;
}

// Sieves [low, high] (inclusive) with the given base primes, appending primes.
void sieve_block(u64 low, u64 high, std::span<const u64> base, u64 segment_size, std::vector<u64>& out) {
  std::vector<char> mark(segment_size);
  for (u64 seg_lo = low;; ) {
    const u64 seg_hi = (high - seg_lo < segment_size - 1) ? high : seg_lo + segment_size - 1;
    const u64 len = seg_hi - seg_lo + 1;
    std::fill(mark.begin(), mark.begin() + static_cast<std::ptrdiff_t>(len), 1);
    for (const u64 q : base) {
      const u128 qq = static_cast<u128>(q) * q;
      if (qq > seg_hi) break;
      u64 start = qq >= seg_lo ? static_cast<u64>(qq) : seg_lo + (q - seg_lo % q) % q;
      for (u64 j = start - seg_lo; j < len; j += q) mark[j] = 0;
    }
    for (u64 i = 0; i < len; ++i)
      if (mark[i] && seg_lo + i >= 2) out.push_back(seg_lo + i);
    if (seg_hi == high) break;
    seg_lo = seg_hi + 1;
  }
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr u64 kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (const u64 q : kSmall) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  if (n < 37 * 37) return true;
  if (n < (u64{1} << 32)) {
    for (const u64 a : {u64{2}, u64{7}, u64{61}})
      if (!miller_rabin(n, a)) return false;
    return true;
  }
  for (const u64 a : kSmall)
    if (!miller_rabin(n, a)) return false;
  return true;
}

u64 next_prime(u64 n) {
  if (n < 2) return 2;
  for (u64 c = n + 1; c > n; ++c)
    if (is_prime(c)) return c;
  throw RangeTooLarge("no prime above " + std::to_string(n) + " fits in 64 bits");
}

PrimeRange primes_in(u64 lo, u64 hi, const SieveOptions& opts) {
  if (lo < 2 || lo > hi) throw PreconditionViolated("range", "need 2 <= lo <= hi");
  if (hi - lo > opts.max_span)
    throw RangeTooLarge("span " + std::to_string(hi - lo) + " exceeds budget " + std::to_string(opts.max_span));
  if (opts.segment_size == 0) throw PreconditionViolated("segment_size", "must be positive");

  const u64 root = isqrt(hi);
  const std::vector<u64> base = root <= (u64{1} << 22) ? simple_sieve(root) : primes_in(2, root, opts).primes;

  PrimeRange out{lo, hi, {}};
  const u64 span = hi - lo + 1;  // hi - lo <= max_span, so no wrap in practice
  const u64 segments = (span + opts.segment_size - 1) / opts.segment_size;
  const unsigned threads = static_cast<unsigned>(std::clamp<u64>(opts.threads, 1, segments));
  if (threads == 1) {
    sieve_block(lo, hi, base, opts.segment_size, out.primes);
    return out;
  }

  // Contiguous runs of segments per worker; concatenation keeps ascending order.
  std::vector<std::vector<u64>> parts(threads);
  std::vector<std::thread> pool;
  const u64 per = (segments + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const u64 first = t * per;
    if (first >= segments) break;
    const u64 block_lo = lo + first * opts.segment_size;
    const u64 last_seg = std::min(segments, first + per) - 1;
    const u64 block_hi = std::min(hi, lo + last_seg * opts.segment_size + (opts.segment_size - 1));
    pool.emplace_back([&, t, block_lo, block_hi] {
      sieve_block(block_lo, block_hi, base, opts.segment_size, parts[t]);
    });
  }
  for (auto& th : pool) th.join();
  for (auto& part : parts) out.primes.insert(out.primes.end(), part.begin(), part.end());
  return out;
}

std::vector<u64> primes_up_to(u64 y, const SieveOptions& opts) {
  if (y < 2) return {};
  return primes_in(2, y, opts).primes;
}

u64 prime_pi(u64 y) { return primes_up_to(y).size(); }

PrimeSum sum_primes(u64 y) {
  if (y < 2) throw PreconditionViolated("y", "need y >= 2");
  u128 acc = 0;
  for (const u64 p : primes_up_to(y)) acc += p;
  PrimeSum out;
  out.sum = to_bigint(static_cast<u64>(acc >> 64));
  out.sum <<= 64;
  out.sum += to_bigint(static_cast<u64>(acc));
  const double yd = static_cast<double>(y);
  out.ratio = out.sum.get_d() / (yd * yd / (2.0 * std::log(yd)));
  return out;
}

GapTable gap_table(u64 y) {
  if (y < 2) throw PreconditionViolated("y", "need y >= 2");
  GapTable t;
  t.y = y;
  t.primes = primes_up_to(y);
  t.next_after_y = next_prime(y);
  t.gaps.reserve(t.primes.size());
  for (std::size_t i = 0; i < t.primes.size(); ++i) {
    const u64 next = i + 1 < t.primes.size() ? t.primes[i + 1] : t.next_after_y;
    t.gaps.push_back(next - t.primes[i]);
  }
  return t;
}

GapSquareSum heath_brown_sum(u64 y) {
  const GapTable t = gap_table(y);
  GapSquareSum out;
  out.y = y;
  out.prime_count = t.primes.size();
  out.next_after_y = t.next_after_y;
  out.sum = 0;
  out.gap_total = 0;
  for (const u64 g : t.gaps) {
    const BigInt gb = to_bigint(g);
    out.sum += gb * gb;
    out.gap_total += gb;
  }
  out.ratio_23_18 = out.sum.get_d() / std::pow(static_cast<double>(y), 23.0 / 18.0 + 0.001);
  return out;
}

PrimeOracle::PrimeOracle(u64 lo, u64 hi) : lo_(lo), hi_(hi) {
  if (lo > hi) throw PreconditionViolated("range", "oracle needs lo <= hi");
  if (hi >= 2) primes_ = primes_in(std::max<u64>(lo, 2), hi).primes;
}

PrimeOracle::PrimeOracle(u64 lo, u64 hi, std::vector<u64> primes) : lo_(lo), hi_(hi), primes_(std::move(primes)) {
  if (lo > hi) throw PreconditionViolated("range", "oracle needs lo <= hi");
}

std::span<const u64> PrimeOracle::primes_open_closed(u64 a, u64 b) const {
  if (b < a) return {};
  // (a, b] needs every integer a+1..b covered.
  if (!(lo_ <= a + 1 && b <= hi_) && a != b)
    throw OracleGap("prime oracle [" + std::to_string(lo_) + ", " + std::to_string(hi_) + "] does not cover (" +
                    std::to_string(a) + ", " + std::to_string(b) + "]");
  const auto first = std::upper_bound(primes_.begin(), primes_.end(), a);
  const auto last = std::upper_bound(primes_.begin(), primes_.end(), b);
  return {first, last};
}

u64 PrimeOracle::count_open_closed(u64 a, u64 b) const { return primes_open_closed(a, b).size(); }

}  // namespace lpfact
