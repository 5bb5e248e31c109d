#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "lpfact/arith.hpp"

namespace lpfact {

/// Half-open integer interval [lo, hi).
struct HalfOpen {
  u64 lo = 0;
  u64 hi = 0;

  u64 length() const { return hi > lo ? hi - lo : 0; }
  bool empty() const { return hi <= lo; }
  bool contains(u64 n) const { return lo <= n && n < hi; }
  friend bool operator==(const HalfOpen&, const HalfOpen&) = default;
};

/// A certified hit: p^ord exactly divides n! + f(n) (or at least p^ord when
/// the valuation was not lifted), with n < p.
struct HitRecord {
  u64 p = 0;
  u64 n = 0;
  Valuation ord;
  std::uint32_t f_id = 0;

  friend bool operator==(const HitRecord&, const HitRecord&) = default;
};

enum class OrdMode { On, Off, Auto };

/// Primes at or below this bound get exact valuations in OrdMode::Auto.
inline constexpr u64 kAutoOrdBound = 1'000'000;

struct SieveConfig {
  Poly f = Poly::constant(1);
  std::uint32_t f_id = 0;
  u64 prime_lo = 2;
  u64 prime_hi = 2;
  /// Explicit window J; when absent every n in [1, p) is scanned.
  std::optional<HalfOpen> window;
  OrdMode ord = OrdMode::Auto;
  unsigned threads = 1;
  unsigned ord_cap = kDefaultOrdCap;
};

struct ScanStats {
  u64 primes_scanned = 0;
  u64 modmuls = 0;
  u64 hits = 0;
  u64 max_hits_per_prime = 0;
};

/// Finalized, immutable result of a sieve run: hits sorted by (p, n).
class HitStore {
 public:
  HitStore() = default;
  /// Sorts, rejects duplicates (same f_id, p, n).
  HitStore(std::vector<HitRecord> records, std::vector<u64> scanned_primes, ScanStats stats = {});
  static HitStore from_records(std::vector<HitRecord> records);

  const std::vector<HitRecord>& records() const { return records_; }
  /// Primes that were scanned (ascending); for stores read back from CSV,
  /// only the primes that carry a hit.
  const std::vector<u64>& scanned_primes() const { return scanned_; }
  const ScanStats& stats() const { return stats_; }
  bool empty() const { return records_.empty(); }

  std::map<u64, u64> hits_per_prime() const;
  /// Hits of one prime, in ascending n.
  std::span<const HitRecord> hits_of(u64 p) const;
  /// Records whose f_id matches, as a new store.
  HitStore select_f(std::uint32_t f_id) const;

 private:
  std::vector<HitRecord> records_;
  std::vector<u64> scanned_;
  ScanStats stats_;
};

/// Collects per-chunk hit batches from worker threads. Appends are
/// serialized; finalize() produces the sorted store.
class HitStoreBuilder {
 public:
  void append(std::vector<HitRecord> batch, u64 modmuls);
  HitStore finalize(std::vector<u64> scanned_primes) &&;

 private:
  std::mutex mu_;
  std::vector<HitRecord> records_;
  u64 modmuls_ = 0;
};

/// All n in window ∩ [1, p) with n! + f(n) ≡ 0 (mod p), ascending.
/// One incremental factorial pass: O(max(window)) modular multiplications.
std::vector<u64> scan_prime(u64 p, HalfOpen window, const Poly& f);

/// Reference scan with plain remainders, kept as an independent route.
std::vector<u64> scan_prime_plain(u64 p, HalfOpen window, const Poly& f);

/// Scans every prime in [prime_lo, prime_hi]; deterministic for any thread count.
HitStore run_sieve(const SieveConfig& cfg);

struct NpRatioRow {
  u64 p = 0;
  u64 count = 0;
  double j_pow = 0.0;  // |J|^(2/3)
  double ratio = 0.0;
};

struct NpRatioReport {
  HalfOpen window;
  std::vector<NpRatioRow> rows;
  double max_ratio = 0.0;
};

/// Empirical #(N_p ∩ J) / |J|^(2/3) for each scanned prime. Report-only.
NpRatioReport np_ratio_report(const HitStore& store, HalfOpen window);

}  // namespace lpfact
