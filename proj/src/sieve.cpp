#include "lpfact/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "lpfact/error.hpp"
#include "lpfact/primes.hpp"

namespace lpfact {

namespace {

bool record_less(const HitRecord& a, const HitRecord& b) {
  if (a.p != b.p) return a.p < b.p;
  if (a.n != b.n) return a.n < b.n;
  return a.f_id < b.f_id;
}

HalfOpen effective_window(u64 p, HalfOpen window) {
  return {std::max<u64>(window.lo, 1), std::min(window.hi, p)};
}

u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

}  // namespace

// ---------------------------------------------------------------------------
// HitStore

HitStore::HitStore(std::vector<HitRecord> records, std::vector<u64> scanned_primes, ScanStats stats)
    : records_(std::move(records)), scanned_(std::move(scanned_primes)), stats_(stats) {
  std::sort(records_.begin(), records_.end(), record_less);
  for (std::size_t i = 1; i < records_.size(); ++i) {
    const auto& a = records_[i - 1];
    const auto& b = records_[i];
    if (a.p == b.p && a.n == b.n && a.f_id == b.f_id)
      throw PreconditionViolated("hits", "duplicate hit (" + std::to_string(a.p) + ", " + std::to_string(a.n) + ")");
  }
  std::sort(scanned_.begin(), scanned_.end());
  scanned_.erase(std::unique(scanned_.begin(), scanned_.end()), scanned_.end());
  stats_.hits = records_.size();
  u64 best = 0;
  for (const auto& [p, c] : hits_per_prime()) best = std::max(best, c);
  stats_.max_hits_per_prime = best;
  if (stats_.primes_scanned == 0) stats_.primes_scanned = scanned_.size();
}

HitStore HitStore::from_records(std::vector<HitRecord> records) {
  std::vector<u64> primes;
  primes.reserve(records.size());
  for (const auto& r : records) primes.push_back(r.p);
  return HitStore(std::move(records), std::move(primes));
}

std::map<u64, u64> HitStore::hits_per_prime() const {
  std::map<u64, u64> out;
  for (const auto& r : records_) ++out[r.p];
  return out;
}

std::span<const HitRecord> HitStore::hits_of(u64 p) const {
  const auto lo = std::lower_bound(records_.begin(), records_.end(), p,
                                   [](const HitRecord& r, u64 v) { return r.p < v; });
  const auto hi = std::upper_bound(lo, records_.end(), p, [](u64 v, const HitRecord& r) { return v < r.p; });
  return {lo, hi};
}

HitStore HitStore::select_f(std::uint32_t f_id) const {
  std::vector<HitRecord> out;
  for (const auto& r : records_)
    if (r.f_id == f_id) out.push_back(r);
  ScanStats st = stats_;
  st.hits = 0;
  return HitStore(std::move(out), scanned_, st);
}

void HitStoreBuilder::append(std::vector<HitRecord> batch, u64 modmuls) {
  std::lock_guard lock(mu_);
  records_.insert(records_.end(), std::make_move_iterator(batch.begin()), std::make_move_iterator(batch.end()));
  modmuls_ += modmuls;
}

HitStore HitStoreBuilder::finalize(std::vector<u64> scanned_primes) && {
  std::lock_guard lock(mu_);
  ScanStats st;
  st.modmuls = modmuls_;
  st.primes_scanned = scanned_primes.size();
  return HitStore(std::move(records_), std::move(scanned_primes), st);
}

// ---------------------------------------------------------------------------
// scans

std::vector<u64> scan_prime_plain(u64 p, HalfOpen window, const Poly& f) {
  const HalfOpen w = effective_window(p, window);
  std::vector<u64> hits;
  if (w.empty()) return hits;
  u64 fact = 1 % p;
  for (u64 k = 1; k < w.hi; ++k) {
    fact = mulmod(fact, k, p);
    if (k >= w.lo && addmod(fact, f.eval_mod(k, p), p) == 0) hits.push_back(k);
  }
  return hits;
}

std::vector<u64> scan_prime(u64 p, HalfOpen window, const Poly& f) {
  if (p < 3) return scan_prime_plain(p, window, f);
  const HalfOpen w = effective_window(p, window);
  std::vector<u64> hits;
  if (w.empty()) return hits;

  const Montgomery64 mont(p);
  const u64 one = mont.one();

  // Forward-difference table of g(k) = -f(k) mod p at k = 1, in Montgomery
  // form; stepping k costs deg f additions instead of a Horner evaluation.
  const std::size_t d = f.degree();
  std::vector<u64> diff(d + 1);
  for (std::size_t i = 0; i <= d; ++i) diff[i] = mont.to(submod(0, f.eval_mod(1 + i, p), p));
  for (std::size_t j = 1; j <= d; ++j)
    for (std::size_t i = d; i >= j; --i) diff[i] = submod(diff[i], diff[i - 1], p);

  u64 fact = one;  // 1!
  u64 km = one;    // k = 1
  if (d == 0) {
    const u64 target = diff[0];
    for (u64 k = 1;; ++k) {
      if (fact == target && k >= w.lo) hits.push_back(k);
      if (k + 1 >= w.hi) break;
      km = mont.add(km, one);
      fact = mont.mul(fact, km);
    }
    return hits;
  }
  for (u64 k = 1;; ++k) {
    if (fact == diff[0] && k >= w.lo) hits.push_back(k);
    if (k + 1 >= w.hi) break;
    km = mont.add(km, one);
    fact = mont.mul(fact, km);
    for (std::size_t j = 0; j < d; ++j) diff[j] = mont.add(diff[j], diff[j + 1]);
  }
  return hits;
}

// ---------------------------------------------------------------------------
// run_sieve

HitStore run_sieve(const SieveConfig& cfg) {
  if (cfg.prime_lo > cfg.prime_hi) return HitStore({}, {});
  if (cfg.threads == 0) throw PreconditionViolated("threads", "need at least one thread");
  const u64 lo = std::max<u64>(cfg.prime_lo, 2);
  if (lo > cfg.prime_hi) return HitStore({}, {});
  std::vector<u64> primes = primes_in(lo, cfg.prime_hi).primes;

  const HalfOpen window = cfg.window.value_or(HalfOpen{1, ~u64{0}});
  auto cost = [&](u64 p) { return effective_window(p, window).empty() ? u64{1} : effective_window(p, window).hi; };

  // Chunks of consecutive primes with roughly equal total scan cost.
  u64 total = 0;
  for (const u64 p : primes) total += cost(p);
  const u64 target = std::max<u64>(1, total / (u64{cfg.threads} * 16));
  std::vector<std::pair<std::size_t, std::size_t>> chunks;
  for (std::size_t i = 0; i < primes.size();) {
    std::size_t j = i;
    u64 acc = 0;
    while (j < primes.size() && (acc < target || j == i)) acc += cost(primes[j++]);
    chunks.emplace_back(i, j);
    i = j;
  }

  HitStoreBuilder builder;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;

  auto worker = [&] {
    try {
      for (std::size_t c = next++; c < chunks.size() && !failed; c = next++) {
        std::vector<HitRecord> batch;
        u64 muls = 0;
        for (std::size_t i = chunks[c].first; i < chunks[c].second; ++i) {
          const u64 p = primes[i];
          const auto ns = scan_prime(p, window, cfg.f);
          muls += cost(p);
          if (ns.empty()) continue;
          const bool lift = cfg.ord == OrdMode::On || (cfg.ord == OrdMode::Auto && p <= kAutoOrdBound);
          std::vector<Valuation> ords = lift ? ord_hits(p, ns, cfg.f, cfg.ord_cap)
                                             : std::vector<Valuation>(ns.size(), Valuation::at_least(1));
          for (std::size_t k = 0; k < ns.size(); ++k) batch.push_back({p, ns[k], ords[k], cfg.f_id});
        }
        builder.append(std::move(batch), muls);
      }
    } catch (...) {
      std::lock_guard lock(error_mu);
      if (!error) error = std::current_exception();
      failed = true;
    }
  };

  const unsigned nthreads = static_cast<unsigned>(std::min<std::size_t>(cfg.threads, std::max<std::size_t>(chunks.size(), 1)));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return std::move(builder).finalize(std::move(primes));
}

NpRatioReport np_ratio_report(const HitStore& store, HalfOpen window) {
  if (window.length() < 1) throw PreconditionViolated("window", "need |J| >= 1");
  NpRatioReport out;
  out.window = window;
  const double jp = std::pow(static_cast<double>(window.length()), 2.0 / 3.0);
  for (const u64 p : store.scanned_primes()) {
    NpRatioRow row{p, 0, jp, 0.0};
    for (const auto& h : store.hits_of(p))
      if (window.contains(h.n)) ++row.count;
    row.ratio = static_cast<double>(row.count) / jp;
    out.max_ratio = std::max(out.max_ratio, row.ratio);
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace lpfact
