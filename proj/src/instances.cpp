#include "lpfact/instances.hpp"

#include <algorithm>
#include <cmath>

#include "lpfact/error.hpp"

namespace lpfact {

u64 SeededRng::below(u64 n) {
  if (n == 0) throw PreconditionViolated("rng", "empty range");
  // Rejection sampling keeps draws uniform and identical on every platform.
  const u64 limit = ~u64{0} - (~u64{0} % n);
  u64 v;
  do v = gen_();
  while (v >= limit);
  return v % n;
}

namespace {

bool has_hit(const HitStore& store, u64 p, u64 n) {
  const auto hits = store.hits_of(p);
  return std::any_of(hits.begin(), hits.end(), [n](const HitRecord& r) { return r.n == n; });
}

}  // namespace

std::vector<Lemma4Instance> lemma4_candidates(const HitStore& store, const Poly& f, u64 n0, u64 max_len,
                                              const PrimeOracle& primes) {
  const unsigned c1 = GrowthExponent::for_poly(f).c1;
  const u64 need = 2 * u64{c1} + 1;
  const u64 lo_end = std::max<u64>(2, n0);
  std::vector<Lemma4Instance> out;

  for (const auto& [p, count] : store.hits_per_prime()) {
    if (count < 3) continue;
    std::vector<u64> ns;
    std::vector<u64> ords;
    std::vector<BigInt> fv;
    for (const auto& h : store.hits_of(p)) {
      if (h.n < lo_end || h.ord.value == 0) continue;
      BigInt v = f(h.n);
      if (v == 0) continue;
      ns.push_back(h.n);
      ords.push_back(h.ord.value);
      fv.push_back(std::move(v));
    }
    const std::size_t m = ns.size();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m && ns[j] - ns[i] <= max_len; ++j)
        for (std::size_t k = j; k < m; ++k)
          for (std::size_t l = k + 1; l < m && ns[l] - ns[k] <= max_len; ++l) {
            // The right-hand interval must carry the primes of the
            // nonvanishing hypothesis.
            const auto qs = primes.primes_open_closed(ns[k], ns[l]);
            if (qs.size() < need) continue;
            BigInt prod = 1;
            for (u64 q = 0; q < need; ++q) prod *= to_bigint(qs[q]);
            if (prod <= abs(fv[i] * fv[l])) continue;

            const Interval left{ns[i], ns[j]};
            const Interval right{ns[k], ns[l]};
            Lemma4Instance inst;
            inst.p = p;
            inst.x = ns[l];
            inst.c1 = c1;
            inst.n0 = lo_end;
            if (left.length() <= right.length()) {
              inst.first = left;
              inst.second = right;
              inst.ords = {ords[i], ords[j], ords[k], ords[l]};
            } else {
              inst.first = right;
              inst.second = left;
              inst.ords = {ords[k], ords[l], ords[i], ords[j]};
            }
            out.push_back(inst);
          }
  }
  return out;
}

std::vector<Lemma4Instance> sample_lemma4(const HitStore& store, const Poly& f, u64 n0, u64 count, u64 seed,
                                          u64 max_len, const PrimeOracle& primes) {
  auto all = lemma4_candidates(store, f, n0, max_len, primes);
  SeededRng rng(seed);
  rng.shuffle(all);
  if (all.size() > count) all.resize(count);
  return all;
}

std::vector<Lemma7Input> sample_lemma7(const HitStore& store, const Poly& f, u64 count, u64 seed,
                                       const Lemma7Options& opts) {
  std::vector<u64> candidates;
  for (const auto& [p, c] : store.hits_per_prime()) {
    const u64 lo0 = static_cast<u64>(std::ceil(opts.eps0 * static_cast<double>(p)));
    if (p > lo0 + 2 * opts.t_min) candidates.push_back(p);
  }
  std::vector<Lemma7Input> out;
  if (candidates.empty()) return out;
  SeededRng rng(seed);

  for (u64 i = 0; i < count; ++i) {
    const u64 p = candidates[rng.below(candidates.size())];
    const u64 lo0 = std::max<u64>(1, static_cast<u64>(std::ceil(opts.eps0 * static_cast<double>(p))));
    const u64 len = rng.between(opts.t_min, p - lo0);
    const u64 lo = rng.between(lo0, p - len);
    const HalfOpen J{lo, lo + len};

    // n! + f(n) mod p across J separates hits from ord-0 points.
    std::vector<u64> hit_ns, others;
    u64 fact = factorial_mod(lo - 1, p);
    for (u64 n = lo; n < J.hi; ++n) {
      fact = mulmod(fact, n % p, p);
      if (addmod(fact, f.eval_mod(n, p), p) == 0)
        hit_ns.push_back(n);
      else
        others.push_back(n);
    }
    for (const u64 n : hit_ns)
      if (!has_hit(store, p, n))
        throw InvariantFailure("store is missing hit (" + std::to_string(p) + ", " + std::to_string(n) + ")");

    Lemma7Input in;
    in.p = p;
    in.J = J;
    in.x = static_cast<double>(p);
    in.eps0 = opts.eps0;
    in.c1 = opts.c1;
    in.t_min = opts.t_min;
    const auto ords = ord_hits(p, hit_ns, f);
    for (std::size_t k = 0; k < hit_ns.size(); ++k) in.points.push_back({hit_ns[k], ords[k]});
    for (u64 pad = hit_ns.size(); pad < opts.t_min; ++pad) {
      const std::size_t pick = rng.below(others.size());
      in.points.push_back({others[pick], Valuation::exactly(0)});
      others[pick] = others.back();
      others.pop_back();
    }
    out.push_back(std::move(in));
  }
  return out;
}

SymmetryReport wilson_symmetry(const HitStore& plus, const HitStore* minus) {
  SymmetryReport rep;
  for (const auto& h : plus.records()) {
    if (h.p < 5 || h.n < 2 || h.n + 2 > h.p) continue;
    SymmetryCase c{h.p, h.n, h.p - 1 - h.n, h.n % 2 == 0, false};
    if (!c.cross) {
      if (h.n < 3) continue;
      c.holds = has_hit(plus, h.p, c.companion);
    } else if (minus) {
      c.holds = has_hit(*minus, h.p, c.companion);
    } else {
      ++rep.cross_skipped;
      continue;
    }
    if (!c.holds) ++rep.failures;
    rep.cases.push_back(c);
  }
  return rep;
}

}  // namespace lpfact
