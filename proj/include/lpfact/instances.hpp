#pragma once

#include <random>
#include <vector>

#include "lpfact/intervals.hpp"
#include "lpfact/sieve.hpp"

namespace lpfact {

/// Seeded generator with portable draws (std distributions are not
/// reproducible across standard libraries).
class SeededRng {
 public:
  explicit SeededRng(u64 seed) : gen_(seed) {}

  /// Uniform in [0, n). Requires n >= 1.
  u64 below(u64 n);
  /// Uniform in [lo, hi]. Requires lo <= hi.
  u64 between(u64 lo, u64 hi) { return lo + below(hi - lo + 1); }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 gen_;
};

/// Every two-interval configuration whose four endpoints are hits of one prime
/// (ord >= 1 at each endpoint), with both lengths <= max_len, endpoints
/// >= max(2, n0), and the nonvanishing prime hypothesis satisfied. x is the
/// largest endpoint, the tightest admissible scale.
std::vector<Lemma4Instance> lemma4_candidates(const HitStore& store, const Poly& f, u64 n0, u64 max_len,
                                              const PrimeOracle& primes);

/// `count` candidates in seeded random order (fewer if not enough exist).
std::vector<Lemma4Instance> sample_lemma4(const HitStore& store, const Poly& f, u64 n0, u64 count, u64 seed,
                                          u64 max_len, const PrimeOracle& primes);

struct Lemma7Options {
  double eps0 = 0.005;
  u64 t_min = 16;
  unsigned c1 = 0;
};

/// Instances for primes p with at least one hit: x = p, a seeded window J
/// inside [ceil(eps0 p), p), the hits of p in J with exact ords, padded with
/// seeded non-hit points (ord 0) up to t_min points.
std::vector<Lemma7Input> sample_lemma7(const HitStore& store, const Poly& f, u64 count, u64 seed,
                                       const Lemma7Options& opts = {});

/// Pairing of a hit with its reflection n -> p-1-n.
struct SymmetryCase {
  u64 p = 0;
  u64 n = 0;
  u64 companion = 0;
  bool cross = false;  // even n: companion is checked against f = -1
  bool holds = false;
};

struct SymmetryReport {
  std::vector<SymmetryCase> cases;
  u64 failures = 0;
  u64 cross_skipped = 0;  // even-n cases with no f = -1 data
};

/// For hits of f = 1 at primes p >= 5: odd n in [3, p-2] must reflect to a
/// hit of f = 1; even n in [2, p-2] must reflect to a hit of f = -1 when
/// `minus` is given. Both stores must come from full-window scans.
SymmetryReport wilson_symmetry(const HitStore& plus, const HitStore* minus);

}  // namespace lpfact
