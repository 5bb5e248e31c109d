#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lpfact/arith.hpp"
#include "lpfact/density.hpp"

namespace lpfact {

struct PrimeFactor {
  BigInt prime;
  unsigned exponent = 1;
  /// Set when the factor exceeds 2^64 and only passed a probabilistic test.
  bool probable = false;
};

/// n! + f(n) = prod prime^exponent * cofactor. cofactor == 1 iff complete.
struct Factorization {
  u64 n = 0;
  BigInt value;
  std::vector<PrimeFactor> factors;  // ascending by prime
  bool complete = true;
  BigInt cofactor = 1;  // composite remainder when the budget ran out

  /// Product of all factors and the cofactor.
  BigInt product() const;
  /// "5^2*103"; probable primes carry a trailing '?', a cofactor is "[c]".
  std::string factors_string() const;
};

/// Iterations granted to each Pollard-Brent attempt.
inline constexpr u64 kDefaultEffort = 1'000'000;

/// Trial division to 10^6, then Pollard-Brent under `effort`.
/// Throws ValueNotAboveOne when n! + f(n) <= 1.
Factorization factor_small(u64 n, const Poly& f, u64 effort = kDefaultEffort);

/// Factors an arbitrary value > 1 with the same pipeline.
Factorization factor_value(const BigInt& value, u64 effort = kDefaultEffort);

/// Largest prime factor; `exact` is false when the factorization is partial,
/// in which case `value` is only the largest prime found.
struct LargestPrime {
  BigInt value;
  bool exact = true;
};

LargestPrime p_exact(u64 n, const Poly& f, u64 effort = kDefaultEffort);
LargestPrime largest_prime(const Factorization& fz);

struct CrossCheckRow {
  u64 n = 0;
  std::optional<u64> bound;  // L(n)
  LargestPrime largest;
  bool complete = false;
  bool equality_required = false;
};

/// For odd n with a hit (p, n) under f = 1, the companion (p, p-1-n).
struct CompanionInstance {
  u64 p = 0;
  u64 n = 0;
  u64 companion = 0;
  bool companion_is_hit = false;
};

struct CrossCheckReport {
  std::vector<CrossCheckRow> rows;
  u64 checked = 0;
  u64 equalities = 0;
  u64 skipped = 0;  // n with n! + f(n) <= 1
  std::vector<CompanionInstance> companions;
};

/// Asserts L(n) <= P(n! + f(n)) for every complete n <= n_max, and equality
/// when p_min <= P <= p_max and n < P. Throws MismatchFound with the
/// counterexample otherwise. `store` supplies the companion instances and
/// may be null.
CrossCheckReport cross_check(const BoundTable& table, const Poly& f, u64 n_max, u64 effort = kDefaultEffort,
                             const HitStore* store = nullptr);

}  // namespace lpfact
