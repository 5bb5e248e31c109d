#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpfact/arith.hpp"
#include "lpfact/primes.hpp"
#include "lpfact/sieve.hpp"

namespace lpfact {

/// L(n): the largest sieved prime p with a hit (p, n). Since n < p and
/// p | n! + f(n), L(n) <= P(n! + f(n)).
class BoundTable {
 public:
  /// Table for n in [1, n_max]. p_max defaults to the store's largest
  /// scanned prime, p_min to its smallest.
  static BoundTable build(const HitStore& store, u64 n_max, std::optional<u64> p_max = std::nullopt,
                          std::optional<u64> p_min = std::nullopt);

  u64 n_max() const { return bounds_.size(); }
  u64 p_max() const { return p_max_; }
  u64 p_min() const { return p_min_; }
  /// L(n), or nullopt when no hit certifies a prime for n.
  std::optional<u64> at(u64 n) const;

 private:
  std::vector<u64> bounds_;  // 0 = none
  u64 p_max_ = 0;
  u64 p_min_ = 2;
};

struct DensityReport {
  double lambda = 0.0;
  u64 n_lo = 1;
  u64 n_hi = 0;
  u64 count_above = 0;
  double density = 0.0;
  /// The sieve certifies membership only; the count is a lower bound on
  /// #(B(lambda) ∩ range).
  std::string caveat = "lower bound only";
};

/// Counts n in [n_lo, n_hi] with L(n) > lambda * n. Requires lambda > 1.
DensityReport density_above(const BoundTable& table, double lambda, u64 n_lo, u64 n_hi);

/// Named constants, each at double precision.
struct PaperConstants {
  double one_plus_9log2;      // 1 + 9 log 2
  double stewart_least;       // (sqrt(145) - 1) / 8
  double improved_least;      // (sqrt(81 (log 2)^2 + 16) - 9 log 2 + 4) / 4
  double ls_2n_minus_1;       // (2 pi^2 + 3) / 18
  double improved_2n_minus_1; // 1 + ((2 pi^2 - 15) / 6) log(3/2)

  /// (key, value) pairs in a fixed order for emission.
  std::vector<std::pair<std::string, double>> named() const;
};

PaperConstants paper_constants();

/// 1 + 9 (1 - 4 eps0) log(2 / (1 + eps0)); tends to 1 + 9 log 2 as eps0 -> 0.
double lambda_of_eps(double eps0);

/// lambda = 1 + 9 log 2 - 100 eps0, the target ratio.
double target_lambda(double eps0);

struct AuditConfig {
  u64 x = 0;
  double eps0 = 0.005;
  double lambda = 0.0;

  /// Builds the config with lambda from the formula.
  static AuditConfig make(u64 x, double eps0, u64 n0 = 2);
  /// Rejects lambda off the formula by more than one ulp, eps0 outside
  /// (0, 1/100), or eps0 * x <= n0.
  void validate(u64 n0 = 2) const;
};

struct AuditReport {
  u64 x = 0;
  double eps0 = 0.0;
  double lambda = 0.0;
  u64 primes_used = 0;  // primes <= lambda x

  /// sum_{p <= lambda x} |J_p|, bracketed by exact rational evaluation with
  /// lambda rounded outward by 1e-15.
  double window_sum = 0.0;
  double window_sum_lo = 0.0;
  double window_sum_hi = 0.0;

  /// The same total from prime sums split at x (ignores the eps0 x floor).
  double split_sum = 0.0;
  /// ((lambda - 1) / 2) x^2 / log x
  double asymptotic_sum = 0.0;

  double upper_coefficient = 0.0;       // window_sum log^2 x / (9 log(2/(1+eps0)) x^2 log x)
  double lower_coefficient = 0.0;       // 1/2 - 2 eps0
  double asymptotic_coefficient = 0.0;  // ((lambda - 1)/2) / (9 log(2/(1+eps0)))
  double ratio = 0.0;                   // upper / asymptotic
  double relative_deviation = 0.0;      // |ratio - 1|
};

/// Window audit at finite x. `primes` must cover [2, lambda x].
AuditReport audit_logZ(const AuditConfig& cfg, const PrimeOracle& primes);
AuditReport audit_logZ(const AuditConfig& cfg);

struct StirlingReport {
  u64 n = 0;
  double log_value = 0.0;   // log(n! + f(n))
  double n_log_n = 0.0;
  double normalized = 0.0;  // (log_value - n log n) / n
  bool bracket_applies = false;  // n >= 10
  bool in_bracket = false;       // normalized in [-2, 1]
};

/// Requires n! + f(n) > 1 (n >= n0).
StirlingReport stirling_check(u64 n, const Poly& f);

/// Natural log of a positive big integer.
double log_big(const BigInt& v);

}  // namespace lpfact
