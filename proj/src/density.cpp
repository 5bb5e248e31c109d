#include "lpfact/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lpfact/error.hpp"

namespace lpfact {

// ---------------------------------------------------------------------------
// bound table

BoundTable BoundTable::build(const HitStore& store, u64 n_max, std::optional<u64> p_max, std::optional<u64> p_min) {
  BoundTable t;
  t.bounds_.assign(n_max, 0);
  u64 seen_max = 0;
  u64 seen_min = ~u64{0};
  for (const u64 p : store.scanned_primes()) {
    seen_max = std::max(seen_max, p);
    seen_min = std::min(seen_min, p);
  }
  for (const auto& r : store.records()) {
    seen_max = std::max(seen_max, r.p);
    seen_min = std::min(seen_min, r.p);
    if (r.n >= 1 && r.n <= n_max) t.bounds_[r.n - 1] = std::max(t.bounds_[r.n - 1], r.p);
  }
  t.p_max_ = p_max.value_or(seen_max);
  t.p_min_ = p_min.value_or(seen_min == ~u64{0} ? 2 : seen_min);
  return t;
}

std::optional<u64> BoundTable::at(u64 n) const {
  if (n == 0 || n > bounds_.size() || bounds_[n - 1] == 0) return std::nullopt;
  return bounds_[n - 1];
}

DensityReport density_above(const BoundTable& table, double lambda, u64 n_lo, u64 n_hi) {
  if (!(lambda > 1.0)) throw PreconditionViolated("lambda", "need lambda > 1");
  if (n_lo == 0 || n_lo > n_hi) throw PreconditionViolated("range", "need 1 <= lo <= hi");
  DensityReport r;
  r.lambda = lambda;
  r.n_lo = n_lo;
  r.n_hi = n_hi;
  for (u64 n = n_lo; n <= n_hi; ++n) {
    const auto bound = table.at(n);
    if (bound && static_cast<double>(*bound) > lambda * static_cast<double>(n)) ++r.count_above;
  }
  r.density = static_cast<double>(r.count_above) / static_cast<double>(n_hi - n_lo + 1);
  return r;
}

// ---------------------------------------------------------------------------
// constants

PaperConstants paper_constants() {
  using std::numbers::ln2;
  using std::numbers::pi;
  PaperConstants c{};
  c.one_plus_9log2 = 1.0 + 9.0 * ln2;
  c.stewart_least = (std::sqrt(145.0) - 1.0) / 8.0;
  c.improved_least = (std::sqrt(81.0 * ln2 * ln2 + 16.0) - 9.0 * ln2 + 4.0) / 4.0;
  c.ls_2n_minus_1 = (2.0 * pi * pi + 3.0) / 18.0;
  c.improved_2n_minus_1 = 1.0 + (2.0 * pi * pi - 15.0) / 6.0 * std::log(1.5);
  return c;
}

std::vector<std::pair<std::string, double>> PaperConstants::named() const {
  return {
      {"1+9log2", one_plus_9log2},
      {"(sqrt(145)-1)/8", stewart_least},
      {"(sqrt(81log^2(2)+16)-9log2+4)/4", improved_least},
      {"(2pi^2+3)/18", ls_2n_minus_1},
      {"1+((2pi^2-15)/6)log(3/2)", improved_2n_minus_1},
  };
}

double lambda_of_eps(double eps0) { return 1.0 + 9.0 * (1.0 - 4.0 * eps0) * std::log(2.0 / (1.0 + eps0)); }

double target_lambda(double eps0) { return 1.0 + 9.0 * std::numbers::ln2 - 100.0 * eps0; }

// ---------------------------------------------------------------------------
// audit

AuditConfig AuditConfig::make(u64 x, double eps0, u64 n0) {
  AuditConfig cfg{x, eps0, target_lambda(eps0)};
  cfg.validate(n0);
  return cfg;
}

void AuditConfig::validate(u64 n0) const {
  if (!(eps0 > 0.0 && eps0 < 0.01)) throw PreconditionViolated("eps0", "need eps0 in (0, 1/100)");
  const double want = target_lambda(eps0);
  if (lambda != want && lambda != std::nextafter(want, 0.0) && lambda != std::nextafter(want, 10.0))
    throw PreconditionViolated("lambda", "lambda must equal 1 + 9 log 2 - 100 eps0");
  if (!(eps0 * static_cast<double>(x) > static_cast<double>(n0)))
    throw PreconditionViolated("x", "need eps0 * x > n0");
}

namespace {

// sum over primes of max(0, min(p, x) - max(p / lambda, eps0 x)) with
// lambda = lam_num / 10^15 and eps0 x = ex, exactly.
mpq_class window_sum_exact(std::span<const u64> primes, u64 x, const BigInt& lam_num, const mpq_class& ex) {
  const BigInt scale("1000000000000000");
  BigInt a_hi = 0, a_p = 0;  // p/lambda regime: sum of min(p,x), sum of p
  BigInt b_hi = 0, b_cnt = 0;  // eps0 x regime: sum of min(p,x), count
  const BigInt ex_num = ex.get_num();
  const BigInt ex_den = ex.get_den();
  for (const u64 p : primes) {
    const BigInt pb = to_bigint(p);
    const BigInt hi = to_bigint(std::min(p, x));
    // p / lambda >= eps0 x  <=>  p * 10^15 * ex_den >= ex_num * lam_num
    if (pb * scale * ex_den >= ex_num * lam_num) {
      if (pb * scale < hi * lam_num) {  // p / lambda < min(p, x)
        a_hi += hi;
        a_p += pb;
      }
    } else if (ex < mpq_class(hi)) {
      b_hi += hi;
      b_cnt += 1;
    }
  }
  mpq_class total = mpq_class(a_hi + b_hi) - mpq_class(a_p * scale, lam_num) - mpq_class(b_cnt) * ex;
  total.canonicalize();
  return total;
}

}  // namespace

AuditReport audit_logZ(const AuditConfig& cfg, const PrimeOracle& primes) {
  cfg.validate();
  if (cfg.x < 1000) throw PreconditionViolated("x", "need x >= 1000");
  AuditReport r;
  r.x = cfg.x;
  r.eps0 = cfg.eps0;
  r.lambda = cfg.lambda;

  const long double lam_ld = 1.0L + 9.0L * std::log(2.0L) - 100.0L * static_cast<long double>(cfg.eps0);
  const long double scaled = lam_ld * 1e15L;
  const BigInt lam_lo_num = to_bigint(static_cast<u64>(std::floor(scaled)) - 1);
  const BigInt lam_hi_num = to_bigint(static_cast<u64>(std::ceil(scaled)) + 1);

  const double xd = static_cast<double>(cfg.x);
  const u64 top = static_cast<u64>(std::floor((static_cast<long double>(to_u64(lam_hi_num)) / 1e15L) * cfg.x));
  if (!primes.covers(2, top)) throw OracleGap("audit needs primes up to lambda * x = " + std::to_string(top));
  const auto ps = primes.primes_open_closed(1, top);
  r.primes_used = 0;
  for (const u64 p : ps)
    if (static_cast<double>(p) <= cfg.lambda * xd) ++r.primes_used;

  const mpq_class ex = mpq_class(cfg.eps0) * mpq_class(to_bigint(cfg.x));
  r.window_sum_lo = window_sum_exact(ps, cfg.x, lam_lo_num, ex).get_d();
  r.window_sum_hi = window_sum_exact(ps, cfg.x, lam_hi_num, ex).get_d();
  r.window_sum = 0.5 * (r.window_sum_lo + r.window_sum_hi);

  // Split evaluation from prime sums: sum_{p<=x} (1-1/lambda) p + sum_{x<p<=lambda x} (x - p/lambda).
  long double s_low = 0, s_high = 0, c_high = 0;
  for (const u64 p : ps) {
    if (p <= cfg.x)
      s_low += p;
    else if (static_cast<double>(p) <= cfg.lambda * xd) {
      s_high += p;
      c_high += 1;
    }
  }
  const long double lam = cfg.lambda;
  r.split_sum = static_cast<double>((1.0L - 1.0L / lam) * s_low + static_cast<long double>(xd) * c_high - s_high / lam);

  const double logx = std::log(xd);
  const double denom = 9.0 * std::log(2.0 / (1.0 + cfg.eps0));
  r.asymptotic_sum = (cfg.lambda - 1.0) / 2.0 * xd * xd / logx;
  r.upper_coefficient = r.window_sum * logx * logx / (denom * xd * xd * logx);
  r.lower_coefficient = 0.5 - 2.0 * cfg.eps0;
  r.asymptotic_coefficient = (cfg.lambda - 1.0) / 2.0 / denom;
  r.ratio = r.upper_coefficient / r.asymptotic_coefficient;
  r.relative_deviation = std::abs(r.ratio - 1.0);
  return r;
}

AuditReport audit_logZ(const AuditConfig& cfg) {
  const u64 top = static_cast<u64>(std::ceil((cfg.lambda + 1e-9) * static_cast<double>(cfg.x))) + 1;
  return audit_logZ(cfg, PrimeOracle(2, top));
}

// ---------------------------------------------------------------------------
// Stirling

double log_big(const BigInt& v) {
  if (v <= 0) throw PreconditionViolated("log", "argument must be positive");
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::numbers::ln2;
}

StirlingReport stirling_check(u64 n, const Poly& f) {
  BigInt fact;
  mpz_fac_ui(fact.get_mpz_t(), n);
  const BigInt value = fact + f(n);
  if (value <= 1) throw ValueNotAboveOne("n! + f(n) <= 1 at n = " + std::to_string(n));
  StirlingReport r;
  r.n = n;
  r.log_value = log_big(value);
  const double nd = static_cast<double>(n);
  r.n_log_n = nd * std::log(nd);
  r.normalized = (r.log_value - r.n_log_n) / nd;
  r.bracket_applies = n >= 10;
  r.in_bracket = r.normalized >= -2.0 && r.normalized <= 1.0;
  return r;
}

}  // namespace lpfact
