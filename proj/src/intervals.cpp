#include "lpfact/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lpfact/error.hpp"

namespace lpfact {

namespace {

// Relative guard for floating comparisons on assert paths: a bound only
// counts as violated when it is violated by more than this margin.
constexpr double kGuard = 1e-9;

bool divides(const BigInt& d, const BigInt& v) { return mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t()) != 0; }

BigInt pow_big(u64 base, u64 exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), to_bigint(base).get_mpz_t(), exp);
  return r;
}

// prod_{k=1..len}(a + k) = b! / a!
BigInt rising(u64 a, u64 b) {
  BigInt r = 1;
  for (u64 k = a + 1; k <= b; ++k) mpz_mul_ui(r.get_mpz_t(), r.get_mpz_t(), k);
  return r;
}

BigInt factorial_big(u64 n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// families

IntervalFamily IntervalFamily::build(std::span<const u64> points) {
  if (points.size() < 2) throw PreconditionViolated("points", "need at least two points");
  IntervalFamily fam;
  fam.points_.assign(points.begin(), points.end());
  std::sort(fam.points_.begin(), fam.points_.end());
  const auto dup = std::adjacent_find(fam.points_.begin(), fam.points_.end());
  if (dup != fam.points_.end()) throw DuplicatePoints("point " + std::to_string(*dup) + " repeated");
  fam.intervals_.reserve(fam.points_.size() - 1);
  for (std::size_t i = 0; i + 1 < fam.points_.size(); ++i)
    fam.intervals_.push_back({fam.points_[i], fam.points_[i + 1]});
  return fam;
}

std::vector<Interval> family_difference(const IntervalFamily& a, const IntervalFamily& b) {
  std::vector<Interval> out;
  std::set_difference(a.intervals().begin(), a.intervals().end(), b.intervals().begin(), b.intervals().end(),
                      std::back_inserter(out));
  return out;
}

void GoodnessParams::validate() const {
  if (t < 2) throw PreconditionViolated("t", "need t >= 2");
  if (!(x >= 1.0)) throw PreconditionViolated("x", "need x >= 1");
}

double GoodnessParams::short_length() const { return std::pow(x, 0.99) / static_cast<double>(t); }

bool is_good(const Interval& iv, const GoodnessParams& params, const PrimeOracle& primes) {
  if (static_cast<double>(iv.length()) <= params.short_length()) return true;
  return primes.count_open_closed(iv.left, iv.right) >= params.primes_needed();
}

Classification classify_good(const IntervalFamily& fam, const GoodnessParams& params, const PrimeOracle& primes) {
  params.validate();
  const auto pts = fam.points();
  if (!primes.covers(pts.front(), pts.back()))
    throw OracleGap("prime oracle does not cover [" + std::to_string(pts.front()) + ", " +
                    std::to_string(pts.back()) + "]");
  Classification out;
  for (const auto& iv : fam.intervals()) (is_good(iv, params, primes) ? out.good : out.not_good).push_back(iv);
  return out;
}

Cor6Report check_cor6(const IntervalFamily& fam, const GoodnessParams& params, const PrimeOracle& primes, double c0) {
  const auto cls = classify_good(fam, params, primes);
  Cor6Report r;
  r.t = params.t;
  const double t = static_cast<double>(params.t);
  r.count_not_good = cls.not_good.size();
  r.bound = t - 2.0 * std::pow(t, 0.99);
  r.binding = r.bound > 0.0;
  r.holds = static_cast<double>(fam.intervals().size()) - static_cast<double>(r.count_not_good) >= r.bound;
  r.t_in_range = t <= c0 * std::pow(params.x, 2.0 / 3.0);
  r.interior_bound = t * t / std::pow(params.x, 13.0 / 18.0 - 0.03);
  r.within_interior_bound = static_cast<double>(r.count_not_good) <= r.interior_bound;
  return r;
}

// ---------------------------------------------------------------------------
// Divisibility chain across two intervals of hits

std::string Lemma4Report::failed_clause() const {
  if (!divi1) return "divi1";
  if (!divi1_nonzero) return "divi1-nonzero";
  if (!divi3) return "divi3";
  if (!cross_nonzero) return "ffP-ffP";
  if (!factorial_divides) return "factorial-divides";
  if (!divi4) return "divi4";
  if (!magnitude1) return "magnitude1";
  if (!magnitude2) return "magnitude2";
  if (!bound1) return "bound1";
  if (!bound_quotient) return "bound-quotient";
  if (bound2 == Certified::Fails) return "bound2";
  return {};
}

Lemma4Report lemma4_exact_check(const Poly& f, const Lemma4Instance& inst, const PrimeOracle& primes) {
  const Interval& i1 = inst.first;
  const Interval& i2 = inst.second;
  if (i1 == i2) throw AssumptionViolated("distinct", "I1 and I2 must be distinct intervals");
  if (i1.left >= i1.right || i2.left >= i2.right) throw AssumptionViolated("nonempty", "intervals must be nonempty");
  if (!i1.disjoint_from(i2)) throw AssumptionViolated("disjoint", "I1 and I2 overlap");
  const u64 len1 = i1.length();
  const u64 len2 = i2.length();
  if (len2 < len1) throw AssumptionViolated("length-order", "need |I2| >= |I1|");

  const std::array<u64, 4> ends{i1.left, i1.right, i2.left, i2.right};
  std::array<BigInt, 4> fv;
  for (std::size_t i = 0; i < 4; ++i) {
    const u64 e = ends[i];
    if (e < 2 || e >= inst.p || e > inst.x)
      throw AssumptionViolated("range", "endpoint " + std::to_string(e) + " outside [2, min(p-1, x)]");
    if (e < inst.n0) throw AssumptionViolated("n0", "endpoint " + std::to_string(e) + " below n0");
    fv[i] = f(e);
    if (fv[i] == 0) throw AssumptionViolated("n0", "f vanishes at endpoint " + std::to_string(e));
    if (!GrowthExponent{inst.c1}.holds_at(f, e))
      throw AssumptionViolated("growth", "|f(n)| > n^c1 at n = " + std::to_string(e));
    BigInt value = factorial_big(e) + fv[i];
    if (!divides(pow_big(inst.p, inst.ords[i]), value))
      throw AssumptionViolated("ords", "p^" + std::to_string(inst.ords[i]) + " does not divide n!+f(n) at n = " +
                                           std::to_string(e));
  }
  const BigInt& fa1 = fv[0];
  const BigInt& fb1 = fv[1];
  const BigInt& fa2 = fv[2];
  const BigInt& fb2 = fv[3];

  // Nonvanishing hypothesis: the interval lying to the right carries enough
  // primes to rule out a zero cross combination.
  {
    const bool first_left = i1.right <= i2.left;
    const Interval& far = first_left ? i2 : i1;
    const BigInt ff = abs(first_left ? fa1 * fb2 : fa2 * fb1);
    const auto qs = primes.primes_open_closed(far.left, far.right);
    const u64 need = 2 * u64{inst.c1} + 1;
    if (qs.size() < need)
      throw AssumptionViolated("primes", "interval (" + std::to_string(far.left) + ", " + std::to_string(far.right) +
                                             "] holds fewer than 2c1+1 primes");
    BigInt prod = 1;
    for (u64 i = 0; i < need; ++i) prod *= to_bigint(qs[i]);
    if (prod <= ff) throw AssumptionViolated("primes", "prime product does not exceed |f f| term");
  }

  Lemma4Report r;
  r.v = static_cast<unsigned>(*std::min_element(inst.ords.begin(), inst.ords.end()));
  r.D = pow_big(inst.p, r.v);

  const BigInt p1 = rising(i1.left, i1.right);
  const BigInt p2 = rising(i2.left, i2.right);
  r.divi1_value = fa1 * p1 - fb1;
  r.divi1 = divides(r.D, r.divi1_value);
  r.divi1_nonzero = r.divi1_value != 0;

  r.cross_value = fa1 * fb2 * p1 - fa2 * fb1 * p2;
  r.divi3 = divides(r.D, r.cross_value);
  r.cross_nonzero = r.cross_value != 0;

  const BigInt len1_fact = factorial_big(len1);
  r.factorial_divides = divides(len1_fact, r.cross_value);
  BigInt quotient;
  mpz_tdiv_q(quotient.get_mpz_t(), r.cross_value.get_mpz_t(), len1_fact.get_mpz_t());
  r.divi4 = r.factorial_divides && divides(r.D, quotient);

  const BigInt two_pow1 = 2 * pow_big(inst.x, inst.c1 + len1);
  r.magnitude1 = abs(r.divi1_value) <= two_pow1;
  r.magnitude2 = abs(r.cross_value) <= 2 * pow_big(inst.x, 2 * u64{inst.c1} + len2);
  r.bound1 = r.D <= two_pow1;
  r.bound_quotient = r.cross_nonzero && r.D <= abs(quotient);

  // D <= 2 x^a (e x / L)^L  <=>  D L^L 10^(9L) <= 2 x^a (10^9 e x)^L,
  // with 10^9 e bracketed by 2718281828 < 10^9 e < 2718281829.
  {
    const u64 a = len2 - len1 + 2 * u64{inst.c1};
    const BigInt lhs = r.D * pow_big(len1, len1) * pow_big(10, 9 * len1);
    const BigInt base = 2 * pow_big(inst.x, a);
    auto scaled_pow = [&](u64 e_scaled) {
      BigInt out;
      const BigInt t = to_bigint(e_scaled) * to_bigint(inst.x);
      mpz_pow_ui(out.get_mpz_t(), t.get_mpz_t(), len1);
      return out;
    };
    const BigInt rhs_lo = base * scaled_pow(2718281828ULL);
    const BigInt rhs_hi = base * scaled_pow(2718281829ULL);
    if (lhs <= rhs_lo)
      r.bound2 = Certified::Holds;
    else if (lhs > rhs_hi)
      r.bound2 = Certified::Fails;
    else
      r.bound2 = Certified::Undecided;
  }

  if (const auto clause = r.failed_clause(); !clause.empty())
    throw DivisibilityFailed("lemma4 clause " + clause + " failed for p = " + std::to_string(inst.p) + ", I1 = (" +
                             std::to_string(i1.left) + ", " + std::to_string(i1.right) + "], I2 = (" +
                             std::to_string(i2.left) + ", " + std::to_string(i2.right) + "]");
  return r;
}

// ---------------------------------------------------------------------------
// Selection cascade over hits in J

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Holds: return "holds";
    case CheckStatus::Fails: return "fails";
    case CheckStatus::NotApplicable: return "not_applicable";
  }
  return "?";
}

const char* to_string(Certified c) {
  switch (c) {
    case Certified::Holds: return "holds";
    case Certified::Fails: return "fails";
    case Certified::Undecided: return "undecided";
  }
  return "?";
}

bool Lemma7Trace::structural_ok() const {
  for (const auto s : {gamma_ascending, sum_gamma_within_J, gamma_t2, selection_bound})
    if (s == CheckStatus::Fails) return false;
  return true;
}

Lemma7Trace lemma7_margin(const Lemma7Input& in, const PrimeOracle& primes) {
  if (!(in.eps0 > 0.0 && in.eps0 < 0.01)) throw PreconditionViolated("eps0", "need eps0 in (0, 1/100)");
  if (!(in.x >= 1.0)) throw PreconditionViolated("x", "need x >= 1");
  const u64 t = in.points.size();
  if (t < std::max<u64>(in.t_min, 2))
    throw PreconditionViolated("t_min", "t = " + std::to_string(t) + " below t_min = " + std::to_string(in.t_min));
  if (in.J.empty()) throw PreconditionViolated("J", "J must be nonempty");
  if (static_cast<double>(in.J.lo) < in.eps0 * in.x * (1.0 - kGuard))
    throw PreconditionViolated("J", "J must start at or above eps0 * x");
  if (static_cast<double>(in.J.hi) > std::min(in.x, static_cast<double>(in.p)) * (1.0 + kGuard) || in.J.hi > in.p)
    throw PreconditionViolated("J", "J must end at or below min(x, p)");

  // n_1..n_t by ord descending.
  std::vector<Lemma7Point> pts = in.points;
  for (const auto& pt : pts) {
    if (!pt.ord.exact) throw PreconditionViolated("ords", "valuation at n = " + std::to_string(pt.n) + " is not exact");
    if (!in.J.contains(pt.n)) throw PreconditionViolated("J", "point " + std::to_string(pt.n) + " outside J");
  }
  std::sort(pts.begin(), pts.end(), [](const Lemma7Point& a, const Lemma7Point& b) {
    return a.ord.value != b.ord.value ? a.ord.value > b.ord.value : a.n < b.n;
  });
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].n == pts[i - 1].n && pts[i].ord.value == pts[i - 1].ord.value)
      throw PreconditionViolated("distinct", "point " + std::to_string(pts[i].n) + " repeated");

  Lemma7Trace tr;
  tr.p = in.p;
  tr.t = t;
  for (const auto& pt : pts) {
    tr.order.push_back(pt.n);
    tr.ords.push_back(pt.ord.value);
  }

  const IntervalFamily full = IntervalFamily::build(tr.order);  // throws DuplicatePoints
  const GoodnessParams params{in.x, t, in.c1};
  const auto cls = classify_good(full, params, primes);
  tr.good = cls.good;
  std::sort(tr.good.begin(), tr.good.end(), shorter);
  tr.t1 = tr.good.size();
  for (const auto& iv : tr.good) tr.gamma.push_back(iv.length());

  const double td = static_cast<double>(t);
  const double t99 = std::pow(td, 0.99);
  tr.t2 = static_cast<long long>(std::floor(td - 3.0 * t99));
  tr.t3 = static_cast<long long>(std::floor((td - 5.0 * t99) / 2.0));
  tr.selection_size = static_cast<u64>(std::ceil(t99)) + 1;
  tr.nominal_k_range_empty = tr.t3 < 0;

  // gamma ascending and sum <= |J|
  tr.gamma_ascending = std::is_sorted(tr.gamma.begin(), tr.gamma.end()) ? CheckStatus::Holds : CheckStatus::Fails;
  u64 gamma_sum = 0;
  for (const u64 g : tr.gamma) gamma_sum += g;
  tr.sum_gamma_within_J = gamma_sum <= in.J.length() ? CheckStatus::Holds : CheckStatus::Fails;

  // gamma_{t2} <= |J| / t^0.99 follows from (t1 - t2 + 1) gamma_{t2} <= |J|
  // once t1 - t2 + 1 >= t^0.99; outside that regime the bound is not claimed.
  if (tr.t2 >= 1 && static_cast<u64>(tr.t2) <= tr.t1 &&
      static_cast<double>(tr.t1 - static_cast<u64>(tr.t2) + 1) >= t99) {
    const double bound = static_cast<double>(in.J.length()) / t99;
    tr.gamma_t2 = static_cast<double>(tr.gamma[static_cast<std::size_t>(tr.t2 - 1)]) <= bound * (1.0 + kGuard)
                      ? CheckStatus::Holds
                      : CheckStatus::Fails;
  }

  // Per-k selections. Dropping the k lowest-ord points removes at most 2k of
  // the good intervals, so the i-th shortest survivor is at most gamma_{2k+i}.
  // The k range is the nominal 0..t3 when nonempty, extended to every k that
  // still leaves a comparable gamma.
  const std::set<Interval> good_set(tr.good.begin(), tr.good.end());
  long long k_last = tr.t3;
  if (tr.t1 >= 1) k_last = std::max<long long>(k_last, static_cast<long long>((tr.t1 - 1) / 2));
  k_last = std::min<long long>(k_last, static_cast<long long>(t) - 2);
  bool any_fail = false;
  for (long long k = 0; k <= k_last; ++k) {
    const std::span<const u64> prefix(tr.order.data(), t - static_cast<u64>(k));
    const auto sub = IntervalFamily::build(prefix);
    std::vector<Interval> surviving;
    for (const auto& iv : sub.intervals())
      if (good_set.count(iv)) surviving.push_back(iv);
    std::sort(surviving.begin(), surviving.end(), shorter);
    if (surviving.size() > tr.selection_size) surviving.resize(tr.selection_size);
    for (std::size_t i = 1; i <= surviving.size(); ++i) {
      const u64 idx = 2 * static_cast<u64>(k) + i;  // 1-based gamma index
      if (idx > tr.t1) break;
      ++tr.selection_checks;
      if (surviving[i - 1].length() > tr.gamma[idx - 1]) any_fail = true;
    }
    tr.selections.push_back(std::move(surviving));
  }
  if (tr.selection_checks > 0) tr.selection_bound = any_fail ? CheckStatus::Fails : CheckStatus::Holds;

  // LHS = log p * sum_{t'=ceil((1+eps0)/2 t)}^{t} min_{j<=t'} ord_j
  tr.sum_start = static_cast<u64>(std::ceil((1.0 + in.eps0) / 2.0 * td));
  tr.sum_start = std::max<u64>(tr.sum_start, 1);
  u64 running_min = ~u64{0};
  u64 total = 0;
  for (u64 tp = 1; tp <= t; ++tp) {
    running_min = std::min<u64>(running_min, tr.ords[tp - 1]);
    if (tp >= tr.sum_start) total += running_min;
  }
  tr.lhs = std::log(static_cast<double>(in.p)) * static_cast<double>(total);
  tr.rhs_main = static_cast<double>(in.J.length()) / 2.0 * std::log(td) + in.x * std::log(in.x) / std::pow(td, 0.98);
  tr.margin = tr.lhs - tr.rhs_main;
  return tr;
}

}  // namespace lpfact
