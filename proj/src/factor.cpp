#include "lpfact/factor.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "lpfact/error.hpp"
#include "lpfact/primes.hpp"

namespace lpfact {

namespace {

constexpr u64 kTrialBound = 1'000'000;

const std::vector<u64>& trial_primes() {
  static const std::vector<u64> ps = primes_up_to(kTrialBound);
  return ps;
}

u64 absdiff(u64 a, u64 b) { return a > b ? a - b : b - a; }

// Brent's cycle search on y -> y^2 + c mod n, n odd composite. Returns a
// nontrivial factor or 0. `budget` is decremented by the iterations spent.
u64 brent_word(u64 n, u64 c, u64& budget) {
  const Montgomery64 mont(n);
  const u64 cm = mont.to(c % n);
  auto step = [&](u64 y) { return mont.add(mont.mul(y, y), cm); };
  constexpr u64 m = 128;
  u64 y = mont.to(2), x = y, ys = y, q = mont.one(), g = 1;
  for (u64 r = 1; g == 1; r *= 2) {
    x = y;
    for (u64 i = 0; i < r; ++i) y = step(y);
    for (u64 k = 0; k < r && g == 1; k += m) {
      if (budget == 0) return 0;
      ys = y;
      const u64 lim = std::min(m, r - k);
      for (u64 i = 0; i < lim; ++i) {
        y = step(y);
        q = mont.mul(q, absdiff(x, y));
      }
      budget -= std::min(budget, lim);
      g = std::gcd(q, n);
    }
  }
  if (g == n) {
    do {
      ys = step(ys);
      g = std::gcd(absdiff(x, ys), n);
    } while (g == 1);
  }
  return g == n ? 0 : g;
}

BigInt brent_big(const BigInt& n, unsigned long c, u64& budget) {
  auto step = [&](BigInt& y) {
    y *= y;
    y += c;
    mpz_mod(y.get_mpz_t(), y.get_mpz_t(), n.get_mpz_t());
  };
  constexpr u64 m = 128;
  BigInt y = 2, x = 2, ys = 2, q = 1, g = 1, d;
  for (u64 r = 1; g == 1; r *= 2) {
    x = y;
    for (u64 i = 0; i < r; ++i) step(y);
    for (u64 k = 0; k < r && g == 1; k += m) {
      if (budget == 0) return 0;
      ys = y;
      const u64 lim = std::min(m, r - k);
      for (u64 i = 0; i < lim; ++i) {
        step(y);
        d = x - y;
        q *= d;
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      budget -= std::min(budget, lim);
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
    }
  }
  if (g == n) {
    do {
      step(ys);
      d = x - ys;
      mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g == n ? BigInt(0) : g;
}

// 0: composite, 1: probable prime, 2: proven prime.
int primality(const BigInt& v) {
  if (fits_u64(v)) return is_prime(to_u64(v)) ? 2 : 0;
  return mpz_probab_prime_p(v.get_mpz_t(), 64);
}

BigInt find_factor(const BigInt& n, u64& budget) {
  for (unsigned long c = 1; budget > 0; ++c) {
    if (fits_u64(n)) {
      const u64 g = brent_word(to_u64(n), c, budget);
      if (g != 0) return to_bigint(g);
    } else {
      BigInt g = brent_big(n, c, budget);
      if (g != 0) return g;
    }
  }
  return 0;
}

}  // namespace

BigInt Factorization::product() const {
  BigInt out = cofactor;
  for (const auto& f : factors) {
    BigInt pw;
    mpz_pow_ui(pw.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
    out *= pw;
  }
  return out;
}

std::string Factorization::factors_string() const {
  std::string out;
  for (const auto& f : factors) {
    if (!out.empty()) out += '*';
    out += f.prime.get_str();
    if (f.probable) out += '?';
    if (f.exponent > 1) out += '^' + std::to_string(f.exponent);
  }
  if (cofactor != 1) {
    if (!out.empty()) out += '*';
    out += '[' + cofactor.get_str() + ']';
  }
  return out;
}

Factorization factor_value(const BigInt& value, u64 effort) {
  if (value <= 1) throw ValueNotAboveOne("value " + value.get_str() + " is not above 1");
  Factorization fz;
  fz.value = value;
  std::map<BigInt, std::pair<unsigned, bool>> found;  // prime -> (exponent, probable)

  BigInt rest = value;
  for (const u64 p : trial_primes()) {
    if (BigInt(p) * p > rest) break;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p) == 0) continue;
    const unsigned e = static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), BigInt(p).get_mpz_t()));
    found[BigInt(p)] = {e, false};
  }

  std::vector<BigInt> pending;
  if (rest > 1) pending.push_back(rest);
  while (!pending.empty()) {
    BigInt n = std::move(pending.back());
    pending.pop_back();
    const int pr = (n < BigInt(kTrialBound) * kTrialBound) ? 2 : primality(n);
    if (pr > 0) {
      auto& slot = found[n];
      slot.first += 1;
      slot.second = slot.second || pr == 1;
      continue;
    }
    u64 budget = effort;
    const BigInt d = find_factor(n, budget);
    if (d == 0) {
      fz.cofactor *= n;
      fz.complete = false;
      continue;
    }
    pending.push_back(d);
    pending.push_back(n / d);
  }

  for (const auto& [p, info] : found) fz.factors.push_back({p, info.first, info.second});
  return fz;
}

Factorization factor_small(u64 n, const Poly& f, u64 effort) {
  if (n < 1) throw PreconditionViolated("n", "need n >= 1");
  BigInt fact;
  mpz_fac_ui(fact.get_mpz_t(), n);
  const BigInt value = fact + f(n);
  if (value <= 1) throw ValueNotAboveOne("n! + f(n) = " + value.get_str() + " at n = " + std::to_string(n));
  Factorization fz = factor_value(value, effort);
  fz.n = n;
  return fz;
}

LargestPrime largest_prime(const Factorization& fz) {
  LargestPrime out{0, fz.complete};
  if (!fz.factors.empty()) out.value = fz.factors.back().prime;
  return out;
}

LargestPrime p_exact(u64 n, const Poly& f, u64 effort) { return largest_prime(factor_small(n, f, effort)); }

CrossCheckReport cross_check(const BoundTable& table, const Poly& f, u64 n_max, u64 effort, const HitStore* store) {
  CrossCheckReport rep;
  for (u64 n = 1; n <= n_max; ++n) {
    BigInt fact;
    mpz_fac_ui(fact.get_mpz_t(), n);
    const BigInt value = fact + f(n);
    if (value <= 1) {
      ++rep.skipped;
      continue;
    }
    const Factorization fz = factor_value(value, effort);
    CrossCheckRow row;
    row.n = n;
    row.bound = table.at(n);
    row.largest = largest_prime(fz);
    row.complete = fz.complete;

    if (row.bound && mpz_divisible_ui_p(value.get_mpz_t(), *row.bound) == 0)
      throw MismatchFound("n = " + std::to_string(n) + ": L(n) = " + std::to_string(*row.bound) +
                          " does not divide n! + f(n)");
    if (fz.complete) {
      ++rep.checked;
      const BigInt& P = row.largest.value;
      if (row.bound && BigInt(*row.bound) > P)
        throw MismatchFound("n = " + std::to_string(n) + ": L(n) = " + std::to_string(*row.bound) +
                            " exceeds P = " + P.get_str());
      row.equality_required = n <= table.n_max() && P > n && P <= BigInt(table.p_max()) && P >= BigInt(table.p_min());
      if (row.equality_required) {
        if (!row.bound || BigInt(*row.bound) != P)
          throw MismatchFound("n = " + std::to_string(n) + ": L(n) = " +
                              (row.bound ? std::to_string(*row.bound) : std::string("none")) + " but P = " +
                              P.get_str() + " <= P_max = " + std::to_string(table.p_max()));
        ++rep.equalities;
      }
    }
    rep.rows.push_back(row);
  }

  if (store && f.is_constant(1)) {
    for (const auto& h : store->records()) {
      if (h.n % 2 == 0 || h.n < 3 || h.n + 2 > h.p || h.n > n_max) continue;
      const u64 comp = h.p - 1 - h.n;
      const auto hits = store->hits_of(h.p);
      const bool present = std::any_of(hits.begin(), hits.end(),
                                       [&](const HitRecord& r) { return r.n == comp && r.f_id == h.f_id; });
      rep.companions.push_back({h.p, h.n, comp, present});
    }
  }
  return rep;
}

}  // namespace lpfact
