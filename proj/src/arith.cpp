#include "lpfact/arith.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

#include "lpfact/error.hpp"

namespace lpfact {

BigInt to_bigint(u64 v) {
  BigInt r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return r;
}

bool fits_u64(const BigInt& v) { return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64; }

u64 to_u64(const BigInt& v) {
  if (!fits_u64(v)) throw std::overflow_error("integer does not fit in 64 bits");
  u64 out = 0;
  mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

unsigned valuation(const BigInt& value, u64 p) {
  if (value == 0) throw ValueIsZero("valuation of zero");
  BigInt rest;
  const BigInt prime = to_bigint(p);
  return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), value.get_mpz_t(), prime.get_mpz_t()));
}

namespace {

unsigned valuation_word(u64 value, u64 p) {
  unsigned v = 0;
  while (value % p == 0) {
    value /= p;
    ++v;
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.empty()) throw PreconditionViolated("polynomial", "f must not be the zero polynomial");
}

Poly Poly::parse(std::string_view spec) {
  std::vector<BigInt> coeffs;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = spec.find(',', start);
    std::string_view tok = trim(spec.substr(start, comma == std::string_view::npos ? spec.npos : comma - start));
    std::string text(tok);
    if (!text.empty() && text.front() == '+') text.erase(0, 1);
    const bool digits = !text.empty() &&
                        std::all_of(text.begin() + (text.front() == '-' ? 1 : 0), text.end(),
                                    [](unsigned char c) { return std::isdigit(c) != 0; }) &&
                        text != "-";
    if (!digits) throw PreconditionViolated("polynomial", "bad coefficient '" + std::string(tok) + "'");
    coeffs.emplace_back(text, 10);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Poly(std::move(coeffs));
}

BigInt Poly::operator()(const BigInt& n) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * n + *it;
  return acc;
}

u64 Poly::eval_mod(u64 n, u64 m) const {
  if (m == 0) throw PreconditionViolated("modulus", "m must be positive");
  const u64 x = n % m;
  u64 acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    const u64 c = mpz_fdiv_ui(it->get_mpz_t(), m);
    acc = addmod(mulmod(acc, x, m), c, m);
  }
  return acc;
}

BigInt Poly::eval_mod(const BigInt& n, const BigInt& m) const {
  BigInt acc = 0;
  BigInt x;
  mpz_fdiv_r(x.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + *it;
    mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
  }
  return acc;
}

BigInt Poly::abs_coeff_sum() const {
  BigInt s = 0;
  for (const auto& c : coeffs_) s += abs(c);
  return s;
}

std::string Poly::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out += ',';
    out += coeffs_[i].get_str();
  }
  return out;
}

GrowthExponent GrowthExponent::for_poly(const Poly& f) {
  const BigInt s = f.abs_coeff_sum();
  // ceil(log2 s): bit length of s - 1 (s >= 1).
  const BigInt sm1 = s - 1;
  const unsigned ceil_log2 = sm1 == 0 ? 0u : static_cast<unsigned>(mpz_sizeinbase(sm1.get_mpz_t(), 2));
  return {static_cast<unsigned>(f.degree()) + ceil_log2};
}

bool GrowthExponent::holds_at(const Poly& f, u64 n) const {
  BigInt bound;
  mpz_pow_ui(bound.get_mpz_t(), to_bigint(n).get_mpz_t(), c1);
  return abs(f(n)) <= bound;
}

PrimePowerModulus::PrimePowerModulus(u64 p, unsigned e) : p_(p), e_(e) {
  if (p < 2) throw PreconditionViolated("prime", "p must be at least 2");
  if (e == 0) throw PreconditionViolated("exponent", "e must be positive");
  mpz_pow_ui(m_.get_mpz_t(), to_bigint(p).get_mpz_t(), e);
  fits_ = fits_u64(m_);
  if (fits_) word_ = to_u64(m_);
}

// ---------------------------------------------------------------------------
// factorials

u64 eval_poly_mod(const Poly& f, u64 n, u64 m) {
  if (m < 2) throw PreconditionViolated("modulus", "m must be at least 2");
  return f.eval_mod(n, m);
}

u64 factorial_mod(u64 n, u64 m) {
  if (m == 0) throw PreconditionViolated("modulus", "m must be positive");
  if (n >= m) return 0;  // m itself is one of the factors
  u64 acc = 1 % m;
  for (u64 k = 2; k <= n; ++k) acc = mulmod(acc, k, m);
  return acc;
}

FactorialModStream::FactorialModStream(u64 n, u64 m) : n_(n), m_(m) {
  if (m == 0) throw PreconditionViolated("modulus", "m must be positive");
}

u64 ord_p_factorial(u64 n, u64 p) {
  if (p < 2) throw PreconditionViolated("prime", "p must be at least 2");
  u64 total = 0;
  while (n > 0) {
    n /= p;
    total += n;
  }
  return total;
}

namespace {

// (n! + f(n)) mod m for ascending ns, one factorial pass. m is a machine word.
std::vector<u64> residues_word(std::span<const u64> ns, const Poly& f, u64 m) {
  std::vector<u64> out;
  out.reserve(ns.size());
  if (m & 1) {
    const Montgomery64 mont(m);
    u64 fact = mont.one();  // 1! in Montgomery form
    u64 km = mont.one();
    u64 k = 1;
    for (const u64 n : ns) {
      for (; k < n; ) {
        ++k;
        km = mont.add(km, mont.one());
        fact = mont.mul(fact, km);
      }
      out.push_back(addmod(mont.from(fact), f.eval_mod(n, m), m));
    }
  } else {
    u64 fact = 1 % m;
    u64 k = 1;
    for (const u64 n : ns) {
      for (; k < n; ) {
        ++k;
        fact = mulmod(fact, k % m, m);
      }
      out.push_back(addmod(fact, f.eval_mod(n, m), m));
    }
  }
  return out;
}

std::vector<BigInt> residues_big(std::span<const u64> ns, const Poly& f, const BigInt& m) {
  std::vector<BigInt> out;
  out.reserve(ns.size());
  BigInt fact = 1;
  u64 k = 1;
  for (const u64 n : ns) {
    for (; k < n; ) {
      ++k;
      mpz_mul_ui(fact.get_mpz_t(), fact.get_mpz_t(), k);
      mpz_fdiv_r(fact.get_mpz_t(), fact.get_mpz_t(), m.get_mpz_t());
    }
    BigInt r = fact + f.eval_mod(to_bigint(n), m);
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
    out.push_back(std::move(r));
  }
  return out;
}

// For each pending index with a nonzero residue mod p^e, fixes its exact
// valuation and drops it from `pending`.
void lift_step(u64 p, unsigned e, std::span<const u64> ns, const Poly& f,
               std::vector<std::size_t>& pending, std::vector<Valuation>& out) {
  const PrimePowerModulus mod(p, e);
  std::vector<u64> sub;
  sub.reserve(pending.size());
  for (auto i : pending) sub.push_back(ns[i]);

  std::vector<std::size_t> still;
  if (mod.fits_word()) {
    const auto res = residues_word(sub, f, mod.word());
    for (std::size_t j = 0; j < pending.size(); ++j) {
      if (res[j] != 0)
        out[pending[j]] = Valuation::exactly(valuation_word(res[j], p));
      else
        still.push_back(pending[j]);
    }
  } else {
    const auto res = residues_big(sub, f, mod.value());
    for (std::size_t j = 0; j < pending.size(); ++j) {
      if (res[j] != 0)
        out[pending[j]] = Valuation::exactly(valuation(res[j], p));
      else
        still.push_back(pending[j]);
    }
  }
  pending.swap(still);
}

}  // namespace

bool nfact_plus_f_is_zero(u64 n, const Poly& f) {
  const BigInt fn = f(n);
  if (fn >= 0) return false;
  const BigInt target = -fn;
  BigInt fact = 1;
  for (u64 k = 2; k <= n; ++k) {
    if (fact > target) return false;
    fact *= to_bigint(k);
  }
  return fact == target;
}

Valuation ord_nfact_plus_f(u64 n, u64 p, const Poly& f, unsigned cap) {
  if (cap == 0) throw PreconditionViolated("cap", "cap must be positive");
  if (p < 2) throw PreconditionViolated("prime", "p must be at least 2");
  if (nfact_plus_f_is_zero(n, f))
    throw ValueIsZero("n! + f(n) = 0 at n = " + std::to_string(n) + " (n below n0)");

  if (n >= p) {
    const u64 a = ord_p_factorial(n, p);
    const BigInt fn = f(n);
    if (fn == 0) return Valuation::exactly(static_cast<std::uint32_t>(a));
    const u64 b = valuation(fn, p);
    if (a != b) return Valuation::exactly(static_cast<std::uint32_t>(std::min(a, b)));
  }

  const u64 ns[1] = {n};
  std::vector<Valuation> out(1);
  std::vector<std::size_t> pending{0};
  for (unsigned e = 1;; e *= 2) {
    const unsigned eff = std::min(e, cap);
    lift_step(p, eff, ns, f, pending, out);
    if (pending.empty()) return out[0];
    if (eff >= cap) return Valuation::at_least(cap);
  }
}

std::vector<Valuation> ord_hits(u64 p, std::span<const u64> ns, const Poly& f, unsigned cap) {
  if (cap == 0) throw PreconditionViolated("cap", "cap must be positive");
  std::vector<Valuation> out(ns.size(), Valuation::at_least(1));
  if (ns.empty() || cap == 1) return out;
  std::vector<std::size_t> pending(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) pending[i] = i;
  for (unsigned e = 2;; e *= 2) {
    const unsigned eff = std::min(e, cap);
    lift_step(p, eff, ns, f, pending, out);
    if (pending.empty()) break;
    if (eff >= cap) {
      for (auto i : pending) out[i] = Valuation::at_least(cap);
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// n0

Lemma1Check check_lemma1(const Poly& f, u64 n0, u64 n_check, u64 k_check) {
  Lemma1Check r;
  r.n0 = n0;
  r.n_checked = n_check;
  r.k_checked = k_check;
  if (n0 < 2) {
    r.ok = false;
    r.reason = "n0 must be at least 2";
    return r;
  }
  const BigInt coeff_sum = f.abs_coeff_sum();
  BigInt deg_pow;
  mpz_pow_ui(deg_pow.get_mpz_t(), to_bigint(n_check).get_mpz_t(), f.degree());
  const BigInt fact_threshold = coeff_sum * deg_pow + 1;  // > 1 + |f(n)| for all n <= n_check

  BigInt fact = 1;
  bool fact_large = false;
  for (u64 n = 2; n < n0 && !fact_large; ++n) {
    fact *= to_bigint(n);
    fact_large = fact > fact_threshold;
  }

  for (u64 n = n0; n <= n_check; ++n) {
    const BigInt fn = f(n);
    if (!fact_large) {
      fact *= to_bigint(n);
      fact_large = fact > fact_threshold;
    }
    if (fn == 0) {
      r.ok = false;
      r.bad_n = n;
      r.reason = "f(n) = 0";
      return r;
    }
    if (!fact_large && fact + fn <= 1) {
      r.ok = false;
      r.bad_n = n;
      r.reason = "n! + f(n) <= 1";
      return r;
    }

    BigInt top_pow;
    mpz_pow_ui(top_pow.get_mpz_t(), to_bigint(n + k_check).get_mpz_t(), f.degree());
    const BigInt bound = coeff_sum * top_pow;  // >= |f(n+k)| for k <= k_check
    const BigInt abs_fn = abs(fn);
    BigInt prod = 1;
    for (u64 k = 1; k <= k_check; ++k) {
      prod *= to_bigint(n + k);
      if (fn * prod == f(n + k)) {
        r.ok = false;
        r.bad_n = n;
        r.bad_k = k;
        r.reason = "f(n) * prod(n+i) = f(n+k)";
        return r;
      }
      if (abs_fn * prod > bound) break;
    }
  }
  return r;
}

std::optional<u64> default_n0(const Poly& f) {
  if (f.is_constant(1)) return 2;
  if (f.is_constant(-1)) return 3;
  return std::nullopt;
}

u64 resolve_n0(const Poly& f, std::optional<u64> user_n0, u64 n_check, u64 k_check) {
  if (!user_n0) {
    if (auto d = default_n0(f)) return *d;
    throw PreconditionViolated("n0", "no default n0 for f = " + f.to_string() + "; supply one");
  }
  const auto check = check_lemma1(f, *user_n0, n_check, k_check);
  if (!check.ok) {
    std::string msg = "n0 = " + std::to_string(*user_n0) + " fails: " + check.reason;
    if (check.bad_n) msg += " at n = " + std::to_string(*check.bad_n);
    if (check.bad_k) msg += ", k = " + std::to_string(*check.bad_k);
    throw PreconditionViolated("n0", msg);
  }
  return *user_n0;
}

}  // namespace lpfact
