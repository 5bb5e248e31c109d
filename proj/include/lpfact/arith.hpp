#pragma once

#include <cstdint>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "lpfact/montgomery.hpp"

namespace lpfact {

using BigInt = mpz_class;

BigInt to_bigint(u64 v);
/// Exact conversion; throws std::overflow_error when the value does not fit.
u64 to_u64(const BigInt& v);
bool fits_u64(const BigInt& v);

/// p-adic valuation of a nonzero integer.
unsigned valuation(const BigInt& value, u64 p);

/// Nonzero polynomial with integer coefficients, constant term first.
class Poly {
 public:
  explicit Poly(std::vector<BigInt> coeffs);

  /// Parses "c0,c1,...,cd" (decimal, optional sign, surrounding blanks allowed).
  static Poly parse(std::string_view spec);
  static Poly constant(long c) { return Poly({BigInt(c)}); }

  std::size_t degree() const { return coeffs_.size() - 1; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  const BigInt& leading() const { return coeffs_.back(); }
  bool is_constant(long c) const { return degree() == 0 && coeffs_[0] == c; }

  BigInt operator()(const BigInt& n) const;
  BigInt operator()(u64 n) const { return (*this)(to_bigint(n)); }

  /// f(n) mod m for m >= 1, Horner with reduction at every step.
  u64 eval_mod(u64 n, u64 m) const;
  BigInt eval_mod(const BigInt& n, const BigInt& m) const;

  /// Sum of absolute values of the coefficients.
  BigInt abs_coeff_sum() const;

  /// Canonical "c0,c1,..." text, the inverse of parse().
  std::string to_string() const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<BigInt> coeffs_;
};

/// Exponent c1 with |f(n)| <= n^c1 for every integer n >= 2.
///
/// Chosen as deg f + ceil(log2(sum |a_i|)), which is provable:
/// |f(n)| <= sum|a_i| * n^deg <= 2^ceil(log2 sum|a_i|) * n^deg <= n^c1.
/// The true minimal exponent may be smaller; this is a conservative stand-in.
struct GrowthExponent {
  unsigned c1 = 0;

  static GrowthExponent for_poly(const Poly& f);
  /// Exact check of |f(n)| <= n^c1 at one point (n >= 2).
  bool holds_at(const Poly& f, u64 n) const;
};

/// Modulus p^e with p prime.
class PrimePowerModulus {
 public:
  PrimePowerModulus(u64 p, unsigned e);

  u64 prime() const { return p_; }
  unsigned exponent() const { return e_; }
  const BigInt& value() const { return m_; }
  bool fits_word() const { return fits_; }
  /// Valid only when fits_word().
  u64 word() const { return word_; }

 private:
  u64 p_;
  unsigned e_;
  BigInt m_;
  bool fits_;
  u64 word_ = 0;
};

/// f(n) mod m. Requires m >= 2.
u64 eval_poly_mod(const Poly& f, u64 n, u64 m);

/// n! mod m for m >= 1.
u64 factorial_mod(u64 n, u64 m);

/// Streams (k, k! mod m) for k = 1..n, so callers can reuse partial products.
class FactorialModStream {
 public:
  struct Entry {
    u64 k;
    u64 residue;
  };

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Entry;
    using difference_type = std::ptrdiff_t;
    using reference = const Entry&;
    using pointer = const Entry*;

    iterator() = default;
    iterator(u64 k, u64 residue, u64 m) : cur_{k, residue}, m_(m) {}

    reference operator*() const { return cur_; }
    pointer operator->() const { return &cur_; }
    iterator& operator++() {
      ++cur_.k;
      cur_.residue = mulmod(cur_.residue, cur_.k % m_, m_);
      return *this;
    }
    iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.cur_.k == b.cur_.k; }

   private:
    Entry cur_{0, 0};
    u64 m_ = 1;
  };

  FactorialModStream(u64 n, u64 m);

  iterator begin() const { return iterator(1, 1 % m_, m_); }
  iterator end() const { return iterator(n_ + 1, 0, m_); }

 private:
  u64 n_;
  u64 m_;
};

/// ord_p(n!) by Legendre's formula.
u64 ord_p_factorial(u64 n, u64 p);

/// Result of a p-adic lifting: exact, or only known to be at least `value`.
struct Valuation {
  std::uint32_t value = 0;
  bool exact = true;

  static Valuation exactly(std::uint32_t v) { return {v, true}; }
  static Valuation at_least(std::uint32_t v) { return {v, false}; }
  friend bool operator==(const Valuation&, const Valuation&) = default;
};

inline constexpr unsigned kDefaultOrdCap = 64;

/// ord_p(n! + f(n)), lifting the modulus p^e with e = 1, 2, 4, ... up to `cap`.
/// Throws ValueIsZero when n! + f(n) == 0.
Valuation ord_nfact_plus_f(u64 n, u64 p, const Poly& f, unsigned cap = kDefaultOrdCap);

/// Batched lifting for one prime: ns must be ascending, every n < p, and
/// p | n! + f(n) for each n (sieve hits). One factorial pass per exponent.
std::vector<Valuation> ord_hits(u64 p, std::span<const u64> ns, const Poly& f,
                                unsigned cap = kDefaultOrdCap);

/// True when n! + f(n) == 0.
bool nfact_plus_f_is_zero(u64 n, const Poly& f);

/// Exhaustive search for violations of the n0 property of f:
/// f(n) * prod_{i=1..k}(n+i) - f(n+k) = 0, or f(n) == 0, or n! + f(n) <= 1.
struct Lemma1Check {
  bool ok = true;
  u64 n0 = 0;
  u64 n_checked = 0;
  u64 k_checked = 0;
  std::optional<u64> bad_n;
  std::optional<u64> bad_k;  // absent when the failure is f(n)=0 or n!+f(n)<=1
  std::string reason;
};

Lemma1Check check_lemma1(const Poly& f, u64 n0, u64 n_check = 10000, u64 k_check = 1000);

/// n0 for the polynomials where it is known in closed form (f = 1, f = -1).
std::optional<u64> default_n0(const Poly& f);

/// Default n0 if known, else the validated user value. Throws
/// PreconditionViolated when no value is available or validation fails.
u64 resolve_n0(const Poly& f, std::optional<u64> user_n0, u64 n_check = 10000, u64 k_check = 1000);

}  // namespace lpfact
