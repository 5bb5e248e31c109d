#pragma once

#include <cstdint>

namespace lpfact {

using u64 = std::uint64_t;
__extension__ using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 addmod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  if (s < a || s >= m) s -= m;
  return s;
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Montgomery arithmetic modulo an odd 64-bit modulus with R = 2^64.
///
/// Values handed to mul/add must already be in Montgomery form (a*R mod N).
/// The reduction subtracts high halves instead of adding, so it is valid for
/// every odd modulus below 2^64 without a carry word.
class Montgomery64 {
 public:
  explicit Montgomery64(u64 modulus) : n_(modulus) {
    u64 inv = modulus;  // correct to 3 bits for odd modulus
    for (int i = 0; i < 5; ++i) inv *= 2 - modulus * inv;
    inv_ = inv;
    r1_ = static_cast<u64>(-modulus) % modulus;
    r2_ = static_cast<u64>(static_cast<u128>(r1_) * r1_ % modulus);
  }

  u64 modulus() const { return n_; }
  u64 one() const { return r1_; }

  u64 reduce(u128 t) const {
    const u64 m = static_cast<u64>(t) * inv_;
    const u64 mn_hi = static_cast<u64>((static_cast<u128>(m) * n_) >> 64);
    const u64 t_hi = static_cast<u64>(t >> 64);
    u64 r = t_hi - mn_hi;
    if (t_hi < mn_hi) r += n_;
    return r;
  }

  u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }
  u64 add(u64 a, u64 b) const { return addmod(a, b, n_); }
  u64 to(u64 a) const { return mul(a % n_, r2_); }
  u64 from(u64 a) const { return reduce(a); }

 private:
  u64 n_;
  u64 inv_;
  u64 r1_;
  u64 r2_;
};

}  // namespace lpfact
