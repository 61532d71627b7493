#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace brauer {

using Integer = mpz_class;
using Rational = mpq_class;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Generalized binomial coefficient: top may be negative, zero when k < 0.
inline Integer binomial(const Integer &top, long k) {
  if (k < 0) return 0;
  Integer out;
  mpz_bin_ui(out.get_mpz_t(), top.get_mpz_t(), static_cast<unsigned long>(k));
  return out;
}

inline Integer binomial(long top, long k) { return binomial(Integer(top), k); }

inline Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

inline Integer gcd(const Integer &a, const Integer &b) {
  Integer out;
  mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

inline Integer lcm(const Integer &a, const Integer &b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

inline Integer pow(const Integer &base, unsigned long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

// Floor division, b != 0.
inline Integer floor_div(const Integer &a, const Integer &b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Nonnegative remainder modulo m > 0.
inline Integer mod(const Integer &a, const Integer &m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline int cmpabs(const Integer &a, const Integer &b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

inline bool is_integer(const Rational &q) { return q.get_den() == 1; }

inline bool divides(const Integer &d, const Integer &a) {
  if (d == 0) return a == 0;
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

// p-adic valuation of a nonzero integer.
inline long valuation(const Integer &a, unsigned long p) {
  if (a == 0) throw Error("valuation of zero");
  Integer x = abs(a);
  long v = 0;
  while (mpz_divisible_ui_p(x.get_mpz_t(), p)) {
    mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), p);
    ++v;
  }
  return v;
}

inline long valuation(const Rational &q, unsigned long p) {
  return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

struct PrimePower {
  std::int64_t prime;
  int exponent;
  std::int64_t value;
};

inline std::vector<PrimePower> factor(std::int64_t n) {
  if (n < 1) throw Error("factor: n must be positive");
  std::vector<PrimePower> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    PrimePower pp{p, 0, 1};
    while (n % p == 0) {
      n /= p;
      ++pp.exponent;
      pp.value *= p;
    }
    out.push_back(pp);
  }
  if (n > 1) out.push_back({n, 1, n});
  return out;
}

inline std::int64_t to_int64(const Integer &a) {
  if (!a.fits_slong_p()) throw Error("integer overflow: " + a.get_str());
  return a.get_si();
}

inline std::int64_t ipow(std::int64_t base, int e) {
  Integer r = pow(Integer(base), static_cast<unsigned long>(e));
  return to_int64(r);
}

// Modular inverse of a modulo m (gcd(a, m) = 1 required).
inline std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  Integer out;
  if (!mpz_invert(out.get_mpz_t(), Integer(a).get_mpz_t(), Integer(m).get_mpz_t()))
    throw Error("inverse_mod: not invertible");
  return to_int64(mod(out, Integer(m)));
}

} // namespace brauer
