#pragma once

// Sparse multivariate polynomials over a coefficient ring.  Coefficients may be
// Integer, Rational or MultiVector (where the product is the wedge product).

#include "brauer/exterior.hpp"

#include <map>
#include <vector>

namespace brauer {

inline bool coeff_is_zero(const Integer &c) { return sgn(c) == 0; }
inline bool coeff_is_zero(const Rational &c) { return sgn(c) == 0; }
inline bool coeff_is_zero(const MultiVector &c) { return c.is_zero(); }

inline Integer coeff_mul(const Integer &a, const Integer &b) { return a * b; }
inline Rational coeff_mul(const Rational &a, const Rational &b) { return a * b; }
inline MultiVector coeff_mul(const MultiVector &a, const MultiVector &b) { return wedge(a, b); }

template <class Coeff> class Polynomial {
public:
  using Exponents = std::vector<unsigned>;

  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, Coeff c) {
    Polynomial p(nvars);
    p.add_term(Exponents(nvars, 0), std::move(c));
    return p;
  }

  static Polynomial variable(std::size_t nvars, std::size_t i, Coeff one) {
    Exponents e(nvars, 0);
    e.at(i) = 1;
    Polynomial p(nvars);
    p.add_term(std::move(e), std::move(one));
    return p;
  }

  std::size_t variables() const { return nvars_; }
  const std::map<Exponents, Coeff> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(Exponents e, Coeff c) {
    if (e.size() != nvars_) throw Error("Polynomial: exponent length mismatch");
    if (coeff_is_zero(c)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(std::move(e), std::move(c));
      return;
    }
    it->second = it->second + c;
    if (coeff_is_zero(it->second)) terms_.erase(it);
  }

  const Coeff *coefficient(const Exponents &e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? nullptr : &it->second;
  }

  // Total degree, with variable i weighted by weights[i] (all ones by default).
  unsigned degree(const std::vector<unsigned> &weights = {}) const {
    unsigned best = 0;
    for (const auto &[e, c] : terms_) {
      unsigned d = 0;
      for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * (weights.empty() ? 1u : weights[i]);
      best = std::max(best, d);
    }
    return best;
  }

  Polynomial &operator+=(const Polynomial &o) {
    check(o);
    for (const auto &[e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial &operator-=(const Polynomial &o) {
    check(o);
    for (const auto &[e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial operator-() const {
    Polynomial out(nvars_);
    for (const auto &[e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial &b) { return a -= b; }

  friend Polynomial operator*(const Polynomial &a, const Polynomial &b) {
    a.check(b);
    Polynomial out(a.nvars_);
    for (const auto &[ea, ca] : a.terms_) {
      for (const auto &[eb, cb] : b.terms_) {
        Exponents e(ea);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        out.add_term(std::move(e), coeff_mul(ca, cb));
      }
    }
    return out;
  }

  // Multiplies every coefficient by a scalar s (Coeff * S must yield Coeff).
  template <class S> Polynomial scaled(const S &s) const {
    Polynomial out(nvars_);
    for (const auto &[e, c] : terms_) out.add_term(e, Coeff(c * s));
    return out;
  }

  Polynomial pow(unsigned k, const Coeff &one) const {
    Polynomial result = constant(nvars_, one), base = *this;
    while (k) {
      if (k & 1u) result = result * base;
      k >>= 1u;
      if (k) base = base * base;
    }
    return result;
  }

  friend bool operator==(const Polynomial &a, const Polynomial &b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

private:
  void check(const Polynomial &o) const {
    if (o.nvars_ != nvars_) throw Error("Polynomial: variable count mismatch");
  }

  std::size_t nvars_;
  std::map<Exponents, Coeff> terms_;
};

using IntPolynomial = Polynomial<Integer>;
using RatPolynomial = Polynomial<Rational>;
using FormPolynomial = Polynomial<MultiVector>;

// Coefficients reduced into [0, p), zero terms dropped.
inline IntPolynomial reduce_mod(const IntPolynomial &f, const Integer &p) {
  IntPolynomial out(f.variables());
  for (const auto &[e, c] : f.terms()) out.add_term(e, mod(c, p));
  return out;
}

// Elementary symmetric polynomial e_k in n variables.
inline IntPolynomial elementary_symmetric(std::size_t n, std::size_t k) {
  IntPolynomial out(n);
  if (k > n) return out;
  std::vector<unsigned> e(n, 0);
  // Enumerate k-subsets as bit patterns of the exponent vector.
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    std::fill(e.begin(), e.end(), 0u);
    for (auto i : idx) e[i] = 1;
    out.add_term(e, 1);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

// Power sum t_1^k + ... + t_n^k.
inline IntPolynomial power_sum(std::size_t n, unsigned k) {
  IntPolynomial out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<unsigned> e(n, 0);
    e[i] = k;
    out.add_term(e, 1);
  }
  return out;
}

// Part of f of total degree exactly d.
template <class Coeff> Polynomial<Coeff> homogeneous_part(const Polynomial<Coeff> &f, unsigned d) {
  Polynomial<Coeff> out(f.variables());
  for (const auto &[e, c] : f.terms()) {
    unsigned s = 0;
    for (auto x : e) s += x;
    if (s == d) out.add_term(e, c);
  }
  return out;
}

// Substitutes polynomial values[i] for variable i.
template <class Coeff>
Polynomial<Coeff> substitute(const Polynomial<Coeff> &f, const std::vector<Polynomial<Coeff>> &values, const Coeff &one) {
  if (values.size() != f.variables()) throw Error("substitute: wrong number of values");
  if (values.empty()) return f;
  const std::size_t n = values.front().variables();
  Polynomial<Coeff> out(n);
  std::vector<std::map<unsigned, Polynomial<Coeff>>> powers(values.size());
  auto power_of = [&](std::size_t i, unsigned k) -> const Polynomial<Coeff> & {
    auto it = powers[i].find(k);
    if (it == powers[i].end()) it = powers[i].emplace(k, values[i].pow(k, one)).first;
    return it->second;
  };
  for (const auto &[e, c] : f.terms()) {
    Polynomial<Coeff> term = Polynomial<Coeff>::constant(n, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) term = term * power_of(i, e[i]);
    out += term;
  }
  return out;
}

// Rewrites a symmetric polynomial in n variables as a polynomial in e_1..e_n, with
// coefficients reduced modulo p (p = 0 keeps integers).  Throws if f is not symmetric.
inline IntPolynomial to_elementary(IntPolynomial f, std::size_t n, const Integer &p = 0) {
  if (f.variables() != n) throw Error("to_elementary: variable count mismatch");
  if (p != 0) f = reduce_mod(f, p);
  std::vector<IntPolynomial> e;
  for (std::size_t k = 1; k <= n; ++k) e.push_back(elementary_symmetric(n, k));
  IntPolynomial out(n);
  while (!f.is_zero()) {
    auto it = std::prev(f.terms().end()); // lexicographically leading monomial
    const auto alpha = it->first;
    const Integer c = it->second;
    std::vector<unsigned> beta(n, 0);
    IntPolynomial prod = IntPolynomial::constant(n, c);
    for (std::size_t k = 0; k < n; ++k) {
      unsigned next = k + 1 < n ? alpha[k + 1] : 0;
      if (alpha[k] < next) throw Error("to_elementary: polynomial is not symmetric");
      beta[k] = alpha[k] - next;
      if (beta[k]) prod = prod * e[k].pow(beta[k], 1);
    }
    out.add_term(beta, c);
    f -= prod;
    if (p != 0) f = reduce_mod(f, p);
  }
  return out;
}

} // namespace brauer
