#pragma once

// A topologically trivial Brauer class on a very general principally polarized
// abelian g-fold, given by an integral 2-form b and its period n (B = b/n).

#include "brauer/exterior.hpp"

#include <cstdint>
#include <numeric>
#include <vector>

namespace brauer {

class BrauerClassSpec {
public:
  // Reduces b modulo n and normalizes n to the actual period of the class.  Since
  // theta spans the integral Hodge classes in degree 2, b and b + k*theta define
  // the same class; the period is n / gcd(n, content(b - b_{omega_1} theta)).
  BrauerClassSpec(const MultiVector &b, std::int64_t n) : ctx_(b.context()) {
    if (!ctx_) throw Error("BrauerClassSpec: form has no algebra context");
    if (n < 1) throw Error("BrauerClassSpec: period must be positive");
    if (!b.is_homogeneous(2)) throw Error("BrauerClassSpec: b must be a 2-form");
    if (!is_integral(b)) throw Error("BrauerClassSpec: b must be integral");
    coords_ = reduced_coordinates(b, n);
    n_ = n;
    const std::int64_t w1 = coords_[ctx_->index_of(AlgebraContext::omega(1))];
    auto shifted = shift_by_theta(coords_, n, n - w1);
    std::int64_t h = n;
    for (auto c : shifted) h = std::gcd(h, c);
    if (h == n) {
      coords_.assign(coords_.size(), 0);
      n_ = 1;
    } else if (h > 1) {
      for (auto &c : shifted) c /= h;
      coords_ = std::move(shifted);
      n_ = n / h;
    }
  }

  static BrauerClassSpec from_coordinates(const Context &ctx, const std::vector<std::int64_t> &coords,
                                          std::int64_t n) {
    std::vector<Rational> q(coords.begin(), coords.end());
    return BrauerClassSpec(brauer::from_coordinates(ctx, 2, q), n);
  }

  const Context &context() const { return ctx_; }
  int genus() const { return ctx_->genus(); }
  std::int64_t period() const { return n_; }
  // Coordinates of b in [0, n) in the colexicographic 2-form basis.
  const std::vector<std::int64_t> &coordinates() const { return coords_; }

  MultiVector form() const {
    return brauer::from_coordinates(ctx_, 2, std::vector<Rational>(coords_.begin(), coords_.end()));
  }
  MultiVector field() const { return form() * Rational(1, n_); }
  bool trivial() const { return n_ == 1; }

  static std::vector<std::int64_t> reduced_coordinates(const MultiVector &b, std::int64_t n) {
    const auto &ctx = b.algebra();
    std::vector<std::int64_t> out(ctx.rank(2), 0);
    const Integer nz(static_cast<long>(n));
    for (const auto &t : b.terms())
      out[ctx.index_of(t.mask)] = to_int64(mod(t.coeff.get_num(), nz));
    return out;
  }

  // Coordinates of b + k*theta reduced into [0, n).
  std::vector<std::int64_t> shifted(std::int64_t k) const { return shift_by_theta(coords_, n_, k); }

  friend bool operator==(const BrauerClassSpec &a, const BrauerClassSpec &b) {
    return a.genus() == b.genus() && a.n_ == b.n_ && a.coords_ == b.coords_;
  }

private:
  std::vector<std::int64_t> shift_by_theta(std::vector<std::int64_t> v, std::int64_t n, std::int64_t k) const {
    k = ((k % n) + n) % n;
    for (int i = 1; i <= ctx_->genus(); ++i) {
      auto &c = v[ctx_->index_of(AlgebraContext::omega(i))];
      c = (c + k) % n;
    }
    return v;
  }

  Context ctx_;
  std::vector<std::int64_t> coords_;
  std::int64_t n_ = 1;
};

// Rational Hodge classes c_j = a_j * theta^j / j!, j = 1..m, together with c_0.
struct HodgeCoordinates {
  std::int64_t d = 1;
  Integer c0 = 1;
  std::vector<Rational> a; // a[j-1] is the coefficient of theta^j/j!

  std::size_t m() const { return a.size(); }
};

// The integral Hodge generators theta^j/j!, j = 0..g.
inline std::vector<MultiVector> hodge_generators(const Context &ctx) {
  std::vector<MultiVector> out;
  for (int j = 0; j <= ctx->genus(); ++j) out.push_back(theta_power_integral(ctx, j));
  return out;
}

// Powers B^0..B^g of a 2-form.
inline std::vector<MultiVector> powers_of(const MultiVector &b, int g) {
  std::vector<MultiVector> out{unit(b.context())};
  for (int i = 1; i <= g; ++i) out.push_back(wedge(out.back(), b));
  return out;
}

// p_i^{B,d}(c_0, ..., c_i) = C(d,i) B^i c_0 + sum_j C(d-j, i-j) B^{i-j} c_j, with
// generalized binomials.  Classes c_j with j > m are taken to be zero.
inline MultiVector p_poly(const MultiVector &field, std::int64_t d, int i, const HodgeCoordinates &coords) {
  const auto &ctx = field.context();
  if (i < 0) throw Error("p_poly: negative degree");
  if (i > ctx->genus()) return MultiVector(ctx);
  auto bp = powers_of(field, i);
  MultiVector out = bp[i] * Rational(binomial(Integer(static_cast<long>(d)), i) * coords.c0);
  for (int j = 1; j <= i && j <= static_cast<int>(coords.m()); ++j) {
    Integer coeff = binomial(Integer(static_cast<long>(d - j)), i - j);
    if (coeff == 0 || sgn(coords.a[j - 1]) == 0) continue;
    out += wedge(bp[i - j], theta_power_integral(ctx, j)) * Rational(coeff * coords.a[j - 1]);
  }
  return out;
}

inline MultiVector p_poly(const BrauerClassSpec &spec, std::int64_t d, int i, const HodgeCoordinates &coords) {
  return p_poly(spec.field(), d, i, coords);
}

namespace detail {

// Alternating 2g x 2g matrix of a 2-form with entries reduced modulo q.
inline std::vector<std::vector<std::int64_t>> alternating_matrix(const Context &ctx,
                                                                 const std::vector<std::int64_t> &coords,
                                                                 std::int64_t q) {
  const int n = ctx->one_forms();
  std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t idx = 0; idx < coords.size(); ++idx) {
    Mask m = ctx->unrank(2, idx);
    int i = std::countr_zero(m), j = 31 - std::countl_zero(m);
    std::int64_t c = ((coords[idx] % q) + q) % q;
    a[i][j] = c;
    a[j][i] = (q - c) % q;
  }
  return a;
}

inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t q) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % q);
}

// Number of hyperbolic planes with nonzero scale in the canonical form of an
// alternating matrix over Z/p^e.
inline int hyperbolic_rank(std::vector<std::vector<std::int64_t>> a, std::int64_t p, std::int64_t q) {
  const std::size_t n = a.size();
  auto val = [&](std::int64_t x) {
    int v = 0;
    if (x == 0) return 1 << 30;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    return v;
  };
  // Symplectic congruence: add c * (basis vector src) to (basis vector dst).
  auto add = [&](std::size_t dst, std::size_t src, std::int64_t c) {
    for (std::size_t k = 0; k < n; ++k) a[dst][k] = (a[dst][k] + mulmod(c, a[src][k], q)) % q;
    for (std::size_t k = 0; k < n; ++k) a[k][dst] = (a[k][dst] + mulmod(c, a[k][src], q)) % q;
  };
  auto swap = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    for (auto &row : a) std::swap(row[i], row[j]);
  };
  int planes = 0;
  for (std::size_t t = 0; t + 1 < n; t += 2) {
    int best = 1 << 30;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = t; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (int v = val(a[i][j]); v < best) {
          best = v;
          bi = i;
          bj = j;
        }
    if (best == (1 << 30)) break;
    swap(t, bi);
    if (bj == t) bj = bi;
    swap(t + 1, bj);
    ++planes;
    const std::int64_t pivot = a[t][t + 1];
    std::int64_t pv = 1;
    for (int k = 0; k < best; ++k) pv *= p;
    const std::int64_t unit_inv = inverse_mod(pivot / pv, q);
    for (std::size_t k = t + 2; k < n; ++k) {
      // a[t][k] and a[t+1][k] are divisible by p^best.
      if (a[t][k]) add(k, t + 1, (q - mulmod(a[t][k] / pv, unit_inv, q)) % q);
      if (a[t + 1][k]) add(k, t, mulmod(a[t + 1][k] / pv, unit_inv, q));
    }
  }
  return planes;
}

} // namespace detail

// Minimal number of symbols u ^ v summing to b modulo n (0 when n = 1).
inline int symbol_length(const Context &ctx, const std::vector<std::int64_t> &coords, std::int64_t n) {
  if (n < 1) throw Error("symbol_length: modulus must be positive");
  int best = 0;
  for (const auto &pp : factor(n))
    best = std::max(best, detail::hyperbolic_rank(detail::alternating_matrix(ctx, coords, pp.value), pp.prime,
                                                  pp.value));
  return best;
}

inline int symbol_length(const MultiVector &b, std::int64_t n) {
  return symbol_length(b.context(), BrauerClassSpec::reduced_coordinates(b, n), n);
}

inline int symbol_length(const BrauerClassSpec &spec) {
  return symbol_length(spec.context(), spec.coordinates(), spec.period());
}

// Least symbol length over the representatives b + k*theta of the class.
inline int class_symbol_length(const BrauerClassSpec &spec) {
  int best = symbol_length(spec);
  for (std::int64_t k = 1; k < spec.period(); ++k)
    best = std::min(best, symbol_length(spec.context(), spec.shifted(k), spec.period()));
  return best;
}

// CRT components (b_q, q) for the maximal prime powers q | n:  b_q = (n/q)^{-1} b mod q,
// so that b = sum_q b_q (n/q) mod n.
inline std::vector<BrauerClassSpec> primary_decomposition(const BrauerClassSpec &spec) {
  std::vector<BrauerClassSpec> out;
  const std::int64_t n = spec.period();
  if (n == 1) return out;
  for (const auto &pp : factor(n)) {
    const std::int64_t q = pp.value, cofactor = n / q;
    const std::int64_t inv = q == 1 ? 0 : inverse_mod(cofactor % q, q);
    std::vector<std::int64_t> c = spec.coordinates();
    for (auto &x : c) x = detail::mulmod(x % q, inv, q);
    out.push_back(BrauerClassSpec::from_coordinates(spec.context(), c, q));
  }
  return out;
}

inline std::size_t hamming_weight(const BrauerClassSpec &spec) {
  return static_cast<std::size_t>(
      std::count_if(spec.coordinates().begin(), spec.coordinates().end(), [](std::int64_t c) { return c != 0; }));
}

inline std::vector<std::int64_t> canonical_coordinates(const BrauerClassSpec &spec) {
  auto best = spec.coordinates();
  for (std::int64_t k = 1; k < spec.period(); ++k) best = std::min(best, spec.shifted(k));
  return best;
}

inline BrauerClassSpec canonical_representative(const BrauerClassSpec &spec) {
  return BrauerClassSpec::from_coordinates(spec.context(), canonical_coordinates(spec), spec.period());
}

} // namespace brauer
