#pragma once

// Two-stage Chern character obstruction.  Stage 1 asks for Hodge classes Q_1..Q_g
// making c_k(v) = p_k^{-B,d}(Q) integral; stage 2 asks that some such choice also
// has integral Chern character ch_k(v) = p_k(c(v)) / k!, where p_k is the k-th
// power sum expressed through Newton's identities.

#include "brauer/djp.hpp"
#include "brauer/polynomial.hpp"

#include <optional>

namespace brauer {

// Universal polynomials between Chern classes and Chern character components up to
// a degree bound.  ch_of_c[k] uses variables c_1..c_n (variable k-1 is c_k);
// c_of_ch[k] uses ch_1..ch_n likewise.  Index 0 is unused.
class NewtonTransform {
public:
  explicit NewtonTransform(int n) : n_(n) {
    if (n < 1) throw Error("NewtonTransform: degree bound must be positive");
    const auto nv = static_cast<std::size_t>(n);
    auto var = [&](int k) { return RatPolynomial::variable(nv, static_cast<std::size_t>(k - 1), Rational(1)); };

    std::vector<RatPolynomial> p(n + 1, RatPolynomial(nv));
    ch_of_c_.assign(n + 1, RatPolynomial(nv));
    for (int k = 1; k <= n; ++k) {
      RatPolynomial s = var(k).scaled(Rational(k % 2 ? k : -k));
      for (int i = 1; i < k; ++i) {
        auto term = var(i) * p[k - i];
        s += i % 2 ? term : -term;
      }
      p[k] = s;
      ch_of_c_[k] = s.scaled(Rational(1) / Rational(factorial(k)));
    }

    std::vector<RatPolynomial> c(n + 1, RatPolynomial(nv));
    c_of_ch_.assign(n + 1, RatPolynomial(nv));
    c[0] = RatPolynomial::constant(nv, 1);
    for (int k = 1; k <= n; ++k) {
      RatPolynomial s(nv);
      for (int i = 1; i <= k; ++i) {
        auto term = c[k - i] * var(i).scaled(Rational(factorial(i)));
        s += i % 2 ? term : -term;
      }
      c[k] = s.scaled(Rational(1, k));
      c_of_ch_[k] = c[k];
    }
  }

  int degree() const { return n_; }
  const RatPolynomial &ch_of_c(int k) const { return ch_of_c_.at(k); }
  const RatPolynomial &c_of_ch(int k) const { return c_of_ch_.at(k); }

  // Substitutes ch_of_c into c_of_ch; equals c_k for every k when the transforms are inverse.
  RatPolynomial roundtrip(int k) const {
    std::vector<RatPolynomial> values(ch_of_c_.begin() + 1, ch_of_c_.end());
    return substitute(c_of_ch_.at(k), values, Rational(1));
  }

private:
  int n_;
  std::vector<RatPolynomial> ch_of_c_, c_of_ch_;
};

// Power sums p_1..p_n of classes c_1..c_n (c[0] unused) via Newton's identities.
template <class T, class Mul>
std::vector<T> newton_power_sums(const std::vector<T> &c, int n, const T &zero, Mul mul) {
  std::vector<T> p(n + 1, zero);
  for (int k = 1; k <= n; ++k) {
    T s = zero;
    for (int i = 1; i < k; ++i) {
      T term = mul(c[i], p[k - i]);
      if (i % 2) s += term;
      else s -= term;
    }
    T kc = c[k];
    for (int r = 1; r < k; ++r) kc += c[k];
    if (k % 2) s += kc;
    else s -= kc;
    p[k] = s;
  }
  return p;
}

struct HotchkissStageOne {
  IntegralitySystem system;
  std::optional<AffineLattice> family;
};

// Stage 1: B replaced by -B, unknowns Q_1..Q_g and degrees k = 1..g.
inline HotchkissStageOne hotchkiss_first_stage(const BrauerClassSpec &spec, std::int64_t d) {
  if (d < 1) throw Error("hotchkiss_first_stage: degree must be positive");
  HotchkissStageOne out;
  out.system = integrality_system(-spec.field(), d, 1, spec.genus(), spec.genus());
  out.family = solve_integrality(out.system.P, out.system.w);
  return out;
}

enum class HotchkissOutcome { Obstructed, Unobstructed, Inconclusive };

struct HotchkissResult {
  HotchkissOutcome outcome = HotchkissOutcome::Unobstructed;
  bool stage_one_empty = false;
  int failing_degree = 0;                    // degree k at which no residue survived
  std::vector<std::vector<Integer>> moduli;  // per degree k, per direction periods
  std::uint64_t evaluations = 0;
  std::optional<std::vector<Integer>> witness; // lattice parameters with integral ch
};

// c_k(v) along the stage-1 family as polynomials in the lattice parameters.
inline std::vector<FormPolynomial> chern_polynomials(const Context &ctx, const IntegralitySystem &sys,
                                                     const AffineLattice &family) {
  const std::size_t t = family.rank();
  auto maps = block_maps(sys, family);
  std::vector<FormPolynomial> c(sys.degrees + 1, FormPolynomial(t));
  for (int k = 1; k <= sys.degrees; ++k) {
    const auto &m = maps[k - 1];
    c[k] = FormPolynomial::constant(t, from_coordinates(ctx, 2 * k, m.constant));
    for (std::size_t j = 0; j < t; ++j) {
      auto dir = from_coordinates(ctx, 2 * k, m.directions[j]);
      if (!is_integral(dir)) throw Error("hotchkiss: family direction is not integral");
      c[k] += FormPolynomial::variable(t, j, dir);
    }
  }
  return c;
}

// ch_k(v) = p_k / k! as polynomials in the lattice parameters, k = 1..degrees.
inline std::vector<FormPolynomial> chern_character_polynomials(const std::vector<FormPolynomial> &c, std::size_t t) {
  const int n = static_cast<int>(c.size()) - 1;
  auto p = newton_power_sums(c, n, FormPolynomial(t),
                             [](const FormPolynomial &a, const FormPolynomial &b) { return a * b; });
  std::vector<FormPolynomial> ch(n + 1, FormPolynomial(t));
  for (int k = 1; k <= n; ++k) ch[k] = p[k].scaled(Rational(1) / Rational(factorial(k)));
  return ch;
}

// Per-direction period of integrality: f(u + q e_j) - f(u) is integral for every
// integer u once q is a multiple of every coefficient denominator of a monomial that
// involves u_j.
inline std::vector<Integer> direction_periods(const FormPolynomial &f) {
  std::vector<Integer> q(f.variables(), Integer(1));
  for (const auto &[e, coeff] : f.terms()) {
    Integer den = denominator(coeff);
    for (std::size_t j = 0; j < e.size(); ++j)
      if (e[j]) q[j] = lcm(q[j], den);
  }
  return q;
}

template <class Coeff> Coeff evaluate(const Polynomial<Coeff> &f, const std::vector<Integer> &u, Coeff zero) {
  Coeff out = std::move(zero);
  for (const auto &[e, c] : f.terms()) {
    Integer m = 1;
    for (std::size_t j = 0; j < e.size(); ++j) m *= pow(u[j], e[j]);
    out += c * Rational(m);
  }
  return out;
}

namespace detail {

inline ModForm to_mod_form(const MultiVector &v, std::uint64_t modulus) { return reduce_mod(v, modulus); }

// True when p_k(u) is divisible by k!, given integral c_i(u) = const_i + sum u_j D_ij.
inline bool chern_character_integral(const std::vector<MultiVector> &constant,
                                     const std::vector<std::vector<MultiVector>> &dirs, const std::vector<Integer> &u,
                                     int k) {
  const std::uint64_t modulus = factorial(k).get_ui();
  const auto &ctx = constant[1].context();
  std::vector<ModForm> c(k + 1, ModForm(ctx));
  for (int i = 1; i <= k; ++i) {
    MultiVector v = constant[i];
    for (std::size_t j = 0; j < u.size(); ++j)
      if (u[j] != 0) v += dirs[i][j] * Rational(u[j]);
    c[i] = to_mod_form(v, modulus);
  }
  auto p = newton_power_sums(c, k, ModForm(ctx), [](const ModForm &a, const ModForm &b) { return wedge(a, b); });
  return p[k].is_zero();
}

} // namespace detail

// Stage 2 over a nonempty stage-1 family.  Degrees are processed in order; the set of
// surviving residues for ch_1..ch_k is lifted to the periods of ch_{k+1} and filtered.
// More than `budget` evaluations makes the result inconclusive.
inline HotchkissResult hotchkiss_second_stage(const BrauerClassSpec &spec, const IntegralitySystem &sys,
                                              const AffineLattice &family, std::uint64_t budget) {
  const auto &ctx = spec.context();
  const std::size_t t = family.rank();
  HotchkissResult out;
  auto c = chern_polynomials(ctx, sys, family);
  auto ch = chern_character_polynomials(c, t);

  std::vector<MultiVector> constant(sys.degrees + 1, MultiVector(ctx));
  std::vector<std::vector<MultiVector>> dirs(sys.degrees + 1);
  {
    auto maps = block_maps(sys, family);
    for (int k = 1; k <= sys.degrees; ++k) {
      constant[k] = from_coordinates(ctx, 2 * k, maps[k - 1].constant);
      for (std::size_t j = 0; j < t; ++j) dirs[k].push_back(from_coordinates(ctx, 2 * k, maps[k - 1].directions[j]));
    }
  }

  std::vector<Integer> period(t, Integer(1));
  std::vector<std::vector<Integer>> survivors{std::vector<Integer>(t, Integer(0))};
  for (int k = 1; k <= sys.degrees; ++k) {
    auto qk = direction_periods(ch[k]);
    out.moduli.push_back(qk);
    std::vector<Integer> next(t), factor(t);
    Integer lifts = 1;
    for (std::size_t j = 0; j < t; ++j) {
      next[j] = lcm(period[j], qk[j]);
      factor[j] = next[j] / period[j];
      lifts *= factor[j];
    }
    if (Integer(static_cast<unsigned long>(out.evaluations)) + lifts * survivors.size() > Integer(static_cast<unsigned long>(budget))) {
      out.outcome = HotchkissOutcome::Inconclusive;
      return out;
    }
    std::vector<std::vector<Integer>> kept;
    for (const auto &s : survivors) {
      std::vector<Integer> step(t, Integer(0));
      for (;;) {
        std::vector<Integer> u(t);
        for (std::size_t j = 0; j < t; ++j) u[j] = s[j] + step[j] * period[j];
        ++out.evaluations;
        if (detail::chern_character_integral(constant, dirs, u, k)) kept.push_back(u);
        std::size_t j = 0;
        for (; j < t; ++j) {
          if (++step[j] < factor[j]) break;
          step[j] = 0;
        }
        if (j == t) break;
      }
    }
    survivors = std::move(kept);
    period = std::move(next);
    if (survivors.empty()) {
      out.outcome = HotchkissOutcome::Obstructed;
      out.failing_degree = k;
      return out;
    }
  }
  out.outcome = HotchkissOutcome::Unobstructed;
  out.witness = survivors.front();
  return out;
}

inline HotchkissResult hotchkiss_obstructed(const BrauerClassSpec &spec, std::int64_t d, std::uint64_t budget = 1u << 16) {
  auto stage = hotchkiss_first_stage(spec, d);
  if (!stage.family) {
    HotchkissResult out;
    out.outcome = HotchkissOutcome::Obstructed;
    out.stage_one_empty = true;
    return out;
  }
  return hotchkiss_second_stage(spec, stage.system, *stage.family, budget);
}

} // namespace brauer
