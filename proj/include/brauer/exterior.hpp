#pragma once

// Exterior algebra over the integers on 2g generators x_1, y_1, ..., x_g, y_g,
// the cohomology ring of a complex abelian g-fold.  Basis k-forms are k-subsets
// of generator positions stored as bit masks: bit 2(i-1) is x_i, bit 2i-1 is
// y_i.  Masks of a fixed popcount in increasing numeric order are exactly the
// colexicographic order, which fixes every coordinate layout in the library.

#include "brauer/arith.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace brauer {

using Mask = std::uint32_t;

class AlgebraContext {
public:
  static constexpr int max_genus = 15;

  explicit AlgebraContext(int g) : g_(g) {
    if (g < 1 || g > max_genus)
      throw Error("genus must lie in [1, " + std::to_string(max_genus) + "]");
    const int n = 2 * g;
    table_.assign(static_cast<std::size_t>(n + 1) * (n + 2), 0);
    big_.assign(table_.size(), Integer(0));
    for (int a = 0; a <= n; ++a) {
      for (int b = 0; b <= a; ++b) {
        Integer c = brauer::binomial(a, b);
        big_[slot(a, b)] = c;
        table_[slot(a, b)] = c.get_ui();
      }
    }
  }

  int genus() const { return g_; }
  int one_forms() const { return 2 * g_; }

  // C(a, b) for 0 <= a <= 2g, zero outside the triangle.
  std::uint64_t choose(int a, int b) const {
    if (a < 0 || b < 0 || b > a || a > 2 * g_) return 0;
    return table_[slot(a, b)];
  }
  const Integer &choose_exact(int a, int b) const {
    static const Integer zero{0};
    if (a < 0 || b < 0 || b > a || a > 2 * g_) return zero;
    return big_[slot(a, b)];
  }

  // Rank of the degree-k piece: C(2g, k).
  std::size_t rank(int k) const { return choose(2 * g_, k); }

  std::size_t index_of(Mask m) const {
    std::size_t r = 0;
    int i = 0;
    while (m) {
      int b = std::countr_zero(m);
      r += choose(b, i + 1);
      m &= m - 1;
      ++i;
    }
    return r;
  }

  Mask unrank(int k, std::size_t idx) const {
    Mask m = 0;
    for (int i = k; i >= 1; --i) {
      int b = i - 1;
      while (choose(b + 1, i) <= idx) ++b;
      idx -= choose(b, i);
      m |= Mask{1} << b;
    }
    return m;
  }

  // All basis k-forms in colexicographic order.
  std::vector<Mask> basis(int k) const {
    std::vector<Mask> out;
    if (k < 0 || k > 2 * g_) return out;
    out.reserve(rank(k));
    if (k == 0) {
      out.push_back(0);
      return out;
    }
    const std::uint64_t limit = std::uint64_t{1} << (2 * g_);
    std::uint64_t m = (std::uint64_t{1} << k) - 1;
    while (m < limit) {
      out.push_back(static_cast<Mask>(m));
      std::uint64_t c = m & (~m + 1);
      std::uint64_t r = m + c;
      m = (((r ^ m) >> 2) / c) | r;
    }
    return out;
  }

  static Mask x(int i) { return Mask{1} << (2 * (i - 1)); }
  static Mask y(int i) { return Mask{1} << (2 * i - 1); }
  static Mask omega(int i) { return x(i) | y(i); }

private:
  std::size_t slot(int a, int b) const {
    return static_cast<std::size_t>(a) * (2 * g_ + 2) + b;
  }

  int g_;
  std::vector<std::uint64_t> table_;
  std::vector<Integer> big_;
};

using Context = std::shared_ptr<const AlgebraContext>;

inline Context make_context(int g) { return std::make_shared<const AlgebraContext>(g); }

// Sign of e_a ^ e_b for disjoint masks.
inline int wedge_sign(Mask a, Mask b) {
  int inversions = 0;
  const std::uint64_t wide = a;
  while (b) {
    int t = std::countr_zero(b);
    inversions += std::popcount(wide >> (t + 1));
    b &= b - 1;
  }
  return (inversions & 1) ? -1 : 1;
}

// Element of Z/m with the modulus carried along.
struct Residue {
  std::uint64_t value = 0;
  std::uint64_t modulus = 1;

  Residue() = default;
  Residue(std::int64_t v, std::uint64_t m) : modulus(m) {
    auto mm = static_cast<std::int64_t>(m);
    value = static_cast<std::uint64_t>(((v % mm) + mm) % mm);
  }

  friend Residue operator+(Residue a, Residue b) {
    a.value = (a.value + b.value) % a.modulus;
    return a;
  }
  friend Residue operator-(Residue a, Residue b) {
    a.value = (a.value + a.modulus - b.value) % a.modulus;
    return a;
  }
  friend Residue operator*(Residue a, Residue b) {
    a.value = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a.value) * b.value) % a.modulus);
    return a;
  }
  Residue operator-() const {
    Residue r = *this;
    r.value = (modulus - value) % modulus;
    return r;
  }
  friend bool operator==(const Residue &, const Residue &) = default;
};

inline bool scalar_is_zero(const Rational &q) { return sgn(q) == 0; }
inline bool scalar_is_zero(const Integer &q) { return sgn(q) == 0; }
inline bool scalar_is_zero(const Residue &r) { return r.value == 0; }

// Sparse element of the exterior algebra with coefficients in Scalar.
template <class Scalar> class BasicForm {
public:
  struct Term {
    Mask mask;
    Scalar coeff;
    friend bool operator==(const Term &, const Term &) = default;
  };

  BasicForm() = default;
  explicit BasicForm(Context ctx) : ctx_(std::move(ctx)) {}
  BasicForm(Context ctx, std::vector<Term> terms) : ctx_(std::move(ctx)), terms_(std::move(terms)) {
    normalize();
  }

  static BasicForm monomial(Context ctx, Mask m, Scalar c) {
    return BasicForm(std::move(ctx), {Term{m, std::move(c)}});
  }

  const Context &context() const { return ctx_; }
  const AlgebraContext &algebra() const {
    if (!ctx_) throw Error("form has no algebra context");
    return *ctx_;
  }
  int genus() const { return algebra().genus(); }
  const std::vector<Term> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  const Scalar *find(Mask m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term &t, Mask v) { return t.mask < v; });
    if (it == terms_.end() || it->mask != m) return nullptr;
    return &it->coeff;
  }

  // True when every term has popcount k (the zero form is homogeneous of every degree).
  bool is_homogeneous(int k) const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [k](const Term &t) { return std::popcount(t.mask) == k; });
  }

  bool has_even_degrees() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const Term &t) { return std::popcount(t.mask) % 2 == 0; });
  }

  BasicForm part(int k) const {
    BasicForm out(ctx_);
    for (const auto &t : terms_)
      if (std::popcount(t.mask) == k) out.terms_.push_back(t);
    return out;
  }

  BasicForm &operator+=(const BasicForm &o) {
    adopt(o);
    std::vector<Term> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin(), b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
      if (b == o.terms_.end() || (a != terms_.end() && a->mask < b->mask)) {
        merged.push_back(std::move(*a++));
      } else if (a == terms_.end() || b->mask < a->mask) {
        merged.push_back(*b++);
      } else {
        Scalar c = a->coeff + b->coeff;
        if (!scalar_is_zero(c)) merged.push_back(Term{a->mask, std::move(c)});
        ++a;
        ++b;
      }
    }
    terms_ = std::move(merged);
    return *this;
  }
  BasicForm &operator-=(const BasicForm &o) { return *this += -o; }

  BasicForm operator-() const {
    BasicForm out = *this;
    for (auto &t : out.terms_) t.coeff = -t.coeff;
    return out;
  }

  BasicForm &operator*=(const Scalar &s) {
    for (auto &t : terms_) t.coeff = t.coeff * s;
    std::erase_if(terms_, [](const Term &t) { return scalar_is_zero(t.coeff); });
    return *this;
  }

  friend BasicForm operator+(BasicForm a, const BasicForm &b) { return a += b; }
  friend BasicForm operator-(BasicForm a, const BasicForm &b) { return a -= b; }
  friend BasicForm operator*(BasicForm a, const Scalar &s) { return a *= s; }
  friend BasicForm operator*(const Scalar &s, BasicForm a) { return a *= s; }

  friend bool operator==(const BasicForm &a, const BasicForm &b) {
    if (a.ctx_ && b.ctx_ && a.ctx_->genus() != b.ctx_->genus()) return false;
    return a.terms_ == b.terms_;
  }

  void check_same_context(const BasicForm &o) const {
    if (!ctx_ || !o.ctx_) throw Error("form has no algebra context");
    if (ctx_ != o.ctx_ && ctx_->genus() != o.ctx_->genus())
      throw Error("algebra context mismatch");
  }

  // Builds from unsorted terms; duplicate masks are summed.
  void normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term &a, const Term &b) { return a.mask < b.mask; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto &t : terms_) {
      if (!out.empty() && out.back().mask == t.mask)
        out.back().coeff = out.back().coeff + t.coeff;
      else
        out.push_back(std::move(t));
    }
    std::erase_if(out, [](const Term &t) { return scalar_is_zero(t.coeff); });
    terms_ = std::move(out);
  }

private:
  void adopt(const BasicForm &o) {
    if (!ctx_) {
      ctx_ = o.ctx_;
      return;
    }
    if (o.ctx_) check_same_context(o);
  }

  Context ctx_;
  std::vector<Term> terms_;
};

using MultiVector = BasicForm<Rational>;
using ModForm = BasicForm<Residue>;

template <class Scalar>
BasicForm<Scalar> wedge(const BasicForm<Scalar> &u, const BasicForm<Scalar> &v) {
  u.check_same_context(v);
  std::vector<typename BasicForm<Scalar>::Term> out;
  out.reserve(u.size() * v.size());
  for (const auto &a : u.terms()) {
    for (const auto &b : v.terms()) {
      if (a.mask & b.mask) continue;
      Scalar c = a.coeff * b.coeff;
      if (wedge_sign(a.mask, b.mask) < 0) c = -c;
      out.push_back({a.mask | b.mask, std::move(c)});
    }
  }
  return BasicForm<Scalar>(u.context(), std::move(out));
}

inline MultiVector unit(const Context &ctx, Rational c = 1) {
  return MultiVector::monomial(ctx, 0, std::move(c));
}

inline MultiVector generator_x(const Context &ctx, int i) {
  return MultiVector::monomial(ctx, AlgebraContext::x(i), 1);
}
inline MultiVector generator_y(const Context &ctx, int i) {
  return MultiVector::monomial(ctx, AlgebraContext::y(i), 1);
}

// e-fold wedge power of a form with only even-degree terms.
template <class Scalar> BasicForm<Scalar> power(const BasicForm<Scalar> &v, unsigned e) {
  if (!v.has_even_degrees()) throw Error("power: form must have even degrees only");
  BasicForm<Scalar> result(v.context());
  if constexpr (std::is_same_v<Scalar, Rational>) {
    result = unit(v.context());
  } else {
    if (e == 0) throw Error("power: zeroth power needs a unit scalar");
    result = v;
    --e;
  }
  BasicForm<Scalar> base = v;
  while (e) {
    if (e & 1u) result = wedge(result, base);
    e >>= 1u;
    if (e) base = wedge(base, base);
  }
  return result;
}

inline MultiVector theta(const Context &ctx) {
  std::vector<MultiVector::Term> terms;
  for (int i = 1; i <= ctx->genus(); ++i) terms.push_back({AlgebraContext::omega(i), Rational(1)});
  return MultiVector(ctx, std::move(terms));
}

// theta^k / k!, the sum of all products of k distinct omega_i.
inline MultiVector theta_power_integral(const Context &ctx, int k) {
  const int g = ctx->genus();
  if (k < 0) throw Error("theta_power_integral: negative degree");
  if (k > g) return MultiVector(ctx);
  std::vector<MultiVector::Term> terms;
  for (std::uint32_t s = 0; s < (1u << g); ++s) {
    if (std::popcount(s) != k) continue;
    Mask m = 0;
    for (int i = 0; i < g; ++i)
      if (s >> i & 1u) m |= AlgebraContext::omega(i + 1);
    terms.push_back({m, Rational(1)});
  }
  return MultiVector(ctx, std::move(terms));
}

// Coordinates of the degree-k part in the colexicographic basis.
inline std::vector<Rational> coordinates(const MultiVector &v, int k) {
  const auto &ctx = v.algebra();
  std::vector<Rational> out(ctx.rank(k), Rational(0));
  for (const auto &t : v.terms())
    if (std::popcount(t.mask) == k) out[ctx.index_of(t.mask)] = t.coeff;
  return out;
}

inline MultiVector from_coordinates(const Context &ctx, int k, const std::vector<Rational> &coords) {
  if (coords.size() != ctx->rank(k)) throw Error("from_coordinates: length mismatch");
  std::vector<MultiVector::Term> terms;
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (sgn(coords[i]) != 0) terms.push_back({ctx->unrank(k, i), coords[i]});
  return MultiVector(ctx, std::move(terms));
}

inline bool is_integral(const MultiVector &v) {
  return std::all_of(v.terms().begin(), v.terms().end(),
                     [](const auto &t) { return is_integer(t.coeff); });
}

// Least common denominator of all coefficients.
inline Integer denominator(const MultiVector &v) {
  Integer d = 1;
  for (const auto &t : v.terms()) d = lcm(d, t.coeff.get_den());
  return d;
}

// gcd of all coefficients of an integral form (0 for the zero form).
inline Integer content(const MultiVector &v) {
  Integer c = 0;
  for (const auto &t : v.terms()) c = gcd(c, t.coeff.get_num());
  return c;
}

inline ModForm reduce_mod(const MultiVector &v, std::uint64_t p) {
  if (p < 1) throw Error("reduce_mod: modulus must be positive");
  std::vector<ModForm::Term> terms;
  terms.reserve(v.size());
  const Integer m(static_cast<unsigned long>(p));
  for (const auto &t : v.terms()) {
    if (!is_integer(t.coeff)) throw Error("reduce_mod: form is not integral");
    terms.push_back({t.mask, Residue(to_int64(mod(t.coeff.get_num(), m)), p)});
  }
  return ModForm(v.context(), std::move(terms));
}

// Coordinates of the degree-k part of a residue form as plain integers in [0, p).
inline std::vector<std::uint64_t> coordinates(const ModForm &v, int k) {
  const auto &ctx = v.algebra();
  std::vector<std::uint64_t> out(ctx.rank(k), 0);
  for (const auto &t : v.terms())
    if (std::popcount(t.mask) == k) out[ctx.index_of(t.mask)] = t.coeff.value;
  return out;
}

inline MultiVector lift(const ModForm &v) {
  std::vector<MultiVector::Term> terms;
  for (const auto &t : v.terms())
    terms.push_back({t.mask, Rational(static_cast<unsigned long>(t.coeff.value))});
  return MultiVector(v.context(), std::move(terms));
}

inline std::string generator_name(int position) {
  return std::string(position % 2 == 0 ? "x" : "y") + std::to_string(position / 2 + 1);
}

inline std::string basis_name(Mask m) {
  if (m == 0) return "1";
  std::string s;
  while (m) {
    int b = std::countr_zero(m);
    if (!s.empty()) s += "^";
    s += generator_name(b);
    m &= m - 1;
  }
  return s;
}

inline std::string to_string(const MultiVector &v) {
  if (v.is_zero()) return "0";
  std::string s;
  for (const auto &t : v.terms()) {
    if (!s.empty()) s += " + ";
    s += t.coeff.get_str() + "*" + basis_name(t.mask);
  }
  return s;
}

} // namespace brauer
