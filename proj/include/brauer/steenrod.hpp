#pragma once

// Refined obstruction: on an abelian variety every Steenrod square and reduced
// power of positive degree vanishes, so the reductions C_i of the integral classes
// p_i^{B,d} must satisfy the universal Chern-class relations with zero left side.

#include "brauer/djp.hpp"
#include "brauer/polynomial.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <string>

namespace brauer {

// A polynomial relation sum coeff * C_{idx_1} ... C_{idx_r} = 0 over Z/p.
struct RelationTerm {
  std::uint64_t coeff;
  std::vector<int> indices;
};

struct SteenrodRelation {
  std::int64_t prime = 2;
  int i = 0; // degree of the class acted on
  int l = 0; // Sq^{2l} for p = 2, P^l for odd p
  std::vector<RelationTerm> terms;

  int target_degree() const { return prime == 2 ? i + l : i + l * static_cast<int>(prime - 1); }
  int max_index() const {
    int best = 0;
    for (const auto &t : terms)
      for (int x : t.indices) best = std::max(best, x);
    return best;
  }
  std::string name() const {
    if (prime == 2) return "Sq^" + std::to_string(2 * l) + "(C" + std::to_string(i) + ")";
    return "P^" + std::to_string(l) + "(C" + std::to_string(i) + ") mod " + std::to_string(prime);
  }
};

// Coefficient C(i - l + k - 1, k) of C_{l-k} C_{i+k} in Sq^{2l}(C_i), reduced mod 2.
inline int steenrod_coefficient(int i, int l, int k) {
  return static_cast<int>(mod(binomial(Integer(i - l + k - 1), k), Integer(2)).get_si());
}

// Right side of Sq^{2l}(c_i) as a relation (l = 0 gives C_i itself).
inline SteenrodRelation steenrod_relation(int i, int l) {
  SteenrodRelation r;
  r.prime = 2;
  r.i = i;
  r.l = l;
  for (int k = 0; k <= l; ++k)
    if (steenrod_coefficient(i, l, k)) r.terms.push_back({1, {l - k, i + k}});
  return r;
}

// Evaluates a relation on residue classes C[0..] (C[0] is the degree-0 class).  Indices
// beyond the supplied range must denote classes above the top degree.
inline ModForm evaluate_relation(const SteenrodRelation &rel, const std::vector<ModForm> &c) {
  if (c.empty()) throw Error("evaluate_relation: no classes");
  const auto &ctx = c.front().context();
  const int g = ctx->genus();
  const auto p = static_cast<std::uint64_t>(rel.prime);
  ModForm out(ctx);
  for (const auto &t : rel.terms) {
    ModForm prod = ModForm::monomial(ctx, 0, Residue(static_cast<std::int64_t>(t.coeff), p));
    bool vanishes = false;
    for (int idx : t.indices) {
      if (idx > g) {
        vanishes = true;
        break;
      }
      if (idx >= static_cast<int>(c.size())) throw Error("evaluate_relation: missing residue C" + std::to_string(idx));
      prod = wedge(prod, c[idx]);
    }
    if (!vanishes) out += prod;
  }
  return out;
}

inline ModForm steenrod_rhs(int i, int l, const std::vector<ModForm> &c) {
  return evaluate_relation(steenrod_relation(i, l), c);
}

// Q_{p,i,j}: the polynomial in C_1..C_N (N = i + j(p-1), variable k-1 is C_k) with
// P^j(c_i) = Q_{p,i,j}(c_1, ..., c_N), from the splitting principle with total reduced
// power t -> t + t^p on each Chern root.
struct ReducedPowerPolynomial {
  std::int64_t prime = 3;
  int i = 0, j = 0;
  IntPolynomial poly;

  int degree() const { return i + j * static_cast<int>(prime - 1); }
};

namespace detail {

inline IntPolynomial reduced_power_in_roots(std::int64_t p, int i, int j, std::size_t roots) {
  const unsigned degree = static_cast<unsigned>(i + j * (p - 1));
  std::vector<IntPolynomial> values;
  for (std::size_t a = 0; a < roots; ++a) {
    std::vector<unsigned> e1(roots, 0), ep(roots, 0);
    e1[a] = 1;
    ep[a] = static_cast<unsigned>(p);
    IntPolynomial v(roots);
    v.add_term(e1, 1);
    v.add_term(ep, 1);
    values.push_back(std::move(v));
  }
  auto total = substitute(elementary_symmetric(roots, static_cast<std::size_t>(i)), values, Integer(1));
  return reduce_mod(homogeneous_part(total, degree), Integer(static_cast<long>(p)));
}

} // namespace detail

inline ReducedPowerPolynomial reduced_power_polynomial(std::int64_t p, int i, int j) {
  if (p < 3 || !is_prime(p)) throw Error("reduced_power_polynomial: p must be an odd prime");
  if (i < 1 || j < 1) throw Error("reduced_power_polynomial: i and j must be positive");
  static std::mutex lock;
  static std::map<std::tuple<std::int64_t, int, int>, ReducedPowerPolynomial> cache;
  {
    std::lock_guard<std::mutex> guard(lock);
    if (auto it = cache.find({p, i, j}); it != cache.end()) return it->second;
  }
  const std::size_t n = static_cast<std::size_t>(i + j * (p - 1));
  const Integer pz(static_cast<long>(p));
  ReducedPowerPolynomial out{p, i, j, to_elementary(detail::reduced_power_in_roots(p, i, j, n), n, pz)};

  // Stability: one more root must not change the answer.
  auto wider = to_elementary(detail::reduced_power_in_roots(p, i, j, n + 1), n + 1, pz);
  IntPolynomial truncated(n);
  for (const auto &[e, c] : wider.terms()) {
    if (e[n] != 0) throw Error("reduced_power_polynomial: unstable in the number of roots");
    truncated.add_term(std::vector<unsigned>(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(n)), c);
  }
  if (!(truncated == out.poly)) throw Error("reduced_power_polynomial: unstable in the number of roots");
  std::vector<unsigned> weights(n);
  for (std::size_t k = 0; k < n; ++k) weights[k] = static_cast<unsigned>(k + 1);
  for (const auto &[e, c] : out.poly.terms()) {
    unsigned w = 0;
    for (std::size_t k = 0; k < n; ++k) w += e[k] * weights[k];
    if (w != n) throw Error("reduced_power_polynomial: not weighted homogeneous");
  }

  std::lock_guard<std::mutex> guard(lock);
  cache.emplace(std::make_tuple(p, i, j), out);
  return out;
}

inline SteenrodRelation reduced_power_relation(std::int64_t p, int i, int j) {
  auto q = reduced_power_polynomial(p, i, j);
  SteenrodRelation r;
  r.prime = p;
  r.i = i;
  r.l = j;
  for (const auto &[e, c] : q.poly.terms()) {
    RelationTerm t{c.get_ui(), {}};
    for (std::size_t k = 0; k < e.size(); ++k)
      for (unsigned s = 0; s < e[k]; ++s) t.indices.push_back(static_cast<int>(k + 1));
    r.terms.push_back(std::move(t));
  }
  return r;
}

// All relations with target in nonzero cohomology (degree <= g), ordered by (i, l).
// Relations that reference C_idx with m < idx <= g are returned in `skipped`.
struct RelationSet {
  std::vector<SteenrodRelation> applicable;
  std::vector<SteenrodRelation> skipped;
};

inline RelationSet relations_for(std::int64_t p, int g, int m) {
  RelationSet out;
  for (int i = 1; i <= g; ++i) {
    for (int l = 1;; ++l) {
      const int target = p == 2 ? i + l : i + l * static_cast<int>(p - 1);
      if (target > g) break;
      auto rel = p == 2 ? steenrod_relation(i, l) : reduced_power_relation(p, i, l);
      bool needs_missing = false;
      for (const auto &t : rel.terms)
        for (int idx : t.indices)
          if (idx > m && idx <= g) needs_missing = true;
      (needs_missing ? out.skipped : out.applicable).push_back(std::move(rel));
    }
  }
  return out;
}

struct PrimeCheck {
  std::int64_t prime = 2;
  std::size_t residues = 0;
  bool all_violate = false;
  // One violated relation per residue when all_violate; otherwise empty.
  std::vector<std::pair<std::vector<std::uint32_t>, std::string>> violations;
  std::optional<std::vector<std::uint32_t>> survivor;
  std::vector<std::string> skipped;
};

struct RefinedResult {
  bool obstructed = false;
  bool family_empty = false;
  std::vector<PrimeCheck> checks;
};

// Residue forms C_0..C_m of the integral classes along the family, for u mod p.
inline std::vector<ModForm> residue_forms(const Context &ctx, const ResiduePoint &pt, const Integer &c0, std::uint64_t p) {
  std::vector<ModForm> c{ModForm::monomial(ctx, 0, Residue(to_int64(mod(c0, Integer(static_cast<unsigned long>(p)))), p))};
  for (std::size_t i = 0; i < pt.values.size(); ++i) {
    std::vector<ModForm::Term> terms;
    for (std::size_t r = 0; r < pt.values[i].size(); ++r)
      if (pt.values[i][r]) terms.push_back({ctx->unrank(static_cast<int>(2 * (i + 1)), r), Residue(pt.values[i][r], p)});
    c.emplace_back(ctx, std::move(terms));
  }
  return c;
}

// Checks every residue of the family modulo p against the relations for p.
inline PrimeCheck check_prime(const Context &ctx, const IntegralitySystem &sys, const AffineLattice &family,
                              const Integer &c0, std::int64_t p) {
  if (p < 2 || !is_prime(p)) throw Error("refined obstruction: " + std::to_string(p) + " is not prime");
  PrimeCheck out;
  out.prime = p;
  auto rels = relations_for(p, ctx->genus(), sys.degrees);
  for (const auto &r : rels.skipped) out.skipped.push_back(r.name());
  auto points = residue_points(family, block_maps(sys, family), static_cast<std::uint32_t>(p));
  out.residues = points.size();
  out.all_violate = true;
  for (const auto &pt : points) {
    auto c = residue_forms(ctx, pt, c0, static_cast<std::uint64_t>(p));
    const SteenrodRelation *violated = nullptr;
    for (const auto &r : rels.applicable) {
      if (!evaluate_relation(r, c).is_zero()) {
        violated = &r;
        break;
      }
    }
    if (!violated) {
      out.all_violate = false;
      out.survivor = pt.parameters;
      out.violations.clear();
      break;
    }
    out.violations.emplace_back(pt.parameters, violated->name());
  }
  return out;
}

// Obstructed when the integrality family is empty, or when for some prime in the
// list every residue of the family violates an applicable relation.
inline RefinedResult refined_obstructed(const BrauerClassSpec &spec, std::int64_t d, const std::vector<std::int64_t> &primes,
                                        const Integer &c0 = 1) {
  if (c0 != 1) throw Error("refined obstruction requires c0 = 1");
  RefinedResult out;
  auto sys = build_system(spec, d, c0);
  auto family = solve_integrality(sys.P, sys.w);
  if (!family) {
    out.obstructed = out.family_empty = true;
    return out;
  }
  for (auto p : primes) {
    out.checks.push_back(check_prime(spec.context(), sys, *family, c0, p));
    if (out.checks.back().all_violate) {
      out.obstructed = true;
      break;
    }
  }
  return out;
}

} // namespace brauer
