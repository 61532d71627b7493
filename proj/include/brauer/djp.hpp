#pragma once

// The de Jong-Perry integrality obstruction at a fixed degree d, solved jointly
// over all cohomological degrees.

#include "brauer/abelian.hpp"
#include "brauer/lattice.hpp"

#include <optional>

namespace brauer {

// Rows: coordinates of the degree-2i classes for i = 1..degrees, stacked.  Column j
// (unknown a_j, c_j = a_j theta^j/j!) holds C(d-j, i-j) B^{i-j} theta^j/j!; the
// constant w holds C(d, i) B^i c_0.
struct IntegralitySystem {
  RatMatrix P;
  std::vector<Rational> w;
  std::vector<std::size_t> block_start; // first row of each degree block, plus the end
  int degrees = 0;
  int unknowns = 0;

  std::size_t block_size(int i) const { return block_start[i] - block_start[i - 1]; }
};

inline IntegralitySystem integrality_system(const MultiVector &field, std::int64_t d, const Integer &c0,
                                            int unknowns, int degrees) {
  const auto &ctx = field.context();
  const int g = ctx->genus();
  degrees = std::min(degrees, g);
  unknowns = std::min(unknowns, g);
  IntegralitySystem sys;
  sys.degrees = degrees;
  sys.unknowns = unknowns;
  sys.block_start.push_back(0);
  for (int i = 1; i <= degrees; ++i) sys.block_start.push_back(sys.block_start.back() + ctx->rank(2 * i));
  sys.P = RatMatrix(sys.block_start.back(), unknowns);
  sys.w.assign(sys.block_start.back(), Rational(0));

  auto bp = powers_of(field, degrees);
  auto gens = hodge_generators(ctx);
  const Integer dz(static_cast<long>(d));
  for (int i = 1; i <= degrees; ++i) {
    const std::size_t r0 = sys.block_start[i - 1];
    auto w = coordinates(bp[i] * Rational(binomial(dz, i) * c0), 2 * i);
    for (std::size_t r = 0; r < w.size(); ++r) sys.w[r0 + r] = w[r];
    for (int j = 1; j <= std::min(i, unknowns); ++j) {
      Integer coeff = binomial(dz - j, i - j);
      if (coeff == 0) continue;
      auto col = coordinates(wedge(bp[i - j], gens[j]) * Rational(coeff), 2 * i);
      for (std::size_t r = 0; r < col.size(); ++r) sys.P(r0 + r, j - 1) = col[r];
    }
  }
  return sys;
}

inline IntegralitySystem build_system(const BrauerClassSpec &spec, std::int64_t d, const Integer &c0 = 1) {
  if (d < 1) throw Error("build_system: degree must be positive");
  const int m = static_cast<int>(std::min<std::int64_t>(d, spec.genus()));
  return integrality_system(spec.field(), d, c0, m, m);
}

// Degree-2i block of P*a + w.
inline std::vector<Rational> block_values(const IntegralitySystem &sys, int i, const std::vector<Rational> &a) {
  std::vector<Rational> out;
  for (std::size_t r = sys.block_start[i - 1]; r < sys.block_start[i]; ++r) {
    Rational x = sys.w[r];
    for (std::size_t j = 0; j < a.size(); ++j) x += sys.P(r, j) * a[j];
    out.push_back(x);
  }
  return out;
}

// Each degree block as an affine function of the lattice parameters u.
inline std::vector<AffineMap> block_maps(const IntegralitySystem &sys, const AffineLattice &lat) {
  std::vector<AffineMap> maps;
  for (int i = 1; i <= sys.degrees; ++i) {
    AffineMap m;
    m.constant = block_values(sys, i, lat.offset);
    for (std::size_t k = 0; k < lat.rank(); ++k) {
      std::vector<Rational> dir;
      for (std::size_t r = sys.block_start[i - 1]; r < sys.block_start[i]; ++r) {
        Rational x = 0;
        for (std::size_t j = 0; j < lat.dimension(); ++j) x += sys.P(r, j) * lat.lattice(j, k);
        dir.push_back(x);
      }
      m.directions.push_back(std::move(dir));
    }
    maps.push_back(std::move(m));
  }
  return maps;
}

inline std::optional<AffineLattice> djp_solution_family(const BrauerClassSpec &spec, std::int64_t d,
                                                        const Integer &c0 = 1) {
  auto sys = build_system(spec, d, c0);
  return solve_integrality(sys.P, sys.w);
}

inline bool djp_obstructed(const BrauerClassSpec &spec, std::int64_t d, const Integer &c0 = 1) {
  return !djp_solution_family(spec, d, c0).has_value();
}

} // namespace brauer
