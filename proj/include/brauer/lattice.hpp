#pragma once

// Solution sets of "P*a + w is integral" for rational P, w.

#include "brauer/smith.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace brauer {

// {offset + lattice*u + kernel*w : u in Z^t, w in Q^s}; columns of [lattice | kernel]
// are linearly independent.
struct AffineLattice {
  std::vector<Rational> offset;
  RatMatrix lattice;
  RatMatrix kernel;

  std::size_t dimension() const { return offset.size(); }
  std::size_t rank() const { return lattice.cols(); }
  std::size_t kernel_rank() const { return kernel.cols(); }

  std::vector<Rational> point(const std::vector<Integer> &u) const {
    if (u.size() != rank()) throw Error("AffineLattice::point: wrong parameter count");
    std::vector<Rational> a = offset;
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (u[j] == 0) continue;
      for (std::size_t i = 0; i < a.size(); ++i) a[i] += lattice(i, j) * u[j];
    }
    return a;
  }

  std::vector<Rational> generator(std::size_t j) const { return lattice.column(j); }
};

// Solves { a : P*a + w in Z^N }.  Empty set -> nullopt.
//
// Denominators are cleared to A = qP, b = qw, then U*A*V = D gives, with a = V*y,
// D*y + U*b in qZ^N: each pivot row fixes y_j modulo q/D_jj, each zero row of D
// is a consistency check, and columns past the rank are kernel directions.
inline std::optional<AffineLattice> solve_integrality(const RatMatrix &p, const std::vector<Rational> &w) {
  const std::size_t m = p.cols();
  if (w.size() != p.rows()) throw Error("solve_integrality: dimension mismatch");

  // Zero rows are pure checks; duplicate rows (same P row, same w mod 1) collapse.
  std::set<std::vector<Rational>> seen;
  std::vector<std::vector<Rational>> kept;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    auto row = std::vector<Rational>(p.row(i).begin(), p.row(i).end());
    Rational frac = w[i] - Rational(floor_div(w[i].get_num(), w[i].get_den()));
    bool zero = std::all_of(row.begin(), row.end(), [](const Rational &x) { return sgn(x) == 0; });
    if (zero) {
      if (sgn(frac) != 0) return std::nullopt;
      continue;
    }
    row.push_back(frac);
    if (seen.insert(row).second) kept.push_back(std::move(row));
  }

  Integer q = 1;
  for (const auto &row : kept)
    for (const auto &x : row) q = lcm(q, x.get_den());

  const std::size_t n = kept.size();
  IntMatrix a(n, m), b(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) a(i, j) = Integer(kept[i][j] * q);
    b(i, 0) = Integer(kept[i][m] * q);
  }
  IntMatrix v = IntMatrix::identity(m);
  detail::SmithReducer(a, &b, &v).run();

  std::size_t r = 0;
  while (r < std::min(n, m) && a(r, r) != 0) ++r;
  for (std::size_t i = r; i < n; ++i)
    if (!divides(q, b(i, 0))) return std::nullopt;

  AffineLattice out;
  std::vector<Rational> y(m, Rational(0));
  out.lattice = RatMatrix(m, r);
  out.kernel = RatMatrix(m, m - r);
  for (std::size_t j = 0; j < r; ++j) {
    y[j] = Rational(-b(j, 0), a(j, j));
    y[j].canonicalize();
    Rational step(q, a(j, j));
    step.canonicalize();
    for (std::size_t i = 0; i < m; ++i) out.lattice(i, j) = step * v(i, j);
  }
  for (std::size_t j = r; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i) out.kernel(i, j - r) = Rational(v(i, j));
  out.offset = to_rational(v) * y;
  return out;
}

// Exact coordinates (u, w) of a - offset in the [lattice | kernel] frame, if any.
inline std::optional<std::vector<Rational>> lattice_coordinates(const AffineLattice &lat,
                                                                 const std::vector<Rational> &a) {
  if (a.size() != lat.dimension()) throw Error("contains: dimension mismatch");
  const std::size_t t = lat.rank(), s = lat.kernel_rank();
  RatMatrix frame(lat.dimension(), t + s);
  for (std::size_t i = 0; i < lat.dimension(); ++i) {
    for (std::size_t j = 0; j < t; ++j) frame(i, j) = lat.lattice(i, j);
    for (std::size_t j = 0; j < s; ++j) frame(i, t + j) = lat.kernel(i, j);
  }
  std::vector<Rational> rhs(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) rhs[i] = a[i] - lat.offset[i];
  return solve_linear(frame, rhs);
}

inline bool contains(const AffineLattice &lat, const std::vector<Rational> &a) {
  auto coords = lattice_coordinates(lat, a);
  if (!coords) return false;
  for (std::size_t j = 0; j < lat.rank(); ++j)
    if (!is_integer((*coords)[j])) return false;
  return true;
}

inline bool contains(const std::optional<AffineLattice> &lat, const std::vector<Rational> &a) {
  return lat && contains(*lat, a);
}

// Set equality: offsets and generators of each lie in the other.
inline bool same_set(const AffineLattice &x, const AffineLattice &y) {
  if (x.dimension() != y.dimension() || x.rank() != y.rank() || x.kernel_rank() != y.kernel_rank())
    return false;
  auto inside = [](const AffineLattice &a, const AffineLattice &b) {
    if (!contains(b, a.offset)) return false;
    for (std::size_t j = 0; j < a.rank(); ++j) {
      auto pt = a.offset;
      for (std::size_t i = 0; i < pt.size(); ++i) pt[i] += a.lattice(i, j);
      if (!contains(b, pt)) return false;
    }
    for (std::size_t j = 0; j < a.kernel_rank(); ++j) {
      auto pt = a.offset;
      for (std::size_t i = 0; i < pt.size(); ++i) pt[i] += a.kernel(i, j);
      if (!contains(b, pt)) return false;
    }
    return true;
  };
  if (x.kernel_rank() > 0) {
    RatMatrix both(x.dimension(), 2 * x.kernel_rank());
    for (std::size_t i = 0; i < x.dimension(); ++i)
      for (std::size_t j = 0; j < x.kernel_rank(); ++j) {
        both(i, j) = x.kernel(i, j);
        both(i, x.kernel_rank() + j) = y.kernel(i, j);
      }
    if (rank(both) != x.kernel_rank()) return false;
  }
  return inside(x, y) && inside(y, x);
}

// Gram determinant det(L^T L) of the lattice generators, the squared covolume.
inline Rational gram_determinant(const AffineLattice &lat) {
  const std::size_t t = lat.rank();
  RatMatrix gram(t, t);
  for (std::size_t a = 0; a < t; ++a)
    for (std::size_t b = 0; b < t; ++b)
      for (std::size_t i = 0; i < lat.dimension(); ++i) gram(a, b) += lat.lattice(i, a) * lat.lattice(i, b);
  // Rational determinant by elimination.
  Rational det = 1;
  for (std::size_t c = 0; c < t; ++c) {
    std::size_t p = c;
    while (p < t && gram(p, c) == 0) ++p;
    if (p == t) return 0;
    if (p != c) {
      gram.swap_rows(p, c);
      det = -det;
    }
    det *= gram(c, c);
    for (std::size_t i = c + 1; i < t; ++i) {
      if (gram(i, c) == 0) continue;
      Rational f = -gram(i, c) / gram(c, c);
      gram.add_row(i, c, f);
    }
  }
  return det;
}

// Integer-valued affine map of the lattice parameters, C(u) = constant + sum_j u_j * directions[j].
struct AffineMap {
  std::vector<Rational> constant;
  std::vector<std::vector<Rational>> directions;
};

struct ResiduePoint {
  std::vector<std::uint32_t> parameters;                 // u mod M
  std::vector<std::vector<std::uint32_t>> values;       // C_i(u) mod M
};

// All distinct tuples (C_1(u) mod M, ...) for u in (Z/M)^t, in odometer order of
// first occurrence.  Every constant and direction must be integral.
inline std::vector<ResiduePoint> residue_points(const AffineLattice &lat, const std::vector<AffineMap> &maps,
                                                std::uint32_t modulus) {
  if (modulus < 1) throw Error("residue_points: modulus must be positive");
  const std::size_t t = lat.rank();
  const Integer mz(modulus);
  auto reduce = [&](const Rational &x) -> std::uint32_t {
    if (!is_integer(x)) throw Error("residue_points: map is not integral on the lattice");
    return static_cast<std::uint32_t>(mod(x.get_num(), mz).get_ui());
  };
  std::vector<std::vector<std::uint32_t>> base(maps.size());
  std::vector<std::vector<std::vector<std::uint32_t>>> step(maps.size());
  for (std::size_t k = 0; k < maps.size(); ++k) {
    if (maps[k].directions.size() != t) throw Error("residue_points: direction count must equal lattice rank");
    for (const auto &x : maps[k].constant) base[k].push_back(reduce(x));
    for (const auto &dir : maps[k].directions) {
      if (dir.size() != maps[k].constant.size()) throw Error("residue_points: ragged map");
      std::vector<std::uint32_t> s;
      for (const auto &x : dir) s.push_back(reduce(x));
      step[k].push_back(std::move(s));
    }
  }

  std::vector<ResiduePoint> out;
  std::set<std::vector<std::vector<std::uint32_t>>> seen;
  std::vector<std::uint32_t> u(t, 0);
  auto cur = base;
  for (;;) {
    if (seen.insert(cur).second) out.push_back({u, cur});
    // Odometer increment, updating values incrementally.
    std::size_t j = 0;
    for (; j < t; ++j) {
      ++u[j];
      for (std::size_t k = 0; k < maps.size(); ++k)
        for (std::size_t i = 0; i < cur[k].size(); ++i)
          cur[k][i] = static_cast<std::uint32_t>((cur[k][i] + step[k][j][i]) % modulus);
      if (u[j] < modulus) break;
      u[j] = 0;
    }
    if (j == t) break;
  }
  return out;
}

inline std::string to_string(const std::vector<Rational> &v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + ")";
}

} // namespace brauer
