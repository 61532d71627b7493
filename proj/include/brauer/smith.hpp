#pragma once

#include "brauer/matrix.hpp"

#include <cstddef>
#include <optional>

namespace brauer {

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... .
struct SmithDecomposition {
  IntMatrix U, D, V;

  std::size_t rank() const {
    std::size_t r = 0;
    while (r < D.rows() && r < D.cols() && D(r, r) != 0) ++r;
    return r;
  }
};

namespace detail {

// In-place reduction of A to Smith form.  Row operations are replayed on the
// rows of `row_mirror` (so a mirror starting at I ends as U, one starting at b
// ends as U*b); column operations are replayed on the columns of `col_mirror`.
class SmithReducer {
public:
  SmithReducer(IntMatrix &a, IntMatrix *row_mirror, IntMatrix *col_mirror)
      : a_(a), rm_(row_mirror), cm_(col_mirror) {
    if (rm_ && rm_->rows() != a_.rows()) throw Error("smith: row mirror has wrong height");
    if (cm_ && cm_->cols() != a_.cols()) throw Error("smith: column mirror has wrong width");
  }

  void run() {
    const std::size_t n = std::min(a_.rows(), a_.cols());
    for (std::size_t t = 0; t < n; ++t) {
      if (!bring_min_to(t)) break;
      for (;;) {
        bool clean = eliminate(t);
        if (!clean) {
          bring_min_cross(t);
          continue;
        }
        if (fix_divisibility(t)) continue;
        break;
      }
      if (a_(t, t) < 0) negate_row(t);
    }
  }

private:
  void swap_rows(std::size_t i, std::size_t j) {
    a_.swap_rows(i, j);
    if (rm_) rm_->swap_rows(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    a_.swap_cols(i, j);
    if (cm_) cm_->swap_cols(i, j);
  }
  void add_row(std::size_t dst, std::size_t src, const Integer &c) {
    for (std::size_t j = 0; j < a_.cols(); ++j)
      if (a_(src, j) != 0) a_(dst, j) += c * a_(src, j);
    if (rm_) rm_->add_row(dst, src, c);
  }
  void add_col(std::size_t dst, std::size_t src, const Integer &c) {
    for (std::size_t i = 0; i < a_.rows(); ++i)
      if (a_(i, src) != 0) a_(i, dst) += c * a_(i, src);
    if (cm_) cm_->add_col(dst, src, c);
  }
  void negate_row(std::size_t i) {
    a_.negate_row(i);
    if (rm_) rm_->negate_row(i);
  }

  // Moves the smallest nonzero |entry| of the trailing block into (t, t).
  bool bring_min_to(std::size_t t) {
    const std::size_t rows = a_.rows(), cols = a_.cols();
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        const Integer &x = a_(i, j);
        if (x == 0) continue;
        if (!best || cmpabs(x, a_(best->first, best->second)) < 0) best = {i, j};
        if (abs(x) == 1) goto found;
      }
  found:
    if (!best) return false;
    swap_rows(t, best->first);
    swap_cols(t, best->second);
    return true;
  }

  // Smallest nonzero entry of row t or column t moved to the pivot.
  void bring_min_cross(std::size_t t) {
    std::size_t bi = t, bj = t;
    for (std::size_t i = t; i < a_.rows(); ++i)
      if (a_(i, t) != 0 && (a_(bi, bj) == 0 || cmpabs(a_(i, t), a_(bi, bj)) < 0)) bi = i, bj = t;
    for (std::size_t j = t; j < a_.cols(); ++j)
      if (a_(t, j) != 0 && (a_(bi, bj) == 0 || cmpabs(a_(t, j), a_(bi, bj)) < 0)) bi = t, bj = j;
    swap_rows(t, bi);
    swap_cols(t, bj);
  }

  bool eliminate(std::size_t t) {
    bool clean = true;
    const Integer pivot = a_(t, t);
    Integer q;
    for (std::size_t i = t + 1; i < a_.rows(); ++i) {
      if (a_(i, t) == 0) continue;
      mpz_tdiv_q(q.get_mpz_t(), a_(i, t).get_mpz_t(), pivot.get_mpz_t());
      if (q != 0) add_row(i, t, -q);
      if (a_(i, t) != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < a_.cols(); ++j) {
      if (a_(t, j) == 0) continue;
      mpz_tdiv_q(q.get_mpz_t(), a_(t, j).get_mpz_t(), pivot.get_mpz_t());
      if (q != 0) add_col(j, t, -q);
      if (a_(t, j) != 0) clean = false;
    }
    return clean;
  }

  // If some trailing entry is not divisible by the pivot, fold its row into row t.
  bool fix_divisibility(std::size_t t) {
    const Integer &pivot = a_(t, t);
    for (std::size_t i = t + 1; i < a_.rows(); ++i)
      for (std::size_t j = t + 1; j < a_.cols(); ++j)
        if (a_(i, j) != 0 && !divides(pivot, a_(i, j))) {
          add_row(t, i, Integer(1));
          return true;
        }
    return false;
  }

  IntMatrix &a_;
  IntMatrix *rm_;
  IntMatrix *cm_;
};

} // namespace detail

inline SmithDecomposition smith(const IntMatrix &a) {
  SmithDecomposition s{IntMatrix::identity(a.rows()), a, IntMatrix::identity(a.cols())};
  detail::SmithReducer(s.D, &s.U, &s.V).run();
  return s;
}

// Smith diagonal only (d_1, ..., d_r, 0, ...), length min(rows, cols).
inline std::vector<Integer> smith_diagonal(IntMatrix a) {
  detail::SmithReducer(a, nullptr, nullptr).run();
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) d.push_back(a(i, i));
  return d;
}

} // namespace brauer
