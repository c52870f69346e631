#pragma once

#include <cstdlib>
#include <vector>

#include "surfcert/int_types.hpp"
#include "surfcert/matrix.hpp"

namespace surfcert {

// U * input * V = diag(factors), with U, V unimodular and
// factors[0] | factors[1] | ... (nonnegative, trailing zeros last).
struct SmithResult {
  std::vector<Int> factors;
  IntMatrix U, V;
  IntMatrix diagonal;
};

namespace detail {

// Smallest nonzero |entry| in the trailing submatrix starting at (t, t).
inline bool find_pivot(const IntMatrix& m, std::size_t t, std::size_t& pr, std::size_t& pc) {
  bool found = false;
  Int best = 0;
  for (std::size_t r = t; r < m.rows(); ++r)
    for (std::size_t c = t; c < m.cols(); ++c) {
      if (m.at(r, c) == 0) continue;
      Int v = abs(m.at(r, c));
      if (!found || v < best) {
        best = v;
        pr = r;
        pc = c;
        found = true;
      }
    }
  return found;
}

}  // namespace detail

inline SmithResult smith_normal_form(IntMatrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix U = IntMatrix::identity(rows);
  IntMatrix V = IntMatrix::identity(cols);
  const std::size_t n = std::min(rows, cols);

  for (std::size_t t = 0; t < n; ++t) {
    std::size_t pr = t, pc = t;
    if (!detail::find_pivot(m, t, pr, pc)) break;  // trailing block is zero
    if (pr != t) {
      m.swap_rows(t, pr);
      U.swap_rows(t, pr);
    }
    if (pc != t) {
      m.swap_cols(t, pc);
      V.swap_cols(t, pc);
    }

    for (;;) {
      bool clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (m.at(r, t) == 0) continue;
        Int q = div_round_nearest(m.at(r, t), m.at(t, t));
        m.add_row(r, t, q);
        U.add_row(r, t, q);
        if (m.at(r, t) != 0) {
          // remainder is strictly smaller; promote it to the pivot slot
          m.swap_rows(t, r);
          U.swap_rows(t, r);
          clean = false;
        }
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (m.at(t, c) == 0) continue;
        Int q = div_round_nearest(m.at(t, c), m.at(t, t));
        m.add_col(c, t, q);
        V.add_col(c, t, q);
        if (m.at(t, c) != 0) {
          m.swap_cols(t, c);
          V.swap_cols(t, c);
          clean = false;
        }
      }
      if (!clean) continue;

      // pivot must divide every remaining entry; if not, fold the
      // offending row in and restart the reduction
      bool divides = true;
      for (std::size_t r = t + 1; r < rows && divides; ++r)
        for (std::size_t c = t + 1; c < cols && divides; ++c)
          if (m.at(r, c) % m.at(t, t) != 0) {
            m.add_row(t, r, Int(-1));
            U.add_row(t, r, Int(-1));
            divides = false;
          }
      if (divides) break;
    }

    if (m.at(t, t) < 0) {
      m.negate_row(t);
      U.negate_row(t);
    }
  }

  SmithResult res;
  res.factors.reserve(n);
  for (std::size_t i = 0; i < n; ++i) res.factors.push_back(m.at(i, i));
  res.U = std::move(U);
  res.V = std::move(V);
  res.diagonal = std::move(m);
  return res;
}

// Cokernel of the presentation matrix whose rows are relations among
// `generators` unknowns: returns (free rank, nontrivial torsion factors).
struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;  // each > 1, in divisibility order
};

inline AbelianGroup abelianization(const IntMatrix& relations, std::size_t generators) {
  if (relations.cols() != generators)
    throw std::invalid_argument("relation matrix width must equal generator count");
  SmithResult s = smith_normal_form(relations);
  AbelianGroup g;
  std::size_t nonzero = 0;
  for (const Int& d : s.factors) {
    if (d == 0) continue;
    ++nonzero;
    if (d > 1) g.torsion.push_back(d);
  }
  g.free_rank = generators - nonzero;
  return g;
}

}  // namespace surfcert
