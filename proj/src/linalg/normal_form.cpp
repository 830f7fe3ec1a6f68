#include "afx/linalg/normal_form.hpp"

#include <stdexcept>

namespace afx {

namespace {

struct Bezout {
  Int g, x, y;  // g = x*a + y*b, g >= 0
};

Bezout bezout(const Int& a, const Int& b) {
  Bezout r;
  mpz_gcdext(r.g.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int trunc_div(const Int& a, const Int& b) {
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HermiteForm hermite_normal_form(const IntMatrix& m) {
  HermiteForm out{m, IntMatrix::identity(m.rows()), 0};
  IntMatrix& h = out.h;
  IntMatrix& u = out.u;
  std::size_t r = 0;
  for (std::size_t j = 0; j < h.cols() && r < h.rows(); ++j) {
    for (std::size_t i = r + 1; i < h.rows(); ++i) {
      if (h(i, j) == 0) continue;
      if (h(r, j) == 0) {
        h.swap_rows(r, i);
        u.swap_rows(r, i);
        continue;
      }
      const Int a = h(r, j);
      const Int b = h(i, j);
      const Bezout bz = bezout(a, b);
      const Int p = -b / bz.g;
      const Int q = a / bz.g;
      h.combine_rows(r, i, bz.x, bz.y, p, q);
      u.combine_rows(r, i, bz.x, bz.y, p, q);
    }
    if (h(r, j) == 0) continue;
    if (h(r, j) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      const Int q = floor_div(h(i, j), h(r, j));
      h.add_row_multiple(i, r, -q);
      u.add_row_multiple(i, r, -q);
    }
    ++r;
  }
  out.rank = r;
  return out;
}

IntVector SmithForm::invariant_factors() const {
  IntVector d;
  for (std::size_t i = 0; i < rank; ++i) d.push_back(s(i, i));
  return d;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm out{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()), 0};
  IntMatrix& s = out.s;
  IntMatrix& u = out.u;
  IntMatrix& v = out.v;
  const std::size_t n = std::min(s.rows(), s.cols());
  std::size_t t = 0;
  for (; t < n; ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    bool found = false;
    std::size_t pi = t, pj = t;
    for (std::size_t i = t; i < s.rows(); ++i)
      for (std::size_t j = t; j < s.cols(); ++j)
        if (s(i, j) != 0 && (!found || abs(s(i, j)) < abs(s(pi, pj)))) {
          found = true;
          pi = i;
          pj = j;
        }
    if (!found) break;
    s.swap_rows(t, pi);
    u.swap_rows(t, pi);
    s.swap_cols(t, pj);
    v.swap_cols(t, pj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < s.rows(); ++i) {
        if (s(i, t) == 0) continue;
        const Int q = trunc_div(s(i, t), s(t, t));
        s.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < s.cols(); ++j) {
        if (s(t, j) == 0) continue;
        const Int q = trunc_div(s(t, j), s(t, t));
        s.add_col_multiple(j, t, -q);
        v.add_col_multiple(j, t, -q);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder smaller than the pivot survived; promote it.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < s.rows(); ++i)
          if (s(i, t) != 0 && abs(s(i, t)) < abs(s(bi, bj))) {
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < s.cols(); ++j)
          if (s(t, j) != 0 && abs(s(t, j)) < abs(s(bi, bj))) {
            bi = t;
            bj = j;
          }
        s.swap_rows(t, bi);
        u.swap_rows(t, bi);
        s.swap_cols(t, bj);
        v.swap_cols(t, bj);
        continue;
      }
      // Row and column are clear; enforce divisibility of the remainder.
      bool divides = true;
      for (std::size_t i = t + 1; i < s.rows() && divides; ++i)
        for (std::size_t j = t + 1; j < s.cols(); ++j)
          if (s(i, j) % s(t, t) != 0) {
            s.add_row_multiple(t, i, Int(1));
            u.add_row_multiple(t, i, Int(1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (s(t, t) < 0) {
      s.negate_row(t);
      u.negate_row(t);
    }
  }
  out.rank = t;
  return out;
}

bool is_unimodular(const IntMatrix& m) {
  if (!m.is_square()) return false;
  return abs(m.determinant()) == 1;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  const HermiteForm hf = hermite_normal_form(m.transpose());
  const std::size_t n = m.cols();
  IntMatrix k(n, n - hf.rank);
  for (std::size_t c = 0; c + hf.rank < n; ++c)
    for (std::size_t i = 0; i < n; ++i) k(i, c) = hf.u(hf.rank + c, i);
  return k;
}

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_integer: shape mismatch");
  const SmithForm sf = smith_normal_form(a);
  const IntVector ub = sf.u * b;
  IntVector z(a.cols(), Int(0));
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < sf.rank) {
      if (ub[i] % sf.s(i, i) != 0) return std::nullopt;
      z[i] = ub[i] / sf.s(i, i);
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return sf.v * z;
}

}  // namespace afx
