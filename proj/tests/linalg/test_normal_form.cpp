#include "doctest.h"

#include "afx/linalg/normal_form.hpp"

#include <random>

using namespace afx;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

IntMatrix random_unimodular(std::mt19937& rng, std::size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> f(-2, 2);
  for (int step = 0; step < 3 * static_cast<int>(n); ++step) {
    std::size_t a = idx(rng), b = idx(rng);
    if (a == b) continue;
    u.add_row_multiple(a, b, Int(f(rng)));
    if (step % 4 == 0) u.swap_rows(a, b);
  }
  return u;
}

bool is_hermite(const IntMatrix& h, std::size_t rank) {
  std::size_t last_pivot = 0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t p = 0;
    while (p < h.cols() && h(i, p) == 0) ++p;
    if (i >= rank) {
      if (p != h.cols()) return false;
      continue;
    }
    if (p == h.cols() || h(i, p) <= 0) return false;
    if (i > 0 && p <= last_pivot) return false;
    last_pivot = p;
    for (std::size_t k = 0; k < i; ++k)
      if (h(k, p) < 0 || h(k, p) >= h(i, p)) return false;
  }
  return true;
}

bool is_smith(const IntMatrix& s, std::size_t rank) {
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j) {
      if (i != j && s(i, j) != 0) return false;
      if (i == j && i < rank && s(i, i) <= 0) return false;
      if (i == j && i >= rank && s(i, i) != 0) return false;
    }
  for (std::size_t i = 1; i < rank; ++i)
    if (s(i, i) % s(i - 1, i - 1) != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("hermite form of identity and zero") {
  const auto id = hermite_normal_form(IntMatrix::identity(2));
  CHECK(id.h == IntMatrix::identity(2));
  CHECK(id.u == IntMatrix::identity(2));
  const auto z = hermite_normal_form(IntMatrix(2, 3));
  CHECK(z.h == IntMatrix(2, 3));
  CHECK(z.u == IntMatrix::identity(2));
  CHECK(z.rank == 0);
}

TEST_CASE("hermite form of a 2x2 example matches hand reduction") {
  // Rows (2,4), (6,8): subtract 3*(2,4) to get (0,-4), flip sign, reduce
  // the 4 above the second pivot to 0.
  const IntMatrix m{{2, 4}, {6, 8}};
  const auto hf = hermite_normal_form(m);
  CHECK(hf.h == IntMatrix{{2, 0}, {0, 4}});
  CHECK(hf.u * m == hf.h);
  CHECK(is_unimodular(hf.u));
}

TEST_CASE("hermite form is canonical under unimodular row changes") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
    const IntMatrix m = random_matrix(rng, r, c, -5, 5);
    const auto hf = hermite_normal_form(m);
    CHECK(hf.u * m == hf.h);
    CHECK(is_unimodular(hf.u));
    CHECK(is_hermite(hf.h, hf.rank));
    const auto other = hermite_normal_form(random_unimodular(rng, r) * m);
    CHECK(other.h == hf.h);
  }
}

TEST_CASE("smith form examples") {
  const auto id = smith_normal_form(IntMatrix::identity(3));
  CHECK(id.s == IntMatrix::identity(3));
  const auto d = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
  CHECK(d.s == IntMatrix{{1, 0}, {0, 6}});
  CHECK(d.u * IntMatrix{{2, 0}, {0, 3}} * d.v == d.s);
  const auto one = smith_normal_form(IntMatrix{{4}});
  CHECK(one.s == IntMatrix{{4}});
  CHECK(abs(one.u(0, 0)) == 1);
  CHECK(abs(one.v(0, 0)) == 1);
}

TEST_CASE("smith form identities on random matrices") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
    const IntMatrix m = random_matrix(rng, r, c, -6, 6);
    const auto sf = smith_normal_form(m);
    CHECK(sf.u * m * sf.v == sf.s);
    CHECK(is_unimodular(sf.u));
    CHECK(is_unimodular(sf.v));
    CHECK(is_smith(sf.s, sf.rank));
    // Invariant factors do not depend on the presentation.
    const auto other = smith_normal_form(random_unimodular(rng, r) * m * random_unimodular(rng, c));
    CHECK(other.s == sf.s);
  }
}

TEST_CASE("smith form of a square matrix has product of factors = |det|") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const IntMatrix m = random_matrix(rng, n, n, -4, 4);
    const auto sf = smith_normal_form(m);
    Int prod = 1;
    for (std::size_t i = 0; i < n; ++i) prod *= sf.s(i, i);
    CHECK(prod == abs(m.determinant()));
  }
}

TEST_CASE("integer kernel and integer solve") {
  const IntMatrix m{{1, 2, 3}, {2, 4, 6}};
  const IntMatrix k = integer_kernel(m);
  CHECK(k.cols() == 2);
  CHECK((m * k).is_zero());

  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const IntMatrix a = random_matrix(rng, 3, 3, -3, 3);
    const IntVector x = make_int_vector({trial % 5 - 2, trial % 3 - 1, 2});
    const IntVector b = a * x;
    const auto y = solve_integer(a, b);
    REQUIRE(y.has_value());
    CHECK(a * *y == b);
  }
  CHECK_FALSE(solve_integer(IntMatrix{{2}}, make_int_vector({1})).has_value());
  CHECK_FALSE(solve_integer(IntMatrix{{1, 1}, {1, 1}}, make_int_vector({1, 2})).has_value());
}
