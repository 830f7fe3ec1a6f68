#pragma once

#include "afx/linalg/int_matrix.hpp"

#include <optional>

namespace afx {

/// Row-style Hermite normal form: h = u * m with u unimodular, h in row
/// echelon form, pivots positive, entries above each pivot reduced into
/// [0, pivot), zero rows last. Canonical for the row module of m, so a
/// lattice given by column generators B is canonicalised via HNF(B^T).
struct HermiteForm {
  IntMatrix h;
  IntMatrix u;
  std::size_t rank = 0;
};

HermiteForm hermite_normal_form(const IntMatrix& m);

/// s = u * m * v, diagonal, nonnegative, d_i | d_{i+1}; u and v unimodular.
struct SmithForm {
  IntMatrix s;
  IntMatrix u;
  IntMatrix v;
  std::size_t rank = 0;

  /// The nonzero diagonal entries in order.
  IntVector invariant_factors() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

bool is_unimodular(const IntMatrix& m);

/// Columns form a basis of the integer kernel {x in Z^n : m x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);

/// Some integer solution of a y = b, or nullopt if none exists. The
/// particular solution is deterministic (it comes from the Smith form).
std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b);

}  // namespace afx
