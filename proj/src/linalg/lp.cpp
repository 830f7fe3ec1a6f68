#include "afx/linalg/lp.hpp"

#include <stdexcept>

namespace afx {

namespace {

using RatMatrix = std::vector<RatVector>;

// Phase one of the simplex method on {A z = b, z >= 0}, Bland's rule, exact
// arithmetic. Returns a feasible z or nullopt.
std::optional<RatVector> phase_one(RatMatrix a, RatVector b, std::size_t n) {
  const std::size_t m = a.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (b[i] < 0) {
      b[i] = -b[i];
      for (auto& x : a[i]) x = -x;
    }
  }
  const std::size_t width = n + m;
  RatMatrix t(m, RatVector(width, Rat(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = 1;
    basis[i] = n + i;
  }
  // Reduced costs of "minimise the sum of artificials" with the artificial
  // basis priced out.
  RatVector cost(width, Rat(0));
  Rat value = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) cost[j] -= t[i][j];
    value -= b[i];
  }

  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < width; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter == width) break;
    std::size_t leave = m;
    Rat best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rat ratio = b[i] / t[i][enter];
      if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) throw std::logic_error("phase one unbounded");  // cannot happen: objective bounded below by 0
    const Rat pivot = t[leave][enter];
    for (auto& x : t[leave]) x /= pivot;
    b[leave] /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rat f = t[i][enter];
      for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
      b[i] -= f * b[leave];
    }
    if (cost[enter] != 0) {
      const Rat f = cost[enter];
      for (std::size_t j = 0; j < width; ++j) cost[j] -= f * t[leave][j];
      value -= f * b[leave];
    }
    basis[leave] = enter;
  }
  if (value != 0) return std::nullopt;
  RatVector z(n, Rat(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) z[basis[i]] = b[i];
  return z;
}

struct LeForm {
  RatVector coeffs;
  Rat rhs;
  bool equality;
};

LeForm to_le_form(const LinearConstraint& c) {
  LeForm f{c.coeffs, c.rhs, c.rel == Relation::Equal};
  if (c.rel == Relation::GreaterEq) {
    for (auto& x : f.coeffs) x = -x;
    f.rhs = -f.rhs;
  }
  return f;
}

void check_shape(std::size_t dim, const std::vector<LinearConstraint>& constraints) {
  for (const auto& c : constraints)
    if (c.coeffs.size() != dim) throw std::invalid_argument("constraint has wrong dimension");
}

}  // namespace

LpResult exact_lp_feasible(std::size_t dim, const std::vector<LinearConstraint>& constraints) {
  check_shape(dim, constraints);
  std::size_t slacks = 0;
  for (const auto& c : constraints)
    if (c.rel != Relation::Equal) ++slacks;
  const std::size_t n = 2 * dim + slacks;
  RatMatrix a(constraints.size(), RatVector(n, Rat(0)));
  RatVector b(constraints.size());
  std::size_t s = 0;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto& c = constraints[i];
    for (std::size_t j = 0; j < dim; ++j) {
      a[i][j] = c.coeffs[j];
      a[i][dim + j] = -c.coeffs[j];
    }
    if (c.rel == Relation::LessEq) a[i][2 * dim + s++] = 1;
    if (c.rel == Relation::GreaterEq) a[i][2 * dim + s++] = -1;
    b[i] = c.rhs;
  }

  LpResult result;
  if (auto z = phase_one(a, b, n)) {
    RatVector x(dim);
    for (std::size_t j = 0; j < dim; ++j) x[j] = (*z)[j] - (*z)[dim + j];
    result.point = std::move(x);
    return result;
  }

  // Farkas system: y . A' = 0, y . b' = -1, y >= 0 on inequality rows.
  std::vector<LeForm> rows;
  rows.reserve(constraints.size());
  std::size_t vars = 0;
  for (const auto& c : constraints) {
    rows.push_back(to_le_form(c));
    vars += rows.back().equality ? 2 : 1;
  }
  RatMatrix fa(dim + 1, RatVector(vars, Rat(0)));
  RatVector fb(dim + 1, Rat(0));
  fb[dim] = -1;
  std::size_t col = 0;
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < dim; ++j) fa[j][col] = r.coeffs[j];
    fa[dim][col] = r.rhs;
    if (r.equality) {
      for (std::size_t j = 0; j < dim; ++j) fa[j][col + 1] = -r.coeffs[j];
      fa[dim][col + 1] = -r.rhs;
      col += 2;
    } else {
      col += 1;
    }
  }
  auto y = phase_one(fa, fb, vars);
  if (!y) throw std::logic_error("exact_lp_feasible: neither a point nor a Farkas certificate");
  FarkasCertificate cert;
  col = 0;
  for (const auto& r : rows) {
    if (r.equality) {
      cert.multipliers.push_back((*y)[col] - (*y)[col + 1]);
      col += 2;
    } else {
      cert.multipliers.push_back((*y)[col]);
      col += 1;
    }
  }
  if (!verify_farkas(dim, constraints, cert)) throw std::logic_error("exact_lp_feasible: bad Farkas certificate");
  result.farkas = std::move(cert);
  return result;
}

bool satisfies(const RatVector& x, const std::vector<LinearConstraint>& constraints) {
  for (const auto& c : constraints) {
    if (c.coeffs.size() != x.size()) return false;
    const Rat lhs = dot(c.coeffs, x);
    switch (c.rel) {
      case Relation::LessEq:
        if (lhs > c.rhs) return false;
        break;
      case Relation::GreaterEq:
        if (lhs < c.rhs) return false;
        break;
      case Relation::Equal:
        if (lhs != c.rhs) return false;
        break;
    }
  }
  return true;
}

bool verify_farkas(std::size_t dim, const std::vector<LinearConstraint>& constraints,
                   const FarkasCertificate& cert) {
  if (cert.multipliers.size() != constraints.size()) return false;
  RatVector combo(dim, Rat(0));
  Rat rhs = 0;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    if (constraints[i].coeffs.size() != dim) return false;
    const LeForm f = to_le_form(constraints[i]);
    const Rat& y = cert.multipliers[i];
    if (!f.equality && y < 0) return false;
    for (std::size_t j = 0; j < dim; ++j) combo[j] += y * f.coeffs[j];
    rhs += y * f.rhs;
  }
  for (const auto& x : combo)
    if (x != 0) return false;
  return rhs < 0;
}

}  // namespace afx
