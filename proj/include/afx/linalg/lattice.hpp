#pragma once

#include "afx/linalg/int_matrix.hpp"
#include "afx/linalg/lp.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace afx {

/// Subgroup of Z^d. Stored as the nonzero rows of the Hermite form of the
/// transposed generator matrix, which makes equality a plain comparison.
class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(std::size_t ambient_dim);

  static Lattice from_generators(std::size_t ambient_dim, const std::vector<IntVector>& generators);
  /// The subgroup generated by the columns of m.
  static Lattice column_span(const IntMatrix& m);

  std::size_t ambient_dim() const { return dim_; }
  std::size_t rank() const { return echelon_.rows(); }

  /// d x rank, columns form the canonical basis.
  IntMatrix basis() const { return echelon_.transpose(); }
  /// rank x d, the Hermite rows.
  const IntMatrix& echelon() const { return echelon_; }

  bool contains(const IntVector& v) const;
  /// Integer coefficients c with basis() * c = v.
  std::optional<IntVector> coordinates(const IntVector& v) const;

  /// (span_Q L) cap Z^d.
  Lattice saturation() const;
  bool is_saturated() const { return saturation() == *this; }

  friend Lattice operator+(const Lattice& a, const Lattice& b);
  friend bool operator==(const Lattice& a, const Lattice& b) = default;

 private:
  std::size_t dim_ = 0;
  IntMatrix echelon_;
};

struct OrthantWitness {
  IntVector vector;
  IntVector coefficients;  // with respect to basis()
};

struct OrthantEmpty {
  FarkasCertificate farkas;  // for orthant_constraints(l)
};

struct OrthantUnknown {
  Int box_bound;
};

using OrthantVerdict = std::variant<OrthantWitness, OrthantEmpty, OrthantUnknown>;

/// Coefficient-space system c in Q^rank: basis()*c >= 0 and sum(basis()*c) = 1.
/// Infeasible exactly when span_Q(l) meets the closed orthant only at 0.
std::vector<LinearConstraint> orthant_constraints(const Lattice& l);

/// Looks for a nonzero nonnegative vector of l. Small coefficient vectors
/// (max-norm <= box_bound) are enumerated first; a vertex of the LP relaxation
/// scaled into l is accepted when its max-norm stays within
/// box_bound * sum_j |basis column j|_inf.
OrthantVerdict lattice_meets_orthant(const Lattice& l, const Int& box_bound);

bool verify_orthant_witness(const Lattice& l, const OrthantWitness& w);
bool verify_orthant_empty(const Lattice& l, const OrthantEmpty& e);

}  // namespace afx
