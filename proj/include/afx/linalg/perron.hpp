#pragma once

#include "afx/linalg/int_matrix.hpp"

#include <optional>
#include <stdexcept>

namespace afx {

/// Certified bounds on the Perron eigenvalue and left Perron eigenvector of a
/// primitive nonnegative matrix. The eigenvector is normalised so that its
/// first entry is 1.
struct PerronEnclosure {
  Rat lambda_lo;
  Rat lambda_hi;
  RatVector eigvec_lo;
  RatVector eigvec_hi;
  /// Positive vector y with lambda_lo*y <= y^T M <= lambda_hi*y.
  RatVector test_vector;
};

class NotPrimitive : public std::invalid_argument {
 public:
  NotPrimitive() : std::invalid_argument("matrix is not primitive") {}
};

/// Smallest k <= (d-1)^2 + 1 with M^k > 0, if any.
std::optional<std::size_t> primitivity_exponent(const IntMatrix& m);
bool is_primitive(const IntMatrix& m);

/// lambda_hi - lambda_lo <= precision. Throws NotPrimitive.
PerronEnclosure perron_enclosure(const IntMatrix& m, const Rat& precision);

/// Re-checks the Collatz-Wielandt inequalities on the stored test vector.
bool verify_collatz_wielandt(const IntMatrix& m, const PerronEnclosure& e);

}  // namespace afx
