#pragma once

#include "afx/linalg/lp.hpp"

#include <stdexcept>
#include <vector>

namespace afx {

/// Nonnegative rational combinations of finitely many nonzero generators.
struct RatCone {
  std::size_t ambient_dim = 0;
  std::vector<RatVector> generators;
};

/// Linearly independent functionals l_1, ..., l_d. x is positive when the
/// first nonzero l_i(x) is positive; this is a total order on Q^d.
struct OrderCertificate {
  std::vector<RatVector> functionals;

  int sign(const RatVector& x) const;
  int compare(const RatVector& x, const RatVector& y) const;
};

class NotSalient : public std::runtime_error {
 public:
  explicit NotSalient(FarkasCertificate cert)
      : std::runtime_error("cone is not salient"), farkas(std::move(cert)) {}
  FarkasCertificate farkas;  // for salience_constraints(cone)
};

/// l . g >= 1 for every generator g; feasible iff the cone is salient.
std::vector<LinearConstraint> salience_constraints(const RatCone& cone);

/// Extends the cone to a lexicographic total order: l_1 is strictly positive
/// on every generator, the remaining functionals complete l_1 to a basis of
/// the dual. Throws NotSalient.
OrderCertificate total_order_extend(const RatCone& cone);

/// Full-rank functionals and every generator strictly positive.
bool verify_order_certificate(const RatCone& cone, const OrderCertificate& cert);

/// Rank of a list of rational vectors.
std::size_t rational_rank(const std::vector<RatVector>& vectors);

}  // namespace afx
