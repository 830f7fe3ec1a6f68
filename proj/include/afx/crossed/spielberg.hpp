#pragma once

#include "afx/crossed/problem.hpp"
#include "afx/linalg/order.hpp"

#include <vector>

namespace afx {

/// Z^dim with a finitely generated positive cone and the subgroup H_alpha.
struct FinitePresentation {
  std::size_t dim = 0;
  std::vector<IntVector> cone_generators;
  std::vector<IntVector> h_alpha;
};

/// Finite-depth problems only: the final stage with the orthant cone and
/// H_alpha = Im(F - I). Stationary diagrams throw UnsupportedPresentation.
FinitePresentation finite_presentation(const EmbedProblem& p);

enum class KernelMode { Given, Torsion };

/// The invariant factors > 1 of Z^d / span(gens) restricted to its torsion part.
std::vector<Int> torsion_invariants(std::size_t dim, const std::vector<IntVector>& gens);

/// theta : Z^dim -> Z^rank, surjective, with kernel the preimage of h in
/// Z^dim / H_alpha. The image cone is extended to a total order.
struct QuotientTarget {
  IntMatrix theta;
  Lattice kernel;
  std::vector<Int> torsion;  // torsion of Z^dim / H_alpha
  RatCone image_cone;
  OrderCertificate order;
};

/// Torsion mode kills the torsion of Z^dim / H_alpha (h is ignored). Given
/// mode kills H_alpha + h, which must be saturated (NotTorsionFreeQuotient).
/// Throws ConeMeetsH when a nonzero element of the cone dies under theta.
QuotientTarget quotient_target(const FinitePresentation& fp, const std::vector<IntVector>& h, KernelMode mode);
QuotientTarget quotient_target(const EmbedProblem& p, KernelMode mode);

/// ker theta equals the requested kernel (compared as Hermite forms), theta
/// is surjective, and every cone generator is positive in the order.
bool verify_quotient_target(const FinitePresentation& fp, const std::vector<IntVector>& h, KernelMode mode,
                            const QuotientTarget& t);

json to_json(const QuotientTarget& t);

}  // namespace afx
