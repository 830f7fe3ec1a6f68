#pragma once

#include "afx/bratteli/diagram.hpp"
#include "afx/linalg/lattice.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace afx {

/// alpha_* on K_0 of a diagram. Stationary diagrams: [x at stage n] maps to
/// [F x at stage n + shift], well defined because F M = M F. Finite-depth
/// diagrams: F acts on the final stage and shift is 0.
struct LimitEndomorphism {
  IntMatrix mat;
  std::size_t shift = 0;
};

struct EmbedProblem {
  Diagram diagram;
  LimitEndomorphism endo;
  /// Generators of a subgroup H of the final-stage group (subgroup mode).
  std::optional<std::vector<IntVector>> subgroup;
};

enum class CrossedErrorKind {
  ShapeMismatch,
  NotIntertwining,
  SingularF,
  UnitClassNotFixed,
  NoInverseCertificate,
  ConeMeetsH,
  NotTorsionFreeQuotient,
  UnsupportedPresentation,
  NotSalient,
};

const char* to_string(CrossedErrorKind kind);

class CrossedError : public std::invalid_argument {
 public:
  CrossedError(CrossedErrorKind kind, const std::string& what) : std::invalid_argument(what), kind(kind) {}
  CrossedErrorKind kind;
};

/// Diagram validity, shapes, F M = M F, det F != 0 and, for unital
/// diagrams, alpha_*[1] = [1].
void validate_problem(const EmbedProblem& p);

/// Vertex count of the group F acts on.
std::size_t endo_dimension(const EmbedProblem& p);

/// D with alpha_*(x) - x = [D x at h_stage(p)] for x at stage 0 (stationary)
/// or at the final stage: D = F - M^shift, respectively F - I.
IntMatrix difference_matrix(const EmbedProblem& p);
std::size_t h_stage(const EmbedProblem& p);
/// Stage at which the elements x of H_alpha = {alpha_*(x) - x} are taken.
std::size_t source_stage(const EmbedProblem& p);

struct AutomorphismCertificate {
  std::size_t k = 0;
  IntMatrix g;  // F G = G F = M^k
};

/// Smallest k <= depth with M^k F^{-1} integral. Throws SingularF.
std::optional<AutomorphismCertificate> automorphism_certificate(const Diagram& d, const LimitEndomorphism& e,
                                                                std::size_t depth);
bool verify_automorphism_certificate(const Diagram& d, const LimitEndomorphism& e, const AutomorphismCertificate& c);

EmbedProblem problem_from_json(const json& j, const std::string& ptr = "");
json to_json(const EmbedProblem& p);

}  // namespace afx
