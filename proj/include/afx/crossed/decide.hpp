#pragma once

#include "afx/crossed/problem.hpp"

#include <optional>
#include <string>
#include <vector>

namespace afx {

// ---- finite orbit property ----

struct OrbitEntry {
  std::size_t generator = 0;
  std::size_t period = 0;  // alpha_*^period(e_i) = e_i
  std::size_t pushes = 0;  // M^pushes (F^period - M^{period*shift}) e_i = 0
};

enum class InfiniteOrbitReason {
  PerronGrowth,  // l F = mu l with |mu| separated from lambda^shift
  Determinant,   // finite depth: |det F| != 1, so no power of F is I
};

struct FopResult {
  enum class Outcome { FOP, NotFOP, Unknown };
  Outcome outcome = Outcome::Unknown;
  std::vector<OrbitEntry> table;  // FOP
  std::size_t common_period = 0;  // FOP: lcm of the periods
  // NotFOP
  InfiniteOrbitReason reason = InfiniteOrbitReason::PerronGrowth;
  std::size_t witness_generator = 0;
  Rat mu_lo, mu_hi;          // interval for mu (PerronGrowth)
  Rat growth_lo, growth_hi;  // interval for lambda^shift (PerronGrowth)
  Int determinant;           // Determinant
};

FopResult fop_check(const EmbedProblem& p, std::size_t orbit_bound, const Rat& precision = Rat(1, Int(1) << 40));

// ---- H_alpha witnesses ----

enum class WitnessSource { BoxEnumeration, StageLattice };

const char* to_string(WitnessSource s);

/// h = alpha_*(x) - x with h positive and nonzero in the limit.
struct HWitness {
  K0Element x;               // at source_stage(p)
  K0Element h;               // D x at h_stage(p)
  std::size_t pushes = 0;    // h is nonnegative after this many pushes
  IntVector pushed;          // that nonnegative vector
  WitnessSource source = WitnessSource::BoxEnumeration;
};

struct WitnessSearchOptions {
  bool lattice_fallback = true;
};

/// Box phase: x with max-norm <= box_bound in order of max-norm shells, then
/// lexicographically; the first x whose h is positive within stage_bound
/// pushes and nonzero in the limit is returned (so the witness is canonical).
/// Lattice phase: nonnegative points of M^k Im(D) for k <= stage_bound.
std::optional<HWitness> h_witness_search(const EmbedProblem& p, std::size_t stage_bound, std::size_t box_bound,
                                         WitnessSearchOptions options = {});

bool verify_h_witness(const EmbedProblem& p, const HWitness& w);

// ---- invariant faithful functional ----

struct InvariantFunctional {
  IntVector ell;  // l > 0, l M = lambda l, l F = lambda^shift l
  Int lambda;
};

/// Positive integer roots of the characteristic polynomial of M, descending.
std::vector<Int> positive_integer_eigenvalues(const IntMatrix& m);
/// Coefficients c_0..c_n of det(t I - m), c_n = 1.
IntVector characteristic_polynomial(const IntMatrix& m);

std::optional<InvariantFunctional> invariant_functional(const EmbedProblem& p);
bool verify_invariant_functional(const EmbedProblem& p, const InvariantFunctional& f);

// ---- verdicts ----

struct Budget {
  std::size_t stages = 6;
  std::size_t box = 4;
  std::size_t orbit = 12;
  Rat precision = Rat(1, Int(1) << 40);
};

enum class VerdictKind { CertifiedEmbeddable, CertifiedNotEmbeddable, Unknown };
enum class EmbeddableReason { FOP, SimpleUnital, InvariantFaithfulFunctional, TrivialIntersectionExhausted };

const char* to_string(VerdictKind k);
const char* to_string(EmbeddableReason r);

/// Data of the non-finiteness argument for x = [p] - [q]: the vectors satisfy
/// F p + M^s q = M^s p + F q + r exactly at stage s, r = h positive.
struct PartialIsometryData {
  IntVector p, q, alpha_p, alpha_q, r;
  std::size_t stage = 0;
  std::string support;       // diag(p, alpha(q), r)
  std::string range;         // diag(alpha(p), q, 0)
  std::string crossed_part;  // diag(p u*, u q, 0)
};

PartialIsometryData partial_isometry_data(const EmbedProblem& p, const HWitness& w);
bool verify_partial_isometry_data(const EmbedProblem& p, const HWitness& w, const PartialIsometryData& d);

struct SimplicityData {
  std::size_t primitivity_exponent = 0;  // M^k > 0
  K0Element unit;
};

struct EmbeddabilityVerdict {
  VerdictKind kind = VerdictKind::Unknown;
  EmbeddableReason reason = EmbeddableReason::FOP;
  std::optional<HWitness> witness;
  std::optional<PartialIsometryData> isometry;
  std::optional<FopResult> fop;
  std::optional<InvariantFunctional> functional;
  std::optional<SimplicityData> simplicity;
  std::optional<OrthantEmpty> empty_intersection;
  Budget budget;
};

EmbeddabilityVerdict decide_embeddable(const EmbedProblem& p, const Budget& budget = {});

/// Re-checks a verdict's certificate with the diagram and linear-algebra
/// primitives only; never reruns a search. Unknown verdicts verify trivially.
bool verify_verdict(const EmbedProblem& p, const EmbeddabilityVerdict& v);

// ---- transforms ----

/// alpha^m. Negative m uses the automorphism certificate; throws
/// NoInverseCertificate when none exists within `depth`.
EmbedProblem power_transform(const EmbedProblem& p, long m, std::size_t depth = 8);

/// K_0 (+) Z with F (+) 1, i.e. H (+) 0.
EmbedProblem unitize_problem(const EmbedProblem& p);

json to_json(const FopResult& f);
/// Only FOP tables are accepted (they are the certificates).
FopResult fop_from_json(const json& j, const std::string& ptr = "");
json to_json(const HWitness& w);
HWitness witness_from_json(const json& j, const std::string& ptr = "");
/// Table check for an FOP result, by class equality.
bool verify_fop_table(const EmbedProblem& p, const FopResult& fop);

json to_json(const EmbeddabilityVerdict& v);
EmbeddabilityVerdict verdict_from_json(const json& j, const std::string& ptr = "");

}  // namespace afx
