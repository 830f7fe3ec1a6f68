#pragma once

#include "afx/linalg/json_io.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace afx {

/// A finite metric space with a self-map. The metric comes either from
/// rational coordinates (Euclidean, compared through squared distances) or
/// from an explicit rational distance matrix.
struct FiniteDynSystem {
  std::vector<std::string> labels;
  std::optional<std::vector<RatVector>> coords;
  std::optional<RatMatrix> dist;
  std::vector<std::size_t> map;

  std::size_t size() const { return labels.size(); }
};

enum class SystemErrorKind {
  SizeMismatch,
  MissingMetric,
  MapOutOfRange,
  NotSymmetric,
  NonzeroDiagonal,
  NegativeDistance,
  TriangleInequality,
  BadEpsilon,
  NotBijective,
};

const char* to_string(SystemErrorKind kind);

class SystemError : public std::invalid_argument {
 public:
  SystemError(SystemErrorKind kind, const std::string& what) : std::invalid_argument(what), kind(kind) {}
  SystemErrorKind kind;
};

void validate(const FiniteDynSystem& sys);

/// d(i, j) < eps, decided exactly.
bool closer_than(const FiniteDynSystem& sys, std::size_t i, std::size_t j, const Rat& eps);

using PointSet = std::vector<std::size_t>;  // sorted indices

/// Points on a cycle of the graph x -> y iff d(phi(x), y) < eps.
PointSet chain_recurrent_set(const FiniteDynSystem& sys, const Rat& eps);

struct ChainReport {
  std::vector<Rat> epsilons;
  std::vector<PointSet> recurrent_sets;
  PointSet intersection;
};

/// epsilons must be nonempty and strictly descending.
ChainReport pseudo_nonwandering(const FiniteDynSystem& sys, const std::vector<Rat>& epsilons);

/// V is closed under eps-steps (the eps-neighbourhood of phi(V) lies in V)
/// and x in V is not within eps of phi(V).
struct AttractingSet {
  PointSet v;
  std::size_t x = 0;
};

/// None exactly when every point is eps-chain recurrent.
std::optional<AttractingSet> attracting_clopen_witness(const FiniteDynSystem& sys, const Rat& eps);
bool verify_attracting_set(const FiniteDynSystem& sys, const Rat& eps, const AttractingSet& a);

enum class RigidityOutcome { Rigid, NotMonotone, Violation };

const char* to_string(RigidityOutcome o);

struct RigidityResult {
  RigidityOutcome outcome = RigidityOutcome::Rigid;
  std::size_t witness = 0;           // NotMonotone: a point with g < 0
  std::vector<Int> g;                // f o phi^{-1} - f
  std::vector<PointSet> level_sets;  // Rigid: each is mapped onto itself
};

/// Throws NotBijective.
RigidityResult positivity_rigidity(const FiniteDynSystem& sys, const std::vector<Int>& f);

/// Points 1, 1/2, ..., 1/n, 0 on a line. The points 1/k are split into
/// consecutive cycles of lengths 2, 3, 4, ..., each permuted cyclically;
/// points past the last complete cycle and 0 are fixed.
FiniteDynSystem cycle_ladder(std::size_t n);

/// The integers -n..n placed on the unit circle by inverse stereographic
/// projection, plus the point (-1, 0) for infinity. k -> k + 1, n -> infinity,
/// infinity fixed.
FiniteDynSystem compactified_shift(std::size_t n);

/// 0, 1, 2 on a line with 2 -> 1 -> 0 -> 0.
FiniteDynSystem contracting_line();

/// Largest distance between circularly consecutive points of a planar
/// system, ordered by angle; an upper bound is returned as a rational whose
/// square is at least the true squared gap.
Rat max_consecutive_gap(const FiniteDynSystem& sys);

FiniteDynSystem system_from_json(const json& j, const std::string& ptr = "");
json to_json(const FiniteDynSystem& sys);
json to_json(const ChainReport& r, const FiniteDynSystem& sys);

}  // namespace afx
