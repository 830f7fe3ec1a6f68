#pragma once

#include "afx/linalg/int_matrix.hpp"
#include "afx/linalg/json_io.hpp"
#include "afx/linalg/perron.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace afx {

/// Bratteli diagram: stage n has |sizes[n]| vertices with matrix sizes
/// sizes[n]; maps[n] (|s_{n+1}| x |s_n|) gives the edge multiplicities into
/// stage n+1. A stationary diagram repeats maps[0] forever; otherwise the
/// diagram stops at stage maps.size().
struct Diagram {
  std::vector<IntVector> sizes;
  std::vector<IntMatrix> maps;
  bool stationary = false;
  bool unital = false;

  /// Vertex count at a stage.
  std::size_t vertices(std::size_t stage) const;
  /// A_n; for stationary diagrams always M.
  const IntMatrix& map(std::size_t stage) const;
  /// The repeated matrix M of a stationary diagram.
  const IntMatrix& matrix() const;
  /// Last stage of a finite-depth diagram.
  std::size_t final_stage() const { return maps.size(); }
  bool has_stage(std::size_t stage) const { return stationary || stage <= final_stage(); }

  static Diagram make_stationary(const IntMatrix& m, const IntVector& s0, bool unital);
};

enum class DiagramErrorKind { SizeMismatch, NegativeMultiplicity, NonUnitalFlaggedUnital, StageOutOfRange };

class DiagramError : public std::invalid_argument {
 public:
  DiagramError(DiagramErrorKind kind, const std::string& what) : std::invalid_argument(what), kind(kind) {}
  DiagramErrorKind kind;
};

const char* to_string(DiagramErrorKind kind);

void validate(const Diagram& d);

/// Dimension-group element: class of `vec` at `stage`.
struct K0Element {
  std::size_t stage = 0;
  IntVector vec;

  friend bool operator==(const K0Element&, const K0Element&) = default;
};

/// A_{to-1} ... A_{x.stage} x.vec. Throws DiagramError(StageOutOfRange).
IntVector push(const Diagram& d, const K0Element& x, std::size_t to_stage);

struct ClassEquality {
  enum class Outcome { Equal, NotEqual, Unknown };
  Outcome outcome = Outcome::Unknown;
  /// First stage where the pushes agree (Equal only).
  std::size_t stage = 0;

  bool equal() const { return outcome == Outcome::Equal; }
  bool not_equal() const { return outcome == Outcome::NotEqual; }
};

/// Equality in the direct limit. Exact on both supported presentations: a
/// stationary diagram with d vertices identifies z with 0 iff M^d z = 0, and a
/// finite-depth diagram is compared at its final stage.
ClassEquality class_equal(const Diagram& d, const K0Element& x, const K0Element& y);

enum class NotPositiveReason {
  NegativeIsPositive,  // -x is positive and x is not 0
  PerronFunctional,    // upper bound of l.x is negative, l the Perron functional
  FinalStageNegative,  // finite-depth diagram: the final-stage image has a negative entry
};

const char* to_string(NotPositiveReason reason);

struct PositivityVerdict {
  enum class Outcome { Positive, NotPositive, Unknown };
  Outcome outcome = Outcome::Unknown;
  /// Positive: stage of the nonnegative push. NotPositive/NegativeIsPositive:
  /// stage at which -x is nonnegative.
  std::size_t stage = 0;
  std::size_t pushes = 0;
  IntVector pushed;
  NotPositiveReason reason = NotPositiveReason::NegativeIsPositive;
  /// PerronFunctional: the certified upper bound of l.x.
  Rat functional_bound;
  std::size_t depth_searched = 0;

  bool positive() const { return outcome == Outcome::Positive; }
  bool not_positive() const { return outcome == Outcome::NotPositive; }
};

/// `precision` is the Perron enclosure width used by the functional rule.
PositivityVerdict positivity(const Diagram& d, const K0Element& x, std::size_t depth,
                             const Rat& precision = Rat(1, Int(1) << 40));

/// Nonnegative push of x within `depth` stages, without the NotPositive rules.
std::optional<std::size_t> positive_push_depth(const Diagram& d, const K0Element& x, std::size_t depth);

struct DiagramSummary {
  std::optional<K0Element> order_unit;
  bool primitive = false;
  bool simple = false;
  std::optional<PerronEnclosure> perron;
};

DiagramSummary diagram_summary(const Diagram& d, const Rat& precision = Rat(1, Int(1) << 40));

enum class ScaleVerdict { InScale, NotInScale, Unknown };

/// 0 <= x <= [1] in a unital diagram. Throws std::invalid_argument otherwise.
ScaleVerdict in_scale(const Diagram& d, const K0Element& x, std::size_t depth);

/// Pulls x back to the smallest stage where an exact integer preimage exists.
K0Element normalize(const Diagram& d, const K0Element& x);

Diagram diagram_from_json(const json& j, const std::string& ptr = "");
json to_json(const Diagram& d);
K0Element element_from_json(const json& j, const std::string& ptr);
json to_json(const K0Element& x);

}  // namespace afx
