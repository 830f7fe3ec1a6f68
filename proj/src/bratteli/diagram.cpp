#include "afx/bratteli/diagram.hpp"

#include "afx/linalg/normal_form.hpp"

namespace afx {

namespace {

[[noreturn]] void fail(DiagramErrorKind kind, const std::string& what) { throw DiagramError(kind, what); }

void check_stage(const Diagram& d, std::size_t stage) {
  if (!d.has_stage(stage))
    fail(DiagramErrorKind::StageOutOfRange, "stage " + std::to_string(stage) + " beyond final stage " +
                                                std::to_string(d.final_stage()));
}

void check_size_step(const IntVector& from, const IntVector& to, const IntMatrix& a, bool unital, std::size_t n) {
  const IntVector image = a * from;
  if (unital && image != to)
    fail(DiagramErrorKind::NonUnitalFlaggedUnital,
         "unital flag set but s_" + std::to_string(n + 1) + " != A_" + std::to_string(n) + " s_" + std::to_string(n));
  for (std::size_t i = 0; i < to.size(); ++i)
    if (to[i] < image[i])
      fail(DiagramErrorKind::SizeMismatch, "s_" + std::to_string(n + 1) + " is smaller than A_" + std::to_string(n) +
                                               " s_" + std::to_string(n) + " at vertex " + std::to_string(i));
}

}  // namespace

const char* to_string(DiagramErrorKind kind) {
  switch (kind) {
    case DiagramErrorKind::SizeMismatch: return "SizeMismatch";
    case DiagramErrorKind::NegativeMultiplicity: return "NegativeMultiplicity";
    case DiagramErrorKind::NonUnitalFlaggedUnital: return "NonUnitalFlaggedUnital";
    case DiagramErrorKind::StageOutOfRange: return "StageOutOfRange";
  }
  return "?";
}

const char* to_string(NotPositiveReason reason) {
  switch (reason) {
    case NotPositiveReason::NegativeIsPositive: return "NegativeIsPositive";
    case NotPositiveReason::PerronFunctional: return "PerronFunctional";
    case NotPositiveReason::FinalStageNegative: return "FinalStageNegative";
  }
  return "?";
}

std::size_t Diagram::vertices(std::size_t stage) const {
  if (stationary) return matrix().rows();
  check_stage(*this, stage);
  return sizes.at(stage).size();
}

const IntMatrix& Diagram::map(std::size_t stage) const {
  if (stationary) return matrix();
  if (stage >= maps.size()) fail(DiagramErrorKind::StageOutOfRange, "no map out of stage " + std::to_string(stage));
  return maps[stage];
}

const IntMatrix& Diagram::matrix() const {
  if (!stationary || maps.empty()) throw std::logic_error("matrix() requires a stationary diagram");
  return maps[0];
}

Diagram Diagram::make_stationary(const IntMatrix& m, const IntVector& s0, bool unital) {
  return Diagram{{s0}, {m}, true, unital};
}

void validate(const Diagram& d) {
  if (d.sizes.empty()) fail(DiagramErrorKind::SizeMismatch, "no stage sizes given");
  for (std::size_t n = 0; n < d.sizes.size(); ++n)
    for (const auto& s : d.sizes[n])
      if (s <= 0) fail(DiagramErrorKind::SizeMismatch, "s_" + std::to_string(n) + " has a non-positive entry");
  for (std::size_t n = 0; n < d.maps.size(); ++n)
    if (!d.maps[n].is_nonnegative())
      fail(DiagramErrorKind::NegativeMultiplicity, "A_" + std::to_string(n) + " has a negative entry");

  if (d.stationary) {
    if (d.maps.empty()) fail(DiagramErrorKind::SizeMismatch, "stationary diagram without a matrix");
    const IntMatrix& m = d.maps[0];
    if (!m.is_square() || m.rows() == 0) fail(DiagramErrorKind::SizeMismatch, "stationary matrix must be square");
    for (std::size_t n = 1; n < d.maps.size(); ++n)
      if (d.maps[n] != m) fail(DiagramErrorKind::SizeMismatch, "stationary diagram with differing maps");
    for (std::size_t n = 0; n < d.sizes.size(); ++n)
      if (d.sizes[n].size() != m.rows())
        fail(DiagramErrorKind::SizeMismatch, "s_" + std::to_string(n) + " length differs from the vertex count");
    for (std::size_t n = 0; n + 1 < d.sizes.size(); ++n) check_size_step(d.sizes[n], d.sizes[n + 1], m, d.unital, n);
    return;
  }

  if (d.sizes.size() != d.maps.size() + 1)
    fail(DiagramErrorKind::SizeMismatch, "finite-depth diagram needs one more size vector than maps");
  for (std::size_t n = 0; n < d.maps.size(); ++n) {
    const IntMatrix& a = d.maps[n];
    if (a.cols() != d.sizes[n].size() || a.rows() != d.sizes[n + 1].size())
      fail(DiagramErrorKind::SizeMismatch, "A_" + std::to_string(n) + " shape does not match stage sizes");
    check_size_step(d.sizes[n], d.sizes[n + 1], a, d.unital, n);
  }
}

IntVector push(const Diagram& d, const K0Element& x, std::size_t to_stage) {
  if (to_stage < x.stage) throw std::invalid_argument("push to an earlier stage");
  check_stage(d, x.stage);
  check_stage(d, to_stage);
  if (x.vec.size() != d.vertices(x.stage)) fail(DiagramErrorKind::SizeMismatch, "element length mismatch");
  IntVector v = x.vec;
  for (std::size_t n = x.stage; n < to_stage; ++n) v = d.map(n) * v;
  return v;
}

ClassEquality class_equal(const Diagram& d, const K0Element& x, const K0Element& y) {
  const std::size_t c = std::max(x.stage, y.stage);
  IntVector z = push(d, x, c) - push(d, y, c);
  const std::size_t last = d.stationary ? c + d.vertices(0) : d.final_stage();
  for (std::size_t n = c;; ++n) {
    if (is_zero(z)) return {ClassEquality::Outcome::Equal, n};
    if (n == last) break;
    z = d.map(n) * z;
  }
  return {ClassEquality::Outcome::NotEqual, 0};
}

std::optional<std::size_t> positive_push_depth(const Diagram& d, const K0Element& x, std::size_t depth) {
  check_stage(d, x.stage);
  IntVector v = x.vec;
  for (std::size_t k = 0;; ++k) {
    if (is_nonnegative(v)) return k;
    if (k == depth || !d.has_stage(x.stage + k + 1)) return std::nullopt;
    v = d.map(x.stage + k) * v;
  }
}

PositivityVerdict positivity(const Diagram& d, const K0Element& x, std::size_t depth, const Rat& precision) {
  PositivityVerdict out;
  if (x.vec.size() != d.vertices(x.stage)) fail(DiagramErrorKind::SizeMismatch, "element length mismatch");
  // Finite-depth diagrams are decided at their final stage, whatever the depth.
  const std::size_t budget = d.stationary ? depth : d.final_stage() - x.stage;
  out.depth_searched = budget;
  if (auto k = positive_push_depth(d, x, budget)) {
    out.outcome = PositivityVerdict::Outcome::Positive;
    out.stage = x.stage + *k;
    out.pushes = *k;
    out.pushed = push(d, x, out.stage);
    return out;
  }
  const K0Element neg{x.stage, -x.vec};
  if (auto k = positive_push_depth(d, neg, budget)) {
    if (class_equal(d, x, K0Element{x.stage, IntVector(x.vec.size(), Int(0))}).not_equal()) {
      out.outcome = PositivityVerdict::Outcome::NotPositive;
      out.reason = NotPositiveReason::NegativeIsPositive;
      out.stage = x.stage + *k;
      out.pushes = *k;
      out.pushed = push(d, neg, out.stage);
      return out;
    }
  }
  if (!d.stationary) {
    out.outcome = PositivityVerdict::Outcome::NotPositive;
    out.reason = NotPositiveReason::FinalStageNegative;
    out.stage = d.final_stage();
    out.pushed = push(d, x, out.stage);
    return out;
  }
  if (is_primitive(d.matrix())) {
    const PerronEnclosure e = perron_enclosure(d.matrix(), precision);
    Rat upper = 0;
    for (std::size_t i = 0; i < x.vec.size(); ++i) upper += x.vec[i] * (x.vec[i] >= 0 ? e.eigvec_hi[i] : e.eigvec_lo[i]);
    if (upper < 0) {
      out.outcome = PositivityVerdict::Outcome::NotPositive;
      out.reason = NotPositiveReason::PerronFunctional;
      out.stage = x.stage;
      out.functional_bound = upper;
      return out;
    }
  }
  return out;
}

DiagramSummary diagram_summary(const Diagram& d, const Rat& precision) {
  DiagramSummary s;
  if (d.unital) s.order_unit = K0Element{0, d.sizes.at(0)};
  if (d.stationary) {
    s.primitive = is_primitive(d.matrix());
    s.simple = s.primitive;
    if (s.primitive) s.perron = perron_enclosure(d.matrix(), precision);
  }
  return s;
}

ScaleVerdict in_scale(const Diagram& d, const K0Element& x, std::size_t depth) {
  if (!d.unital) throw std::invalid_argument("scale membership needs a unital diagram");
  const IntVector unit = push(d, K0Element{0, d.sizes.at(0)}, x.stage);
  const auto lower = positivity(d, x, depth);
  const auto upper = positivity(d, K0Element{x.stage, unit - x.vec}, depth);
  if (lower.positive() && upper.positive()) return ScaleVerdict::InScale;
  if (lower.not_positive() || upper.not_positive()) return ScaleVerdict::NotInScale;
  return ScaleVerdict::Unknown;
}

K0Element normalize(const Diagram& d, const K0Element& x) {
  K0Element out = x;
  while (out.stage > 0) {
    const auto pre = solve_integer(d.map(out.stage - 1), out.vec);
    if (!pre) break;
    out.vec = *pre;
    --out.stage;
  }
  return out;
}

Diagram diagram_from_json(const json& j, const std::string& ptr) {
  Diagram d;
  const json& sizes = require_field(j, "sizes", ptr);
  const std::string sp = child_pointer(ptr, "sizes");
  if (!sizes.is_array()) throw SchemaError(sp, "expected an array of size vectors");
  for (std::size_t i = 0; i < sizes.size(); ++i) d.sizes.push_back(int_vector_from_json(sizes[i], child_pointer(sp, i)));
  const json& maps = require_field(j, "maps", ptr);
  const std::string mp = child_pointer(ptr, "maps");
  if (!maps.is_array()) throw SchemaError(mp, "expected an array of matrices");
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const std::size_t cols_hint = i < d.sizes.size() ? d.sizes[i].size() : 0;
    d.maps.push_back(int_matrix_from_json(maps[i], child_pointer(mp, i), cols_hint));
  }
  if (j.contains("stationary")) d.stationary = bool_from_json(j["stationary"], child_pointer(ptr, "stationary"));
  if (j.contains("unital")) d.unital = bool_from_json(j["unital"], child_pointer(ptr, "unital"));
  return d;
}

json to_json(const Diagram& d) {
  json out = json::object();
  json sizes = json::array();
  for (const auto& s : d.sizes) sizes.push_back(to_json(s));
  json maps = json::array();
  for (const auto& m : d.maps) maps.push_back(to_json(m));
  out["sizes"] = sizes;
  out["maps"] = maps;
  out["stationary"] = d.stationary;
  out["unital"] = d.unital;
  return out;
}

K0Element element_from_json(const json& j, const std::string& ptr) {
  K0Element x;
  x.stage = count_from_json(require_field(j, "stage", ptr), child_pointer(ptr, "stage"));
  x.vec = int_vector_from_json(require_field(j, "vec", ptr), child_pointer(ptr, "vec"));
  return x;
}

json to_json(const K0Element& x) {
  json out = json::object();
  out["stage"] = x.stage;
  out["vec"] = to_json(x.vec);
  return out;
}

}  // namespace afx
