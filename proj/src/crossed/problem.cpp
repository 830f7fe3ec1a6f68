#include "afx/crossed/problem.hpp"

namespace afx {

namespace {

[[noreturn]] void fail(CrossedErrorKind kind, const std::string& what) { throw CrossedError(kind, what); }

}  // namespace

const char* to_string(CrossedErrorKind kind) {
  switch (kind) {
    case CrossedErrorKind::ShapeMismatch: return "ShapeMismatch";
    case CrossedErrorKind::NotIntertwining: return "NotIntertwining";
    case CrossedErrorKind::SingularF: return "SingularF";
    case CrossedErrorKind::UnitClassNotFixed: return "UnitClassNotFixed";
    case CrossedErrorKind::NoInverseCertificate: return "NoInverseCertificate";
    case CrossedErrorKind::ConeMeetsH: return "ConeMeetsH";
    case CrossedErrorKind::NotTorsionFreeQuotient: return "NotTorsionFreeQuotient";
    case CrossedErrorKind::UnsupportedPresentation: return "UnsupportedPresentation";
    case CrossedErrorKind::NotSalient: return "NotSalient";
  }
  return "?";
}

std::size_t endo_dimension(const EmbedProblem& p) {
  const Diagram& d = p.diagram;
  return d.stationary ? d.vertices(0) : d.vertices(d.final_stage());
}

void validate_problem(const EmbedProblem& p) {
  validate(p.diagram);
  const Diagram& d = p.diagram;
  const IntMatrix& f = p.endo.mat;
  const std::size_t n = endo_dimension(p);
  if (!f.is_square() || f.rows() != n)
    fail(CrossedErrorKind::ShapeMismatch, "endomorphism matrix must be " + std::to_string(n) + " x " + std::to_string(n));
  if (d.stationary) {
    if (f * d.matrix() != d.matrix() * f) fail(CrossedErrorKind::NotIntertwining, "F M != M F");
  } else if (p.endo.shift != 0) {
    fail(CrossedErrorKind::ShapeMismatch, "finite-depth diagrams take shift 0");
  }
  if (f.determinant() == 0) fail(CrossedErrorKind::SingularF, "det F = 0");
  if (d.unital) {
    const IntVector unit = d.sizes.at(0);
    const K0Element one = d.stationary ? K0Element{0, unit} : K0Element{d.final_stage(), push(d, {0, unit}, d.final_stage())};
    const K0Element image{one.stage + p.endo.shift, f * one.vec};
    if (!class_equal(d, image, one).equal()) fail(CrossedErrorKind::UnitClassNotFixed, "alpha_*[1] != [1]");
  }
  if (p.subgroup)
    for (const auto& h : *p.subgroup)
      if (h.size() != n) fail(CrossedErrorKind::ShapeMismatch, "subgroup generator has wrong length");
}

IntMatrix difference_matrix(const EmbedProblem& p) {
  const Diagram& d = p.diagram;
  const IntMatrix& f = p.endo.mat;
  if (d.stationary) return f - d.matrix().power(p.endo.shift);
  return f - IntMatrix::identity(f.rows());
}

std::size_t h_stage(const EmbedProblem& p) {
  return p.diagram.stationary ? p.endo.shift : p.diagram.final_stage();
}

std::size_t source_stage(const EmbedProblem& p) {
  return p.diagram.stationary ? 0 : p.diagram.final_stage();
}

std::optional<AutomorphismCertificate> automorphism_certificate(const Diagram& d, const LimitEndomorphism& e,
                                                                std::size_t depth) {
  const auto inv = e.mat.rational_inverse();
  if (!inv) fail(CrossedErrorKind::SingularF, "det F = 0");
  const std::size_t n = e.mat.rows();
  IntMatrix mk = IntMatrix::identity(n);
  const std::size_t max_k = d.stationary ? depth : 0;
  for (std::size_t k = 0; k <= max_k; ++k) {
    IntMatrix g(n, n);
    bool integral = true;
    for (std::size_t i = 0; i < n && integral; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rat v = 0;
        for (std::size_t l = 0; l < n; ++l) v += mk(i, l) * (*inv)[l][j];
        if (v.get_den() != 1) {
          integral = false;
          break;
        }
        g(i, j) = v.get_num();
      }
    if (integral) return AutomorphismCertificate{k, g};
    if (d.stationary) mk = mk * d.matrix();
  }
  return std::nullopt;
}

bool verify_automorphism_certificate(const Diagram& d, const LimitEndomorphism& e, const AutomorphismCertificate& c) {
  const std::size_t n = e.mat.rows();
  if (!e.mat.is_square() || c.g.rows() != n || c.g.cols() != n) return false;
  if (!d.stationary && c.k != 0) return false;
  const IntMatrix mk = d.stationary ? d.matrix().power(c.k) : IntMatrix::identity(n);
  return e.mat * c.g == mk && c.g * e.mat == mk;
}

EmbedProblem problem_from_json(const json& j, const std::string& ptr) {
  EmbedProblem p;
  p.diagram = diagram_from_json(require_field(j, "diagram", ptr), child_pointer(ptr, "diagram"));
  const std::string ep = child_pointer(ptr, "endo");
  const json& endo = require_field(j, "endo", ptr);
  p.endo.mat = int_matrix_from_json(require_field(endo, "mat", ep), child_pointer(ep, "mat"));
  if (endo.contains("shift")) p.endo.shift = count_from_json(endo["shift"], child_pointer(ep, "shift"));
  if (j.contains("H") && !j["H"].is_null()) {
    const std::string hp = child_pointer(ptr, "H");
    if (!j["H"].is_array()) throw SchemaError(hp, "expected an array of generators");
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i < j["H"].size(); ++i) gens.push_back(int_vector_from_json(j["H"][i], child_pointer(hp, i)));
    p.subgroup = gens;
  }
  return p;
}

json to_json(const EmbedProblem& p) {
  json out = json::object();
  out["diagram"] = to_json(p.diagram);
  json endo = json::object();
  endo["mat"] = to_json(p.endo.mat);
  endo["shift"] = p.endo.shift;
  out["endo"] = endo;
  if (p.subgroup) {
    json h = json::array();
    for (const auto& g : *p.subgroup) h.push_back(to_json(g));
    out["H"] = h;
  }
  return out;
}

}  // namespace afx
