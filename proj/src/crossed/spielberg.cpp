#include "afx/crossed/spielberg.hpp"

#include "afx/linalg/normal_form.hpp"

namespace afx {

namespace {

Lattice requested_kernel(const FinitePresentation& fp, const std::vector<IntVector>& h, KernelMode mode) {
  const Lattice ha = Lattice::from_generators(fp.dim, fp.h_alpha);
  if (mode == KernelMode::Torsion) return ha.saturation();
  const Lattice k = ha + Lattice::from_generators(fp.dim, h);
  if (!k.is_saturated())
    throw CrossedError(CrossedErrorKind::NotTorsionFreeQuotient, "H_alpha + h is not saturated; the quotient has torsion");
  return k;
}

RatCone image_cone(const IntMatrix& theta, const std::vector<IntVector>& gens) {
  RatCone c{theta.rows(), {}};
  for (const auto& g : gens) {
    const IntVector v = theta * g;
    c.generators.emplace_back(v.begin(), v.end());
  }
  return c;
}

}  // namespace

FinitePresentation finite_presentation(const EmbedProblem& p) {
  if (p.diagram.stationary)
    throw CrossedError(CrossedErrorKind::UnsupportedPresentation, "only finite-depth diagrams have a finite presentation");
  validate_problem(p);
  FinitePresentation fp;
  fp.dim = endo_dimension(p);
  for (std::size_t i = 0; i < fp.dim; ++i) {
    IntVector e(fp.dim, Int(0));
    e[i] = 1;
    fp.cone_generators.push_back(e);
  }
  fp.h_alpha = difference_matrix(p).columns();
  return fp;
}

std::vector<Int> torsion_invariants(std::size_t dim, const std::vector<IntVector>& gens) {
  std::vector<Int> out;
  if (gens.empty()) return out;
  for (const auto& f : smith_normal_form(IntMatrix::from_columns(gens, dim)).invariant_factors())
    if (f > 1) out.push_back(f);
  return out;
}

QuotientTarget quotient_target(const FinitePresentation& fp, const std::vector<IntVector>& h, KernelMode mode) {
  QuotientTarget t;
  t.kernel = requested_kernel(fp, h, mode);
  t.torsion = torsion_invariants(fp.dim, fp.h_alpha);
  const std::size_t r = t.kernel.rank();
  if (r == 0) {
    t.theta = IntMatrix::identity(fp.dim);
  } else {
    // u B v = diag(1, ..., 1, 0, ...) for a saturated basis B, so the rows of
    // u past the rank vanish exactly on the kernel.
    const SmithForm snf = smith_normal_form(t.kernel.basis());
    IntMatrix rows(fp.dim - r, fp.dim);
    for (std::size_t i = r; i < fp.dim; ++i)
      for (std::size_t j = 0; j < fp.dim; ++j) rows(i - r, j) = snf.u(i, j);
    t.theta = rows.rows() == 0 ? rows : hermite_normal_form(rows).h;
  }

  const std::size_t n = fp.cone_generators.size();
  if (n > 0) {
    std::vector<LinearConstraint> cons;
    for (std::size_t i = 0; i < n; ++i) {
      RatVector e(n, Rat(0));
      e[i] = 1;
      cons.push_back({e, Relation::GreaterEq, Rat(0)});
    }
    cons.push_back({RatVector(n, Rat(1)), Relation::Equal, Rat(1)});
    for (std::size_t row = 0; row < t.theta.rows(); ++row) {
      RatVector c(n);
      for (std::size_t i = 0; i < n; ++i) {
        Int v = 0;
        for (std::size_t j = 0; j < fp.dim; ++j) v += t.theta(row, j) * fp.cone_generators[i][j];
        c[i] = v;
      }
      cons.push_back({c, Relation::Equal, Rat(0)});
    }
    if (exact_lp_feasible(n, cons).feasible())
      throw CrossedError(CrossedErrorKind::ConeMeetsH, "a nonzero combination of cone generators lies in the kernel");
  }
  t.image_cone = image_cone(t.theta, fp.cone_generators);
  t.order = total_order_extend(t.image_cone);
  return t;
}

QuotientTarget quotient_target(const EmbedProblem& p, KernelMode mode) {
  const FinitePresentation fp = finite_presentation(p);
  return quotient_target(fp, p.subgroup.value_or(std::vector<IntVector>{}), mode);
}

bool verify_quotient_target(const FinitePresentation& fp, const std::vector<IntVector>& h, KernelMode mode,
                            const QuotientTarget& t) {
  Lattice expected;
  try {
    expected = requested_kernel(fp, h, mode);
  } catch (const CrossedError&) {
    return false;
  }
  if (t.theta.cols() != fp.dim || t.theta.rows() + expected.rank() != fp.dim) return false;
  const Lattice ker = t.theta.rows() == 0 ? Lattice::column_span(IntMatrix::identity(fp.dim))
                                          : Lattice::column_span(integer_kernel(t.theta));
  if (ker != expected || t.kernel != expected) return false;
  if (t.theta.rows() > 0) {
    const SmithForm snf = smith_normal_form(t.theta);
    if (snf.rank != t.theta.rows()) return false;
    for (const auto& f : snf.invariant_factors())
      if (f != 1) return false;
  }
  if (mode == KernelMode::Torsion) {
    const Lattice ha = Lattice::from_generators(fp.dim, fp.h_alpha);
    if (ha.rank() != expected.rank()) return false;
    for (const auto& g : ha.basis().columns())
      if (!expected.contains(g)) return false;
  }
  const RatCone cone = image_cone(t.theta, fp.cone_generators);
  return verify_order_certificate(cone, t.order);
}

json to_json(const QuotientTarget& t) {
  json out = json::object();
  out["theta"] = to_json(t.theta);
  json ker = json::array();
  for (const auto& g : t.kernel.basis().columns()) ker.push_back(to_json(g));
  out["kernel_basis"] = ker;
  json tor = json::array();
  for (const auto& f : t.torsion) tor.push_back(to_json(f));
  out["torsion"] = tor;
  json order = json::array();
  for (const auto& l : t.order.functionals) order.push_back(to_json(l));
  out["order_functionals"] = order;
  return out;
}

}  // namespace afx
