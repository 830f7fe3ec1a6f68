#include "afx/crossed/decide.hpp"

#include "afx/linalg/normal_form.hpp"

#include <numeric>

namespace afx {

namespace {

IntVector unit_vector(std::size_t n, std::size_t i) {
  IntVector e(n, Int(0));
  e[i] = 1;
  return e;
}

IntMatrix shift_power(const EmbedProblem& p, std::size_t times) {
  const std::size_t n = endo_dimension(p);
  if (!p.diagram.stationary) return IntMatrix::identity(n);
  return p.diagram.matrix().power(p.endo.shift * times);
}

// Pushes needed to decide equality in the limit: d for stationary, 0 for
// finite depth (the final stage is the limit).
std::size_t kill_pushes(const EmbedProblem& p) { return p.diagram.stationary ? endo_dimension(p) : 0; }

IntMatrix push_matrix(const EmbedProblem& p, std::size_t k) {
  const std::size_t n = endo_dimension(p);
  if (!p.diagram.stationary || k == 0) return IntMatrix::identity(n);
  return p.diagram.matrix().power(k);
}

std::pair<Rat, Rat> abs_interval(const Rat& lo, const Rat& hi) {
  if (lo >= 0) return {lo, hi};
  if (hi <= 0) return {-hi, -lo};
  return {Rat(0), std::max(Rat(-lo), hi)};
}

Rat pow_rat(const Rat& x, std::size_t k) {
  Rat r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= x;
  return r;
}

// Odometer over [-t, t]^n restricted to the shell max|x_i| = t, in
// lexicographic order. Calls f(x) until it returns true.
template <typename F>
bool for_each_shell(std::size_t n, long t, F&& f) {
  std::vector<long> x(n, -t);
  for (;;) {
    bool on_shell = false;
    for (long v : x)
      if (v == t || v == -t) on_shell = true;
    if (on_shell && f(x)) return true;
    std::size_t k = n;
    while (k > 0 && x[k - 1] == t) {
      x[k - 1] = -t;
      --k;
    }
    if (k == 0) return false;
    ++x[k - 1];
  }
}

struct SmallMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<long long> a;
  long long operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

std::optional<SmallMatrix> to_small(const IntMatrix& m, std::size_t box) {
  const Int limit = Int(1) << 62;
  SmallMatrix s{m.rows(), m.cols(), std::vector<long long>(m.rows() * m.cols())};
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Int row = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      row += abs(m(i, j));
      s.a[i * m.cols() + j] = m(i, j).get_si();
    }
    if (row * static_cast<unsigned long>(box) >= limit) return std::nullopt;
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------- FOP

FopResult fop_check(const EmbedProblem& p, std::size_t orbit_bound, const Rat& precision) {
  const Diagram& d = p.diagram;
  const IntMatrix& f = p.endo.mat;
  const std::size_t n = endo_dimension(p);
  const IntMatrix kill = push_matrix(p, kill_pushes(p));
  const IntMatrix ms = shift_power(p, 1);

  FopResult out;
  std::vector<std::optional<OrbitEntry>> entries(n);
  IntMatrix fk = IntMatrix::identity(n);
  IntMatrix mk = IntMatrix::identity(n);
  for (std::size_t k = 1; k <= orbit_bound; ++k) {
    fk = fk * f;
    mk = mk * ms;
    const IntMatrix diff = fk - mk;
    bool all = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (entries[i]) continue;
      IntVector v = diff.col(i);
      for (std::size_t j = 0; j <= kill_pushes(p); ++j) {
        if (is_zero(v)) {
          entries[i] = OrbitEntry{i, k, j};
          break;
        }
        if (d.stationary) v = d.matrix() * v;
      }
      all = all && entries[i].has_value();
    }
    if (all) break;
  }
  (void)kill;
  bool complete = true;
  for (const auto& e : entries) complete = complete && e.has_value();
  if (complete) {
    out.outcome = FopResult::Outcome::FOP;
    std::size_t l = 1;
    for (const auto& e : entries) {
      out.table.push_back(*e);
      l = std::lcm(l, e->period);
    }
    out.common_period = l;
    return out;
  }

  if (!d.stationary) {
    const Int det = f.determinant();
    if (abs(det) != 1) {
      out.outcome = FopResult::Outcome::NotFOP;
      out.reason = InfiniteOrbitReason::Determinant;
      out.determinant = det;
    }
    return out;
  }
  if (!is_primitive(d.matrix())) return out;
  const PerronEnclosure e = perron_enclosure(d.matrix(), precision);
  Rat mu_lo = 0, mu_hi = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Int& c = f(i, 0);
    if (c >= 0) {
      mu_lo += c * e.eigvec_lo[i];
      mu_hi += c * e.eigvec_hi[i];
    } else {
      mu_lo += c * e.eigvec_hi[i];
      mu_hi += c * e.eigvec_lo[i];
    }
  }
  const Rat g_lo = pow_rat(e.lambda_lo, p.endo.shift);
  const Rat g_hi = pow_rat(e.lambda_hi, p.endo.shift);
  const auto [a_lo, a_hi] = abs_interval(mu_lo, mu_hi);
  if (a_hi < g_lo || a_lo > g_hi) {
    out.outcome = FopResult::Outcome::NotFOP;
    out.reason = InfiniteOrbitReason::PerronGrowth;
    out.witness_generator = 0;
    out.mu_lo = mu_lo;
    out.mu_hi = mu_hi;
    out.growth_lo = g_lo;
    out.growth_hi = g_hi;
  }
  return out;
}

// ---------------------------------------------------------------- witnesses

const char* to_string(WitnessSource s) {
  return s == WitnessSource::BoxEnumeration ? "BoxEnumeration" : "StageLattice";
}

std::optional<HWitness> h_witness_search(const EmbedProblem& p, std::size_t stage_bound, std::size_t box_bound,
                                         WitnessSearchOptions options) {
  const std::size_t n = endo_dimension(p);
  const IntMatrix dmat = difference_matrix(p);
  const std::size_t max_push = p.diagram.stationary ? stage_bound : 0;
  std::vector<IntMatrix> pos;
  for (std::size_t k = 0; k <= max_push; ++k) pos.push_back(push_matrix(p, k) * dmat);
  const IntMatrix kill = push_matrix(p, kill_pushes(p)) * dmat;

  auto make = [&](const IntVector& x, std::size_t k, WitnessSource src) {
    HWitness w;
    w.x = K0Element{source_stage(p), x};
    w.h = K0Element{h_stage(p), dmat * x};
    w.pushes = k;
    w.pushed = pos[k] * x;
    w.source = src;
    return w;
  };

  if (!dmat.is_zero()) {
    std::vector<SmallMatrix> small;
    bool fits = true;
    for (const auto& m : pos) {
      auto s = to_small(m, box_bound);
      if (!s) {
        fits = false;
        break;
      }
      small.push_back(*s);
    }
    auto small_kill = to_small(kill, box_bound);
    fits = fits && small_kill.has_value();

    std::optional<std::pair<std::vector<long>, std::size_t>> found;
    for (std::size_t t = 1; t <= box_bound && !found; ++t) {
      for_each_shell(n, static_cast<long>(t), [&](const std::vector<long>& x) {
        if (fits) {
          for (std::size_t k = 0; k < small.size(); ++k) {
            const SmallMatrix& m = small[k];
            bool nonneg = true;
            for (std::size_t i = 0; i < n && nonneg; ++i) {
              long long v = 0;
              for (std::size_t j = 0; j < n; ++j) v += m(i, j) * x[j];
              nonneg = v >= 0;
            }
            if (!nonneg) continue;
            bool zero = true;
            for (std::size_t i = 0; i < n && zero; ++i) {
              long long v = 0;
              for (std::size_t j = 0; j < n; ++j) v += (*small_kill)(i, j) * x[j];
              zero = v == 0;
            }
            if (zero) return false;
            found = std::make_pair(x, k);
            return true;
          }
          return false;
        }
        IntVector xv(n);
        for (std::size_t i = 0; i < n; ++i) xv[i] = x[i];
        for (std::size_t k = 0; k < pos.size(); ++k) {
          if (!is_nonnegative(pos[k] * xv)) continue;
          if (is_zero(kill * xv)) return false;
          found = std::make_pair(x, k);
          return true;
        }
        return false;
      });
    }
    if (found) {
      IntVector xv(n);
      for (std::size_t i = 0; i < n; ++i) xv[i] = found->first[i];
      return make(xv, found->second, WitnessSource::BoxEnumeration);
    }
  }

  if (!options.lattice_fallback || dmat.is_zero()) return std::nullopt;
  for (std::size_t k = 0; k < pos.size(); ++k) {
    const Lattice l = Lattice::column_span(pos[k]);
    const auto r = lattice_meets_orthant(l, Int(static_cast<unsigned long>(box_bound)));
    const auto* w = std::get_if<OrthantWitness>(&r);
    if (!w) continue;
    const auto x = solve_integer(pos[k], w->vector);
    if (!x) throw std::logic_error("lattice witness outside the image");
    if (is_zero(kill * *x)) continue;
    return make(*x, k, WitnessSource::StageLattice);
  }
  return std::nullopt;
}

bool verify_h_witness(const EmbedProblem& p, const HWitness& w) {
  const Diagram& d = p.diagram;
  const std::size_t n = endo_dimension(p);
  if (w.x.stage != source_stage(p) || w.h.stage != h_stage(p)) return false;
  if (w.x.vec.size() != n || w.h.vec.size() != n) return false;
  // alpha_*(x) - x computed from the definition, not from the search matrices.
  const IntVector image = p.endo.mat * w.x.vec;
  const IntVector self = push(d, w.x, w.h.stage);
  if (image - self != w.h.vec) return false;
  if (!d.has_stage(w.h.stage + w.pushes)) return false;
  const IntVector pushed = push(d, w.h, w.h.stage + w.pushes);
  if (pushed != w.pushed || !is_nonnegative(pushed)) return false;
  return class_equal(d, w.h, K0Element{w.h.stage, IntVector(n, Int(0))}).not_equal();
}

// ---------------------------------------------------------------- functional

IntVector characteristic_polynomial(const IntMatrix& m) {
  const std::size_t n = m.rows();
  IntVector c(n + 1, Int(0));
  c[n] = 1;
  IntMatrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix next = m * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = next;
    const IntMatrix am = m * mk;
    Int tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / static_cast<unsigned long>(k);
  }
  return c;
}

std::vector<Int> positive_integer_eigenvalues(const IntMatrix& m) {
  const IntVector c = characteristic_polynomial(m);
  Int bound = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Int row = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) row += abs(m(i, j));
    bound = std::max(bound, row);
  }
  std::vector<Int> roots;
  for (Int t = bound; t >= 1; --t) {
    Int v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * t + c[i];
    if (v == 0) roots.push_back(t);
  }
  return roots;
}

std::optional<InvariantFunctional> invariant_functional(const EmbedProblem& p) {
  const Diagram& d = p.diagram;
  const IntMatrix& f = p.endo.mat;
  const std::size_t n = endo_dimension(p);
  const std::vector<Int> candidates = d.stationary ? positive_integer_eigenvalues(d.matrix()) : std::vector<Int>{Int(1)};
  for (const Int& lambda : candidates) {
    Int growth = 1;
    for (std::size_t i = 0; i < p.endo.shift; ++i) growth *= lambda;
    std::vector<LinearConstraint> cons;
    for (std::size_t i = 0; i < n; ++i) {
      RatVector e(n, Rat(0));
      e[i] = 1;
      cons.push_back({e, Relation::GreaterEq, Rat(1)});
    }
    for (std::size_t j = 0; j < n; ++j) {
      RatVector row(n), frow(n);
      for (std::size_t i = 0; i < n; ++i) {
        row[i] = d.stationary ? Rat(d.matrix()(i, j) - (i == j ? lambda : Int(0))) : Rat(0);
        frow[i] = f(i, j) - (i == j ? growth : Int(0));
      }
      if (d.stationary) cons.push_back({row, Relation::Equal, Rat(0)});
      cons.push_back({frow, Relation::Equal, Rat(0)});
    }
    const auto lp = exact_lp_feasible(n, cons);
    if (lp.feasible()) return InvariantFunctional{primitive_integer_vector(*lp.point), lambda};
  }
  return std::nullopt;
}

bool verify_invariant_functional(const EmbedProblem& p, const InvariantFunctional& fn) {
  const Diagram& d = p.diagram;
  const std::size_t n = endo_dimension(p);
  if (fn.ell.size() != n || fn.lambda <= 0) return false;
  for (const auto& v : fn.ell)
    if (v <= 0) return false;
  Int growth = 1;
  for (std::size_t i = 0; i < p.endo.shift; ++i) growth *= fn.lambda;
  if (d.stationary && left_multiply(fn.ell, d.matrix()) != scaled(fn.ell, fn.lambda)) return false;
  if (!d.stationary && fn.lambda != 1) return false;
  return left_multiply(fn.ell, p.endo.mat) == scaled(fn.ell, growth);
}

// ---------------------------------------------------------------- verdicts

const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::CertifiedEmbeddable: return "CertifiedEmbeddable";
    case VerdictKind::CertifiedNotEmbeddable: return "CertifiedNotEmbeddable";
    case VerdictKind::Unknown: return "Unknown";
  }
  return "?";
}

const char* to_string(EmbeddableReason r) {
  switch (r) {
    case EmbeddableReason::FOP: return "FOP";
    case EmbeddableReason::SimpleUnital: return "SimpleUnital";
    case EmbeddableReason::InvariantFaithfulFunctional: return "InvariantFaithfulFunctional";
    case EmbeddableReason::TrivialIntersectionExhausted: return "TrivialIntersectionExhausted";
  }
  return "?";
}

PartialIsometryData partial_isometry_data(const EmbedProblem& p, const HWitness& w) {
  PartialIsometryData d;
  const std::size_t n = w.x.vec.size();
  d.p.resize(n);
  d.q.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    d.p[i] = w.x.vec[i] > 0 ? w.x.vec[i] : Int(0);
    d.q[i] = w.x.vec[i] < 0 ? Int(-w.x.vec[i]) : Int(0);
  }
  d.alpha_p = p.endo.mat * d.p;
  d.alpha_q = p.endo.mat * d.q;
  d.r = w.h.vec;
  d.stage = w.h.stage;
  d.support = "diag(p, alpha(q), r)";
  d.range = "diag(alpha(p), q, 0)";
  d.crossed_part = "diag(p u*, u q, 0)";
  return d;
}

bool verify_partial_isometry_data(const EmbedProblem& p, const HWitness& w, const PartialIsometryData& d) {
  const Diagram& dg = p.diagram;
  const std::size_t n = w.x.vec.size();
  if (d.p.size() != n || d.q.size() != n || d.stage != w.h.stage) return false;
  if (!is_nonnegative(d.p) || !is_nonnegative(d.q) || d.p - d.q != w.x.vec) return false;
  if (d.alpha_p != p.endo.mat * d.p || d.alpha_q != p.endo.mat * d.q || d.r != w.h.vec) return false;
  // [alpha(p)] + [q] = [p] + [alpha(q)] + [r] at the stage of r.
  const IntVector p_here = push(dg, K0Element{w.x.stage, d.p}, d.stage);
  const IntVector q_here = push(dg, K0Element{w.x.stage, d.q}, d.stage);
  return d.alpha_p + q_here == p_here + d.alpha_q + d.r;
}

EmbeddabilityVerdict decide_embeddable(const EmbedProblem& p, const Budget& budget) {
  validate_problem(p);
  EmbeddabilityVerdict v;
  v.budget = budget;
  if (auto w = h_witness_search(p, budget.stages, budget.box)) {
    v.kind = VerdictKind::CertifiedNotEmbeddable;
    v.isometry = partial_isometry_data(p, *w);
    v.witness = std::move(w);
    return v;
  }
  const Diagram& d = p.diagram;
  if (d.stationary && d.unital) {
    if (auto k = primitivity_exponent(d.matrix())) {
      v.kind = VerdictKind::CertifiedEmbeddable;
      v.reason = EmbeddableReason::SimpleUnital;
      v.simplicity = SimplicityData{*k, K0Element{0, d.sizes.at(0)}};
      return v;
    }
  }
  FopResult fop = fop_check(p, budget.orbit, budget.precision);
  if (fop.outcome == FopResult::Outcome::FOP) {
    v.kind = VerdictKind::CertifiedEmbeddable;
    v.reason = EmbeddableReason::FOP;
    v.fop = std::move(fop);
    return v;
  }
  if (auto fn = invariant_functional(p)) {
    v.kind = VerdictKind::CertifiedEmbeddable;
    v.reason = EmbeddableReason::InvariantFaithfulFunctional;
    v.functional = std::move(fn);
    return v;
  }
  if (!d.stationary) {
    const Lattice l = Lattice::column_span(difference_matrix(p));
    const auto r = lattice_meets_orthant(l, Int(static_cast<unsigned long>(budget.box)));
    if (const auto* e = std::get_if<OrthantEmpty>(&r)) {
      v.kind = VerdictKind::CertifiedEmbeddable;
      v.reason = EmbeddableReason::TrivialIntersectionExhausted;
      v.empty_intersection = *e;
      return v;
    }
  }
  v.kind = VerdictKind::Unknown;
  return v;
}

bool verify_fop_table(const EmbedProblem& p, const FopResult& fop) {
  const Diagram& d = p.diagram;
  const std::size_t n = endo_dimension(p);
  if (fop.outcome != FopResult::Outcome::FOP || fop.table.size() != n) return false;
  std::vector<bool> covered(n, false);
  for (const auto& e : fop.table) {
    if (e.generator >= n || e.period == 0 || covered[e.generator]) return false;
    covered[e.generator] = true;
    // alpha_*^period(e_i) = e_i, checked by class equality in the limit.
    const IntVector image = p.endo.mat.power(e.period) * unit_vector(n, e.generator);
    const K0Element src{source_stage(p), unit_vector(n, e.generator)};
    const K0Element img{src.stage + p.endo.shift * e.period, image};
    if (!class_equal(d, img, src).equal()) return false;
  }
  return true;
}

namespace {

bool verify_simplicity(const EmbedProblem& p, const SimplicityData& s) {
  const Diagram& d = p.diagram;
  if (!d.stationary || !d.unital) return false;
  if (s.unit != K0Element{0, d.sizes.at(0)}) return false;
  if (s.primitivity_exponent == 0) return false;
  return d.matrix().power(s.primitivity_exponent).is_positive();
}

}  // namespace

bool verify_verdict(const EmbedProblem& p, const EmbeddabilityVerdict& v) {
  try {
    validate_problem(p);
  } catch (const std::invalid_argument&) {
    return false;
  }
  switch (v.kind) {
    case VerdictKind::Unknown: return true;
    case VerdictKind::CertifiedNotEmbeddable:
      return v.witness && v.isometry && verify_h_witness(p, *v.witness) &&
             verify_partial_isometry_data(p, *v.witness, *v.isometry);
    case VerdictKind::CertifiedEmbeddable:
      switch (v.reason) {
        case EmbeddableReason::SimpleUnital: return v.simplicity && verify_simplicity(p, *v.simplicity);
        case EmbeddableReason::FOP: return v.fop && verify_fop_table(p, *v.fop);
        case EmbeddableReason::InvariantFaithfulFunctional:
          return v.functional && verify_invariant_functional(p, *v.functional);
        case EmbeddableReason::TrivialIntersectionExhausted:
          return !p.diagram.stationary && v.empty_intersection &&
                 verify_orthant_empty(Lattice::column_span(difference_matrix(p)), *v.empty_intersection);
      }
  }
  return false;
}

// ---------------------------------------------------------------- transforms

EmbedProblem power_transform(const EmbedProblem& p, long m, std::size_t depth) {
  if (m == 0) throw std::invalid_argument("power_transform: m must be nonzero");
  EmbedProblem base = p;
  if (m < 0) {
    const auto cert = automorphism_certificate(p.diagram, p.endo, depth);
    if (!cert) throw CrossedError(CrossedErrorKind::NoInverseCertificate, "no integral inverse up to the depth bound");
    if (cert->k >= p.endo.shift) {
      base.endo = LimitEndomorphism{cert->g, cert->k - p.endo.shift};
    } else {
      base.endo = LimitEndomorphism{p.diagram.matrix().power(p.endo.shift - cert->k) * cert->g, 0};
    }
  }
  const std::size_t times = static_cast<std::size_t>(m < 0 ? -m : m);
  EmbedProblem out = base;
  out.endo.mat = base.endo.mat.power(times);
  out.endo.shift = base.endo.shift * times;
  return out;
}

EmbedProblem unitize_problem(const EmbedProblem& p) {
  EmbedProblem out = p;
  const IntMatrix one{{1}};
  for (auto& s : out.diagram.sizes) s.push_back(Int(1));
  for (auto& a : out.diagram.maps) a = IntMatrix::block_diagonal(a, one);
  out.endo.mat = IntMatrix::block_diagonal(p.endo.mat, one);
  if (out.subgroup)
    for (auto& g : *out.subgroup) g.push_back(Int(0));
  return out;
}

// ---------------------------------------------------------------- serialization

json to_json(const FopResult& f) {
  json out = json::object();
  out["outcome"] = f.outcome == FopResult::Outcome::FOP ? "FOP" : f.outcome == FopResult::Outcome::NotFOP ? "NotFOP" : "Unknown";
  if (f.outcome == FopResult::Outcome::FOP) {
    out["common_period"] = f.common_period;
    json table = json::array();
    for (const auto& e : f.table) {
      json row = json::object();
      row["generator"] = e.generator;
      row["period"] = e.period;
      row["pushes"] = e.pushes;
      table.push_back(row);
    }
    out["table"] = table;
  } else if (f.outcome == FopResult::Outcome::NotFOP) {
    out["reason"] = f.reason == InfiniteOrbitReason::PerronGrowth ? "PerronGrowth" : "Determinant";
    out["witness_generator"] = f.witness_generator;
    if (f.reason == InfiniteOrbitReason::PerronGrowth) {
      out["mu"] = json::array({to_json(f.mu_lo), to_json(f.mu_hi)});
      out["lambda_power"] = json::array({to_json(f.growth_lo), to_json(f.growth_hi)});
    } else {
      out["determinant"] = to_json(f.determinant);
    }
  }
  return out;
}

FopResult fop_from_json(const json& j, const std::string& ptr) {
  FopResult f;
  const json& outcome = require_field(j, "outcome", ptr);
  if (outcome != "FOP") throw SchemaError(child_pointer(ptr, "outcome"), "only FOP tables are certificates");
  f.outcome = FopResult::Outcome::FOP;
  f.common_period = count_from_json(require_field(j, "common_period", ptr), child_pointer(ptr, "common_period"));
  const json& table = require_field(j, "table", ptr);
  const std::string tp = child_pointer(ptr, "table");
  if (!table.is_array()) throw SchemaError(tp, "expected an array");
  for (std::size_t i = 0; i < table.size(); ++i) {
    const std::string rp = child_pointer(tp, i);
    OrbitEntry e;
    e.generator = count_from_json(require_field(table[i], "generator", rp), child_pointer(rp, "generator"));
    e.period = count_from_json(require_field(table[i], "period", rp), child_pointer(rp, "period"));
    e.pushes = count_from_json(require_field(table[i], "pushes", rp), child_pointer(rp, "pushes"));
    f.table.push_back(e);
  }
  return f;
}

json to_json(const HWitness& w) {
  json out = json::object();
  out["x"] = to_json(w.x);
  out["h"] = to_json(w.h);
  out["pushes"] = w.pushes;
  out["pushed"] = to_json(w.pushed);
  out["source"] = to_string(w.source);
  return out;
}

HWitness witness_from_json(const json& j, const std::string& ptr) {
  HWitness w;
  w.x = element_from_json(require_field(j, "x", ptr), child_pointer(ptr, "x"));
  w.h = element_from_json(require_field(j, "h", ptr), child_pointer(ptr, "h"));
  w.pushes = count_from_json(require_field(j, "pushes", ptr), child_pointer(ptr, "pushes"));
  w.pushed = int_vector_from_json(require_field(j, "pushed", ptr), child_pointer(ptr, "pushed"));
  const json& src = require_field(j, "source", ptr);
  if (src == "BoxEnumeration") w.source = WitnessSource::BoxEnumeration;
  else if (src == "StageLattice") w.source = WitnessSource::StageLattice;
  else throw SchemaError(child_pointer(ptr, "source"), "unknown witness source");
  return w;
}

namespace {

json isometry_to_json(const PartialIsometryData& d) {
  json out = json::object();
  out["p"] = to_json(d.p);
  out["q"] = to_json(d.q);
  out["alpha_p"] = to_json(d.alpha_p);
  out["alpha_q"] = to_json(d.alpha_q);
  out["r"] = to_json(d.r);
  out["stage"] = d.stage;
  out["support"] = d.support;
  out["range"] = d.range;
  out["crossed_part"] = d.crossed_part;
  return out;
}

PartialIsometryData isometry_from_json(const json& j, const std::string& ptr) {
  PartialIsometryData d;
  d.p = int_vector_from_json(require_field(j, "p", ptr), child_pointer(ptr, "p"));
  d.q = int_vector_from_json(require_field(j, "q", ptr), child_pointer(ptr, "q"));
  d.alpha_p = int_vector_from_json(require_field(j, "alpha_p", ptr), child_pointer(ptr, "alpha_p"));
  d.alpha_q = int_vector_from_json(require_field(j, "alpha_q", ptr), child_pointer(ptr, "alpha_q"));
  d.r = int_vector_from_json(require_field(j, "r", ptr), child_pointer(ptr, "r"));
  d.stage = count_from_json(require_field(j, "stage", ptr), child_pointer(ptr, "stage"));
  d.support = require_field(j, "support", ptr).get<std::string>();
  d.range = require_field(j, "range", ptr).get<std::string>();
  d.crossed_part = require_field(j, "crossed_part", ptr).get<std::string>();
  return d;
}

}  // namespace

json to_json(const EmbeddabilityVerdict& v) {
  json out = json::object();
  out["kind"] = to_string(v.kind);
  if (v.kind == VerdictKind::CertifiedEmbeddable) out["reason"] = to_string(v.reason);
  json cert = json::object();
  if (v.witness) cert["witness"] = to_json(*v.witness);
  if (v.isometry) cert["partial_isometry"] = isometry_to_json(*v.isometry);
  if (v.fop) cert["fop"] = to_json(*v.fop);
  if (v.functional) {
    json f = json::object();
    f["ell"] = to_json(v.functional->ell);
    f["lambda"] = to_json(v.functional->lambda);
    cert["functional"] = f;
  }
  if (v.simplicity) {
    json s = json::object();
    s["primitivity_exponent"] = v.simplicity->primitivity_exponent;
    s["unit"] = to_json(v.simplicity->unit);
    cert["simplicity"] = s;
  }
  if (v.empty_intersection) {
    json e = json::object();
    e["farkas"] = to_json(v.empty_intersection->farkas.multipliers);
    cert["empty_intersection"] = e;
  }
  out["certificate"] = cert;
  json b = json::object();
  b["stages"] = v.budget.stages;
  b["box"] = v.budget.box;
  b["orbit"] = v.budget.orbit;
  b["precision"] = to_json(v.budget.precision);
  out["budget"] = b;
  return out;
}

EmbeddabilityVerdict verdict_from_json(const json& j, const std::string& ptr) {
  EmbeddabilityVerdict v;
  const json& kind = require_field(j, "kind", ptr);
  if (kind == "CertifiedEmbeddable") v.kind = VerdictKind::CertifiedEmbeddable;
  else if (kind == "CertifiedNotEmbeddable") v.kind = VerdictKind::CertifiedNotEmbeddable;
  else if (kind == "Unknown") v.kind = VerdictKind::Unknown;
  else throw SchemaError(child_pointer(ptr, "kind"), "unknown verdict kind");
  if (v.kind == VerdictKind::CertifiedEmbeddable) {
    const json& reason = require_field(j, "reason", ptr);
    if (reason == "FOP") v.reason = EmbeddableReason::FOP;
    else if (reason == "SimpleUnital") v.reason = EmbeddableReason::SimpleUnital;
    else if (reason == "InvariantFaithfulFunctional") v.reason = EmbeddableReason::InvariantFaithfulFunctional;
    else if (reason == "TrivialIntersectionExhausted") v.reason = EmbeddableReason::TrivialIntersectionExhausted;
    else throw SchemaError(child_pointer(ptr, "reason"), "unknown reason");
  }
  const std::string cp = child_pointer(ptr, "certificate");
  const json& cert = require_field(j, "certificate", ptr);
  if (cert.contains("witness")) v.witness = witness_from_json(cert["witness"], child_pointer(cp, "witness"));
  if (cert.contains("partial_isometry"))
    v.isometry = isometry_from_json(cert["partial_isometry"], child_pointer(cp, "partial_isometry"));
  if (cert.contains("fop") && v.reason == EmbeddableReason::FOP && v.kind == VerdictKind::CertifiedEmbeddable)
    v.fop = fop_from_json(cert["fop"], child_pointer(cp, "fop"));
  if (cert.contains("functional")) {
    const std::string fp = child_pointer(cp, "functional");
    InvariantFunctional f;
    f.ell = int_vector_from_json(require_field(cert["functional"], "ell", fp), child_pointer(fp, "ell"));
    f.lambda = int_from_json(require_field(cert["functional"], "lambda", fp), child_pointer(fp, "lambda"));
    v.functional = f;
  }
  if (cert.contains("simplicity")) {
    const std::string sp = child_pointer(cp, "simplicity");
    SimplicityData s;
    s.primitivity_exponent = count_from_json(require_field(cert["simplicity"], "primitivity_exponent", sp),
                                             child_pointer(sp, "primitivity_exponent"));
    s.unit = element_from_json(require_field(cert["simplicity"], "unit", sp), child_pointer(sp, "unit"));
    v.simplicity = s;
  }
  if (cert.contains("empty_intersection")) {
    const std::string ep = child_pointer(cp, "empty_intersection");
    v.empty_intersection = OrthantEmpty{FarkasCertificate{
        rat_vector_from_json(require_field(cert["empty_intersection"], "farkas", ep), child_pointer(ep, "farkas"))}};
  }
  if (j.contains("budget")) {
    const std::string bp = child_pointer(ptr, "budget");
    const json& b = j["budget"];
    v.budget.stages = count_from_json(require_field(b, "stages", bp), child_pointer(bp, "stages"));
    v.budget.box = count_from_json(require_field(b, "box", bp), child_pointer(bp, "box"));
    v.budget.orbit = count_from_json(require_field(b, "orbit", bp), child_pointer(bp, "orbit"));
    v.budget.precision = rat_from_json(require_field(b, "precision", bp), child_pointer(bp, "precision"));
  }
  return v;
}

}  // namespace afx
