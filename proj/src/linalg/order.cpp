#include "afx/linalg/order.hpp"

namespace afx {

namespace {

bool strictly_positive_on(const RatVector& l, const std::vector<RatVector>& gens) {
  for (const auto& g : gens)
    if (dot(l, g) <= 0) return false;
  return true;
}

RatVector integral_representative(const RatVector& v) { return to_rat(primitive_integer_vector(v)); }

}  // namespace

int OrderCertificate::sign(const RatVector& x) const {
  for (const auto& l : functionals) {
    const Rat v = dot(l, x);
    if (v > 0) return 1;
    if (v < 0) return -1;
  }
  return 0;
}

int OrderCertificate::compare(const RatVector& x, const RatVector& y) const {
  RatVector diff(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - y[i];
  return sign(diff);
}

std::size_t rational_rank(const std::vector<RatVector>& vectors) {
  if (vectors.empty()) return 0;
  std::vector<RatVector> rows = vectors;
  const std::size_t cols = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const Rat f = rows[i][c] / rows[rank][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

std::vector<LinearConstraint> salience_constraints(const RatCone& cone) {
  std::vector<LinearConstraint> cons;
  for (const auto& g : cone.generators) cons.push_back({g, Relation::GreaterEq, Rat(1)});
  return cons;
}

OrderCertificate total_order_extend(const RatCone& cone) {
  const std::size_t d = cone.ambient_dim;
  for (const auto& g : cone.generators) {
    if (g.size() != d) throw std::invalid_argument("cone generator has wrong dimension");
    bool zero = true;
    for (const auto& x : g)
      if (x != 0) zero = false;
    if (zero) throw std::invalid_argument("cone generator is zero");
  }
  OrderCertificate cert;
  if (d == 0) return cert;

  std::vector<RatVector> candidates;
  for (std::size_t i = 0; i < d; ++i) {
    RatVector e(d, Rat(0));
    e[i] = 1;
    candidates.push_back(std::move(e));
  }
  candidates.emplace_back(d, Rat(1));
  RatVector first;
  for (const auto& c : candidates)
    if (strictly_positive_on(c, cone.generators)) {
      first = c;
      break;
    }
  if (first.empty()) {
    const auto lp = exact_lp_feasible(d, salience_constraints(cone));
    if (!lp.feasible()) throw NotSalient(*lp.farkas);
    first = integral_representative(*lp.point);
  }
  cert.functionals.push_back(first);
  for (std::size_t i = 0; i < d && cert.functionals.size() < d; ++i) {
    RatVector e(d, Rat(0));
    e[i] = 1;
    auto trial = cert.functionals;
    trial.push_back(e);
    if (rational_rank(trial) == trial.size()) cert.functionals.push_back(std::move(e));
  }
  return cert;
}

bool verify_order_certificate(const RatCone& cone, const OrderCertificate& cert) {
  const std::size_t d = cone.ambient_dim;
  if (cert.functionals.size() != d) return false;
  for (const auto& l : cert.functionals)
    if (l.size() != d) return false;
  if (rational_rank(cert.functionals) != d) return false;
  for (const auto& g : cone.generators) {
    if (g.size() != d) return false;
    if (cert.sign(g) <= 0) return false;
  }
  return true;
}

}  // namespace afx
