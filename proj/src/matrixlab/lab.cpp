#include "afx/matrixlab/lab.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

namespace afx {

namespace {

constexpr double kUnitaryTol = 1e-9;

[[noreturn]] void fail(LabErrorKind kind, const std::string& what) { throw LabError(kind, what); }

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

CMatrix to_complex(const IntMatrix& m) {
  CMatrix out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_d();
  return out;
}

CMatrix unit(std::size_t n, std::size_t a, std::size_t b) {
  CMatrix e = CMatrix::Zero(n, n);
  e(a, b) = 1.0;
  return e;
}

// Diagonal blocks of a matrix on B (x) M_d, where index i * d + j carries
// block j; `off` receives the largest entry outside these blocks.
std::vector<CMatrix> diagonal_blocks(const CMatrix& m, std::size_t d, double& off) {
  const Eigen::Index n = m.rows() / static_cast<Eigen::Index>(d);
  std::vector<CMatrix> out(d, CMatrix(n, n));
  off = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const auto jr = static_cast<std::size_t>(r) % d, jc = static_cast<std::size_t>(c) % d;
      if (jr == jc) out[jr](r / d, c / d) = m(r, c);
      else off = std::max(off, std::abs(m(r, c)));
    }
  return out;
}

}  // namespace

const char* to_string(LabErrorKind kind) {
  switch (kind) {
    case LabErrorKind::NotUnitary: return "NotUnitary";
    case LabErrorKind::NotDivisible: return "NotDivisible";
    case LabErrorKind::SpectralFailure: return "SpectralFailure";
    case LabErrorKind::NonInvertible: return "NonInvertible";
    case LabErrorKind::PreconditionFailed: return "PreconditionFailed";
    case LabErrorKind::PeriodMismatch: return "PeriodMismatch";
    case LabErrorKind::AmbientTooLarge: return "AmbientTooLarge";
  }
  return "?";
}

double op_norm(const CMatrix& a) {
  if (a.size() == 0) return 0;
  const CMatrix h = a.rows() < a.cols() ? CMatrix(a * a.adjoint()) : CMatrix(a.adjoint() * a);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail(LabErrorKind::SpectralFailure, "eigenvalues of A*A did not converge");
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

DenseUnitary::DenseUnitary(CMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) fail(LabErrorKind::NotUnitary, "matrix is not square");
  const double gap = op_norm(m_.adjoint() * m_ - CMatrix::Identity(m_.rows(), m_.cols()));
  if (gap > kUnitaryTol) fail(LabErrorKind::NotUnitary, "||U*U - I|| = " + std::to_string(gap));
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

IntMatrix kron(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

IntMatrix shift_permutation(std::size_t n) {
  IntMatrix u(n, n);
  for (std::size_t i = 0; i < n; ++i) u((i + 1) % n, i) = 1;
  return u;
}

DenseUnitary shift_unitary(std::size_t n) {
  if (n == 0) throw std::invalid_argument("shift_unitary needs n >= 1");
  return DenseUnitary(to_complex(shift_permutation(n)));
}

DenseUnitary random_unitary(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  CMatrix z(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) z(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t j = 0; j < n; ++j) {
    const cplx d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return DenseUnitary(q);
}

RohlinTower rohlin_tower(std::size_t m_prime, std::size_t k) {
  if (k == 0 || m_prime == 0 || m_prime % k != 0)
    fail(LabErrorKind::NotDivisible, std::to_string(k) + " does not divide " + std::to_string(m_prime));
  RohlinTower t{k, m_prime, {}};
  for (std::size_t j = 0; j < k; ++j) {
    IntMatrix e(m_prime, m_prime);
    for (std::size_t i = j; i < m_prime; i += k) e(i, i) = 1;
    t.projections.push_back(e);
  }
  return t;
}

TowerCheck check_rohlin_tower(const RohlinTower& t, const std::vector<std::size_t>& leading_factors) {
  std::size_t lead = 1;
  IntMatrix u_lead = IntMatrix::identity(1);
  for (std::size_t n : leading_factors) {
    lead *= n;
    u_lead = kron(u_lead, shift_permutation(n));
  }
  const IntMatrix u = kron(u_lead, shift_permutation(t.m_prime));
  const IntMatrix ut = u.transpose();
  const IntMatrix id = IntMatrix::identity(lead * t.m_prime);
  std::vector<IntMatrix> e;
  for (const auto& p : t.projections) e.push_back(kron(IntMatrix::identity(lead), p));

  TowerCheck c;
  c.idempotent = c.self_adjoint = c.orthogonal = c.shifted = c.commutes = true;
  IntMatrix sum(id.rows(), id.cols());
  for (std::size_t j = 0; j < e.size(); ++j) {
    c.idempotent = c.idempotent && e[j] * e[j] == e[j];
    c.self_adjoint = c.self_adjoint && e[j].transpose() == e[j];
    for (std::size_t l = j + 1; l < e.size(); ++l) c.orthogonal = c.orthogonal && (e[j] * e[l]).is_zero();
    c.shifted = c.shifted && u * e[j] * ut == e[(j + 1) % e.size()];
    sum = sum + e[j];
  }
  c.sums_to_one = sum == id;
  std::size_t before = 1;
  for (std::size_t f = 0; f < leading_factors.size(); ++f) {
    const std::size_t n = leading_factors[f];
    const std::size_t after = lead / (before * n) * t.m_prime;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        IntMatrix eab(n, n);
        eab(a, b) = 1;
        const IntMatrix x = kron(kron(IntMatrix::identity(before), eab), IntMatrix::identity(after));
        for (const auto& p : e) c.commutes = c.commutes && x * p == p * x;
      }
    before *= n;
  }
  return c;
}

UnitaryLogPath::UnitaryLogPath(const DenseUnitary& u) {
  const CMatrix& m = u.matrix();
  // Eigenvectors of the Hermitian part of c u for a generic phase c.
  const cplx c = std::polar(1.0, 0.5772156649015329);
  const CMatrix h = (c * m + std::conj(c) * m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() == Eigen::Success) {
    q_ = es.eigenvectors();
    const Eigen::VectorXcd d = (q_.adjoint() * m * q_).diagonal();
    if (op_norm(m * q_ - q_ * d.asDiagonal()) <= 1e-8) {
      theta_.resize(d.size());
      for (Eigen::Index i = 0; i < d.size(); ++i) theta_(i) = std::arg(d(i));
      return;
    }
  }
  Eigen::ComplexSchur<CMatrix> schur(m);
  if (schur.info() != Eigen::Success) fail(LabErrorKind::SpectralFailure, "Schur decomposition did not converge");
  const CMatrix& t = schur.matrixT();
  q_ = schur.matrixU();
  const CMatrix strict = t.triangularView<Eigen::StrictlyUpper>();
  const double residual = op_norm(q_ * t.diagonal().asDiagonal() * q_.adjoint() - m);
  if (residual > 1e-8 || op_norm(strict) > 1e-8)
    fail(LabErrorKind::SpectralFailure, "eigendecomposition residual " + std::to_string(residual));
  theta_.resize(t.rows());
  for (Eigen::Index i = 0; i < t.rows(); ++i) theta_(i) = std::arg(t(i, i));
}

CMatrix UnitaryLogPath::at(double t) const {
  Eigen::VectorXcd d(theta_.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = std::polar(1.0, t * theta_(i));
  return q_ * d.asDiagonal() * q_.adjoint();
}

CMatrix polar_unitary(const CMatrix& a) {
  CMatrix x = a;
  const double scale = std::sqrt(static_cast<double>(a.rows()));
  for (int it = 0; it < 100; ++it) {
    Eigen::PartialPivLU<CMatrix> lu(x);
    if (!(lu.rcond() >= 1e-14)) fail(LabErrorKind::NonInvertible, "matrix is singular");
    const CMatrix next = 0.5 * (x + lu.inverse().adjoint());
    const double step = (next - x).norm();
    x = next;
    if (step <= 1e-14 * scale) break;
  }
  return x;
}

std::size_t TensorTruncation::ambient_dim() const {
  std::size_t d = 1;
  for (std::size_t n : factors) d *= n;
  return d;
}

CMatrix TensorTruncation::shift() const {
  CMatrix s = CMatrix::Identity(1, 1);
  for (std::size_t n : factors) s = kron(s, shift_unitary(n).matrix());
  return s;
}

CMatrix TensorTruncation::embed(std::size_t factor, const CMatrix& x) const {
  std::size_t before = 1, after = 1;
  for (std::size_t f = 0; f < factors.size(); ++f) {
    if (f < factor) before *= factors[f];
    if (f > factor) after *= factors[f];
  }
  return kron(kron(CMatrix::Identity(before, before), x), CMatrix::Identity(after, after));
}

std::vector<CMatrix> TensorTruncation::matrix_units(const std::vector<std::size_t>& which) const {
  std::vector<CMatrix> out;
  for (std::size_t f : which)
    for (std::size_t a = 0; a < factors[f]; ++a)
      for (std::size_t b = 0; b < factors[f]; ++b) out.push_back(embed(f, unit(factors[f], a, b)));
  return out;
}

TensorTruncation stabilize_truncation(const StabilizeSpec& spec) {
  if (spec.k < 2) fail(LabErrorKind::PreconditionFailed, "tower height must be at least 2");
  TensorTruncation t;
  t.factors = spec.fixed_factors;
  t.factors.insert(t.factors.end(), spec.unitary_factors.begin(), spec.unitary_factors.end());
  t.factors.push_back(spec.multiple * spec.k);
  if (t.ambient_dim() > spec.ambient_cap)
    fail(LabErrorKind::AmbientTooLarge, "ambient dimension " + std::to_string(t.ambient_dim()) + " exceeds the cap");
  return t;
}

namespace {

// The truncation shift as a permutation of the standard basis.
Eigen::PermutationMatrix<Eigen::Dynamic> shift_permutation_of(const TensorTruncation& t) {
  const CMatrix s = t.shift();
  Eigen::PermutationMatrix<Eigen::Dynamic> p(s.rows());
  for (Eigen::Index c = 0; c < s.cols(); ++c) {
    Eigen::Index r = 0;
    s.col(c).cwiseAbs().maxCoeff(&r);
    p.indices()(c) = static_cast<int>(r);
  }
  return p;
}

}  // namespace

StabilizeResult stabilize_experiment(const DenseUnitary& u, const StabilizeSpec& spec) {
  const TensorTruncation trunc = stabilize_truncation(spec);
  const std::size_t dim = trunc.ambient_dim();
  const std::size_t k = spec.k;
  const std::size_t m_prime = spec.multiple * k;
  if (static_cast<std::size_t>(u.dim()) != dim) fail(LabErrorKind::PreconditionFailed, "u has the wrong size");

  std::vector<std::size_t> fixed(spec.fixed_factors.size());
  for (std::size_t i = 0; i < fixed.size(); ++i) fixed[i] = i;
  const std::vector<CMatrix> b0 = trunc.matrix_units(fixed);
  for (const auto& b : b0)
    if (op_norm(commutator(u.matrix(), b)) > kUnitaryTol) fail(LabErrorKind::PreconditionFailed, "u does not commute with B_2");
  // u = u' (x) 1 on the tower factor, measured in Frobenius norm.
  const std::size_t outer = dim / m_prime;
  double off = 0;
  for (std::size_t i = 0; i < outer; ++i)
    for (std::size_t j = 0; j < outer; ++j) {
      const cplx c = u.matrix()(i * m_prime, j * m_prime);
      const auto block = u.matrix().block(i * m_prime, j * m_prime, m_prime, m_prime);
      off += (block - c * CMatrix::Identity(m_prime, m_prime)).squaredNorm();
    }
  if (std::sqrt(off) > kUnitaryTol) fail(LabErrorKind::PreconditionFailed, "u does not act trivially on the tower factor");

  const Eigen::PermutationMatrix<Eigen::Dynamic> s = shift_permutation_of(trunc);
  auto beta = [&](const CMatrix& x) -> CMatrix { return s * x * s.transpose(); };

  // u~_0 = 1, u~_j = u beta(u) ... beta^{j-1}(u)
  std::vector<CMatrix> ut{CMatrix::Identity(dim, dim)};
  CMatrix bu = u.matrix();
  for (std::size_t j = 1; j <= k; ++j) {
    ut.push_back(ut.back() * bu);
    bu = beta(bu);
  }
  const UnitaryLogPath path{DenseUnitary(ut[k])};

  CMatrix vp = CMatrix::Zero(dim, dim);
  for (std::size_t j = 0; j < k; ++j) {
    const double t = 1.0 - static_cast<double>(j) / static_cast<double>(k - 1);
    CMatrix w = path.at(t);
    for (std::size_t i = 0; i < j; ++i) w = beta(w);
    const CMatrix a = ut[j] * w;
    // Right multiplication by e_j keeps the columns whose tower index is j.
    for (std::size_t c = 0; c < dim; ++c)
      if ((c % m_prime) % k == j) vp.col(c) = a.col(c);
  }

  StabilizeResult r;
  r.k = k;
  r.m_prime = m_prime;
  r.ambient_dim = dim;
  r.bound = 4.0 / static_cast<double>(k - 1);
  r.path_bound = std::numbers::pi / static_cast<double>(k - 1);
  r.unitarity_gap = op_norm(vp * vp.adjoint() - CMatrix::Identity(dim, dim));
  const CMatrix v = polar_unitary(vp);
  r.polar_distance = op_norm(v - vp);
  r.defect = op_norm(u.matrix() - v * beta(v.adjoint()));
  for (const auto& b : b0) r.commutator = std::max(r.commutator, op_norm(commutator(v, b)));
  return r;
}

StabilizeResult stabilize_experiment(const StabilizeSpec& spec, std::uint64_t seed) {
  const TensorTruncation trunc = stabilize_truncation(spec);
  std::size_t before = 1, middle = 1;
  for (std::size_t n : spec.fixed_factors) before *= n;
  for (std::size_t n : spec.unitary_factors) middle *= n;
  const std::size_t after = spec.multiple * spec.k;
  const CMatrix r = random_unitary(middle, seed).matrix();
  const CMatrix u = kron(kron(CMatrix::Identity(before, before), r), CMatrix::Identity(after, after));
  return stabilize_experiment(DenseUnitary(u), spec);
}

std::vector<LevelReport> limit_periodic_verify(const NestedSystem& sys) {
  const TensorTruncation trunc{sys.factors};
  const std::size_t dim = trunc.ambient_dim();
  if (static_cast<std::size_t>(sys.w.rows()) != dim) fail(LabErrorKind::PreconditionFailed, "w has the wrong size");
  const CMatrix wa = sys.w.adjoint();
  std::vector<LevelReport> out;
  for (std::size_t level = 1; level <= sys.periods.size() && level <= sys.factors.size(); ++level) {
    std::vector<std::size_t> inside, outside;
    for (std::size_t f = 0; f < sys.factors.size(); ++f) (f < level ? inside : outside).push_back(f);
    const auto gens = trunc.matrix_units(inside);
    const auto rest = trunc.matrix_units(outside);
    LevelReport rep;
    rep.level = level;
    rep.period = sys.periods[level - 1];
    for (const auto& g : gens) {
      const CMatrix bg = sys.w * g * wa;
      for (const auto& h : rest) rep.invariance_residual = std::max(rep.invariance_residual, op_norm(commutator(bg, h)));
    }
    std::vector<CMatrix> cur = gens;
    for (std::size_t p = 1; p <= rep.period; ++p) {
      double worst = 0;
      for (std::size_t i = 0; i < cur.size(); ++i) {
        cur[i] = sys.w * cur[i] * wa;
        worst = std::max(worst, op_norm(cur[i] - gens[i]));
      }
      if (rep.minimal_period == 0 && worst <= kUnitaryTol) rep.minimal_period = p;
      if (p == rep.period) rep.period_residual = worst;
    }
    rep.ok = rep.period > 0 && rep.invariance_residual <= kUnitaryTol && rep.period_residual <= kUnitaryTol;
    out.push_back(rep);
  }
  return out;
}

CMatrix voiculescu_map(const NestedSystem& sys, std::size_t level, const CMatrix& b) {
  const std::size_t d = sys.periods.at(level - 1);
  const std::size_t dim = static_cast<std::size_t>(b.rows());
  CMatrix out = CMatrix::Zero(dim * d, dim * d);
  CMatrix cur = b;
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) out(r * d + j, c * d + j) = cur(r, c);
    cur = sys.w * cur * sys.w.adjoint();
  }
  return out;
}

EmbeddingReport voiculescu_embedding(const NestedSystem& sys, std::size_t level) {
  if (level == 0 || level > sys.periods.size()) throw std::invalid_argument("no such level");
  const auto reports = limit_periodic_verify(sys);
  if (!reports.at(level - 1).ok)
    fail(LabErrorKind::PeriodMismatch, "beta^d is not the identity on level " + std::to_string(level));
  const TensorTruncation trunc{sys.factors};
  const std::size_t dim = trunc.ambient_dim();
  const std::size_t d = sys.periods[level - 1];
  std::vector<std::size_t> inside;
  for (std::size_t f = 0; f < level; ++f) inside.push_back(f);
  const auto gens = trunc.matrix_units(inside);

  EmbeddingReport rep;
  rep.level = level;
  rep.period = d;
  std::vector<CMatrix> images;
  std::vector<std::vector<CMatrix>> blocks;
  for (const auto& g : gens) {
    images.push_back(voiculescu_map(sys, level, g));
    double off = 0;
    blocks.push_back(diagonal_blocks(images.back(), d, off));
    rep.homomorphism_residual = std::max(rep.homomorphism_residual, off);
  }
  // Images are block diagonal, so products are compared block by block.
  for (std::size_t i = 0; i < gens.size(); ++i) {
    rep.homomorphism_residual =
        std::max(rep.homomorphism_residual, op_norm(voiculescu_map(sys, level, gens[i].adjoint()) - images[i].adjoint()));
    for (std::size_t j = 0; j < gens.size(); ++j) {
      double off = 0;
      const auto prod = diagonal_blocks(voiculescu_map(sys, level, gens[i] * gens[j]), d, off);
      rep.homomorphism_residual = std::max(rep.homomorphism_residual, off);
      for (std::size_t b = 0; b < d; ++b)
        rep.homomorphism_residual =
            std::max(rep.homomorphism_residual, op_norm(prod[b] - blocks[i][b] * blocks[j][b]));
    }
  }
  // 1 (x) s as a permutation: e_{i d + j} -> e_{i d + (j + 1) mod d}.
  Eigen::PermutationMatrix<Eigen::Dynamic> one_s(static_cast<Eigen::Index>(dim * d));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < d; ++j) one_s.indices()(i * d + j) = static_cast<int>(i * d + (j + 1) % d);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const CMatrix lhs = voiculescu_map(sys, level, sys.w * gens[i] * sys.w.adjoint());
    const CMatrix rhs = one_s.transpose() * images[i] * one_s;
    rep.covariance_residual = std::max(rep.covariance_residual, op_norm(lhs - rhs));
  }

  std::vector<CMatrix> projections{CMatrix::Identity(dim, dim)};
  for (std::size_t f : inside)
    for (std::size_t a = 0; a < sys.factors[f]; ++a) projections.push_back(trunc.embed(f, unit(sys.factors[f], a, a)));
  rep.ranks_exact = true;
  for (const auto& p : projections) {
    const double tr = p.trace().real();
    const double tr_phi = voiculescu_map(sys, level, p).trace().real();
    const long rank = std::lround(tr);
    const long amplified = std::lround(tr_phi);
    rep.ranks.emplace_back(rank, amplified);
    const bool integral = std::abs(tr - static_cast<double>(rank)) <= kUnitaryTol &&
                          std::abs(tr_phi - static_cast<double>(amplified)) <= kUnitaryTol;
    rep.ranks_exact = rep.ranks_exact && integral && amplified == static_cast<long>(d) * rank;
  }
  return rep;
}

NestedSystem uhf_shift_system(std::size_t m) {
  NestedSystem sys;
  sys.name = "uhf-shift-" + std::to_string(m);
  std::size_t l = 1;
  for (std::size_t n = 1; n <= m; ++n) {
    sys.factors.push_back(n);
    l = std::lcm(l, n);
    sys.periods.push_back(l);
  }
  sys.w = TensorTruncation{sys.factors}.shift();
  return sys;
}

std::vector<NestedSystem> nested_corpus() {
  std::vector<NestedSystem> out;
  out.push_back({"identity", {2, 3}, CMatrix::Identity(6, 6), {1, 1}});
  out.push_back(uhf_shift_system(3));
  out.push_back(uhf_shift_system(4));
  out.push_back({"swap", {2}, shift_unitary(2).matrix(), {2}});
  CMatrix phase = CMatrix::Identity(2, 2);
  phase(1, 1) = cplx(0, 1);
  out.push_back({"quarter-phase", {2}, phase, {4}});
  out.push_back({"swap-and-phase", {2, 2}, kron(shift_unitary(2).matrix(), phase), {2, 4}});
  return out;
}

json to_json(const StabilizeResult& r) {
  json out = json::object();
  out["k"] = r.k;
  out["m_prime"] = r.m_prime;
  out["ambient_dim"] = r.ambient_dim;
  out["defect"] = r.defect;
  out["bound"] = r.bound;
  out["path_bound"] = r.path_bound;
  out["unitarity_gap"] = r.unitarity_gap;
  out["polar_distance"] = r.polar_distance;
  out["commutator"] = r.commutator;
  out["pass"] = r.pass();
  return out;
}

std::string csv_header() { return "k,m_prime,ambient_dim,defect,bound,pass"; }

std::string to_csv(const StabilizeResult& r) {
  std::ostringstream s;
  s.precision(12);
  s << r.k << ',' << r.m_prime << ',' << r.ambient_dim << ',' << r.defect << ',' << r.bound << ','
    << (r.pass() ? "true" : "false");
  return s.str();
}

}  // namespace afx
