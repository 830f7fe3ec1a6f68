#pragma once

#include "afx/linalg/int_matrix.hpp"
#include "afx/linalg/json_io.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace afx {

using CMatrix = Eigen::MatrixXcd;
using cplx = std::complex<double>;

enum class LabErrorKind {
  NotUnitary,
  NotDivisible,
  SpectralFailure,
  NonInvertible,
  PreconditionFailed,
  PeriodMismatch,
  AmbientTooLarge,
};

const char* to_string(LabErrorKind kind);

class LabError : public std::runtime_error {
 public:
  LabError(LabErrorKind kind, const std::string& what) : std::runtime_error(what), kind(kind) {}
  LabErrorKind kind;
};

/// Largest singular value, as the square root of the top eigenvalue of the
/// smaller of A^* A and A A^*.
double op_norm(const CMatrix& a);

/// A matrix with ||U^* U - I|| <= 1e-9, checked on construction.
class DenseUnitary {
 public:
  explicit DenseUnitary(CMatrix m);
  const CMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  CMatrix m_;
};

/// Kronecker product, first factor most significant.
CMatrix kron(const CMatrix& a, const CMatrix& b);
IntMatrix kron(const IntMatrix& a, const IntMatrix& b);

/// Cyclic permutation with u E_ii u^* = E_{i+1,i+1}, as an exact matrix.
IntMatrix shift_permutation(std::size_t n);
DenseUnitary shift_unitary(std::size_t n);

/// Haar-distributed unitary (QR of a complex Gaussian matrix with the
/// phases of R's diagonal removed).
DenseUnitary random_unitary(std::size_t n, std::uint64_t seed);

/// Projections e_0..e_{k-1} of M_{m'} with e_j = sum_t E_{j+tk, j+tk}.
struct RohlinTower {
  std::size_t k = 0;
  std::size_t m_prime = 0;
  std::vector<IntMatrix> projections;
};

/// Throws NotDivisible unless k divides m_prime.
RohlinTower rohlin_tower(std::size_t m_prime, std::size_t k);

struct TowerCheck {
  bool idempotent = false;
  bool self_adjoint = false;
  bool orthogonal = false;
  bool sums_to_one = false;
  bool shifted = false;  // u e_j u^* = e_{j+1 mod k}
  bool commutes = false;  // 1 (x) e_j commutes with matrix units of the leading factors
  bool all() const { return idempotent && self_adjoint && orthogonal && sums_to_one && shifted && commutes; }
};

/// Exact integer check of the tower inside (leading factors) (x) M_{m'}.
TowerCheck check_rohlin_tower(const RohlinTower& t, const std::vector<std::size_t>& leading_factors);

/// t -> Q diag(exp(i t theta)) Q^* from a unitary diagonalization of u (a
/// Hermitian eigensolver, or a Schur form when that one is inaccurate),
/// theta in (-pi, pi].
class UnitaryLogPath {
 public:
  explicit UnitaryLogPath(const DenseUnitary& u);
  CMatrix at(double t) const;
  const Eigen::VectorXd& angles() const { return theta_; }

 private:
  CMatrix q_;
  Eigen::VectorXd theta_;
};

/// Unitary factor of the polar decomposition by Newton's iteration
/// X <- (X + X^{-*}) / 2. Throws NonInvertible.
CMatrix polar_unitary(const CMatrix& a);

/// Tensor product of full matrix algebras M_{n_1} (x) ... (x) M_{n_r} with the
/// automorphism Ad(u_{n_1} (x) ... (x) u_{n_r}).
struct TensorTruncation {
  std::vector<std::size_t> factors;
  std::size_t ambient_dim() const;
  CMatrix shift() const;
  /// I (x) ... (x) x (x) ... (x) I with x in the given factor.
  CMatrix embed(std::size_t factor, const CMatrix& x) const;
  /// Matrix units E_ab of the given factors, embedded.
  std::vector<CMatrix> matrix_units(const std::vector<std::size_t>& which) const;
};

struct StabilizeSpec {
  std::vector<std::size_t> fixed_factors{2};       // B_0 = B_1 = B_2
  std::vector<std::size_t> unitary_factors{3, 4};  // where u lives
  std::size_t k = 5;
  std::size_t multiple = 1;  // tower factor is M_{multiple * k}
  std::size_t ambient_cap = 720;
};

struct StabilizeResult {
  std::size_t k = 0;
  std::size_t m_prime = 0;
  std::size_t ambient_dim = 0;
  double defect = 0;          // ||u - v beta(v^*)||
  double bound = 0;           // 4 / (k - 1)
  double path_bound = 0;      // pi / (k - 1)
  double unitarity_gap = 0;   // ||v' v'^* - 1||
  double polar_distance = 0;  // ||v - v'||
  double commutator = 0;      // max ||[v, b]|| over generators b of B_0
  bool pass() const { return defect <= bound; }
};

TensorTruncation stabilize_truncation(const StabilizeSpec& spec);

/// u must commute with the fixed factors (to 1e-9) and act trivially on the
/// tower factor; the tower is rohlin_tower(m', k) in the last factor.
StabilizeResult stabilize_experiment(const DenseUnitary& u, const StabilizeSpec& spec);
/// u = 1 (x) (Haar unitary on the unitary factors) (x) 1.
StabilizeResult stabilize_experiment(const StabilizeSpec& spec, std::uint64_t seed);

/// B_n = first n factors of the truncation, beta = Ad(w), period d_n on B_n.
struct NestedSystem {
  std::string name;
  std::vector<std::size_t> factors;
  CMatrix w;
  std::vector<std::size_t> periods;  // d_1, ..., d_L for levels 1..L
};

struct LevelReport {
  std::size_t level = 0;
  std::size_t period = 0;
  std::size_t minimal_period = 0;  // 0 if none <= period found
  double invariance_residual = 0;  // beta(B_n) in B_n
  double period_residual = 0;      // beta^{d_n} = id on B_n
  bool ok = false;
};

std::vector<LevelReport> limit_periodic_verify(const NestedSystem& sys);

struct EmbeddingReport {
  std::size_t level = 0;
  std::size_t period = 0;
  double homomorphism_residual = 0;
  double covariance_residual = 0;
  // Diagonal projections p of B_n: rank(p) and rank(phi(p)) = d_n rank(p).
  std::vector<std::pair<long, long>> ranks;
  bool ranks_exact = false;
  bool ok(double tol = 1e-9) const {
    return homomorphism_residual <= tol && covariance_residual <= tol && ranks_exact;
  }
};

/// phi(b) = sum_{j<d} beta^j(b) (x) E_jj on B_n (x) M_{d_n}; covariance is
/// phi(beta(b)) = (1 (x) s)^* phi(b) (1 (x) s) with s the cyclic shift.
CMatrix voiculescu_map(const NestedSystem& sys, std::size_t level, const CMatrix& b);
EmbeddingReport voiculescu_embedding(const NestedSystem& sys, std::size_t level);

/// Truncations of the universal UHF shift and a few small periodic examples.
std::vector<NestedSystem> nested_corpus();
NestedSystem uhf_shift_system(std::size_t m);

json to_json(const StabilizeResult& r);
std::string csv_header();
std::string to_csv(const StabilizeResult& r);

}  // namespace afx
