#include "afx/linalg/lattice.hpp"

#include "afx/linalg/normal_form.hpp"

#include <stdexcept>

namespace afx {

namespace {

IntMatrix nonzero_rows(const HermiteForm& hf) {
  IntMatrix e(hf.rank, hf.h.cols());
  for (std::size_t i = 0; i < hf.rank; ++i)
    for (std::size_t j = 0; j < hf.h.cols(); ++j) e(i, j) = hf.h(i, j);
  return e;
}

std::size_t pivot_column(const IntMatrix& e, std::size_t row) {
  for (std::size_t j = 0; j < e.cols(); ++j)
    if (e(row, j) != 0) return j;
  throw std::logic_error("zero row in lattice echelon");
}

constexpr std::size_t kEnumerationCap = 250000;

}  // namespace

Lattice::Lattice(std::size_t ambient_dim) : dim_(ambient_dim), echelon_(0, ambient_dim) {}

Lattice Lattice::from_generators(std::size_t ambient_dim, const std::vector<IntVector>& generators) {
  return column_span(IntMatrix::from_columns(generators, ambient_dim));
}

Lattice Lattice::column_span(const IntMatrix& m) {
  Lattice l(m.rows());
  if (m.cols() == 0) return l;
  l.echelon_ = nonzero_rows(hermite_normal_form(m.transpose()));
  return l;
}

std::optional<IntVector> Lattice::coordinates(const IntVector& v) const {
  if (v.size() != dim_) throw std::invalid_argument("lattice membership: wrong dimension");
  IntVector rest = v;
  IntVector coeffs(rank(), Int(0));
  for (std::size_t r = 0; r < rank(); ++r) {
    const std::size_t p = pivot_column(echelon_, r);
    for (std::size_t j = 0; j < p; ++j)
      if (rest[j] != 0) return std::nullopt;
    if (rest[p] % echelon_(r, p) != 0) return std::nullopt;
    const Int c = rest[p] / echelon_(r, p);
    coeffs[r] = c;
    for (std::size_t j = p; j < dim_; ++j) rest[j] -= c * echelon_(r, j);
  }
  if (!is_zero(rest)) return std::nullopt;
  return coeffs;
}

bool Lattice::contains(const IntVector& v) const { return coordinates(v).has_value(); }

Lattice Lattice::saturation() const {
  if (rank() == 0) return *this;
  // Rational span = kernel of the left kernel of the basis.
  const IntMatrix left = integer_kernel(echelon_);
  return column_span(integer_kernel(left.transpose()));
}

Lattice operator+(const Lattice& a, const Lattice& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("lattice sum: dimension mismatch");
  std::vector<IntVector> gens = a.basis().columns();
  for (auto& c : b.basis().columns()) gens.push_back(std::move(c));
  return Lattice::from_generators(a.dim_, gens);
}

std::vector<LinearConstraint> orthant_constraints(const Lattice& l) {
  const IntMatrix b = l.basis();
  const std::size_t r = l.rank();
  std::vector<LinearConstraint> cons;
  RatVector total(r, Rat(0));
  for (std::size_t i = 0; i < l.ambient_dim(); ++i) {
    RatVector row(r);
    for (std::size_t j = 0; j < r; ++j) {
      row[j] = b(i, j);
      total[j] += b(i, j);
    }
    cons.push_back({std::move(row), Relation::GreaterEq, Rat(0)});
  }
  cons.push_back({std::move(total), Relation::Equal, Rat(1)});
  return cons;
}

OrthantVerdict lattice_meets_orthant(const Lattice& l, const Int& box_bound) {
  if (box_bound < 1) throw std::invalid_argument("lattice_meets_orthant: box_bound must be >= 1");
  const std::size_t r = l.rank();
  if (r == 0) {
    const auto lp = exact_lp_feasible(0, orthant_constraints(l));
    return OrthantEmpty{*lp.farkas};
  }
  const auto cons = orthant_constraints(l);
  const auto lp = exact_lp_feasible(r, cons);
  if (!lp.feasible()) return OrthantEmpty{*lp.farkas};

  const IntMatrix b = l.basis();
  // Coefficient shells by max-norm, lexicographic inside a shell.
  std::size_t reachable = 0;
  {
    std::size_t count = 1;
    for (std::size_t t = 1; box_bound >= Int(t); ++t) {
      count = 1;
      bool over = false;
      for (std::size_t k = 0; k < r && !over; ++k) {
        count *= 2 * t + 1;
        over = count > kEnumerationCap;
      }
      if (over) break;
      reachable = t;
    }
  }
  for (std::size_t t = 1; t <= reachable; ++t) {
    const long lo = -static_cast<long>(t);
    const long hi = static_cast<long>(t);
    std::vector<long> c(r, lo);
    for (;;) {
      bool on_shell = false;
      for (long x : c)
        if (x == lo || x == hi) on_shell = true;
      if (on_shell) {
        IntVector coeffs(r);
        for (std::size_t k = 0; k < r; ++k) coeffs[k] = c[k];
        IntVector v = b * coeffs;
        if (is_nonnegative(v)) return OrthantWitness{std::move(v), std::move(coeffs)};
      }
      std::size_t k = r;
      while (k > 0 && c[k - 1] == hi) {
        c[k - 1] = lo;
        --k;
      }
      if (k == 0) break;
      ++c[k - 1];
    }
  }

  const IntVector coeffs = primitive_integer_vector(*lp.point);
  IntVector v = b * coeffs;
  Int norm_bound = 0;
  for (std::size_t j = 0; j < r; ++j) norm_bound += max_abs(b.col(j));
  if (max_abs(v) <= box_bound * norm_bound) return OrthantWitness{std::move(v), coeffs};
  return OrthantUnknown{box_bound};
}

bool verify_orthant_witness(const Lattice& l, const OrthantWitness& w) {
  if (w.vector.size() != l.ambient_dim()) return false;
  if (is_zero(w.vector) || !is_nonnegative(w.vector)) return false;
  if (w.coefficients.size() != l.rank()) return false;
  return l.basis() * w.coefficients == w.vector;
}

bool verify_orthant_empty(const Lattice& l, const OrthantEmpty& e) {
  return verify_farkas(l.rank(), orthant_constraints(l), e.farkas);
}

}  // namespace afx
