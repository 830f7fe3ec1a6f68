#include "afx/linalg/perron.hpp"

#include <stdexcept>

namespace afx {

namespace {

Rat round_up(const Rat& x, std::size_t bits) {
  Int scaled = x.get_num() << bits;
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.get_den_mpz_t());
  Rat r(q, Int(1) << bits);
  r.canonicalize();
  return r;
}

std::pair<Rat, Rat> quotient_range(const RatVector& y, const RatVector& z) {
  Rat lo = z[0] / y[0];
  Rat hi = lo;
  for (std::size_t i = 1; i < y.size(); ++i) {
    const Rat q = z[i] / y[i];
    if (q < lo) lo = q;
    if (q > hi) hi = q;
  }
  return {lo, hi};
}

RatVector left_multiply_rat(const RatVector& y, const IntMatrix& m) { return left_multiply(y, m); }

// Lower bound s <= sqrt(x) for rational x > 0.
Rat sqrt_lower(const Rat& x) {
  for (std::size_t k = 32;; k *= 2) {
    Int prod = x.get_num() * x.get_den();
    prod <<= 2 * k;
    Int root = sqrt(prod);
    if (root > 0) {
      Rat s(root, x.get_den() << k);
      s.canonicalize();
      return s;
    }
  }
}

}  // namespace

std::optional<std::size_t> primitivity_exponent(const IntMatrix& m) {
  if (!m.is_square() || m.rows() == 0) return std::nullopt;
  if (!m.is_nonnegative()) return std::nullopt;
  const std::size_t d = m.rows();
  std::vector<char> pattern(d * d), base(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) base[i * d + j] = pattern[i * d + j] = m(i, j) > 0;
  const std::size_t limit = (d - 1) * (d - 1) + 1;
  for (std::size_t k = 1; k <= limit; ++k) {
    bool all = true;
    for (char c : pattern)
      if (!c) {
        all = false;
        break;
      }
    if (all) return k;
    std::vector<char> next(d * d, 0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t l = 0; l < d; ++l)
        if (pattern[i * d + l])
          for (std::size_t j = 0; j < d; ++j)
            if (base[l * d + j]) next[i * d + j] = 1;
    pattern = std::move(next);
  }
  return std::nullopt;
}

bool is_primitive(const IntMatrix& m) { return primitivity_exponent(m).has_value(); }

PerronEnclosure perron_enclosure(const IntMatrix& m, const Rat& precision) {
  if (precision <= 0) throw std::invalid_argument("perron_enclosure: precision must be positive");
  const auto exponent = primitivity_exponent(m);
  if (!exponent) throw NotPrimitive();
  const std::size_t d = m.rows();

  std::size_t bits = 32;
  {
    Rat inv = 1 / precision;
    bits += 2 * mpz_sizeinbase(Int(inv.get_num() / inv.get_den() + 1).get_mpz_t(), 2);
  }

  RatVector y(d, Rat(1));
  PerronEnclosure e;
  for (std::size_t iter = 0;; ++iter) {
    const RatVector z = left_multiply_rat(y, m);
    const auto [lo, hi] = quotient_range(y, z);
    if (hi - lo <= precision) {
      e.lambda_lo = lo;
      e.lambda_hi = hi;
      break;
    }
    if (iter > 200000) throw std::runtime_error("perron_enclosure: no convergence");
    if (iter % 256 == 255) bits *= 2;
    const Rat scale = z[0];
    for (std::size_t i = 0; i < d; ++i) y[i] = round_up(z[i] / scale, bits);
  }
  e.test_vector = y;

  // Eigenvector interval from Birkhoff contraction of the positive power A:
  // the Hilbert distance from y to the eigenvector is at most
  // log(rho) / (1 - tau(A)) and 1/(1 - tau) = (1 + sqrt(phi)) / (2 sqrt(phi)).
  const IntMatrix a = m.power(*exponent);
  Rat phi = 1;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
          Rat r(a(i, k) * a(j, l), a(j, k) * a(i, l));
          r.canonicalize();
          if (r < phi) phi = r;
        }
  const Rat s = sqrt_lower(phi);
  const Rat bound = (1 + s) / (2 * s);
  Int n_pow = bound.get_num() / bound.get_den();
  if (n_pow * bound.get_den() < bound.get_num()) n_pow += 1;
  const auto [alo, ahi] = quotient_range(y, left_multiply_rat(y, a));
  const Rat rho = round_up(ahi / alo, bits);
  Rat radius = 1;
  for (Int k = 0; k < n_pow; ++k) radius = round_up(radius * rho, bits);

  e.eigvec_lo.resize(d);
  e.eigvec_hi.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    const Rat ratio = y[i] / y[0];
    e.eigvec_lo[i] = i == 0 ? Rat(1) : ratio / radius;
    e.eigvec_hi[i] = i == 0 ? Rat(1) : ratio * radius;
  }
  return e;
}

bool verify_collatz_wielandt(const IntMatrix& m, const PerronEnclosure& e) {
  if (!m.is_square() || e.test_vector.size() != m.rows() || e.lambda_lo > e.lambda_hi) return false;
  for (const auto& v : e.test_vector)
    if (v <= 0) return false;
  const RatVector z = left_multiply(e.test_vector, m);
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] < e.lambda_lo * e.test_vector[i]) return false;
    if (z[i] > e.lambda_hi * e.test_vector[i]) return false;
  }
  return true;
}

}  // namespace afx
