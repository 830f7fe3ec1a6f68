#include "doctest.h"

#include "afx/linalg/order.hpp"

#include <random>

using namespace afx;

namespace {

RatVector rv(std::initializer_list<long> v) {
  RatVector out;
  for (long x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("orthant in Q^2") {
  const RatCone cone{2, {rv({1, 0}), rv({0, 1})}};
  const auto cert = total_order_extend(cone);
  REQUIRE(cert.functionals.size() == 2);
  CHECK(cert.functionals[0] == rv({1, 1}));
  CHECK(cert.functionals[1] == rv({1, 0}));
  CHECK(verify_order_certificate(cone, cert));
  for (long x = -3; x <= 3; ++x)
    for (long y = -3; y <= 3; ++y) {
      const RatVector a = rv({x, y});
      const RatVector b = rv({y, x});
      const int ab = cert.compare(a, b), ba = cert.compare(b, a);
      CHECK(ab == -ba);
      CHECK((ab == 0) == (a == b));
    }
}

TEST_CASE("empty cone gives the standard lexicographic order") {
  const RatCone cone{3, {}};
  const auto cert = total_order_extend(cone);
  CHECK(cert.functionals == std::vector<RatVector>{rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 1})});
}

TEST_CASE("cone spanned by (1,0) and (1,1)") {
  const RatCone cone{2, {rv({1, 0}), rv({1, 1})}};
  const auto cert = total_order_extend(cone);
  CHECK(cert.functionals == std::vector<RatVector>{rv({1, 0}), rv({0, 1})});
}

TEST_CASE("cone containing a line is not salient") {
  const RatCone cone{2, {rv({1, 2}), rv({-1, -2}), rv({0, 1})}};
  try {
    total_order_extend(cone);
    FAIL("expected NotSalient");
  } catch (const NotSalient& e) {
    CHECK(verify_farkas(2, salience_constraints(cone), e.farkas));
  }
}

TEST_CASE("LP fallback for a skewed cone") {
  // No standard basis vector or the all-ones vector is positive on both.
  const RatCone cone{2, {rv({3, -1}), rv({-1, 3})}};
  const auto cert = total_order_extend(cone);
  CHECK(verify_order_certificate(cone, cert));
  const RatCone skew{2, {rv({5, -1}), rv({-2, 1})}};
  const auto c2 = total_order_extend(skew);
  CHECK(verify_order_certificate(skew, c2));
}

TEST_CASE("trichotomy and transitivity on random cones") {
  std::mt19937 rng(37);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 1 + trial % 5;
    RatVector center(d);
    for (auto& x : center) x = coef(rng);
    center[0] = 4;
    RatCone cone{d, {}};
    for (int g = 0; g < 4; ++g) {
      RatVector v = center;
      for (auto& x : v) x += Rat(coef(rng)) / 2;
      v[0] = 4;
      cone.generators.push_back(v);
    }
    const auto cert = total_order_extend(cone);
    CHECK(verify_order_certificate(cone, cert));
    for (int k = 0; k < 200; ++k) {
      RatVector x(d), y(d), z(d);
      for (std::size_t i = 0; i < d; ++i) {
        x[i] = Rat(coef(rng)) / 2;
        y[i] = Rat(coef(rng)) / 2;
        z[i] = Rat(coef(rng)) / 2;
      }
      const int xy = cert.compare(x, y);
      CHECK(xy == -cert.compare(y, x));
      CHECK((xy == 0) == (x == y));
      if (xy < 0 && cert.compare(y, z) < 0) CHECK(cert.compare(x, z) < 0);
    }
  }
}
