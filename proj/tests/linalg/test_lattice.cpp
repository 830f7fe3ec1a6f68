#include "doctest.h"

#include "afx/linalg/lattice.hpp"

#include <random>
#include <set>

using namespace afx;

TEST_CASE("diagonal line meets the orthant") {
  const Lattice l = Lattice::from_generators(2, {make_int_vector({1, 1})});
  const auto v = lattice_meets_orthant(l, Int(3));
  REQUIRE(std::holds_alternative<OrthantWitness>(v));
  CHECK(std::get<OrthantWitness>(v).vector == make_int_vector({1, 1}));
  CHECK(verify_orthant_witness(l, std::get<OrthantWitness>(v)));
}

TEST_CASE("anti-diagonal line misses the orthant with a certificate") {
  const Lattice l = Lattice::from_generators(2, {make_int_vector({1, -1})});
  const auto v = lattice_meets_orthant(l, Int(3));
  REQUIRE(std::holds_alternative<OrthantEmpty>(v));
  CHECK(verify_orthant_empty(l, std::get<OrthantEmpty>(v)));
}

TEST_CASE("zero lattice is certified empty") {
  const Lattice l(3);
  const auto v = lattice_meets_orthant(l, Int(1));
  REQUIRE(std::holds_alternative<OrthantEmpty>(v));
  CHECK(verify_orthant_empty(l, std::get<OrthantEmpty>(v)));
}

TEST_CASE("witness needing large coefficients comes from the LP vertex") {
  // det = 14 - 13 = 1, so these generate Z^2; the Hermite basis is the
  // standard one and box 1 already sees (1,0).
  const Lattice l = Lattice::from_generators(2, {make_int_vector({7, -1}), make_int_vector({-13, 2})});
  const auto v = lattice_meets_orthant(l, Int(1));
  REQUIRE(std::holds_alternative<OrthantWitness>(v));
  CHECK(verify_orthant_witness(l, std::get<OrthantWitness>(v)));
}

TEST_CASE("membership agrees with brute-force enumeration of combinations") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<IntVector> gens;
    for (int g = 0; g < 2; ++g) gens.push_back(make_int_vector({coef(rng), coef(rng), coef(rng)}));
    const Lattice l = Lattice::from_generators(3, gens);
    std::set<std::vector<long>> reachable;
    for (int a = -12; a <= 12; ++a)
      for (int b = -12; b <= 12; ++b) {
        IntVector v = scaled(gens[0], Int(a)) + scaled(gens[1], Int(b));
        if (max_abs(v) <= 2) reachable.insert({v[0].get_si(), v[1].get_si(), v[2].get_si()});
      }
    for (int x = -2; x <= 2; ++x)
      for (int y = -2; y <= 2; ++y)
        for (int z = -2; z <= 2; ++z) {
          const bool in = l.contains(make_int_vector({x, y, z}));
          // Enumeration with |coeff| <= 12 reaches every small lattice point
          // for generators this size; a miss in either direction is a bug.
          CHECK(in == (reachable.count({x, y, z}) == 1));
        }
    for (const auto& g : gens) {
      const auto c = l.coordinates(g);
      REQUIRE(c.has_value());
      CHECK(l.basis() * *c == g);
    }
  }
}

TEST_CASE("canonical basis: equal subgroups compare equal") {
  const Lattice a = Lattice::from_generators(2, {make_int_vector({2, 0}), make_int_vector({0, 2})});
  const Lattice b = Lattice::from_generators(2, {make_int_vector({2, 2}), make_int_vector({2, -2}),
                                                 make_int_vector({0, 2})});
  CHECK(a == b);
  CHECK(a.saturation() == Lattice::from_generators(2, {make_int_vector({1, 0}), make_int_vector({0, 1})}));
  const Lattice line = Lattice::from_generators(2, {make_int_vector({2, 4})});
  CHECK(line.saturation() == Lattice::from_generators(2, {make_int_vector({1, 2})}));
  CHECK_FALSE(line.is_saturated());
}

TEST_CASE("witness and certified-empty are exclusive on random lattices") {
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + trial % 3;
    std::vector<IntVector> gens;
    for (int g = 0; g < 1 + trial % 2; ++g) {
      IntVector v(d);
      for (auto& x : v) x = coef(rng);
      gens.push_back(v);
    }
    const Lattice l = Lattice::from_generators(d, gens);
    const auto v = lattice_meets_orthant(l, Int(4));
    if (auto* w = std::get_if<OrthantWitness>(&v)) {
      CHECK(verify_orthant_witness(l, *w));
      CHECK(exact_lp_feasible(l.rank(), orthant_constraints(l)).feasible());
    } else if (auto* e = std::get_if<OrthantEmpty>(&v)) {
      CHECK(verify_orthant_empty(l, *e));
      // No small nonnegative nonzero point exists in the lattice.
      for (int a = -4; a <= 4; ++a)
        for (int b = -4; b <= 4; ++b) {
          IntVector p = scaled(gens[0], Int(a));
          if (gens.size() > 1) p = p + scaled(gens[1], Int(b));
          CHECK_FALSE((is_nonnegative(p) && !is_zero(p)));
        }
    }
  }
}
