#include "doctest.h"

#include "afx/linalg/lp.hpp"

#include <random>

using namespace afx;

namespace {

LinearConstraint row(std::initializer_list<long> coeffs, Relation rel, Rat rhs) {
  RatVector c;
  for (long v : coeffs) c.emplace_back(v);
  return {c, rel, rhs};
}

}  // namespace

TEST_CASE("interval is feasible") {
  const std::vector<LinearConstraint> cons{row({1}, Relation::GreaterEq, 0), row({1}, Relation::LessEq, 1)};
  const auto r = exact_lp_feasible(1, cons);
  REQUIRE(r.feasible());
  CHECK(satisfies(*r.point, cons));
  CHECK_FALSE(r.farkas.has_value());
}

TEST_CASE("contradictory bounds give multipliers (1,1)") {
  const std::vector<LinearConstraint> cons{row({1}, Relation::GreaterEq, 1), row({1}, Relation::LessEq, 0)};
  const auto r = exact_lp_feasible(1, cons);
  REQUIRE_FALSE(r.feasible());
  REQUIRE(r.farkas.has_value());
  CHECK(verify_farkas(1, cons, *r.farkas));
  CHECK(r.farkas->multipliers == RatVector{Rat(1), Rat(1)});
}

TEST_CASE("two-variable system from a hand solve") {
  // x + y = 1 and x - y >= 1/2 force x >= 3/4.
  const std::vector<LinearConstraint> cons{row({1, 1}, Relation::Equal, 1), row({1, 0}, Relation::GreaterEq, 0),
                                           row({0, 1}, Relation::GreaterEq, 0),
                                           row({1, -1}, Relation::GreaterEq, Rat(1, 2))};
  const auto r = exact_lp_feasible(2, cons);
  REQUIRE(r.feasible());
  CHECK(satisfies(*r.point, cons));
  CHECK((*r.point)[0] >= Rat(3, 4));
}

TEST_CASE("tampered Farkas multipliers fail verification") {
  const std::vector<LinearConstraint> cons{row({1}, Relation::GreaterEq, 1), row({1}, Relation::LessEq, 0)};
  CHECK_FALSE(verify_farkas(1, cons, FarkasCertificate{{Rat(1), Rat(2)}}));
  CHECK_FALSE(verify_farkas(1, cons, FarkasCertificate{{Rat(-1), Rat(-1)}}));
}

TEST_CASE("random systems: point or certificate, never both") {
  // Oracle: systems built around a known point are feasible; systems with
  // an appended contradiction a.x >= t+1, a.x <= t are infeasible.
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t d = 1 + trial % 4;
    RatVector x0(d);
    for (auto& v : x0) {
      v = Rat(coef(rng), 1 + trial % 3);
      v.canonicalize();
    }
    std::vector<LinearConstraint> cons;
    for (int k = 0; k < 5; ++k) {
      RatVector a(d);
      for (auto& v : a) v = coef(rng);
      const Rat val = dot(a, x0);
      const int kind = coef(rng) % 3;
      if (kind == 0) cons.push_back({a, Relation::Equal, val});
      else if (kind > 0) cons.push_back({a, Relation::LessEq, val + 1});
      else cons.push_back({a, Relation::GreaterEq, val - 1});
    }
    const auto feasible = exact_lp_feasible(d, cons);
    REQUIRE(feasible.feasible());
    CHECK(satisfies(*feasible.point, cons));

    RatVector a(d, Rat(1));
    cons.push_back({a, Relation::GreaterEq, Rat(trial + 1)});
    cons.push_back({a, Relation::LessEq, Rat(trial)});
    const auto infeasible = exact_lp_feasible(d, cons);
    REQUIRE_FALSE(infeasible.feasible());
    CHECK(verify_farkas(d, cons, *infeasible.farkas));
  }
}
