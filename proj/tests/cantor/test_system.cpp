#include "doctest.h"

#include "afx/cantor/system.hpp"

#include <random>

using namespace afx;

namespace {

FiniteDynSystem on_line(std::vector<long> xs, std::vector<std::size_t> map) {
  FiniteDynSystem s;
  s.coords.emplace();
  for (long x : xs) {
    s.labels.push_back(std::to_string(x));
    s.coords->push_back({Rat(x)});
  }
  s.map = std::move(map);
  return s;
}

// Cyclic graph metric on n points, rotated by one.
FiniteDynSystem rotation(std::size_t n) {
  FiniteDynSystem s;
  s.dist.emplace(n, RatVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    s.labels.push_back(std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t d = i > j ? i - j : j - i;
      (*s.dist)[i][j] = static_cast<long>(std::min(d, n - d));
    }
    s.map.push_back((i + 1) % n);
  }
  return s;
}

PointSet all_points(std::size_t n) {
  PointSet p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  return p;
}

// Points whose forward orbit returns to them.
PointSet periodic_points(const FiniteDynSystem& s) {
  PointSet out;
  for (std::size_t x = 0; x < s.size(); ++x) {
    std::size_t y = s.map[x];
    for (std::size_t k = 0; k < s.size() && y != x; ++k) y = s.map[y];
    if (y == x) out.push_back(x);
  }
  return out;
}

SystemErrorKind system_error(const FiniteDynSystem& s) {
  try {
    validate(s);
  } catch (const SystemError& e) {
    return e.kind;
  }
  FAIL("expected a system error");
  return SystemErrorKind::SizeMismatch;
}

}  // namespace

TEST_CASE("validation") {
  CHECK_NOTHROW(validate(contracting_line()));
  FiniteDynSystem bad = contracting_line();
  bad.map[0] = 7;
  CHECK(system_error(bad) == SystemErrorKind::MapOutOfRange);
  FiniteDynSystem tri;
  tri.labels = {"a", "b", "c"};
  tri.dist = RatMatrix{{Rat(0), Rat(1), Rat(5)}, {Rat(1), Rat(0), Rat(1)}, {Rat(5), Rat(1), Rat(0)}};
  tri.map = {0, 1, 2};
  CHECK(system_error(tri) == SystemErrorKind::TriangleInequality);
  (*tri.dist)[0][2] = 2;
  CHECK(system_error(tri) == SystemErrorKind::NotSymmetric);
  (*tri.dist)[2][0] = 2;
  CHECK_NOTHROW(validate(tri));
}

TEST_CASE("chain recurrent sets") {
  const FiniteDynSystem id = on_line({0, 1, 2}, {0, 1, 2});
  CHECK(chain_recurrent_set(id, Rat(1, 100)) == all_points(3));
  CHECK(chain_recurrent_set(contracting_line(), Rat(1, 2)) == PointSet{0});
  const FiniteDynSystem rot = rotation(12);
  CHECK(chain_recurrent_set(rot, Rat(1, 1000)) == all_points(12));
  // At eps = 2 the contracting line can step back from 0 to 1 and from 1 to 2.
  CHECK(chain_recurrent_set(contracting_line(), Rat(2)) == all_points(3));
  // Strict inequality: eps = 1 allows no step of length 1.
  CHECK(chain_recurrent_set(contracting_line(), Rat(1)) == PointSet{0});
}

TEST_CASE("sweep is monotone and rejects bad epsilon lists") {
  const auto r = pseudo_nonwandering(contracting_line(), {Rat(3), Rat(1), Rat(1, 2)});
  CHECK(r.recurrent_sets[0] == all_points(3));
  CHECK(r.intersection == PointSet{0});
  CHECK_THROWS_AS(pseudo_nonwandering(contracting_line(), {Rat(1), Rat(2)}), SystemError);
  CHECK_THROWS_AS(pseudo_nonwandering(contracting_line(), {}), SystemError);
  CHECK_THROWS_AS(chain_recurrent_set(contracting_line(), Rat(0)), SystemError);
}

TEST_CASE("attracting sets") {
  const auto a = attracting_clopen_witness(contracting_line(), Rat(1, 2));
  REQUIRE(a.has_value());
  CHECK(a->v == PointSet{0, 1});
  CHECK(a->x == 1);
  CHECK(verify_attracting_set(contracting_line(), Rat(1, 2), *a));
  CHECK_FALSE(verify_attracting_set(contracting_line(), Rat(1, 2), AttractingSet{{0, 1}, 0}));
  CHECK_FALSE(attracting_clopen_witness(on_line({0, 1}, {0, 1}), Rat(1, 2)).has_value());
  CHECK_FALSE(attracting_clopen_witness(rotation(12), Rat(1, 2)).has_value());
}

TEST_CASE("random systems: periodic points, duality, monotonicity") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 14;
    std::vector<long> xs(n);
    for (auto& x : xs) x = static_cast<long>(rng() % 50);
    std::vector<std::size_t> map(n);
    for (auto& m : map) m = rng() % n;
    FiniteDynSystem s = on_line(xs, map);
    // Below the least positive distance only exact orbits count; coincident
    // points stay at distance 0 and merge, so distinct coordinates are used.
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (xs.size() == n) CHECK(chain_recurrent_set(s, Rat(1, 2)) == periodic_points(s));
    PointSet previous = all_points(n);
    for (long e : {60L, 20L, 8L, 3L, 1L}) {
      const Rat eps(e);
      const PointSet rec = chain_recurrent_set(s, eps);
      CHECK(std::includes(previous.begin(), previous.end(), rec.begin(), rec.end()));
      previous = rec;
      const auto a = attracting_clopen_witness(s, eps);
      CHECK(a.has_value() == (rec.size() != n));
      if (a) CHECK(verify_attracting_set(s, eps, *a));
    }
  }
}

TEST_CASE("positivity rigidity") {
  FiniteDynSystem swap = on_line({0, 1}, {1, 0});
  const auto c = positivity_rigidity(swap, {Int(3), Int(3)});
  CHECK(c.outcome == RigidityOutcome::Rigid);
  const auto nm = positivity_rigidity(swap, {Int(1), Int(0)});
  CHECK(nm.outcome == RigidityOutcome::NotMonotone);
  CHECK(nm.witness == 0);
  CHECK(nm.g == std::vector<Int>{Int(-1), Int(1)});
  CHECK_THROWS_AS(positivity_rigidity(contracting_line(), {Int(0), Int(0), Int(0)}), SystemError);

  // Indicator of a union of full cycles of (0 1 2)(3 4)(5).
  const FiniteDynSystem perm = on_line({0, 1, 2, 3, 4, 5}, {1, 2, 0, 4, 3, 5});
  const auto r = positivity_rigidity(perm, {Int(1), Int(1), Int(1), Int(0), Int(0), Int(1)});
  CHECK(r.outcome == RigidityOutcome::Rigid);
  CHECK(r.level_sets == std::vector<PointSet>{{3, 4}, {0, 1, 2, 5}});
}

TEST_CASE("cycle ladder") {
  const auto five = cycle_ladder(5);
  CHECK(five.size() == 6);
  CHECK(five.map == std::vector<std::size_t>{1, 0, 3, 4, 2, 5});
  const auto two = cycle_ladder(2);
  CHECK(two.map == std::vector<std::size_t>{1, 0, 2});
  const auto seven = cycle_ladder(7);
  // 1/6 and 1/7 do not fill a cycle of length 4 and stay fixed.
  CHECK(seven.map == std::vector<std::size_t>{1, 0, 3, 4, 2, 5, 6, 7});
  CHECK(seven.labels[6] == "1/7");
  CHECK(pseudo_nonwandering(cycle_ladder(9), {Rat(1), Rat(1, 1000)}).intersection == all_points(10));
}

TEST_CASE("compactified shift") {
  const auto one = compactified_shift(1);
  CHECK(one.size() == 4);
  CHECK(one.map == std::vector<std::size_t>{1, 2, 3, 3});
  CHECK((*one.coords)[0] == RatVector{Rat(0), Rat(-1)});
  CHECK((*one.coords)[1] == RatVector{Rat(1), Rat(0)});
  const auto six = compactified_shift(6);
  for (const auto& c : *six.coords) CHECK(c[0] * c[0] + c[1] * c[1] == 1);
  const auto s = compactified_shift(10);
  const Rat gap = max_consecutive_gap(s);
  CHECK(gap * gap >= 2);
  CHECK(chain_recurrent_set(s, gap).size() == s.size());
  // Below the distance from infinity to -n the chain cannot close.
  CHECK(chain_recurrent_set(s, Rat(1, 1000)) == PointSet{s.size() - 1});
}

TEST_CASE("json round trip") {
  const auto s = compactified_shift(3);
  const auto back = system_from_json(json::parse(to_json(s).dump()));
  CHECK(back.labels == s.labels);
  CHECK(*back.coords == *s.coords);
  CHECK(back.map == s.map);
  try {
    system_from_json(json::parse(R"({"points": ["a"], "dist": [["x"]], "map": [0]})"));
    FAIL("expected a schema error");
  } catch (const SchemaError& e) {
    CHECK(e.pointer() == "/dist/0/0");
  }
}
