#include "doctest.h"

#include "afx/bratteli/diagram.hpp"

#include <cmath>

using namespace afx;

namespace {

const IntMatrix kFib{{1, 1}, {1, 0}};

DiagramErrorKind validation_error(const Diagram& d) {
  try {
    validate(d);
  } catch (const DiagramError& e) {
    return e.kind;
  }
  FAIL("expected a validation error");
  return DiagramErrorKind::SizeMismatch;
}

// Push table in 128-bit integers for the brute-force oracle.
using Wide = __int128;
std::vector<Wide> wide_push(const IntMatrix& m, const std::vector<Wide>& v) {
  std::vector<Wide> out(v.size(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += static_cast<Wide>(m(i, j).get_si()) * v[j];
  return out;
}

}  // namespace

TEST_CASE("validation") {
  CHECK_NOTHROW(validate(Diagram{{make_int_vector({1}), make_int_vector({2}), make_int_vector({4})},
                                 {IntMatrix{{2}}}, true, true}));
  CHECK(validation_error(Diagram{{make_int_vector({1}), make_int_vector({1})}, {IntMatrix{{2}}}, true, true}) ==
        DiagramErrorKind::NonUnitalFlaggedUnital);
  CHECK_NOTHROW(validate(Diagram{{make_int_vector({2, 3})}, {}, false, true}));
  CHECK(validation_error(Diagram{{make_int_vector({1})}, {IntMatrix{{-1}}}, true, false}) ==
        DiagramErrorKind::NegativeMultiplicity);
  CHECK(validation_error(Diagram{{make_int_vector({1}), make_int_vector({1, 1})}, {IntMatrix{{1}}}, false, false}) ==
        DiagramErrorKind::SizeMismatch);
  CHECK(validation_error(Diagram{{make_int_vector({1}), make_int_vector({1})}, {IntMatrix{{2}}}, false, false}) ==
        DiagramErrorKind::SizeMismatch);
}

TEST_CASE("push") {
  const Diagram two = Diagram::make_stationary(IntMatrix{{2}}, make_int_vector({1}), false);
  CHECK(push(two, K0Element{0, make_int_vector({3})}, 0) == make_int_vector({3}));
  CHECK(push(two, K0Element{0, make_int_vector({3})}, 2) == make_int_vector({12}));
  const Diagram fib = Diagram::make_stationary(kFib, make_int_vector({1, 1}), false);
  CHECK(push(fib, K0Element{0, make_int_vector({1, 0})}, 3) == make_int_vector({3, 2}));

  const Diagram finite{{make_int_vector({1}), make_int_vector({2})}, {IntMatrix{{2}}}, false, true};
  try {
    push(finite, K0Element{0, make_int_vector({1})}, 2);
    FAIL("expected StageOutOfRange");
  } catch (const DiagramError& e) {
    CHECK(e.kind == DiagramErrorKind::StageOutOfRange);
  }
}

TEST_CASE("class equality") {
  const Diagram two = Diagram::make_stationary(IntMatrix{{2}}, make_int_vector({1}), false);
  CHECK(class_equal(two, K0Element{1, make_int_vector({5})}, K0Element{1, make_int_vector({5})}).stage == 1);
  CHECK(class_equal(two, K0Element{0, make_int_vector({1})}, K0Element{0, make_int_vector({2})}).not_equal());
  CHECK(class_equal(two, K0Element{0, make_int_vector({1})}, K0Element{1, make_int_vector({2})}).equal());
  const Diagram nil = Diagram::make_stationary(IntMatrix{{0, 0}, {1, 0}}, make_int_vector({1, 1}), false);
  const auto eq = class_equal(nil, K0Element{0, make_int_vector({1, 0})}, K0Element{0, make_int_vector({0, 0})});
  CHECK(eq.equal());
  CHECK(eq.stage == 2);
}

TEST_CASE("class equality is an equivalence on random stationary data") {
  const IntMatrix m{{1, 1, 0}, {1, 1, 0}, {0, 0, 0}};
  const Diagram d = Diagram::make_stationary(m, make_int_vector({1, 1, 1}), false);
  std::vector<K0Element> elems;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -1; c <= 1; ++c)
        for (std::size_t s = 0; s < 2; ++s) elems.push_back({s, make_int_vector({a, b, c})});
  for (const auto& x : elems) {
    CHECK(class_equal(d, x, x).equal());
    for (const auto& y : elems) {
      const bool xy = class_equal(d, x, y).equal();
      CHECK(xy == class_equal(d, y, x).equal());
      if (!xy) continue;
      for (const auto& z : elems)
        if (class_equal(d, y, z).equal()) CHECK(class_equal(d, x, z).equal());
    }
  }
}

TEST_CASE("positivity examples") {
  const Diagram fib = Diagram::make_stationary(kFib, make_int_vector({1, 1}), false);
  CHECK(positivity(fib, K0Element{0, make_int_vector({0, 0})}, 5).positive());
  const auto p = positivity(fib, K0Element{0, make_int_vector({1, -1})}, 5);
  CHECK(p.positive());
  CHECK(p.pushes == 1);
  CHECK(p.pushed == make_int_vector({0, 1}));
  const auto n = positivity(fib, K0Element{0, make_int_vector({-1, 1})}, 5);
  CHECK(n.not_positive());
  CHECK(n.reason == NotPositiveReason::NegativeIsPositive);
  // (-2, 1): the Perron functional (1, phi - 1) is negative and no push
  // of either sign is nonnegative within depth 0.
  const auto f = positivity(fib, K0Element{0, make_int_vector({-2, 1})}, 0);
  CHECK(f.not_positive());
  CHECK(f.reason == NotPositiveReason::PerronFunctional);
}

TEST_CASE("positivity is monotone in depth") {
  const Diagram fib = Diagram::make_stationary(kFib, make_int_vector({1, 1}), false);
  for (int a = -8; a <= 8; ++a)
    for (int b = -8; b <= 8; ++b) {
      const K0Element x{0, make_int_vector({a, b})};
      bool seen = false;
      for (std::size_t depth = 0; depth < 8; ++depth) {
        const bool pos = positivity(fib, x, depth).positive();
        if (seen) CHECK(pos);
        seen = seen || pos;
      }
    }
}

TEST_CASE("positivity agrees with an exhaustive push table") {
  // Every stationary matrix with <= 2 vertices and entries <= 3, plus a
  // sample of 3-vertex ones; all elements with entries in [-2, 2].
  std::vector<IntMatrix> mats;
  for (int a = 0; a <= 3; ++a) mats.push_back(IntMatrix{{a}});
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for (int c = 0; c <= 3; ++c)
        for (int e = 0; e <= 3; ++e) mats.push_back(IntMatrix{{a, b}, {c, e}});
  for (int s = 0; s < 40; ++s) {
    IntMatrix m(3, 3);
    for (std::size_t i = 0; i < 9; ++i) m(i / 3, i % 3) = (s * 7 + static_cast<int>(i) * 5 + s * s) % 4;
    mats.push_back(m);
  }
  const std::size_t depth = 20;
  for (const auto& m : mats) {
    const Diagram d = Diagram::make_stationary(m, IntVector(m.rows(), Int(1)), false);
    const std::size_t n = m.rows();
    std::vector<std::vector<long>> elems{{}};
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<std::vector<long>> next;
      for (const auto& e : elems)
        for (long v = -2; v <= 2; ++v) {
          auto f = e;
          f.push_back(v);
          next.push_back(f);
        }
      elems = next;
    }
    for (const auto& e : elems) {
      std::vector<Wide> v(e.begin(), e.end());
      bool table_positive = false;
      bool neg_positive = false;
      std::vector<Wide> w(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) w[i] = -v[i];
      for (std::size_t k = 0; k <= depth; ++k) {
        bool nonneg = true, nonpos = true;
        for (auto x : v) {
          nonneg = nonneg && x >= 0;
          nonpos = nonpos && x <= 0;
        }
        table_positive = table_positive || nonneg;
        neg_positive = neg_positive || nonpos;
        v = wide_push(m, v);
      }
      IntVector xv;
      for (long x : e) xv.emplace_back(x);
      const auto verdict = positivity(d, K0Element{0, xv}, depth);
      CHECK(verdict.positive() == table_positive);
      if (verdict.not_positive() && verdict.reason == NotPositiveReason::NegativeIsPositive) CHECK(neg_positive);
      CHECK_FALSE((verdict.positive() && verdict.not_positive()));
    }
  }
}

TEST_CASE("diagram summary") {
  const auto two = diagram_summary(Diagram{{make_int_vector({1}), make_int_vector({2})}, {IntMatrix{{2}}}, true, true});
  CHECK(two.primitive);
  CHECK(two.simple);
  REQUIRE(two.perron.has_value());
  CHECK(two.perron->lambda_lo == 2);
  CHECK(two.perron->lambda_hi == 2);
  REQUIRE(two.order_unit.has_value());
  CHECK(two.order_unit->vec == make_int_vector({1}));

  const auto swap = diagram_summary(Diagram::make_stationary(IntMatrix{{0, 1}, {1, 0}}, make_int_vector({1, 1}), true));
  CHECK_FALSE(swap.primitive);
  CHECK_FALSE(swap.simple);
  CHECK_FALSE(swap.perron.has_value());

  const auto fib = diagram_summary(Diagram::make_stationary(kFib, make_int_vector({1, 1}), false));
  CHECK(fib.primitive);
  CHECK(fib.simple);
}

TEST_CASE("scale membership and normal form") {
  const Diagram two = Diagram::make_stationary(IntMatrix{{2}}, make_int_vector({1}), true);
  CHECK(in_scale(two, K0Element{1, make_int_vector({1})}, 4) == ScaleVerdict::InScale);
  CHECK(in_scale(two, K0Element{1, make_int_vector({3})}, 4) == ScaleVerdict::NotInScale);
  CHECK(normalize(two, K0Element{3, make_int_vector({4})}) == K0Element{1, make_int_vector({1})});
  CHECK(normalize(two, K0Element{2, make_int_vector({3})}) == K0Element{2, make_int_vector({3})});
}

TEST_CASE("json round trip keeps big integers exact") {
  const Diagram d{{IntVector{Int("123456789012345678901234567890")}}, {IntMatrix{{3}}}, true, false};
  const json j = to_json(d);
  CHECK(j["sizes"][0][0] == "123456789012345678901234567890");
  const Diagram back = diagram_from_json(j);
  CHECK(back.sizes == d.sizes);
  CHECK(back.maps == d.maps);
  CHECK(back.stationary);
  try {
    diagram_from_json(json::parse(R"({"sizes": [["1"]], "maps": [[["x"]]]})"));
    FAIL("expected a schema error");
  } catch (const SchemaError& e) {
    CHECK(e.pointer() == "/maps/0/0/0");
  }
}
