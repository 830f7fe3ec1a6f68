#include "afx/crossed/corpus.hpp"

namespace afx {

namespace {

const IntMatrix kFib{{1, 1}, {1, 0}};

NamedProblem stationary(std::string name, IntMatrix m, IntVector sizes, bool unital, IntMatrix f,
                        std::size_t shift = 0) {
  return {std::move(name),
          EmbedProblem{Diagram::make_stationary(m, std::move(sizes), unital), LimitEndomorphism{std::move(f), shift}, {}}};
}

}  // namespace

std::vector<NamedProblem> builtin_problems() {
  std::vector<NamedProblem> out;
  out.push_back(stationary("doubling-times-two", IntMatrix{{2}}, make_int_vector({1}), false, IntMatrix{{2}}));
  out.push_back(stationary("fibonacci-shift-map", kFib, make_int_vector({1, 1}), false, kFib));
  out.push_back(stationary("doubling-times-four-shifted", IntMatrix{{2}}, make_int_vector({1}), false, IntMatrix{{4}}, 1));
  out.push_back(stationary("fibonacci-identity", kFib, make_int_vector({1, 1}), false, IntMatrix::identity(2)));
  out.push_back(stationary("diagonal-identity", IntMatrix::identity(2), make_int_vector({1, 1}), true,
                           IntMatrix::identity(2)));
  out.push_back(stationary("swap-diagram-identity", IntMatrix{{0, 1}, {1, 0}}, make_int_vector({1, 1}), true,
                           IntMatrix::identity(2)));
  out.push_back({"finite-depth-identity",
                 EmbedProblem{Diagram{{make_int_vector({1}), make_int_vector({2, 1})}, {IntMatrix{{2}, {1}}}, false, true},
                              LimitEndomorphism{IntMatrix::identity(2), 0},
                              {}}});
  out.push_back(stationary("cantor-odometer", IntMatrix{{2}}, make_int_vector({1}), true, IntMatrix{{1}}));
  out.push_back(stationary("fibonacci-unital-shift", kFib, make_int_vector({1, 1}), true, kFib, 1));
  out.push_back(stationary("cat-map-unital-shift", IntMatrix{{2, 1}, {1, 1}}, make_int_vector({1, 1}), true,
                           IntMatrix{{2, 1}, {1, 1}}, 1));
  out.push_back(stationary("full-matrix-swap", IntMatrix{{1, 1}, {1, 1}}, make_int_vector({1, 1}), true,
                           IntMatrix{{0, 1}, {1, 0}}));
  out.push_back(stationary("tripling-identity", IntMatrix{{3}}, make_int_vector({1}), true, IntMatrix{{1}}));
  return out;
}

}  // namespace afx
