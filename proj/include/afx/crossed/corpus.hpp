#pragma once

#include "afx/crossed/problem.hpp"

#include <string>
#include <vector>

namespace afx {

struct NamedProblem {
  std::string name;
  EmbedProblem problem;
};

/// Small curated problems covering every verdict path of decide_embeddable.
std::vector<NamedProblem> builtin_problems();

}  // namespace afx
