#include "afx/cantor/system.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace afx {

namespace {

[[noreturn]] void fail(SystemErrorKind kind, const std::string& what) { throw SystemError(kind, what); }

Rat squared_coord_distance(const RatVector& a, const RatVector& b) {
  Rat s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Rat d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

void check_epsilon(const Rat& eps) {
  if (eps <= 0) fail(SystemErrorKind::BadEpsilon, "epsilon must be positive");
}

std::vector<std::vector<std::size_t>> step_graph(const FiniteDynSystem& sys, const Rat& eps) {
  const std::size_t n = sys.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (closer_than(sys, sys.map[x], y, eps)) adj[x].push_back(y);
  return adj;
}

// Tarjan's algorithm, iterative. Returns the component id of every vertex.
std::vector<std::size_t> strong_components(const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size();
  const std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unset), low(n, 0), comp(n, unset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0, components = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unset) continue;
    std::vector<std::pair<std::size_t, std::size_t>> work{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!work.empty()) {
      auto& [v, next] = work.back();
      if (next < adj[v].size()) {
        const std::size_t w = adj[v][next++];
        if (index[w] == unset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          work.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::size_t done = v;
      work.pop_back();
      if (!work.empty()) low[work.back().first] = std::min(low[work.back().first], low[done]);
      if (low[done] == index[done]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = components;
        } while (w != done);
        ++components;
      }
    }
  }
  return comp;
}

PointSet intersect(const PointSet& a, const PointSet& b) {
  PointSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

const char* to_string(SystemErrorKind kind) {
  switch (kind) {
    case SystemErrorKind::SizeMismatch: return "SizeMismatch";
    case SystemErrorKind::MissingMetric: return "MissingMetric";
    case SystemErrorKind::MapOutOfRange: return "MapOutOfRange";
    case SystemErrorKind::NotSymmetric: return "NotSymmetric";
    case SystemErrorKind::NonzeroDiagonal: return "NonzeroDiagonal";
    case SystemErrorKind::NegativeDistance: return "NegativeDistance";
    case SystemErrorKind::TriangleInequality: return "TriangleInequality";
    case SystemErrorKind::BadEpsilon: return "BadEpsilon";
    case SystemErrorKind::NotBijective: return "NotBijective";
  }
  return "?";
}

const char* to_string(RigidityOutcome o) {
  switch (o) {
    case RigidityOutcome::Rigid: return "Rigid";
    case RigidityOutcome::NotMonotone: return "NotMonotone";
    case RigidityOutcome::Violation: return "Violation";
  }
  return "?";
}

void validate(const FiniteDynSystem& sys) {
  const std::size_t n = sys.size();
  if (sys.map.size() != n) fail(SystemErrorKind::SizeMismatch, "map has " + std::to_string(sys.map.size()) + " entries");
  for (std::size_t x = 0; x < n; ++x)
    if (sys.map[x] >= n) fail(SystemErrorKind::MapOutOfRange, "map[" + std::to_string(x) + "] out of range");
  if (sys.coords.has_value() == sys.dist.has_value())
    fail(SystemErrorKind::MissingMetric, "give exactly one of coordinates or a distance matrix");
  if (sys.coords) {
    if (sys.coords->size() != n) fail(SystemErrorKind::SizeMismatch, "coordinate count differs from point count");
    for (const auto& c : *sys.coords)
      if (c.size() != sys.coords->front().size()) fail(SystemErrorKind::SizeMismatch, "ragged coordinates");
    return;
  }
  const RatMatrix& d = *sys.dist;
  if (d.size() != n) fail(SystemErrorKind::SizeMismatch, "distance matrix has wrong size");
  for (const auto& row : d)
    if (row.size() != n) fail(SystemErrorKind::SizeMismatch, "distance matrix is not square");
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i][i] != 0) fail(SystemErrorKind::NonzeroDiagonal, "d(x, x) != 0");
    for (std::size_t j = 0; j < n; ++j) {
      if (d[i][j] != d[j][i]) fail(SystemErrorKind::NotSymmetric, "distance matrix is not symmetric");
      if (d[i][j] < 0) fail(SystemErrorKind::NegativeDistance, "negative distance");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (d[i][k] > d[i][j] + d[j][k])
          fail(SystemErrorKind::TriangleInequality,
               "d(" + std::to_string(i) + ", " + std::to_string(k) + ") exceeds the path through " + std::to_string(j));
}

bool closer_than(const FiniteDynSystem& sys, std::size_t i, std::size_t j, const Rat& eps) {
  if (sys.dist) return (*sys.dist)[i][j] < eps;
  return squared_coord_distance((*sys.coords)[i], (*sys.coords)[j]) < eps * eps;
}

PointSet chain_recurrent_set(const FiniteDynSystem& sys, const Rat& eps) {
  check_epsilon(eps);
  const auto adj = step_graph(sys, eps);
  const auto comp = strong_components(adj);
  std::vector<std::size_t> comp_size(sys.size() + 1, 0);
  for (std::size_t c : comp) ++comp_size[c];
  PointSet out;
  for (std::size_t x = 0; x < sys.size(); ++x) {
    const bool loop = std::find(adj[x].begin(), adj[x].end(), x) != adj[x].end();
    if (loop || comp_size[comp[x]] >= 2) out.push_back(x);
  }
  return out;
}

ChainReport pseudo_nonwandering(const FiniteDynSystem& sys, const std::vector<Rat>& epsilons) {
  if (epsilons.empty()) fail(SystemErrorKind::BadEpsilon, "no epsilons given");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    check_epsilon(epsilons[i]);
    if (i > 0 && epsilons[i] >= epsilons[i - 1]) fail(SystemErrorKind::BadEpsilon, "epsilons must be strictly descending");
  }
  ChainReport r;
  r.epsilons = epsilons;
  PointSet all(sys.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  r.intersection = all;
  for (const auto& eps : epsilons) {
    PointSet s = chain_recurrent_set(sys, eps);
    if (!r.recurrent_sets.empty()) s = intersect(s, r.recurrent_sets.back());
    r.intersection = intersect(r.intersection, s);
    r.recurrent_sets.push_back(std::move(s));
  }
  return r;
}

std::optional<AttractingSet> attracting_clopen_witness(const FiniteDynSystem& sys, const Rat& eps) {
  const PointSet rec = chain_recurrent_set(sys, eps);
  if (rec.size() == sys.size()) return std::nullopt;
  std::size_t x = 0;
  while (std::binary_search(rec.begin(), rec.end(), x)) ++x;
  const auto adj = step_graph(sys, eps);
  std::vector<bool> seen(sys.size(), false);
  std::vector<std::size_t> todo{x};
  seen[x] = true;
  while (!todo.empty()) {
    const std::size_t v = todo.back();
    todo.pop_back();
    for (std::size_t w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        todo.push_back(w);
      }
  }
  AttractingSet a;
  a.x = x;
  for (std::size_t v = 0; v < sys.size(); ++v)
    if (seen[v]) a.v.push_back(v);
  return a;
}

bool verify_attracting_set(const FiniteDynSystem& sys, const Rat& eps, const AttractingSet& a) {
  if (!std::binary_search(a.v.begin(), a.v.end(), a.x)) return false;
  for (std::size_t v : a.v) {
    if (v >= sys.size()) return false;
    for (std::size_t y = 0; y < sys.size(); ++y) {
      if (!closer_than(sys, sys.map[v], y, eps)) continue;
      if (!std::binary_search(a.v.begin(), a.v.end(), y)) return false;
      if (y == a.x) return false;
    }
  }
  return true;
}

RigidityResult positivity_rigidity(const FiniteDynSystem& sys, const std::vector<Int>& f) {
  const std::size_t n = sys.size();
  if (f.size() != n) fail(SystemErrorKind::SizeMismatch, "function has wrong length");
  std::vector<std::size_t> inverse(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    if (inverse[sys.map[x]] != n) fail(SystemErrorKind::NotBijective, "map is not injective");
    inverse[sys.map[x]] = x;
  }
  RigidityResult r;
  r.g.resize(n);
  for (std::size_t y = 0; y < n; ++y) r.g[y] = f[inverse[y]] - f[y];
  for (std::size_t y = 0; y < n; ++y)
    if (r.g[y] < 0) {
      r.outcome = RigidityOutcome::NotMonotone;
      r.witness = y;
      return r;
    }
  std::vector<Int> values(f.begin(), f.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  for (const Int& s : values) {
    PointSet e;
    for (std::size_t x = 0; x < n; ++x)
      if (f[x] == s) e.push_back(x);
    PointSet image;
    for (std::size_t x : e) image.push_back(sys.map[x]);
    std::sort(image.begin(), image.end());
    if (image != e) {
      r.outcome = RigidityOutcome::Violation;
      r.witness = e.front();
      return r;
    }
    r.level_sets.push_back(std::move(e));
  }
  r.outcome = RigidityOutcome::Rigid;
  return r;
}

FiniteDynSystem cycle_ladder(std::size_t n) {
  if (n < 2) throw std::invalid_argument("cycle_ladder needs n >= 2");
  FiniteDynSystem sys;
  sys.coords.emplace();
  for (std::size_t k = 1; k <= n; ++k) {
    sys.labels.push_back(k == 1 ? "1" : "1/" + std::to_string(k));
    Rat c(1, k);
    c.canonicalize();
    sys.coords->push_back({c});
  }
  sys.labels.push_back("0");
  sys.coords->push_back({Rat(0)});
  sys.map.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) sys.map[i] = i;
  std::size_t start = 0, len = 2;
  while (start + len <= n) {
    for (std::size_t i = 0; i < len; ++i) sys.map[start + i] = start + (i + 1) % len;
    start += len;
    ++len;
  }
  return sys;
}

FiniteDynSystem compactified_shift(std::size_t n) {
  if (n < 1) throw std::invalid_argument("compactified_shift needs n >= 1");
  FiniteDynSystem sys;
  sys.coords.emplace();
  const long m = static_cast<long>(n);
  for (long k = -m; k <= m; ++k) {
    sys.labels.push_back(std::to_string(k));
    const Rat k2 = Rat(k) * k;
    Rat x = (1 - k2) / (1 + k2);
    Rat y = Rat(2 * k) / (1 + k2);
    sys.coords->push_back({x, y});
  }
  sys.labels.push_back("inf");
  sys.coords->push_back({Rat(-1), Rat(0)});
  const std::size_t inf = 2 * n + 1;
  sys.map.resize(inf + 1);
  for (std::size_t i = 0; i < inf; ++i) sys.map[i] = i + 1;
  sys.map[inf] = inf;
  return sys;
}

FiniteDynSystem contracting_line() {
  FiniteDynSystem sys;
  sys.labels = {"0", "1", "2"};
  sys.coords = std::vector<RatVector>{{Rat(0)}, {Rat(1)}, {Rat(2)}};
  sys.map = {0, 0, 1};
  return sys;
}

Rat max_consecutive_gap(const FiniteDynSystem& sys) {
  if (!sys.coords || sys.size() < 2) throw std::invalid_argument("max_consecutive_gap needs planar coordinates");
  std::vector<std::size_t> order(sys.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto angle = [&](std::size_t i) { return std::atan2((*sys.coords)[i].at(1).get_d(), (*sys.coords)[i].at(0).get_d()); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return angle(a) < angle(b); });
  Rat worst = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Rat sq = squared_coord_distance((*sys.coords)[order[i]], (*sys.coords)[order[(i + 1) % order.size()]]);
    worst = std::max(worst, sq);
  }
  const long scale = 1L << 30;
  Rat r(static_cast<long>(std::ceil(std::sqrt(worst.get_d()) * scale)), scale);
  r.canonicalize();
  while (r * r < worst) r += Rat(1, scale);
  return r;
}

FiniteDynSystem system_from_json(const json& j, const std::string& ptr) {
  FiniteDynSystem sys;
  const json& points = require_field(j, "points", ptr);
  const std::string pp = child_pointer(ptr, "points");
  if (!points.is_array()) throw SchemaError(pp, "expected an array of labels");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].is_string()) sys.labels.push_back(points[i].get<std::string>());
    else if (points[i].is_number()) sys.labels.push_back(points[i].dump());
    else throw SchemaError(child_pointer(pp, i), "label must be a string or number");
  }
  if (j.contains("coords")) {
    const std::string cp = child_pointer(ptr, "coords");
    if (!j["coords"].is_array()) throw SchemaError(cp, "expected an array");
    sys.coords.emplace();
    for (std::size_t i = 0; i < j["coords"].size(); ++i)
      sys.coords->push_back(rat_vector_from_json(j["coords"][i], child_pointer(cp, i)));
  }
  if (j.contains("dist")) {
    const std::string dp = child_pointer(ptr, "dist");
    if (!j["dist"].is_array()) throw SchemaError(dp, "expected an array");
    sys.dist.emplace();
    for (std::size_t i = 0; i < j["dist"].size(); ++i)
      sys.dist->push_back(rat_vector_from_json(j["dist"][i], child_pointer(dp, i)));
  }
  const json& map = require_field(j, "map", ptr);
  const std::string mp = child_pointer(ptr, "map");
  if (!map.is_array()) throw SchemaError(mp, "expected an array of indices");
  for (std::size_t i = 0; i < map.size(); ++i) sys.map.push_back(count_from_json(map[i], child_pointer(mp, i)));
  return sys;
}

json to_json(const FiniteDynSystem& sys) {
  json out = json::object();
  out["points"] = sys.labels;
  if (sys.coords) {
    json c = json::array();
    for (const auto& v : *sys.coords) c.push_back(to_json(v));
    out["coords"] = c;
  }
  if (sys.dist) {
    json d = json::array();
    for (const auto& v : *sys.dist) d.push_back(to_json(v));
    out["dist"] = d;
  }
  out["map"] = sys.map;
  return out;
}

json to_json(const ChainReport& r, const FiniteDynSystem& sys) {
  auto labels = [&](const PointSet& s) {
    json a = json::array();
    for (std::size_t x : s) a.push_back(sys.labels[x]);
    return a;
  };
  json out = json::object();
  json per = json::array();
  for (std::size_t i = 0; i < r.epsilons.size(); ++i) {
    json e = json::object();
    e["epsilon"] = to_json(r.epsilons[i]);
    e["recurrent"] = labels(r.recurrent_sets[i]);
    per.push_back(e);
  }
  out["sweep"] = per;
  out["intersection"] = labels(r.intersection);
  out["all_recurrent"] = r.intersection.size() == sys.size();
  out["note"] = "finite sample; recurrence is resolved only down to the smallest epsilon";
  return out;
}

}  // namespace afx
