#include "afx/cli/app.hpp"

#include "afx/cantor/system.hpp"
#include "afx/crossed/corpus.hpp"
#include "afx/crossed/decide.hpp"
#include "afx/crossed/spielberg.hpp"
#include "afx/linalg/order.hpp"
#include "afx/linalg/perron.hpp"
#include "afx/matrixlab/lab.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace afx::cli {

const char* const kToolVersion = AFX_TOOL_VERSION;

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream s;
  for (unsigned int i = 0; i < len; ++i) s << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return s.str();
}

std::string input_digest(const json& doc) { return "sha256:" + sha256_hex(doc.dump()); }

namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Outcome {
  json doc;
  int code = kExitCertified;
  std::string csv;  // filled when the command supports --format csv
};

json read_document(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    text = s.str();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    text = s.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Rat precision_from_env() {
  const char* env = std::getenv("AFX_PRECISION");
  if (!env || !*env) return Budget{}.precision;
  Rat p;
  try {
    p = parse_rat(env);
  } catch (const std::invalid_argument&) {
    throw InputError(std::string("AFX_PRECISION is not a rational number: ") + env);
  }
  if (p <= 0 || p >= 1) throw InputError("AFX_PRECISION must lie strictly between 0 and 1");
  return p;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<Rat> parse_epsilons(const std::string& text) {
  std::vector<Rat> out;
  for (const auto& item : split_list(text)) {
    try {
      out.push_back(parse_rat(item));
    } catch (const std::invalid_argument&) {
      throw InputError("--epsilons: not a rational number: " + item);
    }
  }
  if (out.empty()) throw InputError("--epsilons: expected a comma-separated list");
  return out;
}

json header(const std::string& command, const std::string& digest) {
  json doc = json::object();
  doc["schema_version"] = 1;
  doc["tool"] = "afx";
  doc["tool_version"] = kToolVersion;
  doc["command"] = command;
  doc["input_digest"] = digest;
  return doc;
}

json budget_json(const Budget& b) {
  json out = json::object();
  out["stages"] = b.stages;
  out["box"] = b.box;
  out["orbit"] = b.orbit;
  out["precision"] = to_json(b.precision);
  return out;
}

Budget budget_from_json(const json& j) {
  Budget b;
  b.stages = count_from_json(require_field(j, "stages", "/options"), "/options/stages");
  b.box = count_from_json(require_field(j, "box", "/options"), "/options/box");
  b.orbit = count_from_json(require_field(j, "orbit", "/options"), "/options/orbit");
  b.precision = rat_from_json(require_field(j, "precision", "/options"), "/options/precision");
  return b;
}

EmbedProblem load_problem(const json& input) {
  EmbedProblem p = problem_from_json(input);
  validate_problem(p);
  return p;
}

// ---------------------------------------------------------------- embeddability

Outcome cmd_decide(const json& input, const Budget& budget) {
  const EmbedProblem p = load_problem(input);
  const EmbeddabilityVerdict v = decide_embeddable(p, budget);
  Outcome o;
  o.doc = header("decide", input_digest(input));
  o.doc["options"] = budget_json(budget);
  o.doc["status"] = v.kind == VerdictKind::Unknown ? "unknown" : "certified";
  o.doc["result"] = to_json(v);
  o.code = v.kind == VerdictKind::Unknown ? kExitUnknown : kExitCertified;
  return o;
}

Outcome cmd_fop(const json& input, const Budget& budget) {
  const EmbedProblem p = load_problem(input);
  const FopResult f = fop_check(p, budget.orbit, budget.precision);
  Outcome o;
  o.doc = header("fop", input_digest(input));
  o.doc["options"] = budget_json(budget);
  const bool unknown = f.outcome == FopResult::Outcome::Unknown;
  o.doc["status"] = unknown ? "unknown" : "certified";
  o.doc["result"] = to_json(f);
  o.code = unknown ? kExitUnknown : kExitCertified;
  return o;
}

Outcome cmd_witness(const json& input, const Budget& budget) {
  const EmbedProblem p = load_problem(input);
  const auto w = h_witness_search(p, budget.stages, budget.box);
  Outcome o;
  o.doc = header("witness", input_digest(input));
  o.doc["options"] = budget_json(budget);
  o.doc["status"] = w ? "certified" : "unknown";
  json result = json::object();
  result["found"] = w.has_value();
  if (w) result["witness"] = to_json(*w);
  o.doc["result"] = result;
  o.code = w ? kExitCertified : kExitUnknown;
  return o;
}

bool verify_not_fop(const EmbedProblem& p, const json& r, const Budget& budget) {
  if (r.at("reason") == "Determinant") {
    if (p.diagram.stationary) return false;
    const Int det = p.endo.mat.determinant();
    return det == int_from_json(r.at("determinant"), "/result/determinant") && abs(det) != 1;
  }
  if (!p.diagram.stationary || !is_primitive(p.diagram.matrix())) return false;
  const PerronEnclosure e = perron_enclosure(p.diagram.matrix(), budget.precision);
  if (!verify_collatz_wielandt(p.diagram.matrix(), e)) return false;
  const Rat mu_lo = rat_from_json(r.at("mu").at(0), "/result/mu/0");
  const Rat mu_hi = rat_from_json(r.at("mu").at(1), "/result/mu/1");
  const Rat g_lo = rat_from_json(r.at("lambda_power").at(0), "/result/lambda_power/0");
  const Rat g_hi = rat_from_json(r.at("lambda_power").at(1), "/result/lambda_power/1");
  // The eigenvector l of M satisfies l F = mu l with mu = l . F e_0 / l_0;
  // with l_0 normalized inside the enclosure, mu must lie in [mu_lo, mu_hi].
  Rat lo = 0, hi = 0;
  for (std::size_t i = 0; i < p.endo.mat.rows(); ++i) {
    const Int& c = p.endo.mat(i, 0);
    lo += c >= 0 ? c * e.eigvec_lo[i] : c * e.eigvec_hi[i];
    hi += c >= 0 ? c * e.eigvec_hi[i] : c * e.eigvec_lo[i];
  }
  Rat plo = 1, phi = 1;
  for (std::size_t i = 0; i < p.endo.shift; ++i) {
    plo *= e.lambda_lo;
    phi *= e.lambda_hi;
  }
  if (lo < mu_lo || hi > mu_hi || plo < g_lo || phi > g_hi) return false;
  Rat a_lo = mu_lo, a_hi = mu_hi;
  if (mu_hi <= 0) {
    a_lo = -mu_hi;
    a_hi = -mu_lo;
  } else if (mu_lo < 0) {
    a_lo = 0;
    a_hi = std::max(Rat(-mu_lo), mu_hi);
  }
  return a_hi < g_lo || a_lo > g_hi;
}

// ---------------------------------------------------------------- dynamics

json attracting_json(const std::optional<AttractingSet>& a) {
  if (!a) return nullptr;
  json out = json::object();
  json v = json::array();
  for (std::size_t i : a->v) v.push_back(i);
  out["v"] = v;
  out["x"] = a->x;
  return out;
}

Outcome cmd_chainrec(const json& input, const std::vector<Rat>& epsilons) {
  const FiniteDynSystem sys = system_from_json(input);
  validate(sys);
  const ChainReport report = pseudo_nonwandering(sys, epsilons);
  Outcome o;
  o.doc = header("chainrec", input_digest(input));
  json eps = json::array();
  for (const auto& e : epsilons) eps.push_back(to_json(e));
  o.doc["options"] = json{{"epsilons", eps}};
  o.doc["status"] = "certified";
  json result = json::object();
  result["report"] = to_json(report, sys);
  json attracting = json::array();
  for (const auto& e : epsilons) attracting.push_back(attracting_json(attracting_clopen_witness(sys, e)));
  result["attracting_sets"] = attracting;
  o.doc["result"] = result;
  std::ostringstream csv;
  csv << "epsilon,recurrent_count,points,recurrent\n";
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    csv << to_string(epsilons[i]) << ',' << report.recurrent_sets[i].size() << ',' << sys.size() << ',';
    for (std::size_t k = 0; k < report.recurrent_sets[i].size(); ++k)
      csv << (k ? " " : "") << sys.labels[report.recurrent_sets[i][k]];
    csv << '\n';
  }
  o.csv = csv.str();
  return o;
}

json rohlin_options(std::size_t m_prime, std::size_t k, const std::vector<std::size_t>& leading) {
  json out = json::object();
  out["m_prime"] = m_prime;
  out["k"] = k;
  out["leading_factors"] = leading;
  return out;
}

json tower_check_json(const TowerCheck& c) {
  return json{{"idempotent", c.idempotent}, {"self_adjoint", c.self_adjoint}, {"orthogonal", c.orthogonal},
              {"sums_to_one", c.sums_to_one}, {"shifted", c.shifted},       {"commutes", c.commutes}};
}

Outcome cmd_rohlin(std::size_t m_prime, std::size_t k, const std::vector<std::size_t>& leading) {
  const json options = rohlin_options(m_prime, k, leading);
  const RohlinTower t = rohlin_tower(m_prime, k);
  const TowerCheck c = check_rohlin_tower(t, leading);
  Outcome o;
  o.doc = header("rohlin", input_digest(options));
  o.doc["options"] = options;
  o.doc["status"] = c.all() ? "certified" : "unknown";
  json result = json::object();
  json projections = json::array();
  for (const auto& e : t.projections) {
    json diag = json::array();
    for (std::size_t i = 0; i < m_prime; ++i)
      if (e(i, i) != 0) diag.push_back(i);
    projections.push_back(diag);
  }
  result["projections"] = projections;
  result["checks"] = tower_check_json(c);
  o.doc["result"] = result;
  o.code = c.all() ? kExitCertified : kExitUnknown;
  return o;
}

struct StabilizeOptions {
  std::vector<std::size_t> ks{5, 9, 17};
  std::size_t runs = 10;
  std::uint64_t seed = 1;
  std::size_t multiple = 1;
};

json stabilize_options(const StabilizeOptions& s) {
  json out = json::object();
  out["k"] = s.ks;
  out["runs"] = s.runs;
  out["seed"] = s.seed;
  out["multiple"] = s.multiple;
  return out;
}

StabilizeSpec spec_for(std::size_t k, std::size_t multiple) {
  StabilizeSpec spec;
  spec.k = k;
  spec.multiple = multiple;
  return spec;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

Outcome cmd_stabilize(const StabilizeOptions& s) {
  if (s.ks.empty() || s.runs == 0) throw InputError("stabilize needs at least one k and one run");
  for (std::size_t k : s.ks)
    if (k < 2) throw InputError("stabilize: every k must be at least 2");
  const json options = stabilize_options(s);
  Outcome o;
  o.doc = header("stabilize", input_digest(options));
  o.doc["options"] = options;
  json runs = json::array();
  json medians = json::array();
  std::ostringstream csv;
  csv << "seed," << csv_header() << '\n';
  bool all = true;
  for (std::size_t k : s.ks) {
    std::vector<double> defects;
    for (std::size_t r = 0; r < s.runs; ++r) {
      const std::uint64_t seed = s.seed + r;
      const StabilizeResult res = stabilize_experiment(spec_for(k, s.multiple), seed);
      json row = json::object();
      row["seed"] = seed;
      const json measured = to_json(res);
      for (auto it = measured.begin(); it != measured.end(); ++it) row[it.key()] = it.value();
      runs.push_back(row);
      csv << seed << ',' << to_csv(res) << '\n';
      defects.push_back(res.defect);
      all = all && res.pass();
    }
    medians.push_back(json{{"k", k}, {"median_defect", median(defects)}});
  }
  o.doc["status"] = all ? "certified" : "unknown";
  o.doc["result"] = json{{"runs", runs}, {"medians", medians}, {"all_pass", all}};
  o.csv = csv.str();
  o.code = all ? kExitCertified : kExitUnknown;
  return o;
}

// ---------------------------------------------------------------- orders and quotients

RatCone cone_from_json(const json& input) {
  RatCone cone;
  cone.ambient_dim = count_from_json(require_field(input, "dim", ""), "/dim");
  const json& gens = require_field(input, "generators", "");
  if (!gens.is_array()) throw SchemaError("/generators", "expected an array");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string ptr = child_pointer("/generators", i);
    RatVector g = rat_vector_from_json(gens[i], ptr);
    if (g.size() != cone.ambient_dim) throw SchemaError(ptr, "wrong length");
    if (std::all_of(g.begin(), g.end(), [](const Rat& x) { return x == 0; }))
      throw SchemaError(ptr, "generators must be nonzero");
    cone.generators.push_back(std::move(g));
  }
  return cone;
}

Outcome cmd_order_extend(const json& input) {
  const RatCone cone = cone_from_json(input);
  Outcome o;
  o.doc = header("order-extend", input_digest(input));
  o.doc["status"] = "certified";
  json result = json::object();
  try {
    const OrderCertificate cert = total_order_extend(cone);
    result["salient"] = true;
    json f = json::array();
    for (const auto& l : cert.functionals) f.push_back(to_json(l));
    result["functionals"] = f;
  } catch (const NotSalient& e) {
    result["salient"] = false;
    result["farkas"] = to_json(e.farkas.multipliers);
  }
  o.doc["result"] = result;
  return o;
}

std::vector<IntVector> vector_list(const json& j, const std::string& ptr, std::size_t dim) {
  if (!j.is_array()) throw SchemaError(ptr, "expected an array of vectors");
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = child_pointer(ptr, i);
    IntVector v = int_vector_from_json(j[i], p);
    if (v.size() != dim) throw SchemaError(p, "wrong length");
    out.push_back(std::move(v));
  }
  return out;
}

struct PresentationInput {
  FinitePresentation fp;
  std::vector<IntVector> h;
};

PresentationInput presentation_from_json(const json& input) {
  PresentationInput out;
  if (input.contains("diagram")) {
    out.fp = finite_presentation(load_problem(input));
    return out;
  }
  out.fp.dim = count_from_json(require_field(input, "dim", ""), "/dim");
  out.fp.cone_generators = vector_list(require_field(input, "cone", ""), "/cone", out.fp.dim);
  out.fp.h_alpha = vector_list(require_field(input, "h_alpha", ""), "/h_alpha", out.fp.dim);
  if (input.contains("h")) out.h = vector_list(input["h"], "/h", out.fp.dim);
  return out;
}

KernelMode parse_mode(const std::string& mode) {
  if (mode == "torsion") return KernelMode::Torsion;
  if (mode == "given") return KernelMode::Given;
  throw InputError("--mode must be torsion or given");
}

Outcome cmd_spielberg(const json& input, const std::string& mode) {
  const PresentationInput pi = presentation_from_json(input);
  const QuotientTarget t = quotient_target(pi.fp, pi.h, parse_mode(mode));
  Outcome o;
  o.doc = header("spielberg", input_digest(input));
  o.doc["options"] = json{{"mode", mode}};
  o.doc["status"] = "certified";
  o.doc["result"] = to_json(t);
  return o;
}

QuotientTarget quotient_from_json(const json& r, std::size_t dim) {
  QuotientTarget t;
  t.theta = int_matrix_from_json(r.at("theta"), "/result/theta", dim);
  t.kernel = Lattice::from_generators(dim, vector_list(r.at("kernel_basis"), "/result/kernel_basis", dim));
  for (std::size_t i = 0; i < r.at("torsion").size(); ++i)
    t.torsion.push_back(int_from_json(r["torsion"][i], child_pointer("/result/torsion", i)));
  for (std::size_t i = 0; i < r.at("order_functionals").size(); ++i)
    t.order.functionals.push_back(
        rat_vector_from_json(r["order_functionals"][i], child_pointer("/result/order_functionals", i)));
  return t;
}

// ---------------------------------------------------------------- examples

struct Example {
  std::string name;
  std::string command;
  json document;
};

json cone_doc(std::size_t dim, const std::vector<std::vector<long>>& gens) {
  json g = json::array();
  for (const auto& v : gens) g.push_back(v);
  return json{{"dim", dim}, {"generators", g}};
}

std::vector<Example> examples(std::size_t ladder_size, std::size_t shift_size) {
  std::vector<Example> out;
  for (const auto& np : builtin_problems()) out.push_back({np.name, "decide", to_json(np.problem)});
  out.push_back({"cycle-ladder", "chainrec", to_json(cycle_ladder(ladder_size))});
  out.push_back({"compactified-shift", "chainrec", to_json(compactified_shift(shift_size))});
  out.push_back({"contracting-line", "chainrec", to_json(contracting_line())});
  out.push_back({"quadrant-cone", "order-extend", cone_doc(2, {{1, 0}, {0, 1}})});
  out.push_back({"ice-cream-cone", "order-extend", cone_doc(3, {{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}})});
  out.push_back({"line-cone", "order-extend", cone_doc(2, {{1, 1}, {-1, -1}, {0, 1}})});
  out.push_back({"antidiagonal-quotient", "spielberg",
                 json{{"dim", 2}, {"cone", {{1, 0}, {0, 1}}}, {"h_alpha", {{1, -1}}}}});
  out.push_back({"torsion-quotient", "spielberg",
                 json{{"dim", 3}, {"cone", {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}, {"h_alpha", {{2, -2, 0}}}}});
  return out;
}

// ---------------------------------------------------------------- verify

json rerun_chain_report(const FiniteDynSystem& sys, const json& options) {
  std::vector<Rat> eps;
  for (std::size_t i = 0; i < options.at("epsilons").size(); ++i)
    eps.push_back(rat_from_json(options["epsilons"][i], child_pointer("/options/epsilons", i)));
  return to_json(pseudo_nonwandering(sys, eps), sys);
}

/// Certificate checks for one document; returns the individual check results.
json verify_document(const json& doc, const json* input) {
  const std::string command = doc.at("command").get<std::string>();
  const json& result = doc.at("result");
  json checks = json::object();

  const bool takes_input = command != "rohlin" && command != "stabilize";
  const json digest_source = takes_input ? (input ? *input : json()) : doc.at("options");
  if (takes_input && !input) throw InputError("verify: " + command + " documents need the input document");
  checks["digest"] = input_digest(digest_source) == doc.at("input_digest").get<std::string>();
  if (!checks["digest"].get<bool>()) return checks;

  if (command == "decide") {
    const EmbedProblem p = load_problem(*input);
    checks["certificate"] = verify_verdict(p, verdict_from_json(result, "/result"));
  } else if (command == "fop") {
    const EmbedProblem p = load_problem(*input);
    const std::string outcome = result.at("outcome").get<std::string>();
    if (outcome == "FOP") checks["table"] = verify_fop_table(p, fop_from_json(result, "/result"));
    else if (outcome == "NotFOP") checks["growth"] = verify_not_fop(p, result, budget_from_json(doc.at("options")));
    else checks["unknown"] = true;
  } else if (command == "witness") {
    const EmbedProblem p = load_problem(*input);
    if (result.at("found").get<bool>())
      checks["witness"] = verify_h_witness(p, witness_from_json(result.at("witness"), "/result/witness"));
    else checks["unknown"] = true;
  } else if (command == "chainrec") {
    const FiniteDynSystem sys = system_from_json(*input);
    validate(sys);
    checks["report"] = rerun_chain_report(sys, doc.at("options")) == result.at("report");
    bool attracting = true;
    const json& eps = doc.at("options").at("epsilons");
    for (std::size_t i = 0; i < eps.size(); ++i) {
      const json& a = result.at("attracting_sets").at(i);
      if (a.is_null()) continue;
      AttractingSet set;
      for (const auto& v : a.at("v")) set.v.push_back(v.get<std::size_t>());
      set.x = a.at("x").get<std::size_t>();
      attracting = attracting && verify_attracting_set(sys, rat_from_json(eps[i], "/options/epsilons"), set);
    }
    checks["attracting_sets"] = attracting;
  } else if (command == "rohlin") {
    const json& o = doc.at("options");
    RohlinTower t;
    t.k = o.at("k").get<std::size_t>();
    t.m_prime = o.at("m_prime").get<std::size_t>();
    bool shape = result.at("projections").size() == t.k;
    for (const auto& diag : result.at("projections")) {
      IntMatrix e(t.m_prime, t.m_prime);
      for (const auto& i : diag) {
        const std::size_t idx = i.get<std::size_t>();
        if (idx >= t.m_prime) shape = false;
        else e(idx, idx) = 1;
      }
      t.projections.push_back(e);
    }
    checks["shape"] = shape;
    if (shape) {
      const TowerCheck c = check_rohlin_tower(t, o.at("leading_factors").get<std::vector<std::size_t>>());
      checks["tower"] = tower_check_json(c);
      checks["identities"] = c.all();
    }
  } else if (command == "stabilize") {
    const std::size_t multiple = doc.at("options").at("multiple").get<std::size_t>();
    bool defects = true, bounds = true;
    for (const auto& run : result.at("runs")) {
      const StabilizeResult r =
          stabilize_experiment(spec_for(run.at("k").get<std::size_t>(), multiple), run.at("seed").get<std::uint64_t>());
      const double recorded = run.at("defect").get<double>();
      defects = defects && std::abs(r.defect - recorded) <= 1e-9;
      bounds = bounds && (r.defect <= r.bound) == run.at("pass").get<bool>() && r.bound == run.at("bound").get<double>();
    }
    checks["defects"] = defects;
    checks["bounds"] = bounds;
  } else if (command == "order-extend") {
    const RatCone cone = cone_from_json(*input);
    if (result.at("salient").get<bool>()) {
      OrderCertificate cert;
      for (std::size_t i = 0; i < result.at("functionals").size(); ++i)
        cert.functionals.push_back(
            rat_vector_from_json(result["functionals"][i], child_pointer("/result/functionals", i)));
      checks["order"] = verify_order_certificate(cone, cert);
    } else {
      const FarkasCertificate f{rat_vector_from_json(result.at("farkas"), "/result/farkas")};
      checks["farkas"] = verify_farkas(cone.ambient_dim, salience_constraints(cone), f);
    }
  } else if (command == "spielberg") {
    const PresentationInput pi = presentation_from_json(*input);
    const KernelMode mode = parse_mode(doc.at("options").at("mode").get<std::string>());
    checks["quotient"] = verify_quotient_target(pi.fp, pi.h, mode, quotient_from_json(result, pi.fp.dim));
  } else {
    throw InputError("verify: unknown command " + command);
  }
  return checks;
}

bool all_true(const json& checks) {
  for (const auto& [key, value] : checks.items()) {
    if (value.is_boolean() && !value.get<bool>()) return false;
    if (value.is_object() && !all_true(value)) return false;
  }
  return true;
}

Outcome cmd_verify(const json& doc, const std::optional<json>& input) {
  if (!doc.is_object() || !doc.contains("command") || !doc.contains("result") || !doc.contains("input_digest"))
    throw SchemaError("", "not a verdict document");
  json checks;
  try {
    checks = verify_document(doc, input ? &*input : nullptr);
  } catch (const json::exception& e) {
    throw SchemaError("/result", std::string("malformed certificate: ") + e.what());
  }
  Outcome o;
  o.doc = json::object();
  o.doc["tool"] = "afx";
  o.doc["tool_version"] = kToolVersion;
  o.doc["command"] = "verify";
  o.doc["verified_command"] = doc["command"];
  if (!checks["digest"].get<bool>()) o.doc["error"] = "DigestMismatch";
  o.doc["checks"] = checks;
  const bool ok = all_true(checks);
  o.doc["verified"] = ok;
  o.code = ok ? kExitCertified : kExitInputError;
  return o;
}

// ---------------------------------------------------------------- driver

int emit(const Outcome& o, const std::string& format, const std::string& out_path, std::ostream& out,
         std::ostream& err) {
  std::string text;
  if (format == "csv") {
    if (o.csv.empty()) {
      err << "error: --format csv is not available for this command\n";
      return kExitInputError;
    }
    text = o.csv;
  } else {
    text = o.doc.dump(2) + "\n";
  }
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f || !(f << text)) {
      err << "error: cannot write " << out_path << '\n';
      return kExitInputError;
    }
  }
  return o.code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certificates for AF embeddability of crossed products and related finite models", "afx"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string out_path, format = "json";
  Budget budget;
  std::string input_path;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "Write the document to PATH");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("input", input_path, "Problem document (JSON, - for stdin)")->required();
    sub->add_option("--budget-stages", budget.stages, "Pushes allowed for positivity");
    sub->add_option("--budget-box", budget.box, "Max-norm of enumerated source vectors")->check(CLI::PositiveNumber);
    sub->add_option("--budget-orbit", budget.orbit, "Largest orbit period tried");
    add_common(sub);
  };

  CLI::App* decide = app.add_subcommand("decide", "Certify whether the crossed product is AF embeddable");
  add_budget(decide);
  CLI::App* fop = app.add_subcommand("fop", "Finite orbit table or infinite-orbit certificate");
  add_budget(fop);
  CLI::App* witness = app.add_subcommand("witness", "Search for a positive element of H_alpha");
  add_budget(witness);

  std::string epsilons;
  CLI::App* chainrec = app.add_subcommand("chainrec", "Chain recurrent sets of a finite dynamical system");
  chainrec->add_option("input", input_path, "System document")->required();
  chainrec->add_option("--epsilons", epsilons, "Descending list a,b,c")->required();
  add_common(chainrec);

  std::size_t m_prime = 6, k = 3;
  std::string leading = "2,3";
  CLI::App* rohlin = app.add_subcommand("rohlin", "Exact Rohlin tower in a matrix algebra");
  rohlin->add_option("--m-prime", m_prime, "Size of the tower factor");
  rohlin->add_option("--k", k, "Tower height");
  rohlin->add_option("--leading", leading, "Leading factor sizes a,b");
  add_common(rohlin);

  StabilizeOptions stab;
  std::string ks = "5,9,17";
  CLI::App* stabilize = app.add_subcommand("stabilize", "Measure ||u - v beta(v*)|| against 4/(k-1)");
  stabilize->add_option("--k", ks, "Tower heights a,b,c");
  stabilize->add_option("--runs", stab.runs, "Random unitaries per height");
  stabilize->add_option("--seed", stab.seed, "First seed");
  stabilize->add_option("--multiple", stab.multiple, "Tower factor is M_{multiple*k}");
  add_common(stabilize);

  CLI::App* order = app.add_subcommand("order-extend", "Extend a rational cone to a total order");
  order->add_option("input", input_path, "Cone document")->required();
  add_common(order);

  std::string mode = "torsion";
  CLI::App* spiel = app.add_subcommand("spielberg", "Quotient onto a totally ordered free group");
  spiel->add_option("input", input_path, "Problem or presentation document")->required();
  spiel->add_option("--mode", mode, "Kernel: torsion or given")->check(CLI::IsMember({"torsion", "given"}));
  add_common(spiel);

  std::string example_name, all_dir;
  std::size_t ladder_size = 9, shift_size = 50;
  CLI::App* ex = app.add_subcommand("examples", "List or write the builtin corpus");
  ex->add_option("name", example_name, "Example to print");
  ex->add_option("--ladder-size", ladder_size, "Points 1/k in cycle-ladder");
  ex->add_option("--shift-size", shift_size, "Range -n..n in compactified-shift");
  ex->add_option("--all", all_dir, "Write every example to DIR/<name>.json");
  ex->add_option("--out", out_path, "Write the document to PATH");

  std::string doc_path, verify_input;
  CLI::App* verify = app.add_subcommand("verify", "Replay the certificate checks of a document");
  verify->add_option("document", doc_path, "Verdict document")->required();
  verify->add_option("input", verify_input, "Input the document was produced from");
  verify->add_option("--out", out_path, "Write the report to PATH");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    budget.precision = precision_from_env();
    Outcome o;
    if (decide->parsed()) o = cmd_decide(read_document(input_path), budget);
    else if (fop->parsed()) o = cmd_fop(read_document(input_path), budget);
    else if (witness->parsed()) o = cmd_witness(read_document(input_path), budget);
    else if (chainrec->parsed()) o = cmd_chainrec(read_document(input_path), parse_epsilons(epsilons));
    else if (rohlin->parsed()) {
      std::vector<std::size_t> lead;
      for (const auto& s : split_list(leading)) lead.push_back(std::stoul(s));
      o = cmd_rohlin(m_prime, k, lead);
    } else if (stabilize->parsed()) {
      stab.ks.clear();
      for (const auto& s : split_list(ks)) stab.ks.push_back(std::stoul(s));
      o = cmd_stabilize(stab);
    } else if (order->parsed()) o = cmd_order_extend(read_document(input_path));
    else if (spiel->parsed()) o = cmd_spielberg(read_document(input_path), mode);
    else if (ex->parsed()) {
      const auto all = examples(ladder_size, shift_size);
      if (!all_dir.empty()) {
        std::filesystem::create_directories(all_dir);
        for (const auto& e : all) {
          std::ofstream f(std::filesystem::path(all_dir) / (e.name + ".json"), std::ios::binary);
          if (!(f << e.document.dump(2) << '\n')) throw InputError("cannot write into " + all_dir);
        }
        return kExitCertified;
      }
      if (example_name.empty()) {
        for (const auto& e : all) out << e.name << '\t' << e.command << '\n';
        return kExitCertified;
      }
      for (const auto& e : all)
        if (e.name == example_name) {
          o.doc = e.document;
          return emit(o, "json", out_path, out, err);
        }
      throw InputError("unknown example " + example_name);
    } else if (verify->parsed()) {
      std::optional<json> input;
      if (!verify_input.empty()) input = read_document(verify_input);
      o = cmd_verify(read_document(doc_path), input);
      if (o.doc.contains("error")) err << "error: DigestMismatch: the input does not match the document\n";
      return emit(o, "json", out_path, out, err);
    }
    return emit(o, format, out_path, out, err);
  } catch (const SchemaError& e) {
    err << "error: schema violation at " << (e.pointer().empty() ? "/" : e.pointer()) << ": " << e.what() << '\n';
  } catch (const CrossedError& e) {
    err << "error: " << to_string(e.kind) << ": " << e.what() << '\n';
  } catch (const SystemError& e) {
    err << "error: " << to_string(e.kind) << ": " << e.what() << '\n';
  } catch (const LabError& e) {
    err << "error: " << to_string(e.kind) << ": " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitInputError;
}

}  // namespace afx::cli
