#include "afx/cli/app.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using afx::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run afx_run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = afx::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("afx_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p.string();
}

std::string write(const std::string& name, const json& j) { return write(name, j.dump(2)); }

json single_vertex(long m, long f, bool unital) {
  return json{{"diagram", {{"sizes", {{1}}}, {"maps", {{{m}}}}, {"stationary", true}, {"unital", unital}}},
              {"endo", {{"mat", {{f}}}, {"shift", 0}}}};
}

}  // namespace

TEST_CASE("decide on one-vertex problems") {
  Run r = afx_run({"decide", write("m2f1.json", single_vertex(2, 1, false))});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["result"]["kind"] == "CertifiedEmbeddable");

  r = afx_run({"decide", write("m2f2.json", single_vertex(2, 2, false))});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["result"]["kind"] == "CertifiedNotEmbeddable");
  CHECK(doc["result"]["certificate"]["witness"]["x"]["vec"] == json::array({"1"}));
  CHECK(doc["tool"] == "afx");
  CHECK(doc["input_digest"].get<std::string>().rfind("sha256:", 0) == 0);
}

TEST_CASE("input errors exit with 1") {
  Run r = afx_run({"decide", write("broken.json", std::string("{\"diagram\": ["))});
  CHECK(r.code == 1);
  CHECK(r.err.find("malformed JSON") != std::string::npos);

  json bad = single_vertex(2, 2, false);
  bad["endo"]["mat"][0][0] = "two";
  r = afx_run({"decide", write("schema.json", bad)});
  CHECK(r.code == 1);
  CHECK(r.err.find("/endo/mat/0/0") != std::string::npos);

  r = afx_run({"decide", (scratch() / "missing.json").string()});
  CHECK(r.code == 1);
  CHECK(afx_run({"frobnicate"}).code == 1);
  CHECK(afx_run({"rohlin", "--m-prime", "7", "--k", "3"}).code == 1);
  CHECK(afx_run({"decide", write("csv.json", single_vertex(2, 2, false)), "--format", "csv"}).code == 1);

  ::setenv("AFX_PRECISION", "not-a-number", 1);
  CHECK(afx_run({"decide", write("prec.json", single_vertex(2, 2, false))}).code == 1);
  ::setenv("AFX_PRECISION", "1/1024", 1);
  r = afx_run({"fop", write("prec.json", single_vertex(2, 2, false))});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["options"]["precision"] == "1/1024");
  ::unsetenv("AFX_PRECISION");
}

TEST_CASE("unknown within budget exits with 2") {
  // F = I has H_alpha = 0, so no witness exists.
  const std::string in = write("m2f1.json", single_vertex(2, 1, false));
  Run r = afx_run({"witness", in});
  CHECK(r.code == 2);
  CHECK(json::parse(r.out)["status"] == "unknown");
  CHECK(afx_run({"verify", write("unknown.json", r.out), in}).code == 0);
  CHECK(afx_run({"witness", in, "--budget-box", "0"}).code == 1);
}

TEST_CASE("output is deterministic and --out writes the same bytes") {
  const std::string in = write("fib.json", afx_run({"examples", "fibonacci-shift-map"}).out);
  const Run a = afx_run({"decide", in});
  const Run b = afx_run({"decide", in});
  CHECK(a.out == b.out);
  const std::string path = (scratch() / "fib.out.json").string();
  CHECK(afx_run({"decide", in, "--out", path}).code == 0);
  std::ifstream f(path, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  CHECK(s.str() == a.out);

  // Reformatting the input leaves the digest alone.
  const std::string compact = write("fib.compact.json", json::parse(afx_run({"examples", "fibonacci-shift-map"}).out).dump());
  CHECK(json::parse(afx_run({"decide", compact}).out)["input_digest"] == json::parse(a.out)["input_digest"]);
}

TEST_CASE("verify passes on every corpus instance") {
  const Run list = afx_run({"examples"});
  REQUIRE(list.code == 0);
  std::istringstream lines(list.out);
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    const std::string name = line.substr(0, line.find('\t'));
    const std::string command = line.substr(line.find('\t') + 1);
    CAPTURE(name);
    const std::string in = write(name + ".json", afx_run({"examples", name}).out);
    std::vector<std::string> args{command, in};
    if (command == "chainrec") args.insert(args.end(), {"--epsilons", "2,1,1/2,1/10"});
    const Run r = afx_run(args);
    CHECK(r.code == 0);
    const std::string doc = write(name + ".doc.json", r.out);
    const Run v = afx_run({"verify", doc, in});
    CHECK(v.code == 0);
    CHECK(json::parse(v.out)["verified"] == true);
    ++count;
  }
  CHECK(count == 20);
}

TEST_CASE("verify rejects tampering and foreign inputs") {
  const std::string in = write("m2f2.json", single_vertex(2, 2, false));
  const json doc = json::parse(afx_run({"decide", in}).out);

  json tampered = doc;
  tampered["result"]["certificate"]["witness"]["x"]["vec"][0] = "-1";
  Run v = afx_run({"verify", write("tampered.json", tampered), in});
  CHECK(v.code == 1);
  CHECK(json::parse(v.out)["verified"] == false);

  const std::string other = write("m3f3.json", single_vertex(3, 3, false));
  v = afx_run({"verify", write("doc.json", doc), other});
  CHECK(v.code == 1);
  CHECK(json::parse(v.out)["error"] == "DigestMismatch");
  CHECK(v.err.find("DigestMismatch") != std::string::npos);

  CHECK(afx_run({"verify", write("doc.json", doc)}).code == 1);

  const json fop = json::parse(afx_run({"fop", write("fib.json", afx_run({"examples", "fibonacci-identity"}).out)}).out);
  json bad_fop = fop;
  bad_fop["result"]["table"][0]["period"] = 0;
  CHECK(afx_run({"verify", write("fop.json", fop), (scratch() / "fib.json").string()}).code == 0);
  CHECK(afx_run({"verify", write("badfop.json", bad_fop), (scratch() / "fib.json").string()}).code == 1);
}

TEST_CASE("chainrec formats") {
  const std::string in = write("line.json", afx_run({"examples", "contracting-line"}).out);
  Run r = afx_run({"chainrec", in, "--epsilons", "1/2"});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["result"]["attracting_sets"][0]["x"] == 1);
  r = afx_run({"chainrec", in, "--epsilons", "2,1/2", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.find("epsilon,recurrent_count,points,recurrent\n") == 0);
  CHECK(r.out.find("1/2,1,3,") != std::string::npos);
  CHECK(afx_run({"chainrec", in, "--epsilons", "1/2,1"}).code == 1);
  CHECK(afx_run({"chainrec", in, "--epsilons", "x"}).code == 1);
}

TEST_CASE("rohlin and stabilize documents re-verify") {
  Run r = afx_run({"rohlin", "--m-prime", "6", "--k", "3"});
  CHECK(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["result"]["projections"][0] == json::array({0, 3}));
  CHECK(afx_run({"verify", write("rohlin.json", doc)}).code == 0);
  doc["result"]["projections"][1] = json::array({1});
  CHECK(afx_run({"verify", write("rohlin.bad.json", doc)}).code == 1);

  r = afx_run({"stabilize", "--k", "5", "--runs", "2", "--seed", "7"});
  CHECK(r.code == 0);
  doc = json::parse(r.out);
  CHECK(doc["result"]["runs"].size() == 2);
  CHECK(doc["result"]["all_pass"] == true);
  CHECK(afx_run({"verify", write("stab.json", doc)}).code == 0);
  json bad = doc;
  bad["result"]["runs"][0]["defect"] = 0.01;
  CHECK(afx_run({"verify", write("stab.bad.json", bad)}).code == 1);
  bad = doc;
  bad["options"]["seed"] = 8;
  const Run mismatch = afx_run({"verify", write("stab.seed.json", bad)});
  CHECK(mismatch.code == 1);
  CHECK(json::parse(mismatch.out)["error"] == "DigestMismatch");

  r = afx_run({"stabilize", "--k", "5", "--runs", "1", "--format", "csv"});
  CHECK(r.out.find("seed,k,m_prime,ambient_dim,defect,bound,pass\n1,5,5,120,") == 0);
}

TEST_CASE("order-extend and spielberg") {
  Run r = afx_run({"order-extend", write("line-cone.json", afx_run({"examples", "line-cone"}).out)});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["result"]["salient"] == false);

  const json meets = {{"dim", 2}, {"cone", {{1, 0}, {0, 1}}}, {"h_alpha", {{1, 0}}}};
  r = afx_run({"spielberg", write("meets.json", meets)});
  CHECK(r.code == 1);
  CHECK(r.err.find("ConeMeetsH") != std::string::npos);

  const std::string torsion = write("torsion.json", afx_run({"examples", "torsion-quotient"}).out);
  r = afx_run({"spielberg", torsion});
  CHECK(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["result"]["torsion"] == json::array({"2"}));
  doc["result"]["theta"][0][0] = "5";
  CHECK(afx_run({"verify", write("torsion.bad.json", doc), torsion}).code == 1);
  CHECK(afx_run({"spielberg", torsion, "--mode", "given"}).code == 1);
}
