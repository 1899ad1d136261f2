#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "potts/cli.hpp"
#include "potts/errors.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = potts::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp_path(const std::string& name) {
  const char* dir = std::getenv("POTTS_TEST_TMP");
  return std::string(dir ? dir : ".") + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool has_line(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (line.rfind(prefix, 0) == 0) return true;
  return false;
}

} // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify", "ybe"}).code == 2);
  CHECK(run({"spectrum", "--variant", "z3_plus", "--L", "2"}).code == 2);
  CHECK(run({"spectrum", "--variant", "nonsense", "--L", "2", "--out", tmp_path("x.json")}).code == 2);
  CHECK(run({"tables", "check", "--id", "t9"}).code == 2);
  CHECK(run({"verify", "equivalence", "--pair", "h1", "--L", "8"}).code == 2);
  CHECK(run({"zn", "build", "--n", "4", "--twist", "7", "--L", "2"}).code == 2);
}

TEST_CASE("help exits with 0") { CHECK(run({"--help"}).code == 0); }

TEST_CASE("exception mapping") {
  std::ostringstream err;
  using potts::cli::exit_code_for;
  CHECK(exit_code_for(std::make_exception_ptr(potts::ArgumentError("a")), err) == 2);
  CHECK(exit_code_for(std::make_exception_ptr(potts::DomainError("d")), err) == 3);
  CHECK(exit_code_for(std::make_exception_ptr(potts::NumericalError("n")), err) == 3);
  CHECK(exit_code_for(std::make_exception_ptr(potts::DegeneracyError("g")), err) == 3);
  CHECK_THROWS_AS(exit_code_for(std::make_exception_ptr(std::logic_error("x")), err), std::logic_error);
  CHECK(err.str().find("numerical failure") != std::string::npos);
}

TEST_CASE("passing checks exit with 0 and print a summary") {
  const Outcome ybe = run({"verify", "ybe", "--n", "3", "--samples", "3"});
  CHECK(ybe.code == 0);
  CHECK(has_line(ybe.out, "PASS"));
  CHECK(run({"verify", "shift", "--variant", "conj", "--L", "3"}).code == 0);
  CHECK(run({"verify", "functional", "--variant", "z3_plus", "--L", "2", "--samples", "3"}).code == 0);
  CHECK(run({"verify", "hamiltonian", "--variant", "z3_minus", "--L", "3"}).code == 0);
  CHECK(run({"verify", "equivalence", "--pair", "h2", "--L", "4"}).code == 0);
  CHECK(run({"tables", "check", "--id", "t2"}).code == 0);
  CHECK(run({"completeness", "--variant", "conj", "--L", "2"}).code == 0);
  CHECK(run({"zn", "build", "--n", "4", "--twist", "conj", "--L", "2", "--verify"}).code == 0);
}

TEST_CASE("a failing table exits with 1") {
  const Outcome t1 = run({"tables", "check", "--id", "t1"});
  CHECK(t1.code == 1);
  CHECK(has_line(t1.out, "FAIL"));
}

TEST_CASE("output files are byte-identical across runs") {
  const std::string a = tmp_path("bethe_a.json"), b = tmp_path("bethe_b.json");
  REQUIRE(run({"bethe", "--variant", "z3_plus", "--L", "3", "--out", a}).code == 0);
  REQUIRE(run({"bethe", "--variant", "z3_plus", "--L", "3", "--out", b}).code == 0);
  CHECK(!slurp(a).empty());
  CHECK(slurp(a) == slurp(b));

  const std::string c = tmp_path("spec_a.json"), d = tmp_path("spec_b.json");
  REQUIRE(run({"spectrum", "--variant", "conj", "--L", "3", "--out", c}).code == 0);
  REQUIRE(run({"spectrum", "--variant", "conj", "--L", "3", "--out", d}).code == 0);
  CHECK(slurp(c) == slurp(d));

  const std::string e = tmp_path("ybe_a.json"), f = tmp_path("ybe_b.json");
  REQUIRE(run({"verify", "ybe", "--n", "4", "--samples", "4", "--seed", "9", "--out", e}).code == 0);
  REQUIRE(run({"verify", "ybe", "--n", "4", "--samples", "4", "--seed", "9", "--out", f}).code == 0);
  CHECK(slurp(e) == slurp(f));
}

TEST_CASE("a single sector can be requested") {
  const std::string p = tmp_path("bethe_q1.json");
  REQUIRE(run({"bethe", "--variant", "z3_plus", "--L", "2", "--sector", "1", "--out", p}).code == 0);
  const std::string text = slurp(p);
  CHECK(text.find("\"sector\": 1") != std::string::npos);
  CHECK(text.find("\"sector\": 0") == std::string::npos);
}
