#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "desk.hpp"
#include "json.hpp"
#include "twcurve/cli/commands.hpp"

using namespace twc;
using desk::poly_in;
using nlohmann::ordered_json;

namespace {

const std::string kExe = TWCURVE_EXE;
const std::string kJobs = TWCURVE_JOBS_DIR;

struct Run {
  int code = -1;
  std::string out;
};

// Runs the installed binary with stdout captured; stderr is discarded.
Run run(const std::string& args) {
  Run r;
  FILE* p = popen((kExe + " " + args + " 2>/dev/null").c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string job(const std::string& name) { return kJobs + "/" + name; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string write_temp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("twcurve_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

bool has_float(const ordered_json& j) {
  if (j.is_number_float()) return true;
  if (j.is_structured())
    for (const auto& v : j)
      if (has_float(v)) return true;
  return false;
}

std::string without_comments(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line))
    if (line.empty() || line[0] != '#') out += line + "\n";
  return out;
}

int parse_error_column(const std::string& text) {
  try {
    parse_jobspec(text);
  } catch (const ParseError& e) {
    return e.column();
  }
  return -1;
}

}  // namespace

TEST_CASE("parsing the genus two job", "[cli]") {
  JobSpec js = parse_jobspec(read_file(job("genus2.job")));
  REQUIRE(js.first);
  CHECK(!js.second);
  CHECK(!js.field);
  CHECK(js.first->curve == desk::genus2_curve());
  CHECK(js.first->generators == desk::genus2_generators());
  CHECK(js.first->center.to_string() == "(0, 0)");

  JobSpec two = parse_jobspec(read_file(job("genus2_scaled.job")));
  REQUIRE(two.second);
  CHECK(two.second->generators.size() == 3);
}

TEST_CASE("parsing fields, places, branches and equations", "[cli]") {
  JobSpec g = parse_jobspec(read_file(job("gaussian.job")));
  REQUIRE(g.field);
  CHECK(g.field->degree() == 2);
  CHECK(g.first->center.x.at_infinity);

  JobSpec b = parse_jobspec(
      "curve: y^2 - x^2 - x^3\nplace: 0, 0\nbranch: 0/1\ngen: 1/x\neq: x1^4 + x2^3\norder: 7\nmax-degree: 9\n");
  CHECK(b.first->branch.size() == 1);
  CHECK(b.first->branch[0].segment == 0);
  CHECK(b.first->branch[0].root == 1);
  REQUIRE(b.equations.size() == 1);
  CHECK(b.equations[0] == poly_in("x1^4 + x2^3", 2));
  CHECK(b.order == 7);
  CHECK(b.max_degree == 9);

  JobSpec c = parse_jobspec("# comment only\n\ncurve: y - x\nplace: (1, 1)\n");
  CHECK(c.first->center.to_string() == "(1, 1)");
}

TEST_CASE("parse errors carry line and column", "[cli]") {
  try {
    parse_jobspec("curve: y - x\nplace: 0, 0\ngen: x +* y\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 5);
    CHECK(std::string(e.what()).rfind("3:", 0) == 0);
  }
  CHECK_THROWS_AS(parse_jobspec("curve: y - x\ncurve: y - x\n"), ParseError);
  CHECK_THROWS_AS(parse_jobspec("colour: blue\n"), ParseError);
  CHECK_THROWS_AS(parse_jobspec("curve y - x\n"), ParseError);
  CHECK_THROWS_AS(parse_jobspec("curve: 3\n"), ParseError);
  CHECK_THROWS_AS(parse_jobspec("curve: y - x\nplace: 0, 0\ngen: 0\n"), ParseError);
  CHECK_THROWS_AS(parse_jobspec("curve: y - x\nbranch: 0-1\n"), ParseError);
  CHECK(parse_error_column("curve: y - x\nplace: 1, 2, 3\n") > 1);
  // The field generator is only a name when a field is declared.
  CHECK_THROWS_AS(parse_jobspec("curve: y^2 - a*x\n"), ParseError);
  CHECK_NOTHROW(parse_jobspec("field: a^2 - 2\ncurve: y^2 - a*x\n"));
  CHECK_THROWS_AS(parse_jobspec("field: a^2 - 1\ncurve: y - x\n"), Error);
}

TEST_CASE("in-process commands", "[cli]") {
  const std::string text = read_file(job("genus2.job"));
  cli::CommandResult sg = cli::run_command("semigroup", text, {});
  CHECK(sg.exit_code == 0);
  CHECK(sg.output.find("3 4 5") != std::string::npos);

  cli::CommandOptions js;
  js.json = true;
  cli::CommandResult j = cli::run_command("semigroup", text, js);
  ordered_json doc = ordered_json::parse(j.output);
  CHECK(doc["gaps"] == ordered_json::array({1, 2}));
  CHECK(doc["conductor"] == 3);
  CHECK(doc["outcome"] == "ok");

  cli::CommandResult bad = cli::run_command("frobnicate", text, {});
  CHECK(bad.exit_code == 2);
  CHECK(bad.is_error);

  cli::CommandOptions ord;
  ord.order = 7;
  cli::CommandResult ex = cli::run_command("expand", text, ord);
  CHECK(ex.exit_code == 0);
  CHECK(ex.output.find("T + 1/2*T^3 + 11/8*T^5") != std::string::npos);
}

TEST_CASE("exit codes of the binary", "[cli]") {
  CHECK(run("twform " + job("genus2.job")).code == 0);
  CHECK(run("verify " + job("genus2.job")).code == 0);
  CHECK(run("normalforms " + job("genus2.job")).code == 0);
  CHECK(run("inverse " + job("elliptic.job")).code == 0);
  CHECK(run("aut " + job("elliptic_j0.job")).code == 0);
  CHECK(run("aut " + job("gaussian.job")).code == 0);
  CHECK(run("iso " + job("genus2_scaled.job")).code == 0);
  CHECK(run("aut " + job("unresolved.job")).code == 3);

  CHECK(run("twform /nonexistent/file.job").code == 2);
  CHECK(run("nonsense " + job("genus2.job")).code == 2);
  CHECK(run("twform").code == 2);
  CHECK(run("iso " + job("genus2.job")).code == 2);
  CHECK(run("twform " + job("genus2.job") + " --order 0").code == 2);

  // Unreduced stage-two relation: checked and rejected.
  std::string raw = read_file(job("genus2.job")) +
                    "eq: x1^4 + x2^3 + 2*x2^2 + x1^2 + x2\neq: x1*x3 - x2^2 + x1^2 + 1/3*x2 + 2/9\n";
  Run v = run("verify " + write_temp("raw.job", raw));
  CHECK(v.code == 1);
  CHECK(v.out.find("FAIL") != std::string::npos);

  // With -x^2 in place of 8*x^2 the third function has extra poles, so no stage-three relation exists.
  std::string extra_poles = "curve: x - y^2 + x^2*y^2 + y^4\nplace: 0, 0\ngen: (y^2 - 1)/(x*y)\n"
                        "gen: (x - 1 + y^2)/x^2\ngen: (-x^2 + 4*y^2*x - 4*y^2 + 4*y^4)/(4*x^3*y)\n";
  CHECK(run("twform " + write_temp("extra_poles.job", extra_poles)).code == 1);

  // Wrong pole orders are a mathematical failure, not an input error.
  std::string wrong = "curve: x - y^2 + x^2*y^2 + y^4\nplace: 0, 0\ngen: x\ngen: y\n";
  CHECK(run("twform " + write_temp("wrong.job", wrong)).code == 1);
}

TEST_CASE("JSON output is exact and deterministic", "[cli]") {
  for (std::string cmd : {"expand", "semigroup", "normalforms", "twform", "inverse", "aut", "verify"}) {
    Run a = run(cmd + " " + job("genus2.job") + " --json");
    Run b = run(cmd + " " + job("genus2.job") + " --json");
    INFO(cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    ordered_json doc = ordered_json::parse(a.out);
    CHECK(!has_float(doc));
    CHECK(doc["command"] == cmd);
  }
  Run iso = run("iso " + job("genus2_scaled.job") + " --json");
  ordered_json doc = ordered_json::parse(iso.out);
  CHECK(!has_float(doc));
  CHECK(doc["status"] == "finite");
  CHECK(doc["verified"][0] == ordered_json::array({"2", "3", "5"}));

  Run gauss = run("aut " + job("gaussian.job") + " --json");
  ordered_json g = ordered_json::parse(gauss.out);
  CHECK(g["group"]["order"] == 4);
  CHECK(!has_float(g));

  Run err = run("twform /nonexistent.job --json");
  CHECK(err.code == 2);
}

TEST_CASE("twform output verifies in text and JSON form", "[cli]") {
  for (std::string name : {"genus2.job", "elliptic.job", "gaussian.job"}) {
    INFO(name);
    Run text = run("twform " + job(name));
    REQUIRE(text.code == 0);
    Run v = run("verify " + write_temp("roundtrip_" + name, text.out));
    CHECK(v.code == 0);
    CHECK(v.out.find("given") != std::string::npos);

    Run js = run("twform " + job(name) + " --json");
    REQUIRE(js.code == 0);
    Run vj = run("verify " + write_temp("roundtrip_" + name + ".json", js.out) + " --json");
    CHECK(vj.code == 0);
    CHECK(ordered_json::parse(vj.out)["verification"]["passed"] == true);

    // The canonical form of a canonical form is itself; only the correction comments disappear.
    Run again = run("twform " + write_temp("again_" + name, text.out));
    CHECK(without_comments(again.out) == without_comments(text.out));
  }
}

TEST_CASE("precision caps surface as failures", "[cli]") {
  Run tight = run("twform " + job("genus2.job") + " --max-precision 2");
  CHECK(tight.code == 1);
  Run small = run("inverse " + job("genus2.job") + " --max-degree 1");
  CHECK(small.code == 1);
}
