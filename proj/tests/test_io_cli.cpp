#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "tropispec/io.hpp"

using namespace tropispec;

namespace {

std::string write_temp(const std::string& name, const std::string& contents) {
  const std::string path = "/tmp/tropispec_test_" + name;
  std::ofstream out(path, std::ios::binary);
  out << contents;
  return path;
}

struct RunResult {
  int exitCode;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const char* cli = std::getenv("TROPISPEC_CLI");
  REQUIRE_MESSAGE(cli != nullptr, "TROPISPEC_CLI must point at the built binary");
  const std::string outFile = "/tmp/tropispec_test_out.txt";
  const std::string cmd = std::string(cli) + " " + args + " > " + outFile + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream in(outFile, std::ios::binary);
  std::string output((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return {WEXITSTATUS(status), output};
}

}  // namespace

TEST_CASE("matrix json loader") {
  const ConeMatrix A =
      load_matrix_json(R"({"semiring":"max-times","n":2,"rows":[[0,2],[3,0]]})");
  CHECK(A.dim() == 2);
  CHECK(A.semiring() == Semiring::MaxTimes);
  CHECK(A(0, 1) == 2.0);

  const ConeMatrix P =
      load_matrix_json(R"({"semiring":"plus-times","n":1,"rows":[[5.5]]})");
  CHECK(P.semiring() == Semiring::PlusTimes);

  CHECK_THROWS_AS(load_matrix_json("not json"), InputError);
  CHECK_THROWS_AS(load_matrix_json(R"({"semiring":"max-times","n":2,"rows":[[1,2]]})"), InputError);
  CHECK_THROWS_AS(load_matrix_json(R"({"semiring":"max-times","n":2,"rows":[[1,2],[3,-1]]})"),
                  InputError);
  CHECK_THROWS_AS(load_matrix_json(R"({"semiring":"tropical","n":1,"rows":[[1]]})"), InputError);
  CHECK_THROWS_AS(load_matrix_json(R"({"semiring":"max-times","n":2,"rows":[[1,2],[3,"x"]]})"),
                  InputError);
}

TEST_CASE("polynomial parsing") {
  const PosPolynomial q = load_poly_json(R"({"coeffs":[1,0,2.5]})");
  CHECK(q.coeffs() == std::vector<double>{1.0, 0.0, 2.5});
  CHECK_THROWS_AS(load_poly_json(R"({"coeffs":[-1]})"), InputError);

  const PosPolynomial p = parse_poly_list("0.5, 0, 3");
  CHECK(p.coeffs() == std::vector<double>{0.5, 0.0, 3.0});
  CHECK_THROWS_AS(parse_poly_list("1,x"), InputError);
  CHECK_THROWS_AS(parse_poly_list(""), InputError);
}

TEST_CASE("kernel json loader") {
  const KernelSpec s = load_kernel_json(
      R"({"a":1.0,"family":{"kind":"constant","c":2.0},"alpha":{"c0":0,"c1":0},"beta":{"c0":1,"c1":0}})");
  CHECK(s.a == 1.0);
  CHECK(s.eval(0.3, 0.7) == 2.0);

  const KernelSpec b = load_kernel_json(
      R"({"a":2.0,"family":{"kind":"bump","w":0.5,"c":1.5},"alpha":{"c0":0,"c1":1},"beta":{"c0":0,"c1":1}})");
  CHECK(b.eval(1.0, 1.0) == 1.5);

  CHECK_THROWS_AS(load_kernel_json(R"({"a":1.0})"), InputError);
  CHECK_THROWS_AS(
      load_kernel_json(
          R"({"a":1.0,"family":{"kind":"constant","c":1.0},"alpha":{"c0":0.9},"beta":{"c0":0.1}})"),
      InputError);
}

TEST_CASE("ensemble config loader") {
  const EnsembleConfig cfg = load_ensemble_json(
      R"({"trials":7,"seed":42,"n":[2,3],"m":[1,2],"degree":[0,1],"entry":{"low":0.5,"high":2.0,"p_zero":0.1}})");
  CHECK(cfg.trials == 7);
  CHECK(cfg.masterSeed == 42);
  CHECK(cfg.nMin == 2);
  CHECK(cfg.nMax == 3);
  CHECK(cfg.entry.pZero == 0.1);
}

TEST_CASE("doubles format with 17 significant digits") {
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "\"inf\"");
  const double pi = 3.14159265358979323846;
  CHECK(std::stod(format_double(pi)) == pi);
}

TEST_CASE("json writer emits deterministic structure") {
  JsonWriter w;
  w.obj_open();
  w.key("a").value(1.5);
  w.key("b").arr_open().value(1).value(2).arr_close();
  w.key("s").value("x\"y");
  w.obj_close();
  CHECK(w.str() == "{\"a\":1.5,\"b\":[1,2],\"s\":\"x\\\"y\"}");
}

TEST_CASE("cli radius and exit codes") {
  const std::string good =
      write_temp("m.json", R"({"semiring":"max-times","n":2,"rows":[[0,2],[3,0]]})");
  const RunResult r = run_cli("radius --input " + good);
  CHECK(r.exitCode == 0);
  CHECK(r.output.find("\"tool\":\"tropispec-v1\"") != std::string::npos);
  CHECK(r.output.find("2.4494897427831779") != std::string::npos);

  const std::string bad = write_temp("bad.json", "{broken");
  CHECK(run_cli("radius --input " + bad).exitCode == 2);
  CHECK(run_cli("radius --input /tmp/definitely_missing_file.json").exitCode == 2);

  const std::string neg =
      write_temp("neg.json", R"({"semiring":"max-times","n":1,"rows":[[-1]]})");
  CHECK(run_cli("radius --input " + neg).exitCode == 2);
}

TEST_CASE("cli determinism across repeated runs") {
  const std::string m =
      write_temp("det.json", R"({"semiring":"max-times","n":3,"rows":[[1,4,0],[0,2,1],[0.5,0,3]]})");
  const std::string k = write_temp(
      "det_kernel.json",
      R"({"a":1.0,"family":{"kind":"product","p":1,"q":1},"alpha":{"c0":0,"c1":0},"beta":{"c0":1,"c1":0}})");

  const std::vector<std::string> cmds = {
      "radius --input " + m,
      "spectrum --input " + m + " --grid 9 --seed 3",
      "maxpoly --input " + m + " --poly 0.5,1,0.25",
      "hadamard --trials 10 --seed 9 --dims 2:3",
      "hadamard --trials 10 --seed 9 --dims 2:3 --format csv",
      "kernel --input " + k + " --grids 4,8",
      "approx-eig --input " + m + " --eps 0.2 --seed 1",
  };
  for (const auto& cmd : cmds) {
    const RunResult a = run_cli(cmd);
    const RunResult b = run_cli(cmd);
    CHECK(a.exitCode == 0);
    CHECK(a.exitCode == b.exitCode);
    CHECK(a.output == b.output);
    CHECK(!a.output.empty());
  }
}

TEST_CASE("cli spectrum content") {
  const std::string m =
      write_temp("diag.json", R"({"semiring":"max-times","n":2,"rows":[[2,0],[0,3]]})");
  const RunResult r = run_cli("spectrum --input " + m + " --grid 5");
  CHECK(r.exitCode == 0);
  CHECK(r.output.find("\"r\":3") != std::string::npos);
  CHECK(r.output.find("\"d\":2") != std::string::npos);
  CHECK(r.output.find("\"sigma_p\"") != std::string::npos);

  const RunResult mp = run_cli("maxpoly --input " + m + " --poly 0,1");
  CHECK(mp.exitCode == 0);

  const std::string kz = write_temp(
      "const_kernel.json",
      R"({"a":1.0,"family":{"kind":"constant","c":2.0},"alpha":{"c0":0,"c1":0},"beta":{"c0":1,"c1":0}})");
  const RunResult kr = run_cli("kernel --input " + kz + " --grids 8,16");
  CHECK(kr.exitCode == 0);
  CHECK(kr.output.find("tropispec-v1,command=kernel") != std::string::npos);
  CHECK(kr.output.find("N,r,d,r_delta,d_delta") != std::string::npos);
  CHECK(kr.output.find("8,2,2,0,0") != std::string::npos);
}
