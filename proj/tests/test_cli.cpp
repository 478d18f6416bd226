#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mfas/cli.hpp"
#include "mfas/error.hpp"
#include "support.hpp"

using namespace mfas;
using namespace mfas::test;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;

  bool has(const std::string& line) const { return ("\n" + out).find("\n" + line + "\n") != std::string::npos; }
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("mfas_cli_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("solve reports the optimum on the triangle") {
  const Run r = cli({"solve", data_path("k3_demo.mfas")});
  CHECK(r.code == 0);
  CHECK(r.has("total_cost=4"));
  CHECK(r.has(std::string("engine=") + std::string(kEngine)));
  CHECK(r.has("instance_digest=" + instance_digest(k3())));
  CHECK(r.out.rfind("engine=", 0) == 0);
}

TEST_CASE("solve with a bound and a trace") {
  const std::string trace = temp_path("trace.txt");
  const Run r = cli({"solve", data_path("k3_demo.mfas"), "--bound", "--eps", "0.05", "--trace", trace});
  CHECK(r.code == 0);
  CHECK(r.has("eps=0.05"));
  CHECK(r.has("guarantee_certified=true"));
  CHECK(r.out.find("lower_bound=") != std::string::npos);
  CHECK(slurp(trace).rfind("iteration=1 ", 0) == 0);
  CHECK(cli({"solve", data_path("k3_demo.mfas"), "--eps", "1.5"}).code == 2);
}

TEST_CASE("exact on the probability counterexample") {
  const Run r = cli({"exact", data_path("appendix_a.mfas"), "--cover"});
  CHECK(r.code == 0);
  CHECK(r.has("total_cost=7.5"));
  CHECK(r.has("cover_variable_cost=7"));
}

TEST_CASE("check the bundled cover") {
  const Run r = cli({"check", data_path("appendix_a.mfas"), "--solution", data_path("fig5_cover.sol"),
                     "--formulation", "cover"});
  CHECK(r.code == 0);
  CHECK(r.has("variable_cost=7"));
  CHECK(r.has("total_cost=7"));
  CHECK(r.has("feasible=true"));
  const Run fas = cli({"check", data_path("appendix_a.mfas"), "--solution", data_path("fig5_cover.sol"),
                       "--formulation", "fas"});
  CHECK(fas.code == 1);
  CHECK(fas.has("feasible=false"));
  const Run cyc = cli({"check", data_path("cycle_witness.mfas"), "--solution", data_path("cycle_witness.sol"),
                       "--formulation", "cycles", "--max-cycle", "4"});
  CHECK(cyc.code == 1);
  CHECK(cyc.has("max_cycle=4"));
}

TEST_CASE("repair writes the result") {
  const std::string sol = temp_path("ones.sol");
  std::ofstream(sol) << "delta 1\n0 1\n1 0\n0 2\n2 0\n1 2\n2 1\nend\n";
  const std::string outp = temp_path("repaired.sol");
  const Run r = cli({"repair", data_path("k3_demo.mfas"), "--solution", sol, "--out", outp});
  CHECK(r.code == 0);
  CHECK(r.has("input_total_cost=9"));
  CHECK(r.has("total_cost=4"));
  CHECK(r.has("order=2,0,1"));
  CHECK(slurp(outp) == "delta 1\n0 1\n2 0\n2 1\nend\n");
  // Not a cover.
  std::ofstream(sol) << "delta 1\n0 1\nend\n";
  CHECK(cli({"repair", data_path("k3_demo.mfas"), "--solution", sol}).code == 1);
}

TEST_CASE("validate") {
  CHECK(cli({"validate", data_path("k3_demo.mfas")}).has("hemimetric=true"));
  const Run a = cli({"validate", data_path("appendix_a.mfas"), "--k", "3"});
  CHECK(a.code == 1);
  CHECK(a.has("probability_constraints=true"));
  CHECK(a.has("kgonal_k=3"));
}

TEST_CASE("bound") {
  const Run r = cli({"bound", data_path("k3_demo.mfas"), "--eps", "0.1"});
  CHECK(r.code == 0);
  CHECK(r.has("eps=0.1"));
  CHECK(cli({"bound", data_path("k3_demo.mfas"), "--eps", "0.01", "--max-iterations", "1"}).code == 3);
}

TEST_CASE("gen") {
  const Run a = cli({"gen", "--n", "6", "--seed", "3", "--density", "0.2"});
  const Run b = cli({"gen", "--n", "6", "--seed", "3", "--density", "0.2"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(validate_hemimetric(parse_instance_text(a.out)).is_hemimetric);
  CHECK(cli({"gen", "--name", "k3_demo"}).out == serialize_instance(k3()));
  CHECK(cli({"gen", "--name", "nope"}).code == 2);
  const Run k = cli({"gen", "--mode", "interval_kgonal", "--k", "4", "--n", "5"});
  CHECK(validate_kgonal(parse_instance_text(k.out), 4).is_hemimetric);
  const Run w = cli({"gen", "--witness", "--seed", "2024", "--n", "6", "--budget", "2000"});
  CHECK(w.code == 0);
  CHECK(w.has("found=true"));
}

TEST_CASE("exit codes") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"solve"}).code == 2);
  CHECK(cli({"solve", "/nonexistent/file.mfas"}).code == 2);
  const std::string bad = temp_path("bad.mfas");
  std::ofstream(bad) << "mfas 1\nn 2\nweights\n0 x\n1 0\nend\n";
  const Run f = cli({"solve", bad});
  CHECK(f.code == 2);
  CHECK(f.err.rfind("error=FormatError", 0) == 0);

  const std::string big = temp_path("big.mfas");
  std::ofstream(big) << serialize_instance(gen_hemimetric(spec(21, 1)));
  CHECK(cli({"exact", big}).code == 3);
  CHECK(cli({"solve", data_path("appendix_a.mfas")}).code == 1);

  CHECK(exit_code(ErrorCode::kLemmaViolated) == 4);
  CHECK(exit_code(ErrorCode::kNonTermination) == 4);
  CHECK(exit_code(ErrorCode::kCapExceeded) == 3);
  CHECK(exit_code(ErrorCode::kPosetViolated) == 1);
}

TEST_CASE("reports are byte-identical across runs") {
  const std::vector<std::string> args = {"solve", data_path("k3_demo.mfas"), "--bound"};
  CHECK(cli(args).out == cli(args).out);
}

}
