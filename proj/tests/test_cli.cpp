#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "aum/io.hpp"

namespace fs = std::filesystem;

namespace {

const std::string fixtures = AUM_FIXTURES;

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("aum_cli_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Run run(const std::string& args) {
  const auto dir = scratch("run");
  const auto out = dir / "stdout";
  const auto err = dir / "stderr";
  const std::string cmd = std::string(AUM_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = aum::io::read_file(out.string());
  r.err = aum::io::read_file(err.string());
  return r;
}

std::string binary_args(const std::string& name) {
  return "--labels " + fixtures + "/" + name + "/data.csv --predictions " + fixtures + "/" + name +
         "/predictions.txt";
}

std::string loop_args() {
  return "--breakpoints " + fixtures + "/loop/breakpoints.tsv --capacities " + fixtures +
         "/loop/capacities.tsv --predictions " + fixtures + "/loop/predictions.txt";
}

void write(const fs::path& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("compute on the reversed pair") {
  const auto r = run("compute " + binary_args("reversed_pair"));
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["aum"] == 2.0);
  CHECK(j["auc"] == 0.0);
  CHECK(j["sm"] == 1.0);
  CHECK(j["Q"] == 3);
  CHECK(j["n"] == 2);
  CHECK(j["B"] == 2);
  CHECK(j["differentiable"] == true);
}

TEST_CASE("compute on the separated pair") {
  const auto j = nlohmann::json::parse(run("compute " + binary_args("separated_pair")).out);
  CHECK(j["aum"] == 0.0);
  CHECK(j["auc"] == 1.0);
  CHECK(j["sm"] == 0.0);
}

TEST_CASE("compute on the loop fixture, with exports") {
  const auto dir = scratch("loop");
  const auto r = run("compute " + loop_args() + " --roc-out " + (dir / "roc.csv").string() + " --table-out " +
                     (dir / "table.tsv").string() + " --out-dir " + dir.string());
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["aum"] == 0.5);
  CHECK(j["auc"] == 2.0);
  CHECK(j["sm"] == 1.0);
  CHECK(j["Q"] == 7);
  const auto roc = aum::io::read_file((dir / "roc.csv").string());
  CHECK(roc.rfind("q,tau_hi,fpt,fnt,fpr,tpr,min_count\n", 0) == 0);
  CHECK(roc.find("7,inf,") != std::string::npos);
  CHECK(aum::io::read_file((dir / "table.tsv").string()).rfind("rank\tthreshold", 0) == 0);
  CHECK(nlohmann::json::parse(aum::io::read_file((dir / "metrics.json").string()))["aum"] == 0.5);
}

TEST_CASE("check mode passes on every fixture") {
  for (const auto& args : {binary_args("reversed_pair"), binary_args("separated_pair"), loop_args()}) {
    for (const char* variant : {"count", "rate"}) {
      const auto r = run("compute " + args + " --check --variant " + variant);
      CHECK(r.code == 0);
      CHECK(nlohmann::json::parse(r.out)["check"]["aum"] == "ok");
    }
  }
}

TEST_CASE("check mode passes on generated instances") {
  const auto dir = scratch("gen");
  for (int seed = 0; seed < 100; ++seed) {
    const auto synth = run("synth --kind changepoint-loop --n 12 --loop-share 0.5 --seed " + std::to_string(seed) +
                           " --out-dir " + dir.string());
    REQUIRE(synth.code == 0);
    const auto r = run("compute --breakpoints " + (dir / "breakpoints.tsv").string() + " --capacities " +
                       (dir / "capacities.tsv").string() + " --predictions " + (dir / "predictions.txt").string() +
                       " --check");
    CHECK(r.code == 0);
  }
}

TEST_CASE("exit codes") {
  CHECK(run("").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("compute --labels " + fixtures + "/reversed_pair/data.csv").code == 1);
  CHECK(run("compute --labels /nonexistent.csv --predictions /nonexistent.txt").code == 1);

  const auto dir = scratch("bad");
  write(dir / "bp.tsv", "example_id\tvalue\tdelta_fp\tdelta_fn\n1\t0\t-1\t0\n");
  write(dir / "caps.tsv", "example_id\tfpp\tfnp\n1\t1\t0\n");
  write(dir / "pred.txt", "0\n");
  const auto invalid = run("compute --breakpoints " + (dir / "bp.tsv").string() + " --capacities " +
                           (dir / "caps.tsv").string() + " --predictions " + (dir / "pred.txt").string());
  CHECK(invalid.code == 2);
  CHECK(invalid.err.find("FP prefix negative") != std::string::npos);

  write(dir / "garbled.tsv", "example_id\tvalue\tdelta_fp\tdelta_fn\n1\t0\t1\t0\n1\tzero\t1\t0\n");
  const auto garbled = run("compute --breakpoints " + (dir / "garbled.tsv").string() + " --predictions " +
                           (dir / "pred.txt").string());
  CHECK(garbled.code == 1);
  CHECK(garbled.err.find("garbled.tsv:3") != std::string::npos);

  write(dir / "short.txt", "0\n");
  CHECK(run("compute --labels " + fixtures + "/reversed_pair/data.csv --predictions " + (dir / "short.txt").string())
            .code == 1);
}

TEST_CASE("train a linear model on the separable fixture") {
  const auto dir = scratch("train");
  const auto r = run("train --labels " + fixtures + "/separable_1d/data.csv --objective aum-count --out-dir " +
                     dir.string());
  REQUIRE(r.code == 0);
  const auto fit = nlohmann::json::parse(aum::io::read_file((dir / "fit.json").string()));
  CHECK(fit["final"]["auc"] == 1.0);
  CHECK(fit["weights"].size() == 1);
  CHECK(aum::io::read_file((dir / "trace.csv").string()).rfind("iteration,aum,auc,error_rate,step,intercept\n", 0) ==
        0);
}

TEST_CASE("train with zero iterations") {
  const auto dir = scratch("zero");
  for (const auto& data : {"--labels " + fixtures + "/separable_1d/data.csv",
                           loop_args().substr(0, loop_args().find(" --predictions")) + " --mode predictions"}) {
    REQUIRE(run("train " + data + " --max-iterations 0 --out-dir " + dir.string()).code == 0);
    std::istringstream trace(aum::io::read_file((dir / "trace.csv").string()));
    std::string line;
    int lines = 0;
    while (std::getline(trace, line)) ++lines;
    CHECK(lines == 2);
  }
}

TEST_CASE("train in predictions mode writes the predictions") {
  const auto dir = scratch("pred");
  const auto args = loop_args().substr(0, loop_args().find(" --predictions"));
  const auto r = run("train " + args + " --mode predictions --init provided --init-file " + fixtures +
                     "/loop/predictions.txt --out-dir " + dir.string());
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "predictions.txt"));
  CHECK(nlohmann::json::parse(aum::io::read_file((dir / "fit.json").string()))["final"]["aum"] == 0.0);
}

TEST_CASE("train rejects incompatible flags") {
  const auto args = loop_args().substr(0, loop_args().find(" --predictions"));
  CHECK(run("train " + args + " --mode predictions --objective logistic").code == 1);
  CHECK(run("train " + args + " --mode linear").code == 1);
  CHECK(run("train --labels " + fixtures + "/separable_1d/data.csv --step-grid 0.1,1").code == 1);
  CHECK(run("train --labels " + fixtures + "/separable_1d/data.csv --objective nope").code == 1);
}

TEST_CASE("train on imbalanced gaussian data with both AUM variants") {
  const auto dir = scratch("imbalanced");
  REQUIRE(run("synth --kind binary-gaussian --n 300 --positive-fraction 0.01 --seed 1 --out-dir " + dir.string())
              .code == 0);
  for (const char* objective : {"aum-count", "aum-rate"}) {
    const auto out = dir / objective;
    REQUIRE(run("train --labels " + (dir / "data.csv").string() + " --objective " + objective +
                " --init random --seed 1 --max-iterations 10 --out-dir " + out.string())
                .code == 0);
    const auto fit = nlohmann::json::parse(aum::io::read_file((out / "fit.json").string()));
    CHECK(fit["objective"] == objective);
    CHECK(fit["weights"].size() == 2);
  }
}

TEST_CASE("train with validation files") {
  const auto dir = scratch("validation");
  REQUIRE(run("synth --kind binary-gaussian --n 80 --seed 1 --out-dir " + (dir / "train").string()).code == 0);
  REQUIRE(run("synth --kind binary-gaussian --n 80 --seed 2 --out-dir " + (dir / "val").string()).code == 0);
  REQUIRE(run("train --labels " + (dir / "train/data.csv").string() + " --validation-labels " +
              (dir / "val/data.csv").string() + " --init random --max-iterations 10 --select max-auc --out-dir " +
              dir.string())
              .code == 0);
  const auto fit = nlohmann::json::parse(aum::io::read_file((dir / "fit.json").string()));
  CHECK(fit["rule"] == "max-validation-auc");
  CHECK(fit["selected"].contains("val_auc"));
  CHECK(aum::io::read_file((dir / "trace.csv").string()).find("val_aum,val_auc") != std::string::npos);
}

TEST_CASE("synth outputs") {
  const auto dir = scratch("synth");
  REQUIRE(run("synth --kind binary-gaussian --n 100 --positive-fraction 0.5 --seed 7 --out " + dir.string()).code == 0);
  std::istringstream csv(aum::io::read_file((dir / "data.csv").string()));
  std::string line;
  int rows = -1;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 100);

  REQUIRE(run("synth --kind changepoint-loop --n 2 --loop-share 1 --seed 0 --out-dir " + dir.string()).code == 0);
  CHECK(aum::io::read_file((dir / "breakpoints.tsv").string()) ==
        aum::io::read_file(fixtures + "/loop/breakpoints.tsv"));
  CHECK(aum::io::read_file((dir / "capacities.tsv").string()) ==
        aum::io::read_file(fixtures + "/loop/capacities.tsv"));
  CHECK(aum::io::read_file((dir / "predictions.txt").string()) ==
        aum::io::read_file(fixtures + "/loop/predictions.txt"));

  CHECK(run("synth --kind binary-gaussian --n 1 --out-dir " + dir.string()).code == 1);
  CHECK(run("synth --kind binary-gaussian --n 10 --positive-fraction 1.5 --out-dir " + dir.string()).code == 1);
}

TEST_CASE("synth is byte-identical across runs") {
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  for (const auto& kind : {"binary-gaussian", "changepoint-loop"}) {
    const std::string flags = std::string("synth --kind ") + kind + " --n 40 --seed 5 --out-dir ";
    REQUIRE(run(flags + a.string()).code == 0);
    REQUIRE(run(flags + b.string()).code == 0);
  }
  for (const auto& entry : fs::directory_iterator(a)) {
    CHECK(aum::io::read_file(entry.path().string()) ==
          aum::io::read_file((b / entry.path().filename()).string()));
  }
}

TEST_CASE("bench output") {
  const auto r = run("bench --objective pairs --sizes 100,200 --repeats 3");
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "objective,n,median_seconds");
  std::getline(in, line);
  CHECK(line.rfind("pairs,100,", 0) == 0);
  std::getline(in, line);
  CHECK(line.rfind("pairs,200,", 0) == 0);
  CHECK(run("bench --objective aum --sizes 1000 --repeats 1").code == 0);
  CHECK(run("bench --objective hinge --sizes 10").code == 1);
}
