#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cpso/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cpso::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("cpso_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');) out.push_back(f);
  return out;
}

std::string run_process(const std::string& args) {
  const std::string cmd = std::string(CPSO_CLI_PATH) + " " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string text;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) text.append(buf, n);
  CHECK(pclose(pipe) == 0);
  return text;
}

}  // namespace

TEST_CASE("run: smoke, determinism, error paths") {
  const std::vector<std::string> args{"run", "cpso", "parabola", "--seed", "1", "--population", "5", "--iterations", "10"};
  const Outcome a = cli(args);
  CHECK(a.code == 0);
  CHECK(a.out.find("best_value: ") != std::string::npos);
  CHECK(a.out.find("evaluations: 50\n") != std::string::npos);
  CHECK(a.out.find("nan") == std::string::npos);
  CHECK(cli(args).out == a.out);

  // Separate processes as well.
  const std::string flags = "run cpso parabola --seed 1 --population 5 --iterations 10";
  const std::string p1 = run_process(flags);
  CHECK(p1 == run_process(flags));
  CHECK(p1 == a.out);

  CHECK(cli({"run", "cpso", "nosuchfn"}).code == 2);
  CHECK(cli({"run", "nosuchopt", "parabola"}).code == 2);
  CHECK(cli({"run", "cpso"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("run: pso2011, json output and trace file") {
  const fs::path dir = scratch("trace");
  const Outcome r = cli({"run", "pso2011", "rastrigin", "--seed", "3", "--population", "6", "--iterations", "25",
                         "--json", "--trace", (dir / "trace.csv").string()});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["optimizer"] == "PSO2011");
  CHECK(j["function"] == "rastrigin");
  CHECK(j["seed"] == 3);
  CHECK(j["evaluations"] == 150);
  CHECK(j["best_position"].size() == 3);

  const auto lines = lines_of(slurp(dir / "trace.csv"));
  REQUIRE(lines.size() == 26);
  CHECK(lines[0] == "iteration,chaos,phase,global_best_value");
  CHECK(lines[1].rfind("0,,,", 0) == 0);
  CHECK(std::stod(fields(lines.back())[3]) == j["best_value"].get<double>());

  const Outcome c = cli({"run", "cpso", "griewank", "--population", "4", "--iterations", "20", "--trace",
                         (dir / "cpso.csv").string()});
  REQUIRE(c.code == 0);
  const auto cl = lines_of(slurp(dir / "cpso.csv"));
  REQUIRE(cl.size() == 21);
  CHECK(fields(cl[1])[2] == "Diffusion");
  CHECK(fields(cl.back())[2] == "Nucleation");

  CHECK(cli({"run", "cpso", "parabola", "--trace", "/nonexistent/dir/t.csv", "--iterations", "5"}).code == 2);
}

TEST_CASE("run: numerical failure exits 3") {
  const fs::path dir = scratch("numerical");
  write_file(dir / "huge.cfg", "domain.parabola = -1e200, 1e200\n");
  const Outcome r = cli({"run", "pso2011", "parabola", "--config", (dir / "huge.cfg").string(), "--iterations", "5"});
  CHECK(r.code == 3);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("chaos-curve") {
  const Outcome r = cli({"chaos-curve"});
  REQUIRE(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 102);
  CHECK(lines[0] == "progress,chaos,phase");
  double prev = 2.0;
  int phase_index = 0;
  const std::vector<std::string> order{"Diffusion", "DirectedMotion", "Nucleation"};
  bool saw_mid = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = fields(lines[i]);
    REQUIRE(f.size() == 3);
    const double p = std::stod(f[0]);
    const double c = std::stod(f[1]);
    CHECK(c < prev);
    prev = c;
    while (phase_index < 3 && order[phase_index] != f[2]) ++phase_index;
    REQUIRE(phase_index < 3);
    // Thresholds from the defaults: 0.99 and 0.01 of c_max.
    if (c >= 0.99) CHECK(f[2] == "Diffusion");
    if (c <= 0.01) CHECK(f[2] == "Nucleation");
    if (c > 0.01 && c < 0.99) CHECK(f[2] == "DirectedMotion");
    if (std::abs(p - 0.5) < 1e-12) {
      saw_mid = true;
      CHECK(std::abs(c - 0.5) <= 1e-9);
    }
  }
  CHECK(saw_mid);
  CHECK(fields(lines[1])[2] == "Diffusion");
  CHECK(fields(lines.back())[2] == "Nucleation");

  const Outcome shaped = cli({"chaos-curve", "--alpha", "4", "--beta", "0.3", "--c-max", "2", "--points", "11"});
  REQUIRE(shaped.code == 0);
  const auto sl = lines_of(shaped.out);
  CHECK(sl.size() == 12);
  CHECK(fields(sl[1])[0] == "0");
  CHECK(fields(sl.back())[0] == "1");
  // Row for progress 0.3 carries c_max / 2.
  CHECK(std::abs(std::stod(fields(sl[4])[1]) - 1.0) <= 1e-9);

  CHECK(cli({"chaos-curve", "--points", "1"}).code == 2);
  CHECK(cli({"chaos-curve", "--beta", "1.5"}).code == 2);

  const fs::path dir = scratch("curve");
  CHECK(cli({"chaos-curve", "--out", (dir / "c.csv").string()}).code == 0);
  CHECK(slurp(dir / "c.csv") == r.out);
}

TEST_CASE("bench: filtering, files and determinism") {
  const fs::path dir = scratch("bench");
  const std::vector<std::string> args{"bench", "--functions", "rastrigin", "--populations", "20", "--replicates", "3",
                                      "--iterations", "30", "--out-dir", (dir / "a").string()};
  const Outcome a = cli(args);
  REQUIRE(a.code == 0);
  const auto csv = lines_of(slurp(dir / "a" / "summary.csv"));
  REQUIRE(csv.size() == 3);
  CHECK(csv[0] == "optimizer,function,population,mean,sd,best,worst");
  CHECK(csv[1].rfind("CPSO,rastrigin,20,", 0) == 0);
  CHECK(csv[2].rfind("PSO2011,rastrigin,20,", 0) == 0);
  CHECK(a.out.rfind(slurp(dir / "a" / "summary.csv"), 0) == 0);
  CHECK(fs::exists(dir / "a" / "comparison.txt"));
  const auto j = nlohmann::json::parse(slurp(dir / "a" / "summary.json"));
  CHECK(j["cells"].size() == 2);
  CHECK(j["cells"][0]["replicate_values"].size() == 3);

  std::vector<std::string> again = args;
  again.back() = (dir / "b").string();
  again.insert(again.end(), {"--jobs", "2"});
  REQUIRE(cli(again).code == 0);
  CHECK(slurp(dir / "a" / "summary.csv") == slurp(dir / "b" / "summary.csv"));
  CHECK(slurp(dir / "a" / "summary.json") == slurp(dir / "b" / "summary.json"));

  CHECK(cli({"bench", "--populations", "10,5", "--iterations", "5", "--out-dir", dir.string()}).code == 2);
  CHECK(cli({"bench", "--functions", "ackley", "--out-dir", dir.string()}).code == 2);
}

TEST_CASE("bench: failed cells exit 4 and are listed") {
  const fs::path dir = scratch("partial");
  write_file(dir / "wide.cfg", "cpso.e_divisor = 1\n");
  const Outcome r = cli({"bench", "--config", (dir / "wide.cfg").string(), "--functions", "parabola", "--populations",
                         "5", "--replicates", "2", "--iterations", "5", "--out-dir", dir.string()});
  CHECK(r.code == 4);
  CHECK(r.err.find("CPSO/parabola/5") != std::string::npos);
  const auto j = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(j["errors"].size() == 1);
  CHECK(j["cells"].size() == 1);
}

TEST_CASE("config precedence: defaults < file < flags, per field") {
  const fs::path dir = scratch("precedence");
  write_file(dir / "run.cfg", "run.seed = 11\nrun.population = 4\nrun.iterations = 7\n");
  const std::string cfg = (dir / "run.cfg").string();

  auto run_json = [&](std::vector<std::string> extra) {
    std::vector<std::string> args{"run", "pso2011", "parabola", "--json"};
    args.insert(args.end(), extra.begin(), extra.end());
    const Outcome o = cli(args);
    REQUIRE(o.code == 0);
    return nlohmann::json::parse(o.out);
  };

  const auto defaults = run_json({});
  CHECK(defaults["seed"] == 1);
  CHECK(defaults["population"] == 20);
  CHECK(defaults["iterations"] == 1000);

  const auto from_file = run_json({"--config", cfg});
  CHECK(from_file["seed"] == 11);
  CHECK(from_file["population"] == 4);
  CHECK(from_file["iterations"] == 7);
  CHECK(from_file["evaluations"] == 28);

  CHECK(run_json({"--config", cfg, "--seed", "5"})["seed"] == 5);
  CHECK(run_json({"--config", cfg, "--seed", "5"})["population"] == 4);
  CHECK(run_json({"--config", cfg, "--population", "3"})["population"] == 3);
  CHECK(run_json({"--config", cfg, "--population", "3"})["iterations"] == 7);
  CHECK(run_json({"--config", cfg, "--iterations", "9"})["iterations"] == 9);
  CHECK(run_json({"--config", cfg, "--iterations", "9"})["seed"] == 11);

  // Same result whether the value came from the file or a flag.
  CHECK(from_file["best_value"] == run_json({"--seed", "11", "--population", "4", "--iterations", "7"})["best_value"]);

  // Bench fields.
  write_file(dir / "bench.cfg",
             "bench.functions = parabola\nbench.populations = 3\nbench.replicates = 2\nbench.iterations = 4\n"
             "bench.optimizers = pso2011\nbench.root_seed = 8\nbench.jobs = 1\n");
  const std::string bcfg = (dir / "bench.cfg").string();
  auto bench_plan = [&](std::vector<std::string> extra) {
    std::vector<std::string> args{"bench", "--config", bcfg, "--out-dir", (dir / "out").string()};
    args.insert(args.end(), extra.begin(), extra.end());
    REQUIRE(cli(args).code == 0);
    return nlohmann::json::parse(slurp(dir / "out" / "summary.json"))["plan"];
  };
  const auto base = bench_plan({});
  CHECK(base["functions"] == nlohmann::json::array({"parabola"}));
  CHECK(base["populations"] == nlohmann::json::array({3}));
  CHECK(base["replicates"] == 2);
  CHECK(base["iterations"] == 4);
  CHECK(base["optimizers"] == nlohmann::json::array({"PSO2011"}));
  CHECK(base["root_seed"] == 8);
  CHECK(bench_plan({"--functions", "rastrigin"})["functions"] == nlohmann::json::array({"rastrigin"}));
  CHECK(bench_plan({"--populations", "2,4"})["populations"] == nlohmann::json::array({2, 4}));
  CHECK(bench_plan({"--replicates", "3"})["replicates"] == 3);
  CHECK(bench_plan({"--iterations", "6"})["iterations"] == 6);
  CHECK(bench_plan({"--optimizers", "cpso"})["optimizers"] == nlohmann::json::array({"CPSO"}));
  CHECK(bench_plan({"--seed", "9"})["root_seed"] == 9);
  CHECK(bench_plan({"--seed", "9"})["replicates"] == 2);

  // Chaos curve fields.
  write_file(dir / "chaos.cfg", "cpso.alpha = 4\ncpso.beta = 0.3\ncpso.max_chaos = 2\n");
  const std::string ccfg = (dir / "chaos.cfg").string();
  const Outcome file_curve = cli({"chaos-curve", "--config", ccfg, "--points", "11"});
  const Outcome flag_curve = cli({"chaos-curve", "--alpha", "4", "--beta", "0.3", "--c-max", "2", "--points", "11"});
  CHECK(file_curve.out == flag_curve.out);
  const Outcome override_beta = cli({"chaos-curve", "--config", ccfg, "--beta", "0.5", "--points", "11"});
  CHECK(std::abs(std::stod(fields(lines_of(override_beta.out)[6])[1]) - 1.0) <= 1e-9);

  write_file(dir / "bad.cfg", "run.sead = 3\n");
  const Outcome bad = cli({"run", "cpso", "parabola", "--config", (dir / "bad.cfg").string()});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("run.sead") != std::string::npos);
}

TEST_CASE("config file from the environment") {
  const fs::path dir = scratch("env");
  write_file(dir / "env.cfg", "run.seed = 21\nrun.population = 3\nrun.iterations = 5\n");
  write_file(dir / "other.cfg", "run.seed = 22\n");
  ::setenv(cpso::kConfigEnvVar, (dir / "env.cfg").c_str(), 1);
  const Outcome env = cli({"run", "cpso", "parabola", "--json"});
  const Outcome flag = cli({"run", "cpso", "parabola", "--json", "--config", (dir / "other.cfg").string()});
  const Outcome seed_flag = cli({"run", "cpso", "parabola", "--json", "--seed", "4"});
  ::unsetenv(cpso::kConfigEnvVar);
  REQUIRE(env.code == 0);
  const auto j = nlohmann::json::parse(env.out);
  CHECK(j["seed"] == 21);
  CHECK(j["evaluations"] == 15);
  // --config replaces the environment file rather than layering on it.
  REQUIRE(flag.code == 0);
  CHECK(nlohmann::json::parse(flag.out)["seed"] == 22);
  CHECK(nlohmann::json::parse(flag.out)["population"] == 20);
  CHECK(nlohmann::json::parse(seed_flag.out)["seed"] == 4);
  CHECK(nlohmann::json::parse(seed_flag.out)["population"] == 3);
}
