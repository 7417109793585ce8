#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace {

namespace fs = std::filesystem;

const std::string kCli = PBS_CLI_PATH;

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("pbs_cli_" + std::to_string(getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string fresh_path(const std::string& suffix) {
  static int counter = 0;
  return (work_dir() / (std::to_string(counter++) + suffix)).string();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  out << data;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

// Runs the pbs binary through the shell. env_prefix defaults to scrubbing
// PBS_SCHED_SEED so tests see the documented fallback seed.
CliResult run_cli(const std::string& args, const std::string& stdin_text = "",
                  const std::string& env_prefix = "env -u PBS_SCHED_SEED") {
  const std::string in_path = fresh_path(".in");
  const std::string out_path = fresh_path(".out");
  const std::string err_path = fresh_path(".err");
  write_file(in_path, stdin_text);
  const std::string cmd = env_prefix + " " + kCli + " " + args + " < " + in_path +
                          " > " + out_path + " 2> " + err_path;
  const int raw = std::system(cmd.c_str());
  CliResult res;
  if (raw != -1 && WIFEXITED(raw)) res.code = WEXITSTATUS(raw);
  res.out = read_file(out_path);
  res.err = read_file(err_path);
  return res;
}

bool starts_with(const std::string& text, const std::string& prefix) {
  return text.rfind(prefix, 0) == 0;
}

}  // namespace

TEST_CASE("generate, solve, validate round trip") {
  const std::string inst = fresh_path(".inst");
  const std::string sched = fresh_path(".sched");

  const CliResult gen = run_cli("generate --n 4 --m 3 --wmax 9 --density 0.8 --d 2 --seed 7 --out " + inst);
  CHECK(gen.code == 0);
  CHECK(gen.out.empty());
  CHECK(starts_with(read_file(inst), "4 3 2\n"));

  const CliResult sol = run_cli("solve --in " + inst + " --algo posa --out " + sched);
  CHECK(sol.code == 0);
  CHECK(starts_with(sol.out, "algo=posa cost="));
  CHECK(!read_file(sched).empty());

  const CliResult val = run_cli("validate --in " + inst + " --schedule " + sched);
  CHECK(val.code == 0);
  CHECK(starts_with(val.out, "ok cost="));
}

TEST_CASE("solve reads stdin and prints the frozen summary") {
  const CliResult res = run_cli("solve --algo posa", "2 2 2\n2 3\n4 1\n");
  CHECK(res.code == 0);
  CHECK(res.out == "algo=posa cost=10 rounds=2 ratio=1/1\n");
}

TEST_CASE("solve --emit-schedule is an alias for --out") {
  const std::string a = fresh_path(".sched");
  const std::string b = fresh_path(".sched");
  const std::string inst = "2 2 2\n2 3\n4 1\n";
  CHECK(run_cli("solve --algo posa --out " + a, inst).code == 0);
  CHECK(run_cli("solve --algo posa --emit-schedule " + b, inst).code == 0);
  const std::string bytes = read_file(a);
  CHECK(bytes == read_file(b));
  CHECK(bytes == "2\n4 2 1 2 2 1\n2 2 1 1 2 2\n");
}

TEST_CASE("solve --d overrides the instance setup") {
  const CliResult res = run_cli("solve --algo posa --d 0", "2 2 2\n3 0\n0 5\n");
  CHECK(res.code == 0);
  CHECK(res.out == "algo=posa cost=5 rounds=1 ratio=1/1\n");
}

TEST_CASE("solve threshold mode flips candidates at the threshold") {
  // The two candidates produce different schedules on this matrix.
  const std::string inst = "3 3 8\n5 1 0\n1 1 1\n0 1 3\n";
  const std::string posa_out = fresh_path(".sched");
  const std::string os_out = fresh_path(".sched");
  CHECK(run_cli("solve --algo posa --out " + posa_out, inst).code == 0);
  CHECK(run_cli("solve --algo os01pt --out " + os_out, inst).code == 0);
  REQUIRE(read_file(posa_out) != read_file(os_out));

  const std::string below = fresh_path(".sched");
  const std::string at = fresh_path(".sched");
  const CliResult b = run_cli("solve --algo hsa --mode threshold --t 9 --out " + below, inst);
  CHECK(b.code == 0);
  CHECK(starts_with(b.out, "algo=hsa cost="));
  CHECK(read_file(below) == read_file(posa_out));  // setup 8 below t 9

  CHECK(run_cli("solve --algo hsa --mode threshold --t 8 --out " + at, inst).code == 0);
  CHECK(read_file(at) == read_file(os_out));  // setup 8 meets t 8
}

TEST_CASE("validate rejects a tampered schedule with exit 1") {
  const std::string inst = fresh_path(".inst");
  const std::string sched = fresh_path(".sched");
  write_file(inst, "2 2 2\n2 3\n4 1\n");
  write_file(sched, "2\n4 2 1 2 2 1\n1 2 1 1 2 2\n");  // second round one short
  const CliResult res = run_cli("validate --in " + inst + " --schedule " + sched);
  CHECK(res.code == 1);
  CHECK(starts_with(res.err, "invalid:"));
  CHECK(res.out.empty());
}

TEST_CASE("validate --d override changes the reported cost only") {
  const std::string inst = fresh_path(".inst");
  const std::string sched = fresh_path(".sched");
  write_file(inst, "2 2 2\n3 0\n0 5\n");
  write_file(sched, "1\n5 2 1 1 2 2\n");
  CHECK(run_cli("validate --in " + inst + " --schedule " + sched).out == "ok cost=7 rounds=1\n");
  CHECK(run_cli("validate --in " + inst + " --schedule " + sched + " --d 10").out ==
        "ok cost=15 rounds=1\n");
}

TEST_CASE("oracle prints the optimum and writes a witness") {
  CHECK(run_cli("oracle", "2 2 2\n3 0\n0 5\n").out == "optimum=7 rounds=1 matchings=3\n");
  CHECK(run_cli("oracle", "2 2 2\n2 3\n4 1\n").out == "optimum=10 rounds=2 matchings=6\n");
  CHECK(run_cli("oracle", "3 3 1\n2 0 1\n1 1 0\n0 2 1\n").out ==
        "optimum=6 rounds=2 matchings=17\n");

  const std::string inst = fresh_path(".inst");
  const std::string wit = fresh_path(".sched");
  write_file(inst, "3 3 1\n2 0 1\n1 1 0\n0 2 1\n");
  CHECK(run_cli("oracle --in " + inst + " --out " + wit).code == 0);
  const CliResult val = run_cli("validate --in " + inst + " --schedule " + wit);
  CHECK(val.code == 0);
  CHECK(val.out == "ok cost=6 rounds=2\n");
}

TEST_CASE("oracle refuses oversized instances with exit 1") {
  const CliResult res = run_cli("oracle --max-edges 4", "2 2 1\n1 1\n1 1\n");
  CHECK(res.code == 0);
  const CliResult big = run_cli("oracle --max-edges 3", "2 2 1\n1 1\n1 1\n");
  CHECK(big.code == 1);
  CHECK(starts_with(big.err, "error:"));
}

TEST_CASE("malformed instance text exits 1 with a line number") {
  const CliResult res = run_cli("solve --algo posa", "2 2 2\n3 0 1\n0 5\n");
  CHECK(res.code == 1);
  CHECK(starts_with(res.err, "error: line 2"));
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli("solve --bogus-flag", "1 1 0\n1\n").code == 2);
  CHECK(run_cli("generate --m 3").code == 2);                       // missing --n
  CHECK(run_cli("").code == 2);                                     // no subcommand
  CHECK(run_cli("solve --algo osa", "1 1 0\n1\n").code == 2);       // unknown algorithm
  CHECK(run_cli("bench --preset nope").code == 2);                  // bad preset
  CHECK(run_cli("bench --d-from 5 --d-to 2").code == 2);            // empty range
  CHECK(run_cli("bench --d-from 0 --d-to 1 --algos posa,bad").code == 2);
}

TEST_CASE("help exits 0") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("solve --help").code == 0);
}

TEST_CASE("generate is deterministic and seeded from the environment") {
  const std::string a = fresh_path(".inst");
  const std::string b = fresh_path(".inst");
  const std::string args = "generate --n 5 --m 5 --wmax 9 --density 0.7";
  CHECK(run_cli(args + " --seed 7 --out " + a).code == 0);
  CHECK(run_cli(args + " --out " + b, "", "env PBS_SCHED_SEED=7").code == 0);
  CHECK(read_file(a) == read_file(b));

  // Default seed differs from seed 7.
  const std::string c = fresh_path(".inst");
  CHECK(run_cli(args + " --out " + c).code == 0);
  CHECK(read_file(a) != read_file(c));

  // --seed beats the environment.
  const std::string d = fresh_path(".inst");
  CHECK(run_cli(args + " --seed 7 --out " + d, "", "env PBS_SCHED_SEED=99").code == 0);
  CHECK(read_file(a) == read_file(d));

  CHECK(run_cli(args, "", "env PBS_SCHED_SEED=meh").code == 2);
}

TEST_CASE("bench emits deterministic CSV across jobs") {
  const std::string args =
      "bench --n 3 --m 3 --wmax 5 --density 0.9 --d-from 0 --d-to 2 --reps 3 --seed 11";
  const CliResult one = run_cli(args + " --jobs 1");
  CHECK(one.code == 0);
  CHECK(starts_with(one.out,
                    "d,algorithm,n_instances,mean_ratio,worst_ratio,mean_cost,mean_rounds\n"));
  const CliResult three = run_cli(args + " --jobs 3");
  CHECK(three.code == 0);
  CHECK(one.out == three.out);

  int lines = 0;
  for (const char ch : one.out)
    if (ch == '\n') ++lines;
  CHECK(lines == 1 + 3 * 4);
}

TEST_CASE("bench presets accept targeted overrides") {
  const CliResult res = run_cli(
      "bench --preset paper-ci --n 3 --m 3 --wmax 6 --d-to 10 --reps 2 --algos posa,hsa");
  CHECK(res.code == 0);
  // paper-ci strides d by 5, so the override keeps 0, 5, 10.
  int lines = 0;
  for (const char ch : res.out)
    if (ch == '\n') ++lines;
  CHECK(lines == 1 + 3 * 2);
  CHECK(res.out.find("5,hsa,2,") != std::string::npos);
  CHECK(res.out.find("10,posa,2,") != std::string::npos);
}
