#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "clustertest/generators.hpp"
#include "clustertest/instance_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string stdout_text;
};

CommandResult run_cli(const std::string& args, const fs::path& dir) {
  const fs::path out = dir / "stdout.txt";
  const std::string cmd = std::string(CLUSTERTEST_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + (dir / "stderr.txt").string();
  const int raw = std::system(cmd.c_str());
  CommandResult result;
  result.exit_code = WEXITSTATUS(raw);
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  result.stdout_text = ss.str();
  return result;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<json> parse_lines(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("clustertest_cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int counter() {
    static int c = 0;
    return c++;
  }
};

}  // namespace

TEST_CASE("instances survive a write/load round trip with exact bookkeeping") {
  TempDir tmp;
  const auto inst = clustertest::planted_clusterable({80, 80}, 6, 4, 77);
  const std::string prefix = (tmp.path / "roundtrip").string();
  clustertest::write_instance(inst, prefix);
  const auto back = clustertest::load_instance(prefix);
  CHECK(back.graph.edges() == inst.graph.edges());
  CHECK(back.seed == inst.seed);
  REQUIRE(back.parts.size() == 2);
  for (std::size_t p = 0; p < 2; ++p) {
    CHECK(back.parts[p].members() == inst.parts[p].members());
    CHECK(back.design.per_part[p].phi_out == inst.design.per_part[p].phi_out);
  }
}

TEST_CASE("gen writes deterministic instance files and validates specs") {
  TempDir tmp;
  const std::string prefix_a = (tmp.path / "a").string();
  const std::string prefix_b = (tmp.path / "b").string();
  const std::string spec = "gen --kind dumbbell --half 60 --d 6 --cut-edges 2 --seed 9";
  CHECK(run_cli(spec + " --out " + prefix_a, tmp.path).exit_code == 0);
  CHECK(run_cli(spec + " --out " + prefix_b, tmp.path).exit_code == 0);
  CHECK(slurp(prefix_a + ".edges") == slurp(prefix_b + ".edges"));
  CHECK(slurp(prefix_a + ".json") == slurp(prefix_b + ".json"));

  const auto sidecar = json::parse(slurp(prefix_a + ".json"));
  CHECK(sidecar.at("parts").size() == 2);
  CHECK(sidecar.at("kind") == "dumbbell");

  // Infeasible spec: odd m*d for a regular block.
  const auto bad = run_cli("gen --kind expander --n 5 --d 3 --seed 1 --out " +
                               (tmp.path / "bad").string(),
                           tmp.path);
  CHECK(bad.exit_code == 2);
}

TEST_CASE("test subcommand emits replayable JSON lines and exit code 0") {
  TempDir tmp;
  const std::string prefix = (tmp.path / "inst").string();
  REQUIRE(run_cli("gen --kind planted --sizes 150,150 --d 8 --cross-edges 2 --seed 4 --out " +
                      prefix,
                  tmp.path)
              .exit_code == 0);
  const auto result = run_cli("test --instance " + prefix +
                                  " --k 2 --phi 0.4 --epsilon 0.5 --seed 3 --trials 4 "
                                  "--c_s 1 --c_r 0.5",
                              tmp.path);
  CHECK(result.exit_code == 0);
  const auto records = parse_lines(result.stdout_text);
  REQUIRE(records.size() == 4);
  for (const auto& rec : records) {
    CHECK(rec.at("schema_version") == 1);
    CHECK(rec.at("params").at("mode") == "practical");
    CHECK((rec.at("verdict") == "accept" || rec.at("verdict") == "reject"));
    CHECK(rec.at("query_count").get<std::uint64_t>() > 0);
  }

  // Oracle path: one deterministic record per trial.
  const auto oracle = run_cli("test --instance " + prefix +
                                  " --k 2 --seed 3 --trials 2 --oracle",
                              tmp.path);
  CHECK(oracle.exit_code == 0);
  const auto oracle_records = parse_lines(oracle.stdout_text);
  REQUIRE(oracle_records.size() == 2);
  CHECK(oracle_records[0].at("oracle") == true);
  CHECK(oracle_records[0].at("verdict") == "accept");

  // Malformed instance file: nonzero exit.
  std::ofstream bad((tmp.path / "broken.edges"));
  bad << "4 2\n0 9\n";
  bad.close();
  std::ofstream bad_json((tmp.path / "broken.json"));
  bad_json << "{}";
  bad_json.close();
  const auto broken = run_cli("test --instance " + (tmp.path / "broken").string() +
                                  " --k 2 --seed 1",
                              tmp.path);
  CHECK(broken.exit_code != 0);
}

TEST_CASE("verify audits a corpus and flags corruption") {
  TempDir tmp;
  const fs::path corpus = tmp.path / "corpus";
  fs::create_directories(corpus);
  REQUIRE(run_cli("gen --kind dumbbell --half 80 --d 6 --cut-edges 1 --seed 5 --out " +
                      (corpus / "bell").string(),
                  tmp.path)
              .exit_code == 0);
  REQUIRE(run_cli("gen --kind disjoint --parts 3 --size 60 --d 6 --seed 6 --out " +
                      (corpus / "far").string(),
                  tmp.path)
              .exit_code == 0);
  REQUIRE(run_cli("gen --kind cycle --n 40 --seed 7 --out " + (corpus / "cyc").string(),
                  tmp.path)
              .exit_code == 0);

  const auto ok = run_cli("verify --corpus " + corpus.string() + " --t 30", tmp.path);
  CHECK(ok.exit_code == 0);
  const auto records = parse_lines(ok.stdout_text);
  REQUIRE(records.size() == 3);
  for (const auto& rec : records) CHECK(rec.at("ok") == true);

  // Unattainably tight tolerance: named invariant failures, exit 1.
  const auto tight = run_cli(
      "verify --corpus " + corpus.string() + " --t 30 --eigen-tol 1e-18", tmp.path);
  CHECK(tight.exit_code == 1);

  // Hand-corrupt a recorded conductance: the recount invariant must fail.
  auto sidecar = json::parse(slurp(corpus / "bell.json"));
  sidecar["design"]["per_part"][0]["phi_out"][0] =
      sidecar["design"]["per_part"][0]["phi_out"][0].get<std::int64_t>() + 1;
  std::ofstream out(corpus / "bell.json");
  out << sidecar.dump() << '\n';
  out.close();
  const auto corrupted = run_cli("verify --corpus " + corpus.string() + " --t 30", tmp.path);
  CHECK(corrupted.exit_code == 1);

  // Empty corpus: warning, zero records, exit 0.
  const fs::path empty = tmp.path / "empty";
  fs::create_directories(empty);
  const auto nothing = run_cli("verify --corpus " + empty.string(), tmp.path);
  CHECK(nothing.exit_code == 0);
  CHECK(parse_lines(nothing.stdout_text).empty());
}

TEST_CASE("calibrate sweeps a grid and writes a defaults file") {
  TempDir tmp;
  const fs::path corpus = tmp.path / "corpus";
  fs::create_directories(corpus);
  REQUIRE(run_cli("gen --kind planted --sizes 150,150 --d 8 --cross-edges 2 --seed 8 --out " +
                      (corpus / "planted").string(),
                  tmp.path)
              .exit_code == 0);
  REQUIRE(run_cli("gen --kind disjoint --parts 3 --size 100 --d 8 --seed 9 --out " +
                      (corpus / "far").string(),
                  tmp.path)
              .exit_code == 0);

  const fs::path cwd = fs::current_path();
  fs::current_path(tmp.path);
  const auto result = run_cli("calibrate --corpus " + corpus.string() +
                                  " --trials 8 --seed 2 --grid-c-s 2 --grid-c-r 0.5 "
                                  "--phi 0.4 --target 0.75",
                              tmp.path);
  const bool defaults_written = fs::exists(tmp.path / "calibrated.cfg");
  std::string defaults_text = defaults_written ? slurp(tmp.path / "calibrated.cfg") : "";
  fs::current_path(cwd);
  CHECK(result.exit_code == 0);
  CHECK(defaults_written);
  CHECK(defaults_text.find("c_r=0.5") != std::string::npos);
  const auto cells = parse_lines(result.stdout_text);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].at("feasible") == true);
  CHECK(cells[0].at("passes") == true);

  // Theory-mode grid at desk scale is flagged infeasible, not run.
  const auto theory = run_cli("calibrate --corpus " + corpus.string() +
                                  " --trials 2 --seed 2 --grid-c-s 8 --grid-c-r 4 "
                                  "--mode theory",
                              tmp.path);
  const auto theory_cells = parse_lines(theory.stdout_text);
  REQUIRE(theory_cells.size() == 1);
  CHECK(theory_cells[0].at("feasible") == false);
  CHECK(theory.exit_code == 1);
}

TEST_CASE("spectra and bench commands run end to end") {
  TempDir tmp;
  const std::string prefix = (tmp.path / "inst").string();
  REQUIRE(run_cli("gen --kind expander --n 64 --d 6 --seed 10 --out " + prefix, tmp.path)
              .exit_code == 0);
  const auto spectra = run_cli("spectra --instance " + prefix + " --full", tmp.path);
  CHECK(spectra.exit_code == 0);
  const auto records = parse_lines(spectra.stdout_text);
  REQUIRE(records.size() == 1);
  CHECK(records[0].at("eigenvalues").size() == 64);
  CHECK(records[0].at("zero_multiplicity") == 1);

  const auto bench = run_cli(
      "bench --sizes 600,1200 --k 2 --phi 0.4 --seed 3 --c_s 1 --c_r 0.5", tmp.path);
  CHECK(bench.exit_code == 0);
  const auto lines = parse_lines(bench.stdout_text);
  REQUIRE(lines.size() == 3);  // two sizes plus the slope summary
  CHECK(lines[2].contains("slope"));
}
