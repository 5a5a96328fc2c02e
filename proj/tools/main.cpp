#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "clustertest/cluster_test.hpp"
#include "clustertest/errors.hpp"
#include "clustertest/farness.hpp"
#include "clustertest/generators.hpp"
#include "clustertest/instance_io.hpp"
#include "clustertest/parallel.hpp"
#include "clustertest/report_json.hpp"
#include "clustertest/rng.hpp"
#include "clustertest/spectral.hpp"
#include "clustertest/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace clustertest;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariantFailure = 1;
constexpr int kExitUsage = 2;

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw InputError("cannot open output file: " + path);
  return file;
}

struct GenOptions {
  std::string kind;
  std::vector<std::size_t> sizes;
  std::size_t n = 0;
  std::size_t size = 0;
  std::size_t half = 0;
  unsigned parts = 3;
  std::uint32_t d = 8;
  std::uint64_t cross_edges = 0;
  std::uint64_t cut_edges = 1;
  std::uint64_t seed = 1;
  double lambda2_floor = 0.05;
  std::string out;
};

int run_gen(const GenOptions& opt) {
  ExpanderConfig cfg;
  cfg.lambda2_floor = opt.lambda2_floor;
  ClusterInstance inst;
  if (opt.kind == "planted") {
    if (opt.sizes.empty()) throw InputError("gen planted: --sizes required");
    inst = planted_clusterable(opt.sizes, opt.d, opt.cross_edges, opt.seed, cfg);
  } else if (opt.kind == "disjoint") {
    if (opt.size == 0) throw InputError("gen disjoint: --size required");
    inst = far_instance_disjoint(opt.parts, opt.size, opt.d, opt.seed, cfg);
  } else if (opt.kind == "dumbbell") {
    if (opt.half == 0) throw InputError("gen dumbbell: --half required");
    inst = dumbbell(opt.half, opt.d, opt.cut_edges, opt.seed, cfg);
  } else if (opt.kind == "expander") {
    if (opt.n == 0) throw InputError("gen expander: --n required");
    inst = bare_instance(random_regular_expander(opt.n, opt.d, opt.seed, cfg), "expander",
                         opt.seed);
  } else if (opt.kind == "path" || opt.kind == "cycle" || opt.kind == "grid") {
    if (opt.n == 0) throw InputError("gen " + opt.kind + ": --n required");
    const auto kind = opt.kind == "path"    ? LowConductanceKind::path
                      : opt.kind == "cycle" ? LowConductanceKind::cycle
                                            : LowConductanceKind::grid;
    inst = bare_instance(low_conductance_family(kind, opt.n), opt.kind, opt.seed);
  } else {
    throw InputError("gen: unknown --kind " + opt.kind);
  }
  write_instance(inst, opt.out);
  std::cout << instance_summary(inst) << '\n';
  return kExitOk;
}

struct TestOptions {
  std::string instance;
  unsigned k = 2;
  double phi = 0.3;
  double epsilon = 0.5;
  std::string mode = "practical";
  bool oracle = false;
  std::uint64_t trials = 1;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  TestConstants constants;
  std::string out;
};

TestParams params_for(const TestOptions& opt, const BoundedDegreeGraph& g) {
  if (opt.mode == "theory") {
    return theory_params(g.vertex_count(), g.degree_bound(), opt.k, opt.epsilon, opt.phi,
                         opt.constants);
  }
  if (opt.mode == "practical") {
    return practical_params(g.vertex_count(), g.degree_bound(), opt.k, opt.epsilon,
                            opt.phi, opt.constants);
  }
  throw InputError("test: --mode must be theory or practical");
}

int run_test(const TestOptions& opt) {
  const ClusterInstance inst = load_instance(opt.instance);
  const TestParams params = params_for(opt, inst.graph);
  std::ofstream file;
  std::ostream& out = open_output(file, opt.out);
  std::vector<RunReport> reports(opt.trials);
  parallel_for(opt.trials, opt.threads, [&](std::size_t trial) {
    const std::uint64_t trial_seed =
        Rng::stream_key(opt.seed, rng_purpose::kTrial, trial, 0);
    reports[trial] = opt.oracle ? oracle_cluster_test(inst.graph, params, trial_seed)
                                : k_cluster_test(inst.graph, params, trial_seed, 1);
  });
  std::uint64_t accepted = 0;
  for (std::uint64_t trial = 0; trial < opt.trials; ++trial) {
    if (reports[trial].verdict == Verdict::accept) ++accepted;
    out << run_report_to_json(reports[trial], opt.instance, trial) << '\n';
  }
  std::cerr << "accepted " << accepted << "/" << opt.trials << " (fraction "
            << (static_cast<double>(accepted) / static_cast<double>(opt.trials)) << ")\n";
  return kExitOk;
}

struct VerifyOptions {
  std::string corpus;
  double eigen_tol = 1e-8;
  std::uint32_t t = 0;  // 0 = derive from phi
  double phi = 0.3;
  double alpha = 1.0 / (24.0 * 51.0);
  double alpha_cross = 0.25;
  std::string out;
};

struct VerifyOutcome {
  json record;
  std::vector<std::string> failures;
};

VerifyOutcome verify_instance(const std::string& prefix, const VerifyOptions& opt) {
  VerifyOutcome outcome;
  json& rec = outcome.record;
  rec["instance"] = prefix;
  ClusterInstance inst = load_instance(prefix);
  const auto& g = inst.graph;
  const std::size_t n = g.vertex_count();
  rec["n"] = n;
  rec["kind"] = inst.design.kind;
  auto check = [&](bool ok, const std::string& name) {
    if (!ok) outcome.failures.push_back(name);
  };

  if (n > kEigensolveCap) {
    rec["spectral"] = "skipped: n exceeds eigensolve cap";
    return outcome;
  }
  const SpectralReport spectral = eigensolve(g);
  rec["spectral"] = json::parse(spectral_summary_to_json(spectral));
  check(spectral.max_eigen_residual <= opt.eigen_tol, "eigen_residual");
  check(spectral.max_orthonormality_residual <= opt.eigen_tol, "orthonormality_residual");
  check(spectral.eigenvalues.front() <= opt.eigen_tol, "lambda1_zero");
  check(spectral.zero_eigenvalue_multiplicity(opt.eigen_tol) == component_count(g),
        "zero_multiplicity_equals_components");

  const std::uint32_t t =
      opt.t > 0 ? opt.t
                : static_cast<std::uint32_t>(std::ceil(
                      std::log(static_cast<double>(n)) / (opt.phi * opt.phi)));
  {
    const Vertex probe = static_cast<Vertex>(n / 2);
    const auto facts = verify_spectral_facts(g, spectral, probe, std::min<std::uint32_t>(t, 64));
    rec["facts"] = {{"indicator", facts.indicator_expansion},
                    {"row_norm", facts.row_norm},
                    {"walk_max_diff", facts.walk_max_diff}};
    check(facts.indicator_expansion <= opt.eigen_tol, "fact_indicator_expansion");
    check(facts.row_norm <= opt.eigen_tol, "fact_row_norm");
    check(facts.walk_max_diff <= opt.eigen_tol, "fact_walk_eigendecomposition");
  }
  {
    const auto cheeger = cheeger_check(g);
    rec["cheeger"] = {{"lambda2", cheeger.lambda2},
                      {"phi", cheeger.phi},
                      {"exact", cheeger.exact_phi},
                      {"holds", cheeger.holds}};
    check(cheeger.holds, "cheeger_sandwich");
  }
  if (n >= 2) {
    const auto sweep = sweep_cut(g);
    const double bound = std::sqrt(std::max(0.0, 2.0 * sweep.lambda2));
    rec["sweep"] = {{"phi", sweep.phi.value()}, {"bound", bound}};
    check(sweep.phi.value() <= bound + 1e-10, "sweep_within_cheeger_bound");
  }
  if (n <= kRhoBruteForceCap) {
    json rho = json::array();
    for (unsigned k = 2; k <= 3 && k <= n; ++k) {
      const double value = rho_k_bruteforce(g, k).value();
      rho.push_back({{"k", k}, {"rho", value}});
      check(spectral.eigenvalues[k - 1] / 2.0 <= value + 1e-10,
            "higher_order_cheeger_k" + std::to_string(k));
    }
    rec["rho_k"] = rho;
  }

  if (!inst.parts.empty()) {
    const auto phi_outs = inst.phi_outs();
    const auto gap = eigengap_report(spectral, phi_outs);
    rec["eigengap"] = {{"h", gap.h},
                       {"lambda_h", gap.lambda_h},
                       {"lambda_h_plus_1", gap.lambda_h_plus_1},
                       {"gap_ratio", gap.gap_ratio},
                       {"max_phi_out", gap.max_phi_out},
                       {"holds", gap.holds}};
    check(gap.holds, "eigenvalue_bound");

    json spreads = json::array();
    for (std::size_t p = 0; p < inst.parts.size(); ++p) {
      const double phi_out = phi_outs[p].value();
      double bound = 0.0;
      if (phi_out > 0.0) {
        const auto sub = induced_subgraph(g, inst.parts[p]);
        const double phi_in_lb = eigensolve(sub.graph).eigenvalues[1] / 2.0;
        const double d = g.degree_bound();
        bound = 8.0 * d * d * d * d * phi_out / (phi_in_lb * phi_in_lb);
      }
      for (std::size_t i = 0; i < inst.parts.size(); ++i) {
        const double spread = eigenvector_spread(spectral, inst.parts[p], i);
        if (phi_out == 0.0) {
          check(spread <= 1e-8, "spread_zero_cut");
          spreads.push_back({{"part", p}, {"i", i}, {"spread", spread}});
        } else {
          spreads.push_back(
              {{"part", p}, {"i", i}, {"spread", spread}, {"bound", bound}});
          check(spread <= bound + 1e-10, "spread_bound");
        }
      }
    }
    rec["spread"] = spreads;

    if (inst.design.kind == "dumbbell" && inst.parts.size() == 2) {
      const double d = g.degree_bound();
      const double phi_out = phi_outs[0].value();
      const double pot_a = eigenvector_spread(spectral, inst.parts[0], 1) /
                           static_cast<double>(inst.parts[0].size());
      const double pot_b = eigenvector_spread(spectral, inst.parts[1], 1) /
                           static_cast<double>(inst.parts[1].size());
      const double bound = phi_out / (24.0 * d * d * d);
      rec["dumbbell_potential"] = {{"max_pot", std::max(pot_a, pot_b)}, {"bound", bound}};
      check(std::max(pot_a, pot_b) >= bound, "dumbbell_potential_floor");
    }

    if (n <= kExactDistributionCap) {
      AuditConfig acfg;
      acfg.alpha = opt.alpha;
      acfg.alpha_cross = opt.alpha_cross;
      const auto audit = within_cluster_distance_audit(g, inst.parts, phi_outs, t, acfg);
      rec["distance_audit"] = json::parse(audit_to_json(audit));
    }
  }
  return outcome;
}

int run_verify(const VerifyOptions& opt) {
  if (!fs::is_directory(opt.corpus)) {
    throw InputError("verify: corpus directory not found: " + opt.corpus);
  }
  std::vector<std::string> prefixes;
  for (const auto& entry : fs::directory_iterator(opt.corpus)) {
    if (entry.path().extension() == ".json") {
      prefixes.push_back(entry.path().parent_path() / entry.path().stem());
    }
  }
  std::sort(prefixes.begin(), prefixes.end());
  std::ofstream file;
  std::ostream& out = open_output(file, opt.out);
  if (prefixes.empty()) {
    std::cerr << "warning: empty corpus, nothing verified\n";
    return kExitOk;
  }
  bool any_failed = false;
  for (const auto& prefix : prefixes) {
    json rec;
    std::vector<std::string> failures;
    try {
      auto outcome = verify_instance(prefix, opt);
      rec = std::move(outcome.record);
      failures = std::move(outcome.failures);
    } catch (const CapacityError& e) {
      rec["instance"] = prefix;
      rec["skipped"] = e.what();
    } catch (const std::exception& e) {
      rec["instance"] = prefix;
      failures.push_back(std::string("load: ") + e.what());
    }
    rec["failed_invariants"] = failures;
    rec["ok"] = failures.empty();
    out << rec.dump() << '\n';
    if (!failures.empty()) {
      any_failed = true;
      std::cerr << "FAIL " << prefix << ":";
      for (const auto& f : failures) std::cerr << ' ' << f;
      std::cerr << '\n';
    }
  }
  return any_failed ? kExitInvariantFailure : kExitOk;
}

struct CalibrateOptions {
  std::string corpus;
  std::uint64_t trials = 25;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string mode = "practical";
  double phi = 0.3;
  double epsilon = 0.5;
  std::vector<double> grid_c_s{1.0, 2.0};
  std::vector<double> grid_c_r{0.5, 1.0, 2.0};
  double c_sigma = 8.0;
  double c_ell = 1.0;
  double target = 0.9;
  std::uint64_t max_s = 2000;
  double max_cost = 5e9;
  std::string out;
};

int run_calibrate(const CalibrateOptions& opt) {
  if (!fs::is_directory(opt.corpus)) {
    throw InputError("calibrate: corpus directory not found: " + opt.corpus);
  }
  struct Entry {
    ClusterInstance inst;
    unsigned k = 0;
    bool expect_accept = false;
    std::string prefix;
  };
  std::vector<Entry> corpus;
  for (const auto& entry : fs::directory_iterator(opt.corpus)) {
    if (entry.path().extension() != ".json") continue;
    const std::string prefix = entry.path().parent_path() / entry.path().stem();
    ClusterInstance inst = load_instance(prefix);
    if (inst.parts.empty()) continue;
    Entry e;
    e.k = inst.design.kind == "disjoint" ? inst.design.k - 1 : inst.design.k;
    e.expect_accept = inst.design.kind != "disjoint";
    e.prefix = prefix;
    e.inst = std::move(inst);
    corpus.push_back(std::move(e));
  }
  if (corpus.empty()) throw InputError("calibrate: no instances with planted parts");
  std::sort(corpus.begin(), corpus.end(),
            [](const Entry& a, const Entry& b) { return a.prefix < b.prefix; });

  struct Cell {
    TestConstants constants;
    bool feasible = true;
    std::string infeasible_reason;
    double min_accept = 1.0, min_reject = 1.0;
    double cost = 0.0;
    bool passes = false;
  };
  std::vector<Cell> cells;
  for (double c_s : opt.grid_c_s) {
    for (double c_r : opt.grid_c_r) {
      Cell cell;
      cell.constants.c_s = c_s;
      cell.constants.c_r = c_r;
      cell.constants.c_sigma = opt.c_sigma;
      cell.constants.c_ell = opt.c_ell;
      cells.push_back(cell);
    }
  }

  std::ofstream file;
  std::ostream& out = open_output(file, opt.out);
  std::optional<std::size_t> best;
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    Cell& cell = cells[ci];
    // Feasibility: walk-step cost per trial, summed over the corpus.
    for (const auto& entry : corpus) {
      TestParams p;
      if (opt.mode == "theory") {
        p = theory_params(entry.inst.graph.vertex_count(), entry.inst.graph.degree_bound(),
                          entry.k, opt.epsilon, opt.phi, cell.constants);
      } else {
        p = practical_params(entry.inst.graph.vertex_count(),
                             entry.inst.graph.degree_bound(), entry.k, opt.epsilon,
                             opt.phi, cell.constants);
      }
      if (p.s > opt.max_s) {
        cell.feasible = false;
        cell.infeasible_reason =
            "s=" + std::to_string(p.s) + " exceeds practical budget " +
            std::to_string(opt.max_s);
        break;
      }
      const double cost = static_cast<double>(p.s) *
                          static_cast<double>(p.batches() + 1) *
                          static_cast<double>(p.r) * static_cast<double>(p.ell);
      cell.cost += cost;
      if (cell.cost > opt.max_cost) {
        cell.feasible = false;
        cell.infeasible_reason = "walk-step cost exceeds budget";
        break;
      }
    }
    if (cell.feasible) {
      for (const auto& entry : corpus) {
        const TestParams p = practical_params(
            entry.inst.graph.vertex_count(), entry.inst.graph.degree_bound(), entry.k,
            opt.epsilon, opt.phi, cell.constants);
        std::vector<char> accepted(opt.trials, 0);
        parallel_for(opt.trials, opt.threads, [&](std::size_t trial) {
          const std::uint64_t trial_seed =
              Rng::stream_key(opt.seed, rng_purpose::kTrial, trial, ci);
          accepted[trial] =
              k_cluster_test(entry.inst.graph, p, trial_seed, 1).verdict ==
              Verdict::accept;
        });
        const double rate =
            static_cast<double>(std::count(accepted.begin(), accepted.end(), 1)) /
            static_cast<double>(opt.trials);
        if (entry.expect_accept) {
          cell.min_accept = std::min(cell.min_accept, rate);
        } else {
          cell.min_reject = std::min(cell.min_reject, 1.0 - rate);
        }
      }
      cell.passes = cell.min_accept >= opt.target && cell.min_reject >= opt.target;
      if (cell.passes && (!best || cell.cost < cells[*best].cost)) best = ci;
    }
    json rec = {{"c_s", cell.constants.c_s},
                {"c_r", cell.constants.c_r},
                {"c_sigma", cell.constants.c_sigma},
                {"c_ell", cell.constants.c_ell},
                {"feasible", cell.feasible},
                {"cost", cell.cost},
                {"passes", cell.passes}};
    if (!cell.feasible) {
      rec["infeasible_reason"] = cell.infeasible_reason;
    } else {
      rec["min_accept_rate"] = cell.min_accept;
      rec["min_reject_rate"] = cell.min_reject;
    }
    out << rec.dump() << '\n';
  }

  const std::size_t chosen =
      best ? *best
           : std::distance(cells.begin(),
                           std::max_element(cells.begin(), cells.end(),
                                            [](const Cell& a, const Cell& b) {
                                              return std::min(a.min_accept, a.min_reject) <
                                                     std::min(b.min_accept, b.min_reject);
                                            }));
  const Cell& pick = cells[chosen];
  std::ofstream defaults("calibrated.cfg");
  defaults << "c_s=" << pick.constants.c_s << "\nc_ell=" << pick.constants.c_ell
           << "\nc_r=" << pick.constants.c_r << "\nc_sigma=" << pick.constants.c_sigma
           << "\n";
  std::cerr << (best ? "calibrated" : "no setting met targets; best-found") << ": c_s="
            << pick.constants.c_s << " c_r=" << pick.constants.c_r << " -> calibrated.cfg\n";
  return best ? kExitOk : kExitInvariantFailure;
}

struct SpectraOptions {
  std::string instance;
  bool full = false;
  std::string out;
};

int run_spectra(const SpectraOptions& opt) {
  const ClusterInstance inst = load_instance(opt.instance);
  const SpectralReport report = eigensolve(inst.graph);
  std::ofstream file;
  std::ostream& out = open_output(file, opt.out);
  if (opt.full) {
    json body = json::parse(spectral_summary_to_json(report));
    body["eigenvalues"] = report.eigenvalues;
    out << body.dump() << '\n';
  } else {
    out << spectral_summary_to_json(report) << '\n';
  }
  return kExitOk;
}

struct BenchOptions {
  std::vector<std::size_t> sizes{1000, 10000, 100000};
  unsigned k = 2;
  double phi = 0.3;
  double epsilon = 0.5;
  std::uint64_t seed = 1;
  std::uint64_t trials = 1;
  unsigned threads = 0;
  TestConstants constants;
  std::string out;
};

int run_bench(const BenchOptions& opt) {
  std::ofstream file;
  std::ostream& out = open_output(file, opt.out);
  std::vector<double> log_n, log_q;
  for (std::size_t n : opt.sizes) {
    const std::size_t half = n / 2;
    ExpanderConfig cfg;
    cfg.certify = n <= 20000;  // power-method certification on the largest sizes is slow
    const ClusterInstance inst =
        planted_clusterable({half, n - half}, 8, 10, opt.seed, cfg);
    const TestParams params =
        practical_params(inst.graph.vertex_count(), inst.graph.degree_bound(), opt.k,
                         opt.epsilon, opt.phi, opt.constants);
    std::vector<RunReport> reports(opt.trials);
    parallel_for(opt.trials, opt.threads, [&](std::size_t trial) {
      const std::uint64_t trial_seed =
          Rng::stream_key(opt.seed, rng_purpose::kTrial, trial, n);
      reports[trial] = k_cluster_test(inst.graph, params, trial_seed, 1);
    });
    double mean_queries = 0, mean_wall = 0;
    for (const auto& r : reports) {
      mean_queries += static_cast<double>(r.query_count);
      mean_wall += r.wall_ms;
    }
    mean_queries /= static_cast<double>(opt.trials);
    mean_wall /= static_cast<double>(opt.trials);
    json rec = {{"n", n},
                {"queries", mean_queries},
                {"wall_ms", mean_wall},
                {"s", params.s},
                {"r", params.r},
                {"ell", params.ell}};
    out << rec.dump() << '\n';
    log_n.push_back(std::log(static_cast<double>(n)));
    log_q.push_back(std::log(mean_queries));
  }
  // Least-squares slope of log(queries) against log(n).
  const double count = static_cast<double>(log_n.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < log_n.size(); ++i) {
    sx += log_n[i];
    sy += log_q[i];
    sxx += log_n[i] * log_n[i];
    sxy += log_n[i] * log_q[i];
  }
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  json summary = {{"slope", slope}};
  out << summary.dump() << '\n';
  return kExitOk;
}

void add_constant_flags(CLI::App* cmd, TestConstants& constants) {
  cmd->add_option("--c_s", constants.c_s, "sample-count constant");
  cmd->add_option("--c_ell", constants.c_ell, "walk-length constant");
  cmd->add_option("--c_r", constants.c_r, "per-batch sample constant");
  cmd->add_option("--c_sigma", constants.c_sigma, "norm-screen constant");
  cmd->add_option("--closeness_c", constants.closeness_c, "closeness tester constant");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clustertest: sublinear graph-clusterability tester and exact oracles"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  GenOptions gen;
  auto* cmd_gen = app.add_subcommand("gen", "generate a benchmark instance");
  cmd_gen->add_option("--kind", gen.kind,
                      "planted|disjoint|dumbbell|expander|path|cycle|grid")
      ->required();
  cmd_gen->add_option("--sizes", gen.sizes, "planted part sizes")->delimiter(',');
  cmd_gen->add_option("--n", gen.n, "vertex count (expander/path/cycle/grid)");
  cmd_gen->add_option("--size", gen.size, "per-part size (disjoint)");
  cmd_gen->add_option("--half", gen.half, "half size (dumbbell)");
  cmd_gen->add_option("--parts", gen.parts, "part count (disjoint)");
  cmd_gen->add_option("--d", gen.d, "degree bound");
  cmd_gen->add_option("--cross-edges", gen.cross_edges, "cross edges (planted)");
  cmd_gen->add_option("--cut-edges", gen.cut_edges, "cut edges (dumbbell)");
  cmd_gen->add_option("--seed", gen.seed, "generator seed")->required();
  cmd_gen->add_option("--lambda2-floor", gen.lambda2_floor, "certification floor");
  cmd_gen->add_option("--out", gen.out, "output prefix")->required();

  TestOptions test;
  auto* cmd_test = app.add_subcommand("test", "run the k-cluster tester");
  cmd_test->set_config("--config", "", "key=value config file (flags win)");
  cmd_test->add_option("--instance", test.instance, "instance prefix")->required();
  cmd_test->add_option("--k", test.k, "cluster budget")->required();
  cmd_test->add_option("--phi", test.phi, "target inner conductance");
  cmd_test->add_option("--epsilon", test.epsilon, "distance parameter");
  cmd_test->add_option("--mode", test.mode, "theory|practical");
  cmd_test->add_flag("--oracle", test.oracle, "use exact-distribution oracle path");
  cmd_test->add_option("--trials", test.trials, "trial count");
  cmd_test->add_option("--seed", test.seed, "master seed")->required();
  cmd_test->add_option("--threads", test.threads, "worker pool size (0 = hardware)");
  cmd_test->add_option("--out", test.out, "output file (default stdout)");
  add_constant_flags(cmd_test, test.constants);

  VerifyOptions verify;
  auto* cmd_verify = app.add_subcommand("verify", "audit a corpus directory");
  cmd_verify->add_option("--corpus", verify.corpus, "corpus directory")->required();
  cmd_verify->add_option("--eigen-tol", verify.eigen_tol, "residual tolerance");
  cmd_verify->add_option("--t", verify.t, "audit walk length (0 = from phi)");
  cmd_verify->add_option("--phi", verify.phi, "phi used to derive t");
  cmd_verify->add_option("--alpha", verify.alpha, "audit alpha");
  cmd_verify->add_option("--alpha-cross", verify.alpha_cross, "cross-floor alpha");
  cmd_verify->add_option("--out", verify.out, "output file (default stdout)");

  CalibrateOptions calibrate;
  auto* cmd_calibrate =
      app.add_subcommand("calibrate", "sweep practical-mode constants over a corpus");
  cmd_calibrate->add_option("--corpus", calibrate.corpus, "corpus directory")->required();
  cmd_calibrate->add_option("--trials", calibrate.trials, "trials per cell and instance");
  cmd_calibrate->add_option("--seed", calibrate.seed, "master seed")->required();
  cmd_calibrate->add_option("--threads", calibrate.threads, "worker pool size");
  cmd_calibrate->add_option("--mode", calibrate.mode, "theory|practical");
  cmd_calibrate->add_option("--phi", calibrate.phi, "target inner conductance");
  cmd_calibrate->add_option("--epsilon", calibrate.epsilon, "distance parameter");
  cmd_calibrate->add_option("--grid-c-s", calibrate.grid_c_s, "c_s grid")->delimiter(',');
  cmd_calibrate->add_option("--grid-c-r", calibrate.grid_c_r, "c_r grid")->delimiter(',');
  cmd_calibrate->add_option("--c-sigma", calibrate.c_sigma, "fixed c_sigma");
  cmd_calibrate->add_option("--c-ell", calibrate.c_ell, "fixed c_ell");
  cmd_calibrate->add_option("--target", calibrate.target, "required accept/reject rate");
  cmd_calibrate->add_option("--max-s", calibrate.max_s, "practical budget on s");
  cmd_calibrate->add_option("--max-cost", calibrate.max_cost, "walk-step cost budget");
  cmd_calibrate->add_option("--out", calibrate.out, "output file (default stdout)");

  SpectraOptions spectra;
  auto* cmd_spectra = app.add_subcommand("spectra", "dump a spectral report");
  cmd_spectra->add_option("--instance", spectra.instance, "instance prefix")->required();
  cmd_spectra->add_flag("--full", spectra.full, "include the full spectrum");
  cmd_spectra->add_option("--out", spectra.out, "output file (default stdout)");

  BenchOptions bench;
  auto* cmd_bench = app.add_subcommand("bench", "query-count scaling across n");
  cmd_bench->add_option("--sizes", bench.sizes, "instance sizes")->delimiter(',');
  cmd_bench->add_option("--k", bench.k, "cluster budget");
  cmd_bench->add_option("--phi", bench.phi, "target inner conductance");
  cmd_bench->add_option("--epsilon", bench.epsilon, "distance parameter");
  cmd_bench->add_option("--seed", bench.seed, "master seed")->required();
  cmd_bench->add_option("--trials", bench.trials, "trials per size");
  cmd_bench->add_option("--threads", bench.threads, "worker pool size");
  cmd_bench->add_option("--out", bench.out, "output file (default stdout)");
  add_constant_flags(cmd_bench, bench.constants);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cmd_gen->parsed()) return run_gen(gen);
    if (cmd_test->parsed()) return run_test(test);
    if (cmd_verify->parsed()) return run_verify(verify);
    if (cmd_calibrate->parsed()) return run_calibrate(calibrate);
    if (cmd_spectra->parsed()) return run_spectra(spectra);
    if (cmd_bench->parsed()) return run_bench(bench);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return kExitInvariantFailure;
  }
  return kExitUsage;
}
