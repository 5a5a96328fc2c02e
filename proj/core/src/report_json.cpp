#include "clustertest/report_json.hpp"

#include <json.hpp>

#include "clustertest/version.hpp"

namespace clustertest {

using nlohmann::json;

namespace {

json verdict_json(const TesterVerdict& v) {
  return json{{"accepted", v.accepted},
              {"statistic", v.statistic},
              {"threshold", v.threshold},
              {"r", v.r}};
}

json params_json(const TestParams& p) {
  return json{{"n", p.n},
              {"d", p.d},
              {"k", p.k},
              {"epsilon", p.epsilon},
              {"phi", p.phi},
              {"s", p.s},
              {"ell", p.ell},
              {"sigma", p.sigma},
              {"r", p.r},
              {"xi", p.xi},
              {"delta", p.delta},
              {"batches", p.batches()},
              {"mode", p.mode == ParamMode::theory ? "theory" : "practical"},
              {"constants",
               {{"c_s", p.constants.c_s},
                {"c_ell", p.constants.c_ell},
                {"c_r", p.constants.c_r},
                {"c_sigma", p.constants.c_sigma},
                {"closeness_c", p.constants.closeness_c}}}};
}

json report_body(const RunReport& r) {
  json body;
  body["schema_version"] = kSchemaVersion;
  body["tool_version"] = kToolVersion;
  body["seed"] = r.seed;
  body["oracle"] = r.oracle;
  body["params"] = params_json(r.params);
  body["verdict"] = r.verdict == Verdict::accept ? "accept" : "reject";
  switch (r.reject_reason) {
    case RejectReason::none:
      body["reject_reason"] = "none";
      break;
    case RejectReason::norm_screen:
      body["reject_reason"] = "norm_screen";
      break;
    case RejectReason::components:
      body["reject_reason"] = "components";
      break;
  }
  body["component_count"] = r.component_count;
  body["query_count"] = r.query_count;
  body["samples"] = r.similarity.sample_vertices;
  json edges = json::array();
  for (const auto& [i, j] : r.similarity.edges) edges.push_back({i, j});
  body["edges"] = edges;
  json norms = json::array();
  for (const auto& nv : r.norm_verdicts) {
    json rec = verdict_json(nv.verdict);
    rec["slot"] = nv.slot;
    rec["vertex"] = nv.vertex;
    norms.push_back(rec);
  }
  body["norm_verdicts"] = norms;
  json pairs = json::array();
  for (const auto& pv : r.similarity.pair_verdicts) {
    json rec = verdict_json(pv.verdict);
    rec["i"] = pv.i;
    rec["j"] = pv.j;
    pairs.push_back(rec);
  }
  body["pair_verdicts"] = pairs;
  return body;
}

}  // namespace

std::string run_report_to_json(const RunReport& report, const std::string& instance,
                               std::uint64_t trial) {
  json body = report_body(report);
  body["instance"] = instance;
  body["trial"] = trial;
  body["wall_ms"] = report.wall_ms;
  return body.dump();
}

std::string run_report_replay_key(const RunReport& report) {
  return report_body(report).dump();
}

std::string audit_to_json(const DistanceAuditTable& table) {
  json body;
  body["t"] = table.t;
  body["xi"] = table.xi;
  json parts = json::array();
  for (const auto& p : table.parts) {
    parts.push_back({{"part", p.part},
                     {"pairs_checked", p.pairs_checked},
                     {"pairs_within_bound", p.pairs_within_bound},
                     {"ctilde_fraction", p.ctilde_fraction}});
  }
  body["parts"] = parts;
  json cross = json::array();
  for (const auto& c : table.cross) {
    cross.push_back({{"part_a", c.part_a},
                     {"part_b", c.part_b},
                     {"window_ok", c.window_ok},
                     {"pairs_checked", c.pairs_checked},
                     {"pairs_above_floor", c.pairs_above_floor},
                     {"ahat_fraction_a", c.ahat_fraction_a},
                     {"ahat_fraction_b", c.ahat_fraction_b}});
  }
  body["cross"] = cross;
  body["norms"] = {{"vertices_checked", table.norms.vertices_checked},
                   {"vertices_within_bound", table.norms.vertices_within_bound},
                   {"bound", table.norms.bound}};
  return body.dump();
}

std::string certificate_to_json(const PartitionCertificate& cert) {
  json body;
  json parts = json::array();
  for (std::size_t i = 0; i < cert.parts.size(); ++i) {
    parts.push_back({{"size", cert.parts[i].size()},
                     {"phi", {cert.phi[i].num, cert.phi[i].den}}});
  }
  body["parts"] = parts;
  body["min_part_size"] = cert.min_part_size;
  body["cut_edge_total"] = cert.cut_edge_total;
  body["size_floor"] = cert.size_floor;
  body["size_floor_ok"] = cert.size_floor_ok;
  body["max_phi"] = cert.max_phi;
  body["reached_k_plus_1"] = cert.reached_k_plus_1;
  return body.dump();
}

std::string spectral_summary_to_json(const SpectralReport& report,
                                     std::size_t max_eigenvalues) {
  json body;
  body["n"] = report.n;
  const std::size_t count = std::min(max_eigenvalues, report.eigenvalues.size());
  body["eigenvalues_head"] =
      std::vector<double>(report.eigenvalues.begin(),
                          report.eigenvalues.begin() + static_cast<std::ptrdiff_t>(count));
  body["max_eigen_residual"] = report.max_eigen_residual;
  body["max_orthonormality_residual"] = report.max_orthonormality_residual;
  body["zero_multiplicity"] = report.zero_eigenvalue_multiplicity();
  return body.dump();
}

}  // namespace clustertest
