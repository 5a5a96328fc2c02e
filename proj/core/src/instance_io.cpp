#include "clustertest/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "clustertest/errors.hpp"
#include "clustertest/version.hpp"

namespace clustertest {

using nlohmann::json;

void write_instance(const ClusterInstance& inst, const std::string& prefix) {
  save_edge_list(inst.graph, prefix + ".edges");
  json sidecar;
  sidecar["schema_version"] = kSchemaVersion;
  sidecar["tool_version"] = kToolVersion;
  sidecar["kind"] = inst.design.kind;
  sidecar["seed"] = inst.seed;
  sidecar["n"] = inst.graph.vertex_count();
  sidecar["d"] = inst.graph.degree_bound();
  json parts = json::array();
  for (const auto& part : inst.parts) {
    // Generators lay parts out contiguously; persist as [start, size].
    const auto& m = part.members();
    if (!m.empty() && m.back() - m.front() + 1 != m.size()) {
      throw InputError("write_instance: parts must be contiguous ranges");
    }
    parts.push_back({m.empty() ? 0 : m.front(), m.size()});
  }
  sidecar["parts"] = parts;
  json design;
  design["k"] = inst.design.k;
  design["part_degree"] = inst.design.part_degree;
  design["cross_edges"] = inst.design.cross_edges;
  design["lambda2_floor"] = inst.design.lambda2_floor;
  json per_part = json::array();
  for (const auto& pd : inst.design.per_part) {
    per_part.push_back({{"cross_degree", pd.cross_degree},
                        {"phi_out", {pd.phi_out.num, pd.phi_out.den}},
                        {"lambda2_in", pd.lambda2_in}});
  }
  design["per_part"] = per_part;
  sidecar["design"] = design;
  std::ofstream out(prefix + ".json");
  if (!out) throw InputError("cannot write sidecar: " + prefix + ".json");
  out << sidecar.dump() << '\n';
}

ClusterInstance load_instance(const std::string& prefix) {
  ClusterInstance inst;
  inst.graph = load_edge_list(prefix + ".edges");
  std::ifstream in(prefix + ".json");
  if (!in) throw InputError("cannot open sidecar: " + prefix + ".json");
  json sidecar;
  try {
    in >> sidecar;
  } catch (const json::exception& e) {
    throw InputError("sidecar parse error: " + std::string(e.what()));
  }
  if (sidecar.at("n").get<std::size_t>() != inst.graph.vertex_count() ||
      sidecar.at("d").get<std::uint32_t>() != inst.graph.degree_bound()) {
    throw InputError("sidecar/edge-list mismatch on n or d");
  }
  inst.seed = sidecar.at("seed").get<std::uint64_t>();
  const std::size_t n = inst.graph.vertex_count();
  for (const auto& range : sidecar.at("parts")) {
    const auto start = range.at(0).get<Vertex>();
    const auto size = range.at(1).get<std::size_t>();
    inst.parts.push_back(
        VertexSet::range(start, start + static_cast<Vertex>(size), n));
  }
  const auto& design = sidecar.at("design");
  inst.design.kind = sidecar.at("kind").get<std::string>();
  inst.design.k = design.at("k").get<unsigned>();
  inst.design.part_degree = design.at("part_degree").get<std::uint32_t>();
  inst.design.cross_edges = design.at("cross_edges").get<std::uint64_t>();
  inst.design.lambda2_floor = design.at("lambda2_floor").get<double>();
  for (const auto& pd : design.at("per_part")) {
    PartDesign out;
    out.cross_degree = pd.at("cross_degree").get<std::uint64_t>();
    out.phi_out = Rational(pd.at("phi_out").at(0).get<std::int64_t>(),
                           pd.at("phi_out").at(1).get<std::int64_t>());
    out.lambda2_in = pd.at("lambda2_in").get<double>();
    inst.design.per_part.push_back(out);
  }
  if (inst.design.per_part.size() != inst.parts.size()) {
    throw InputError("sidecar: per_part and parts sizes differ");
  }
  // Recorded conductances must equal an exact recount.
  for (std::size_t p = 0; p < inst.parts.size(); ++p) {
    const Rational recount = outer_conductance(inst.graph, inst.parts[p]);
    if (!(recount == inst.design.per_part[p].phi_out)) {
      throw InputError("sidecar invariant phi_out_recount failed for part " +
                       std::to_string(p));
    }
  }
  return inst;
}

ClusterInstance bare_instance(BoundedDegreeGraph g, const std::string& kind,
                              std::uint64_t seed) {
  ClusterInstance inst;
  inst.graph = std::move(g);
  inst.design.kind = kind;
  inst.seed = seed;
  return inst;
}

std::string instance_summary(const ClusterInstance& inst) {
  std::ostringstream os;
  os << inst.design.kind << " n=" << inst.graph.vertex_count()
     << " d=" << inst.graph.degree_bound() << " m=" << inst.graph.edge_count()
     << " parts=" << inst.parts.size() << " seed=" << inst.seed;
  for (const auto& pd : inst.design.per_part) {
    os << " phi_out=" << pd.phi_out.num << "/" << pd.phi_out.den;
  }
  return os.str();
}

}  // namespace clustertest
