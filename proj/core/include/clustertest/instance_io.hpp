#pragma once

#include <string>

#include "clustertest/generators.hpp"

namespace clustertest {

// Persists an instance as <prefix>.edges (edge-list format) plus
// <prefix>.json (parts, design record, seed), so experiments replay.
void write_instance(const ClusterInstance& inst, const std::string& prefix);

// Loads both files and revalidates: graph invariants via the edge-list
// loader, plus each recorded phi_out against an exact recount.
ClusterInstance load_instance(const std::string& prefix);

// Wraps a bare graph (no parts) for persistence alongside real instances.
ClusterInstance bare_instance(BoundedDegreeGraph g, const std::string& kind,
                              std::uint64_t seed);

std::string instance_summary(const ClusterInstance& inst);

}  // namespace clustertest
