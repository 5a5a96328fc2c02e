#pragma once

#include <string>

#include "clustertest/cluster_test.hpp"
#include "clustertest/farness.hpp"
#include "clustertest/spectral.hpp"

namespace clustertest {

// One JSON-lines record per trial. Every record embeds the tool version,
// the fully resolved params and the master seed, so it can be replayed.
std::string run_report_to_json(const RunReport& report, const std::string& instance,
                               std::uint64_t trial);

// The record minus wall-clock fields; replaying a seed+config must reproduce
// this string bit-exactly.
std::string run_report_replay_key(const RunReport& report);

std::string audit_to_json(const DistanceAuditTable& table);
std::string certificate_to_json(const PartitionCertificate& cert);
std::string spectral_summary_to_json(const SpectralReport& report,
                                     std::size_t max_eigenvalues = 16);

}  // namespace clustertest
