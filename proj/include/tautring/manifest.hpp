#pragma once

#include "tautring/config.hpp"
#include "tautring/fano.hpp"
#include "tautring/report.hpp"

#include <functional>
#include <string>
#include <vector>

namespace tautring {

/// One block of the verification manifest. Entries of a group share the id
/// prefix `name` + ".". Groups that need the Fujiki model of F are skipped when
/// fujiki.consistency fails.
struct ManifestGroup {
  std::string name;
  bool needs_fano_model = false;
  std::function<std::vector<ReportEntry>()> run;
};

/// The manifest in execution order for a configuration and relation data.
std::vector<ManifestGroup> manifest_groups(const Config& config, const RelationData& data);

struct ManifestOptions {
  std::string only;  // id prefix filter, empty = everything
  int jobs = 1;      // groups run concurrently up to this bound
  bool timing = true;
};

/// Runs the (filtered) manifest. Entry order follows the manifest regardless of
/// completion order.
VerificationReport run_manifest(const Config& config, const RelationData& data = RelationData::defaults(),
                                const ManifestOptions& options = {});

/// Whether an entry id is selected by an --only filter: equal to it, or it
/// continues with '.'.
bool matches_filter(const std::string& id, const std::string& only);

}  // namespace tautring
