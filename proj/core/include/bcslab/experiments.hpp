#pragma once

#include "bcslab/node.hpp"
#include "bcslab/synthesis_types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace bcslab {

/// Config-driven experiment runner. Each experiment id reproduces the
/// numerical shadow of one group of results and writes CSV/JSON artifacts
/// plus a manifest into its output directory.

struct ExperimentConfig {
    std::string id;
    uint64_t seed = 1;
    std::string output_dir;
    std::map<std::string, std::string> values;  // dotted keys, e.g. "model.grid_points"

    [[nodiscard]] bool has(const std::string& key) const { return values.count(key) > 0; }
    [[nodiscard]] Real get_real(const std::string& key, Real fallback) const;
    [[nodiscard]] Index get_index(const std::string& key, Index fallback) const;
    [[nodiscard]] std::string get_string(const std::string& key, const std::string& fallback) const;
};

[[nodiscard]] ExperimentConfig parse_config_file(const std::string& path);
[[nodiscard]] ExperimentConfig parse_config(std::istream& is);
[[nodiscard]] ExperimentConfig default_config(const std::string& id, const std::string& output_dir);

[[nodiscard]] const std::vector<std::string>& known_experiment_ids();

struct CheckResult {
    std::string name;
    bool pass = false;
    Real value = 0;
    std::string detail;
};

struct RunManifest {
    std::string id;
    std::string config_hash;
    std::string version;
    std::vector<std::string> artifacts;
    std::vector<CheckResult> checks;

    [[nodiscard]] bool pass() const;
};

[[nodiscard]] RunManifest run_experiment(const ExperimentConfig& cfg);

/// Runs every experiment id with pinned default configs under `out_root`
/// and writes an aggregate manifest. Returns the aggregate.
[[nodiscard]] RunManifest reproduce_all(const std::string& out_root);

/// Deterministic random boundary nodes and gains for the operator-identity
/// suites and property tests.
struct RandomNodeOptions {
    Index min_dim = 4;
    Index max_dim = 12;
    Index max_boundary = 3;
    Index max_input = 3;
    Index max_output = 3;
    bool allow_no_boundary = true;
    Index force_input = -1;   // >= 0 pins the input dimension
    Index force_output = -1;  // >= 0 pins the output dimension
};

[[nodiscard]] DiscreteBoundaryNode make_random_node(uint64_t seed,
                                                    const RandomNodeOptions& opts = {});
[[nodiscard]] GainSet make_random_gains(const DiscreteBoundaryNode& node, uint64_t seed,
                                        Real scale = 0.3);

/// FNV-1a 64-bit hex digest (used for config hashes).
[[nodiscard]] std::string fnv1a_hex(const std::string& data);

/// Writes rows of doubles as CSV with exact (%.17g) formatting.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<Real>>& rows);

}  // namespace bcslab
