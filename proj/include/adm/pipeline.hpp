#pragma once

#include "adm/grid.hpp"
#include "adm/manifest.hpp"

#include <filesystem>
#include <vector>

// Experiment drivers behind the command-line front end. Each writes its outputs
// under the manifest's output directory and returns the files it wrote.
namespace adm {

ConductiveMatrix load_network(const RunManifest& m);
std::vector<Electrode> load_manifest_electrodes(const RunManifest& m, const Dims& dims);

using Written = std::vector<std::filesystem::path>;

Written cmd_simulate(const RunManifest& m, unsigned threads);
Written cmd_mine_gates(const RunManifest& m, unsigned threads);
Written cmd_sweep(const RunManifest& m, unsigned threads);
Written cmd_machine(const RunManifest& m, unsigned threads);

/// Reads an `input,state` CSV (comment lines start with '#') into a total snapshot function.
std::vector<std::uint32_t> load_snapshot_function(const std::filesystem::path& path, unsigned k);

} // namespace adm
