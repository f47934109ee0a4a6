#pragma once

#include "adm/automaton.hpp"
#include "adm/electrodes.hpp"
#include "adm/errors.hpp"
#include "adm/grid.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace adm {

/// Invalid manifest content. `field()` names the offending key path.
class ManifestError : public Error {
public:
    ManifestError(const std::string& field, const std::string& what)
        : Error("manifest field '" + field + "': " + what), field_(field) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

enum class NetworkKind { ImageStack, Raw, Synthetic };

struct NetworkSource {
    NetworkKind kind = NetworkKind::Synthetic;
    std::filesystem::path path; ///< image directory or raw matrix file
    RgbThreshold threshold{};
    SyntheticNetworkSpec synthetic{};
};

/// Everything that determines an experiment's outputs. Relative paths resolve
/// against `base_dir` (the manifest file's directory, or the working directory).
struct RunManifest {
    NetworkSource network;
    AutomatonParams params{3, 7, 20};
    RecordingParams rec{};
    std::optional<int> electrode_radius; ///< overrides the electrode file's RADIUS
    std::filesystem::path electrodes;
    std::filesystem::path output_dir{"out"};

    struct Simulate {
        std::string input;                 ///< bit string over all electrodes; empty = all zero
        std::vector<int> snapshot_steps;
        std::vector<int> snapshot_slices;  ///< empty = middle slice
        bool color = false;
    } simulate;

    struct Gates {
        int input_x = 0;
        int input_y = 9;
        std::vector<int> outputs;          ///< empty = every other electrode
        bool dedupe_per_electrode = false;
    } gates;

    struct Sweep {
        std::string axis = "theta";        ///< "theta" or "delta"
        std::vector<int> values;           ///< empty = default grid for the axis
    } sweep;

    struct Machine {
        std::optional<int> g_at;           ///< response moment for g(t) and DNF output
        bool per_input_graphs = false;
    } machine;

    std::filesystem::path base_dir;        ///< not serialized

    std::filesystem::path resolve(const std::filesystem::path& p) const;
};

nlohmann::json to_json(const RunManifest& m);
/// Throws ManifestError naming the first invalid or unknown field.
RunManifest manifest_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
RunManifest load_manifest(const std::filesystem::path& path);

/// FNV-1a over the canonical JSON with `output_dir` removed, as 16 hex digits.
std::string manifest_hash(const RunManifest& m);

} // namespace adm
