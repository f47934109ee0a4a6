#pragma once

#include "adm/automaton.hpp"
#include "adm/grid.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace adm {

struct Electrode {
    int id = 0;
    Coord pos;
    int radius = 4; ///< read/stimulation aperture, strict: d(pos, voxel) < radius
};

/// Electrode config text: a `RADIUS <r>` header, then one `<id> <i> <j> <z>` line per
/// electrode. Blank lines and `#` comments are ignored.
std::vector<Electrode> parse_electrodes(std::string_view text);
std::vector<Electrode> load_electrodes(const std::filesystem::path& path);
std::string format_electrodes(std::span<const Electrode> electrodes);

/// Throws CoordinateError for an electrode outside `dims`, ParameterError for a radius < 1.
void validate_electrodes(const Dims& dims, std::span<const Electrode> electrodes);

/// Spreads `count` electrodes over conductive voxels by farthest-point sampling,
/// starting from a seeded random conductive voxel.
std::vector<Electrode> place_electrodes(const ConductiveMatrix& matrix, int count, int radius, std::uint64_t seed);

/// Fixed-length binary string. Element 0 is the leftmost character and the most
/// significant bit of the decimal encoding.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::vector<std::uint8_t> bits);

    static BitString from_value(std::uint32_t value, std::size_t length);
    /// Parses a string of '0'/'1' characters.
    static BitString from_text(std::string_view text);

    std::size_t size() const noexcept { return bits_.size(); }
    bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
    std::uint32_t value() const noexcept;
    std::string text() const;
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }

    bool operator==(const BitString&) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

/// Machine state value of a column of spikes: Σ spike_i · 2^(k-1-i).
std::uint32_t encode_state(std::span<const std::uint8_t> spikes);

enum class SpikeDetector {
    Level,      ///< spike whenever the potential is at or above the threshold
    RisingEdge, ///< spike only on an upward crossing; the potential before t=1 counts as 0
};

struct RecordingParams {
    int spike_threshold = 1;
    int steps = 1000; ///< run length T
    SpikeDetector detector = SpikeDetector::Level;

    void validate() const;
};

/// Spike decision for one sample; `previous` is the potential one step earlier (0 before t=1).
bool is_spike(const RecordingParams& rec, std::uint32_t previous, std::uint32_t current) noexcept;

/// Number of excited voxels inside the electrode aperture.
std::size_t potential(const AutomatonField& field, const Electrode& e);

/// Excites the aperture of every electrode whose bit is 1.
void stimulate(AutomatonField& field, std::span<const Electrode> electrodes, const BitString& bits);

/// Recorded response of one stimulation. Rows are electrodes, column t-1 holds step t.
struct TrialResult {
    std::vector<std::vector<std::uint32_t>> potentials;
    std::vector<std::vector<std::uint8_t>> spikes;
    std::vector<std::uint32_t> states; ///< per-step machine state (recorders ≤ 32)
};

/// Stimulates `stimulus` with `bits` on an all-resting field at t=0, then runs
/// `rec.steps` steps and records every electrode of `recorders` after each step.
TrialResult run_trial(const ConductiveMatrix& matrix, const AutomatonParams& params, const RecordingParams& rec,
                      std::span<const Electrode> stimulus, const BitString& bits,
                      std::span<const Electrode> recorders, unsigned threads = 1);

/// Same electrodes stimulate and record.
TrialResult run_trial(const ConductiveMatrix& matrix, const AutomatonParams& params, const RecordingParams& rec,
                      std::span<const Electrode> electrodes, const BitString& bits, unsigned threads = 1);

} // namespace adm
