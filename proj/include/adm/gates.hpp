#pragma once

#include "adm/automaton.hpp"
#include "adm/electrodes.hpp"
#include "adm/grid.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace adm {

/// Outputs of a two-input gate for (x,y) = (0,0), (0,1), (1,0), (1,1).
struct GateQuad {
    bool z00 = false;
    bool z01 = false;
    bool z10 = false;
    bool z11 = false;

    /// z00 is the most significant bit: (1,0,0,0) -> 0b1000.
    std::uint8_t code() const noexcept {
        return static_cast<std::uint8_t>((z00 ? 8 : 0) | (z01 ? 4 : 0) | (z10 ? 2 : 0) | (z11 ? 1 : 0));
    }
    static GateQuad from_code(std::uint8_t code) noexcept {
        return GateQuad{(code & 8) != 0, (code & 4) != 0, (code & 2) != 0, (code & 1) != 0};
    }
};

enum class GateType : std::uint8_t {
    Zero,
    Or,
    And,
    Xor,
    NotAnd,  ///< !x & y
    AndNot,  ///< x & !y
    SelectX, ///< x
    SelectY, ///< y
    Other,
};

/// Gate types that are counted in a census, in column order.
inline constexpr std::array<GateType, 7> kCountedGates = {GateType::Or,      GateType::And,     GateType::Xor,
                                                          GateType::NotAnd,  GateType::AndNot,  GateType::SelectX,
                                                          GateType::SelectY};

struct GateClass {
    GateType type = GateType::Zero;
    std::uint8_t code = 0; ///< truth-table code, meaningful for every type

    bool operator==(const GateClass&) const = default;
};

GateClass classify(const GateQuad& q) noexcept;
bool is_counted(GateType t) noexcept;
/// Column label: OR, AND, XOR, NOTAND, ANDNOT, SELX, SELY, ZERO, OTHER.
std::string_view gate_label(GateType t) noexcept;

struct GateCensus {
    /// counts[e][g] for output electrode e and kCountedGates[g].
    std::vector<std::array<std::uint64_t, kCountedGates.size()>> counts;

    std::array<std::uint64_t, kCountedGates.size()> totals() const;
    std::uint64_t total() const;
    /// Average number of counted gates per output electrode.
    double nu() const;
};

struct GateMining {
    /// slots[e][t-1]: gate realised on output electrode e at step t.
    std::vector<std::vector<GateClass>> slots;
    GateCensus census;
};

struct MiningOptions {
    /// Count each gate type at most once per electrode instead of once per (electrode, step).
    bool dedupe_per_electrode = false;
    unsigned threads = 1;
};

/// Runs the four input trials and classifies every (output electrode, step) slot.
GateMining mine(const ConductiveMatrix& matrix, const AutomatonParams& params, const RecordingParams& rec,
                const Electrode& in_x, const Electrode& in_y, std::span<const Electrode> outputs,
                const MiningOptions& options = {});

/// Census from slot classifications.
GateCensus census_from_slots(const std::vector<std::vector<GateClass>>& slots, bool dedupe_per_electrode);

struct SweepRow {
    int param = 0;
    std::array<std::uint64_t, kCountedGates.size()> counts{};
    double nu = 0.0;
};

/// Varies theta with delta (and r) taken from `base`.
std::vector<SweepRow> sweep_theta(const ConductiveMatrix& matrix, std::span<const int> thetas,
                                  const AutomatonParams& base, const RecordingParams& rec, const Electrode& in_x,
                                  const Electrode& in_y, std::span<const Electrode> outputs,
                                  const MiningOptions& options = {});
/// Varies delta with theta (and r) taken from `base`.
std::vector<SweepRow> sweep_delta(const ConductiveMatrix& matrix, std::span<const int> deltas,
                                  const AutomatonParams& base, const RecordingParams& rec, const Electrode& in_x,
                                  const Electrode& in_y, std::span<const Electrode> outputs,
                                  const MiningOptions& options = {});

/// Default grids: theta in 4..12 at delta=20, and delta in {10,15,17,...,24,30} at theta=7.
std::vector<int> default_theta_grid();
std::vector<int> default_delta_grid();

} // namespace adm
