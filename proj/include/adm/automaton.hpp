#pragma once

#include "adm/grid.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace adm {

enum class VoxelState : std::uint8_t {
    NonConductive = 0,
    Resting = 1,
    Excited = 2,
    Refractory = 3,
};

struct AutomatonParams {
    int r = 3;      ///< neighbourhood radius (Euclidean, inclusive)
    int theta = 7;  ///< a resting voxel fires when strictly more neighbours than this are excited
    int delta = 20; ///< refractory countdown loaded on leaving the excited state

    /// Throws ParameterError unless r >= 1, theta >= 1, 0 <= delta <= 65535.
    void validate() const;
};

struct Offset {
    int di = 0;
    int dj = 0;
    int dz = 0;
};

/// Nonzero lattice offsets with di^2 + dj^2 + dz^2 <= r^2, ordered by (dz, dj, di).
std::vector<Offset> neighborhood_offsets(int r);

/// Pixel values of snapshot rasters.
namespace snapshot_value {
inline constexpr std::uint8_t kNonConductive = 0;
inline constexpr std::uint8_t kResting = 64;
inline constexpr std::uint8_t kExcited = 255;
inline constexpr std::uint8_t kRefractory = 128;
} // namespace snapshot_value

/// Single-slice class map, x-fastest rows of length width.
struct Raster {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;
};

/// Excitable-medium state over a conductive matrix, advanced synchronously.
///
/// The grid is stored with a non-conductive halo of width r so neighbour loops need
/// no bounds checks. Only excited and refractory voxels are tracked explicitly; a
/// step scatters counts from the excited set into resting neighbours, which gives
/// the same result as sweeping every voxel.
class AutomatonField {
public:
    AutomatonField(const ConductiveMatrix& matrix, AutomatonParams params);

    const Dims& dims() const noexcept { return dims_; }
    const AutomatonParams& params() const noexcept { return params_; }
    std::uint64_t time() const noexcept { return t_; }

    VoxelState state(const Coord& c) const;
    /// Refractory countdown; 0 for any voxel that is not refractory.
    int countdown(const Coord& c) const;

    std::size_t excited_count() const noexcept { return excited_.size(); }
    std::size_t refractory_count() const noexcept { return refractory_.size(); }
    /// Excited voxels in ascending storage order.
    std::vector<Coord> excited_voxels() const;

    /// Worker threads used by step(). Results do not depend on this value.
    void set_threads(unsigned threads) noexcept { threads_ = threads == 0 ? 1 : threads; }
    unsigned threads() const noexcept { return threads_; }

    void step();

    /// Excites every conductive resting voxel strictly closer than `radius` to `center`.
    /// Returns the number of voxels that changed. Throws CoordinateError if `center`
    /// lies outside the grid.
    std::size_t excite_ball(const Coord& center, int radius);

    /// Number of excited voxels strictly closer than `radius` to `center`.
    std::size_t count_excited_within(const Coord& center, int radius) const;

    Raster snapshot_slice(int z) const;

    /// Bit-for-bit comparison of states, countdowns and time.
    bool same_state(const AutomatonField& other) const;

private:
    std::size_t padded_index(const Coord& c) const noexcept {
        return static_cast<std::size_t>(c.i + pad_) +
               px_ * (static_cast<std::size_t>(c.j + pad_) + py_ * static_cast<std::size_t>(c.z + pad_));
    }
    Coord unpadded(std::size_t index) const noexcept;
    void scatter_serial();
    void scatter_parallel();

    Dims dims_;
    AutomatonParams params_;
    int pad_ = 0;
    std::size_t px_ = 0;
    std::size_t py_ = 0;
    std::size_t pz_ = 0;
    std::vector<std::ptrdiff_t> linear_offsets_;

    std::vector<VoxelState> state_;
    std::vector<std::uint16_t> countdown_;
    std::vector<std::uint16_t> counts_; // scratch, all zero between steps
    std::vector<std::uint32_t> excited_;
    std::vector<std::uint32_t> refractory_;
    std::vector<std::uint32_t> touched_;
    std::uint64_t t_ = 0;
    unsigned threads_ = 1;
};

/// RGB rendering of a snapshot: excited red, refractory magenta, resting grey.
std::vector<std::uint8_t> colorize(const Raster& raster);

} // namespace adm
