#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace adm {

struct Dims {
    int nx = 1;
    int ny = 1;
    int nz = 1;

    std::size_t volume() const noexcept {
        return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) * static_cast<std::size_t>(nz);
    }
    bool operator==(const Dims&) const = default;
};

struct Coord {
    int i = 0;
    int j = 0;
    int z = 0;

    bool operator==(const Coord&) const = default;
};

inline long squared_distance(const Coord& a, const Coord& b) noexcept {
    const long di = a.i - b.i;
    const long dj = a.j - b.j;
    const long dz = a.z - b.z;
    return di * di + dj * dj + dz * dz;
}

/// Physical voxel size of the source microscopy stack, in micrometres. Metadata only;
/// the simulation treats the grid as an isotropic index lattice.
struct VoxelSize {
    double x = 0.22;
    double y = 0.22;
    double z = 4.0;
};

/// Immutable 3D occupancy grid. Voxels outside the grid read as non-conductive.
/// Storage is x-fastest, then y, then z.
class ConductiveMatrix {
public:
    /// All-zero matrix.
    explicit ConductiveMatrix(Dims dims);
    /// Takes ownership of `occupancy`; every entry must be 0 or 1.
    ConductiveMatrix(Dims dims, std::vector<std::uint8_t> occupancy);

    const Dims& dims() const noexcept { return dims_; }
    bool in_bounds(const Coord& c) const noexcept {
        return c.i >= 0 && c.j >= 0 && c.z >= 0 && c.i < dims_.nx && c.j < dims_.ny && c.z < dims_.nz;
    }
    bool conductive(const Coord& c) const noexcept { return in_bounds(c) && occupancy_[index(c)] != 0; }
    std::size_t index(const Coord& c) const noexcept {
        return static_cast<std::size_t>(c.i) +
               static_cast<std::size_t>(dims_.nx) *
                   (static_cast<std::size_t>(c.j) + static_cast<std::size_t>(dims_.ny) * static_cast<std::size_t>(c.z));
    }
    Coord coord(std::size_t index) const noexcept;

    std::span<const std::uint8_t> occupancy() const noexcept { return occupancy_; }
    std::size_t conductive_count() const noexcept;

    VoxelSize voxel_size;

    bool operator==(const ConductiveMatrix& other) const {
        return dims_ == other.dims_ && occupancy_ == other.occupancy_;
    }

private:
    Dims dims_;
    std::vector<std::uint8_t> occupancy_;
};

// ---------------------------------------------------------------------------
// Image stacks

struct RgbThreshold {
    int r_min = 40;
    int g_min = 19;
    int b_min = 19;
};

/// 8-bit RGB raster, row-major, 3 bytes per pixel.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;
};

/// A voxel is conductive iff every channel strictly exceeds its threshold.
/// Slice order gives z; image columns give x and rows give y.
ConductiveMatrix threshold_image_stack(std::span<const RgbImage> slices, const RgbThreshold& th);

// ---------------------------------------------------------------------------
// Raw matrix files: "VOXELS nx ny nz <byte|packed>\n" followed by the payload.

enum class RawEncoding { Byte, Packed };

ConductiveMatrix load_raw_matrix(const std::filesystem::path& path);
void save_raw_matrix(const ConductiveMatrix& matrix, const std::filesystem::path& path,
                     RawEncoding encoding = RawEncoding::Byte);

/// In-memory variants used by the file functions.
ConductiveMatrix decode_raw_matrix(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_raw_matrix(const ConductiveMatrix& matrix, RawEncoding encoding);

// ---------------------------------------------------------------------------
// Synthetic networks

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

struct Segment {
    Point3 a;
    Point3 b;
};

enum class Placement {
    UniformEndpoints,  ///< each segment joins two uniform random points
    NearestNeighbors,  ///< shortest edges of a 3-nearest-neighbour graph over random points
};

struct SyntheticNetworkSpec {
    Dims dims{64, 64, 16};
    int segment_count = 40;
    int bundle_radius = 2;
    std::uint64_t seed = 1;
    Placement placement = Placement::UniformEndpoints;
};

/// Segment endpoints drawn from the spec's seed. Pure function of the spec.
std::vector<Segment> sample_segments(const SyntheticNetworkSpec& spec);

/// Marks every voxel whose centre lies within `radius` (inclusive) of any segment.
ConductiveMatrix rasterize_tubes(Dims dims, std::span<const Segment> segments, int radius);

ConductiveMatrix generate_synthetic(const SyntheticNetworkSpec& spec);

} // namespace adm
