#include "adm/grid.hpp"

#include "adm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <utility>

namespace adm {

namespace {

void check_dims(const Dims& d) {
    if (d.nx < 1 || d.ny < 1 || d.nz < 1) {
        throw DimensionError("grid dimensions must be positive, got " + std::to_string(d.nx) + "x" +
                             std::to_string(d.ny) + "x" + std::to_string(d.nz));
    }
}

} // namespace

ConductiveMatrix::ConductiveMatrix(Dims dims) : dims_(dims) {
    check_dims(dims_);
    occupancy_.assign(dims_.volume(), 0);
}

ConductiveMatrix::ConductiveMatrix(Dims dims, std::vector<std::uint8_t> occupancy)
    : dims_(dims), occupancy_(std::move(occupancy)) {
    check_dims(dims_);
    if (occupancy_.size() != dims_.volume()) {
        throw DimensionError("occupancy has " + std::to_string(occupancy_.size()) + " entries, expected " +
                             std::to_string(dims_.volume()));
    }
    if (std::any_of(occupancy_.begin(), occupancy_.end(), [](std::uint8_t v) { return v > 1; })) {
        throw ParameterError("occupancy values must be 0 or 1");
    }
}

Coord ConductiveMatrix::coord(std::size_t index) const noexcept {
    const auto nx = static_cast<std::size_t>(dims_.nx);
    const auto ny = static_cast<std::size_t>(dims_.ny);
    return Coord{static_cast<int>(index % nx), static_cast<int>((index / nx) % ny),
                 static_cast<int>(index / (nx * ny))};
}

std::size_t ConductiveMatrix::conductive_count() const noexcept {
    return static_cast<std::size_t>(std::count(occupancy_.begin(), occupancy_.end(), std::uint8_t{1}));
}

// ---------------------------------------------------------------------------

ConductiveMatrix threshold_image_stack(std::span<const RgbImage> slices, const RgbThreshold& th) {
    if (slices.empty()) {
        throw EmptyInputError("image stack is empty");
    }
    for (int v : {th.r_min, th.g_min, th.b_min}) {
        if (v < 0 || v > 255) {
            throw ParameterError("RGB thresholds must lie in [0,255]");
        }
    }
    const int w = slices.front().width;
    const int h = slices.front().height;
    for (std::size_t s = 0; s < slices.size(); ++s) {
        const auto& img = slices[s];
        if (img.width != w || img.height != h) {
            throw DimensionError("slice " + std::to_string(s) + " is " + std::to_string(img.width) + "x" +
                                 std::to_string(img.height) + ", expected " + std::to_string(w) + "x" +
                                 std::to_string(h));
        }
        if (img.rgb.size() != static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3) {
            throw DimensionError("slice " + std::to_string(s) + " has a truncated pixel buffer");
        }
    }

    const Dims dims{w, h, static_cast<int>(slices.size())};
    std::vector<std::uint8_t> occ(dims.volume(), 0);
    std::size_t out = 0;
    for (const auto& img : slices) {
        for (std::size_t p = 0; p < img.rgb.size(); p += 3, ++out) {
            occ[out] = (img.rgb[p] > th.r_min && img.rgb[p + 1] > th.g_min && img.rgb[p + 2] > th.b_min) ? 1 : 0;
        }
    }
    return ConductiveMatrix(dims, std::move(occ));
}

// ---------------------------------------------------------------------------
// Raw format

namespace {

std::size_t packed_slice_bytes(const Dims& d) {
    return (static_cast<std::size_t>(d.nx) * static_cast<std::size_t>(d.ny) + 7) / 8;
}

} // namespace

std::vector<std::uint8_t> encode_raw_matrix(const ConductiveMatrix& matrix, RawEncoding encoding) {
    const Dims& d = matrix.dims();
    std::ostringstream header;
    header << "VOXELS " << d.nx << ' ' << d.ny << ' ' << d.nz << ' '
           << (encoding == RawEncoding::Byte ? "byte" : "packed") << '\n';
    const std::string h = header.str();

    std::vector<std::uint8_t> out(h.begin(), h.end());
    const auto occ = matrix.occupancy();
    if (encoding == RawEncoding::Byte) {
        out.insert(out.end(), occ.begin(), occ.end());
        return out;
    }
    const std::size_t plane = static_cast<std::size_t>(d.nx) * static_cast<std::size_t>(d.ny);
    const std::size_t slice_bytes = packed_slice_bytes(d);
    for (int z = 0; z < d.nz; ++z) {
        std::vector<std::uint8_t> slice(slice_bytes, 0);
        const std::size_t base = plane * static_cast<std::size_t>(z);
        for (std::size_t p = 0; p < plane; ++p) {
            if (occ[base + p] != 0) {
                slice[p / 8] |= static_cast<std::uint8_t>(1u << (p % 8));
            }
        }
        out.insert(out.end(), slice.begin(), slice.end());
    }
    return out;
}

ConductiveMatrix decode_raw_matrix(std::span<const std::uint8_t> bytes) {
    const auto newline = std::find(bytes.begin(), bytes.end(), std::uint8_t{'\n'});
    if (newline == bytes.end()) {
        throw FormatError("missing header line", bytes.size());
    }
    const std::string header(bytes.begin(), newline);
    const std::size_t payload_offset = header.size() + 1;

    std::istringstream in(header);
    std::string magic;
    std::string encoding;
    long nx = 0;
    long ny = 0;
    long nz = 0;
    in >> magic;
    if (magic != "VOXELS") {
        throw FormatError("expected 'VOXELS' magic", 0);
    }
    if (!(in >> nx >> ny >> nz >> encoding)) {
        throw FormatError("malformed header '" + header + "'", 0);
    }
    std::string trailing;
    if (in >> trailing) {
        throw FormatError("unexpected trailing header token '" + trailing + "'", 0);
    }
    constexpr long kMaxDim = 1L << 20;
    if (nx < 1 || ny < 1 || nz < 1 || nx > kMaxDim || ny > kMaxDim || nz > kMaxDim) {
        throw FormatError("header dimensions out of range", 0);
    }
    const Dims dims{static_cast<int>(nx), static_cast<int>(ny), static_cast<int>(nz)};
    const auto payload = bytes.subspan(payload_offset);

    if (encoding == "byte") {
        if (payload.size() < dims.volume()) {
            throw FormatError("truncated payload: expected " + std::to_string(dims.volume()) + " bytes, found " +
                                  std::to_string(payload.size()),
                              bytes.size());
        }
        if (payload.size() > dims.volume()) {
            throw FormatError("trailing bytes after payload", payload_offset + dims.volume());
        }
        for (std::size_t p = 0; p < payload.size(); ++p) {
            if (payload[p] > 1) {
                throw FormatError("voxel byte must be 0 or 1", payload_offset + p);
            }
        }
        return ConductiveMatrix(dims, std::vector<std::uint8_t>(payload.begin(), payload.end()));
    }
    if (encoding == "packed") {
        const std::size_t slice_bytes = packed_slice_bytes(dims);
        const std::size_t expected = slice_bytes * static_cast<std::size_t>(dims.nz);
        if (payload.size() < expected) {
            throw FormatError("truncated payload: expected " + std::to_string(expected) + " bytes, found " +
                                  std::to_string(payload.size()),
                              bytes.size());
        }
        if (payload.size() > expected) {
            throw FormatError("trailing bytes after payload", payload_offset + expected);
        }
        const std::size_t plane = static_cast<std::size_t>(dims.nx) * static_cast<std::size_t>(dims.ny);
        std::vector<std::uint8_t> occ(dims.volume(), 0);
        for (int z = 0; z < dims.nz; ++z) {
            const auto slice = payload.subspan(slice_bytes * static_cast<std::size_t>(z), slice_bytes);
            for (std::size_t p = 0; p < plane; ++p) {
                occ[plane * static_cast<std::size_t>(z) + p] = (slice[p / 8] >> (p % 8)) & 1u;
            }
        }
        return ConductiveMatrix(dims, std::move(occ));
    }
    throw FormatError("unknown encoding '" + encoding + "'", 0);
}

ConductiveMatrix load_raw_matrix(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open matrix file " + path.string());
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_raw_matrix(bytes);
}

void save_raw_matrix(const ConductiveMatrix& matrix, const std::filesystem::path& path, RawEncoding encoding) {
    const auto bytes = encode_raw_matrix(matrix, encoding);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write matrix file " + path.string());
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

// ---------------------------------------------------------------------------
// Synthetic networks

namespace {

// std::uniform_real_distribution is implementation-defined; this keeps generated
// networks identical across standard libraries.
double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Point3 random_point(std::mt19937_64& rng, const Dims& d) {
    return Point3{unit_uniform(rng) * (d.nx - 1), unit_uniform(rng) * (d.ny - 1), unit_uniform(rng) * (d.nz - 1)};
}

double dist2(const Point3& a, const Point3& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return dx * dx + dy * dy + dz * dz;
}

double point_segment_dist2(const Point3& p, const Segment& s) {
    const double vx = s.b.x - s.a.x;
    const double vy = s.b.y - s.a.y;
    const double vz = s.b.z - s.a.z;
    const double len2 = vx * vx + vy * vy + vz * vz;
    double t = 0.0;
    if (len2 > 0.0) {
        t = ((p.x - s.a.x) * vx + (p.y - s.a.y) * vy + (p.z - s.a.z) * vz) / len2;
        t = std::clamp(t, 0.0, 1.0);
    }
    const Point3 q{s.a.x + t * vx, s.a.y + t * vy, s.a.z + t * vz};
    return dist2(p, q);
}

void validate(const SyntheticNetworkSpec& spec) {
    check_dims(spec.dims);
    if (spec.segment_count < 1) {
        throw ParameterError("segment_count must be >= 1");
    }
    if (spec.bundle_radius < 1) {
        throw ParameterError("bundle_radius must be >= 1");
    }
    if (spec.dims.volume() < 2) {
        throw GenerationError("a 1x1x1 grid cannot contain a segment");
    }
}

} // namespace

std::vector<Segment> sample_segments(const SyntheticNetworkSpec& spec) {
    validate(spec);
    std::mt19937_64 rng(spec.seed);
    std::vector<Segment> segments;

    if (spec.placement == Placement::UniformEndpoints) {
        segments.reserve(static_cast<std::size_t>(spec.segment_count));
        for (int s = 0; s < spec.segment_count; ++s) {
            const Point3 a = random_point(rng, spec.dims);
            const Point3 b = random_point(rng, spec.dims);
            segments.push_back({a, b});
        }
        return segments;
    }

    // Each point joins its three nearest neighbours; the shortest distinct edges are kept.
    constexpr std::size_t kNeighbours = 3;
    const std::size_t point_count =
        std::max<std::size_t>(kNeighbours + 1, (2 * static_cast<std::size_t>(spec.segment_count) + 2) / 3 + 1);
    std::vector<Point3> points(point_count);
    for (auto& p : points) {
        p = random_point(rng, spec.dims);
    }
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t a = 0; a < point_count; ++a) {
        order.clear();
        for (std::size_t b = 0; b < point_count; ++b) {
            if (b != a) {
                order.emplace_back(dist2(points[a], points[b]), b);
            }
        }
        std::partial_sort(order.begin(), order.begin() + kNeighbours, order.end());
        for (std::size_t n = 0; n < kNeighbours; ++n) {
            edges.emplace_back(std::min(a, order[n].second), std::max(a, order[n].second));
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::stable_sort(edges.begin(), edges.end(), [&](const auto& l, const auto& r) {
        return dist2(points[l.first], points[l.second]) < dist2(points[r.first], points[r.second]);
    });
    if (edges.size() > static_cast<std::size_t>(spec.segment_count)) {
        edges.resize(static_cast<std::size_t>(spec.segment_count));
    }
    for (const auto& [a, b] : edges) {
        segments.push_back({points[a], points[b]});
    }
    return segments;
}

ConductiveMatrix rasterize_tubes(Dims dims, std::span<const Segment> segments, int radius) {
    check_dims(dims);
    if (radius < 1) {
        throw ParameterError("tube radius must be >= 1");
    }
    std::vector<std::uint8_t> occ(dims.volume(), 0);
    const double r2 = static_cast<double>(radius) * radius;
    const auto nx = static_cast<std::size_t>(dims.nx);
    const auto ny = static_cast<std::size_t>(dims.ny);

    for (const auto& s : segments) {
        const auto lo = [&](double a, double b) { return static_cast<int>(std::floor(std::min(a, b) - radius)); };
        const auto hi = [&](double a, double b) { return static_cast<int>(std::ceil(std::max(a, b) + radius)); };
        const int i0 = std::max(0, lo(s.a.x, s.b.x));
        const int i1 = std::min(dims.nx - 1, hi(s.a.x, s.b.x));
        const int j0 = std::max(0, lo(s.a.y, s.b.y));
        const int j1 = std::min(dims.ny - 1, hi(s.a.y, s.b.y));
        const int z0 = std::max(0, lo(s.a.z, s.b.z));
        const int z1 = std::min(dims.nz - 1, hi(s.a.z, s.b.z));
        for (int z = z0; z <= z1; ++z) {
            for (int j = j0; j <= j1; ++j) {
                for (int i = i0; i <= i1; ++i) {
                    if (point_segment_dist2(Point3{double(i), double(j), double(z)}, s) <= r2) {
                        occ[static_cast<std::size_t>(i) + nx * (static_cast<std::size_t>(j) + ny * z)] = 1;
                    }
                }
            }
        }
    }
    return ConductiveMatrix(dims, std::move(occ));
}

ConductiveMatrix generate_synthetic(const SyntheticNetworkSpec& spec) {
    const auto segments = sample_segments(spec);
    return rasterize_tubes(spec.dims, segments, spec.bundle_radius);
}

} // namespace adm
