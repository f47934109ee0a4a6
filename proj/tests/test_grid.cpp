#include "adm/errors.hpp"
#include "adm/grid.hpp"
#include "adm/image_io.hpp"
#include "support/oracles.hpp"

#include <doctest.h>
#include <png.h>

#include <filesystem>
#include <fstream>
#include <random>

using namespace adm;
namespace fs = std::filesystem;

namespace {

RgbImage solid(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    RgbImage img{w, h, {}};
    for (int p = 0; p < w * h; ++p) {
        img.rgb.insert(img.rgb.end(), {r, g, b});
    }
    return img;
}

ConductiveMatrix random_matrix(std::mt19937_64& rng) {
    const Dims d{1 + int(rng() % 9), 1 + int(rng() % 9), 1 + int(rng() % 5)};
    std::vector<std::uint8_t> occ(d.volume());
    for (auto& v : occ) v = rng() & 1u;
    return ConductiveMatrix(d, std::move(occ));
}

fs::path temp_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("adm_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("out-of-bounds access is non-conductive") {
    ConductiveMatrix m(Dims{2, 2, 2}, {1, 1, 1, 1, 1, 1, 1, 1});
    CHECK(m.conductive({0, 0, 0}));
    CHECK_FALSE(m.conductive({-1, 0, 0}));
    CHECK_FALSE(m.conductive({0, 2, 0}));
    CHECK_FALSE(m.conductive({0, 0, 2}));
    CHECK(m.coord(m.index({1, 0, 1})) == Coord{1, 0, 1});
}

TEST_CASE("matrix construction validates its payload") {
    CHECK_THROWS_AS(ConductiveMatrix(Dims{0, 1, 1}), DimensionError);
    CHECK_THROWS_AS(ConductiveMatrix(Dims{2, 1, 1}, {1}), DimensionError);
    CHECK_THROWS_AS(ConductiveMatrix(Dims{1, 1, 1}, {2}), ParameterError);
}

TEST_CASE("thresholding uses strict comparisons on every channel") {
    const RgbThreshold th{40, 19, 19};
    const std::vector<RgbImage> above{solid(1, 1, 41, 20, 20)};
    const std::vector<RgbImage> at_r{solid(1, 1, 40, 20, 20)};
    const std::vector<RgbImage> at_g{solid(1, 1, 41, 19, 20)};
    const std::vector<RgbImage> black{solid(1, 1, 0, 0, 0)};
    CHECK(threshold_image_stack(above, th).conductive({0, 0, 0}));
    CHECK_FALSE(threshold_image_stack(at_r, th).conductive({0, 0, 0}));
    CHECK_FALSE(threshold_image_stack(at_g, th).conductive({0, 0, 0}));
    CHECK_FALSE(threshold_image_stack(black, RgbThreshold{0, 0, 0}).conductive({0, 0, 0}));
}

TEST_CASE("thresholding maps slices to z and columns to x") {
    RgbImage a = solid(3, 2, 0, 0, 0);
    RgbImage b = solid(3, 2, 0, 0, 0);
    // pixel (x=2, y=1) of slice 1
    const std::size_t p = (1 * 3 + 2) * 3;
    b.rgb[p] = 200;
    b.rgb[p + 1] = 200;
    b.rgb[p + 2] = 200;
    const std::vector<RgbImage> stack{a, b};
    const auto m = threshold_image_stack(stack, {});
    CHECK(m.dims() == Dims{3, 2, 2});
    CHECK(m.conductive_count() == 1);
    CHECK(m.conductive({2, 1, 1}));
}

TEST_CASE("thresholding errors") {
    CHECK_THROWS_AS(threshold_image_stack({}, {}), EmptyInputError);
    const std::vector<RgbImage> mismatched{solid(2, 2, 0, 0, 0), solid(3, 2, 0, 0, 0)};
    CHECK_THROWS_AS(threshold_image_stack(mismatched, {}), DimensionError);
}

TEST_CASE("raising a threshold never adds conductive voxels") {
    std::mt19937_64 rng(11);
    RgbImage img{16, 16, std::vector<std::uint8_t>(16 * 16 * 3)};
    for (auto& v : img.rgb) v = static_cast<std::uint8_t>(rng());
    const std::vector<RgbImage> stack{img};
    for (int trial = 0; trial < 50; ++trial) {
        RgbThreshold lo{int(rng() % 256), int(rng() % 256), int(rng() % 256)};
        RgbThreshold hi = lo;
        switch (rng() % 3) {
        case 0: hi.r_min = std::min(255, lo.r_min + int(rng() % 40)); break;
        case 1: hi.g_min = std::min(255, lo.g_min + int(rng() % 40)); break;
        default: hi.b_min = std::min(255, lo.b_min + int(rng() % 40)); break;
        }
        const auto a = threshold_image_stack(stack, lo);
        const auto b = threshold_image_stack(stack, hi);
        for (std::size_t p = 0; p < a.occupancy().size(); ++p) {
            CHECK(b.occupancy()[p] <= a.occupancy()[p]);
        }
    }
}

TEST_CASE("raw round trip holds for random matrices in both encodings") {
    std::mt19937_64 rng(5);
    for (int n = 0; n < 200; ++n) {
        const auto m = random_matrix(rng);
        CHECK(decode_raw_matrix(encode_raw_matrix(m, RawEncoding::Byte)) == m);
        CHECK(decode_raw_matrix(encode_raw_matrix(m, RawEncoding::Packed)) == m);
    }
}

TEST_CASE("raw files: save and load") {
    const auto dir = temp_dir("raw");
    std::vector<std::uint8_t> occ(32, 0);
    occ[3] = occ[17] = occ[31] = 1;
    const ConductiveMatrix sparse(Dims{4, 4, 2}, occ);
    save_raw_matrix(sparse, dir / "a.raw");
    CHECK(load_raw_matrix(dir / "a.raw") == sparse);

    const ConductiveMatrix zeros(Dims{8, 8, 8});
    save_raw_matrix(zeros, dir / "z.raw", RawEncoding::Packed);
    const auto back = load_raw_matrix(dir / "z.raw");
    CHECK(back == zeros);
    CHECK(back.conductive_count() == 0);
}

TEST_CASE("raw header and payload layout") {
    std::vector<std::uint8_t> occ(2 * 3 * 2, 0);
    occ[0] = 1;  // (0,0,0)
    occ[7] = 1;  // (1,0,1)
    const ConductiveMatrix m(Dims{2, 3, 2}, occ);
    const auto bytes = encode_raw_matrix(m, RawEncoding::Packed);
    const std::string header = "VOXELS 2 3 2 packed\n";
    REQUIRE(bytes.size() == header.size() + 2);
    CHECK(std::string(bytes.begin(), bytes.begin() + header.size()) == header);
    CHECK(bytes[header.size()] == 0b00000001);
    CHECK(bytes[header.size() + 1] == 0b00000010); // slice padded separately, LSB first
}

TEST_CASE("raw decoding errors report byte offsets") {
    const std::string header = "VOXELS 2 2 2 byte\n";
    std::vector<std::uint8_t> truncated(header.begin(), header.end());
    truncated.resize(truncated.size() + 7, 0);
    try {
        decode_raw_matrix(truncated);
        FAIL("expected a format error");
    } catch (const FormatError& e) {
        CHECK(e.offset() == truncated.size());
    }

    const std::string bad = "VOXELZ 2 2 2 byte\n";
    CHECK_THROWS_AS(decode_raw_matrix(std::vector<std::uint8_t>(bad.begin(), bad.end())), FormatError);
    const std::string no_enc = "VOXELS 2 2 2\n";
    CHECK_THROWS_AS(decode_raw_matrix(std::vector<std::uint8_t>(no_enc.begin(), no_enc.end())), FormatError);

    std::vector<std::uint8_t> bad_value(header.begin(), header.end());
    bad_value.resize(bad_value.size() + 8, 0);
    bad_value[header.size() + 5] = 7;
    try {
        decode_raw_matrix(bad_value);
        FAIL("expected a format error");
    } catch (const FormatError& e) {
        CHECK(e.offset() == header.size() + 5);
    }
}

TEST_CASE("a straight tube spanning x is one connected component") {
    const Dims d{40, 12, 12};
    const std::vector<Segment> seg{{{0, 6, 6}, {39, 6, 6}}};
    const auto m = rasterize_tubes(d, seg, 1);
    CHECK(oracle::connected_components(m) == 1);
    for (int i = 0; i < d.nx; ++i) {
        CHECK(m.conductive({i, 6, 6}));
    }
    // radius-1 tube: the axis plus its four axial neighbours in each x column
    CHECK(m.conductive_count() == std::size_t(5 * d.nx));
}

TEST_CASE("synthetic generation is seed-deterministic and in bounds") {
    for (auto placement : {Placement::UniformEndpoints, Placement::NearestNeighbors}) {
        SyntheticNetworkSpec spec{Dims{48, 40, 10}, 25, 2, 99, placement};
        const auto a = generate_synthetic(spec);
        const auto b = generate_synthetic(spec);
        CHECK(a == b);
        CHECK(a.conductive_count() > 0);
        spec.seed = 100;
        CHECK_FALSE(generate_synthetic(spec) == a);
        for (const auto& s : sample_segments(spec)) {
            for (const auto& p : {s.a, s.b}) {
                CHECK(p.x >= 0);
                CHECK(p.x <= 47);
                CHECK(p.y <= 39);
                CHECK(p.z <= 9);
            }
        }
    }
}

TEST_CASE("nearest-neighbour placement keeps at most segment_count edges") {
    const SyntheticNetworkSpec spec{Dims{64, 64, 16}, 30, 1, 4, Placement::NearestNeighbors};
    const auto segs = sample_segments(spec);
    CHECK(segs.size() <= 30);
    CHECK(segs.size() >= 10);
}

TEST_CASE("synthetic generation rejects invalid specs") {
    CHECK_THROWS_AS(generate_synthetic({Dims{8, 8, 8}, 0, 1, 1}), ParameterError);
    CHECK_THROWS_AS(generate_synthetic({Dims{8, 8, 8}, 3, 0, 1}), ParameterError);
    CHECK_THROWS_AS(generate_synthetic({Dims{1, 1, 1}, 3, 1, 1}), GenerationError);
}

TEST_CASE("image stacks load in numeric order") {
    const auto dir = temp_dir("stack");
    // slice 2 written as 10.png, slice 1 as 9.png: numeric order must put 9 first
    for (const auto& [name, value] : {std::pair{"slice_10.png", 0}, std::pair{"slice_9.png", 255}}) {
        png_image image{};
        image.version = PNG_IMAGE_VERSION;
        image.width = 3;
        image.height = 2;
        image.format = PNG_FORMAT_RGB;
        std::vector<std::uint8_t> px(3 * 2 * 3, static_cast<std::uint8_t>(value));
        REQUIRE(png_image_write_to_file(&image, (dir / name).string().c_str(), 0, px.data(), 0, nullptr) != 0);
    }
    {
        std::ofstream ppm(dir / "slice_11.ppm", std::ios::binary);
        ppm << "P6\n# comment\n3 2\n255\n";
        const std::string px(18, char(100));
        ppm << px;
    }
    const auto files = list_image_stack(dir);
    REQUIRE(files.size() == 3);
    CHECK(files[0].filename() == "slice_9.png");
    CHECK(files[2].filename() == "slice_11.ppm");

    const auto stack = load_image_stack(dir);
    const auto m = threshold_image_stack(stack, {});
    CHECK(m.dims() == Dims{3, 2, 3});
    CHECK(m.conductive({0, 0, 0}));
    CHECK_FALSE(m.conductive({0, 0, 1}));
    CHECK(m.conductive({2, 1, 2}));
}

TEST_CASE("missing stack directory is an I/O error") {
    CHECK_THROWS_AS(load_image_stack("/nonexistent/adm/stack"), IoError);
    const auto dir = temp_dir("empty_stack");
    CHECK_THROWS_AS(load_image_stack(dir), EmptyInputError);
}
