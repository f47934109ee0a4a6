#include "adm/image_io.hpp"

#include "adm/errors.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <memory>
#include <optional>

namespace adm {

namespace fs = std::filesystem;

RgbImage load_png(const fs::path& path) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (png_image_begin_read_from_file(&image, path.string().c_str()) == 0) {
        throw FormatError("cannot read PNG " + path.string() + ": " + image.message, 0);
    }
    image.format = PNG_FORMAT_RGB;
    RgbImage out;
    out.width = static_cast<int>(image.width);
    out.height = static_cast<int>(image.height);
    out.rgb.resize(PNG_IMAGE_SIZE(image));
    if (png_image_finish_read(&image, nullptr, out.rgb.data(), 0, nullptr) == 0) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw FormatError("cannot decode PNG " + path.string() + ": " + msg, 0);
    }
    return out;
}

namespace {

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string ppm_token(const std::vector<std::uint8_t>& bytes, std::size_t& pos) {
    while (pos < bytes.size()) {
        if (bytes[pos] == '#') {
            while (pos < bytes.size() && bytes[pos] != '\n') {
                ++pos;
            }
        } else if (std::isspace(bytes[pos]) != 0) {
            ++pos;
        } else {
            break;
        }
    }
    std::string tok;
    while (pos < bytes.size() && std::isspace(bytes[pos]) == 0) {
        tok.push_back(static_cast<char>(bytes[pos++]));
    }
    return tok;
}

int ppm_int(const std::vector<std::uint8_t>& bytes, std::size_t& pos) {
    const std::size_t at = pos;
    const std::string tok = ppm_token(bytes, pos);
    try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size()) {
            throw FormatError("bad PPM header integer '" + tok + "'", at);
        }
        return v;
    } catch (const std::logic_error&) {
        throw FormatError("bad PPM header integer '" + tok + "'", at);
    }
}

} // namespace

RgbImage load_ppm(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t pos = 0;
    if (ppm_token(bytes, pos) != "P6") {
        throw FormatError("not a binary PPM (P6): " + path.string(), 0);
    }
    RgbImage out;
    out.width = ppm_int(bytes, pos);
    out.height = ppm_int(bytes, pos);
    const int maxval = ppm_int(bytes, pos);
    if (out.width < 1 || out.height < 1 || maxval != 255) {
        throw FormatError("unsupported PPM geometry or maxval in " + path.string(), 0);
    }
    ++pos; // single whitespace after maxval
    const std::size_t need = static_cast<std::size_t>(out.width) * static_cast<std::size_t>(out.height) * 3;
    if (bytes.size() < pos + need) {
        throw FormatError("truncated PPM payload in " + path.string(), bytes.size());
    }
    out.rgb.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                   bytes.begin() + static_cast<std::ptrdiff_t>(pos + need));
    return out;
}

RgbImage load_image(const fs::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".png") {
        return load_png(path);
    }
    if (ext == ".ppm") {
        return load_ppm(path);
    }
    throw FormatError("unsupported image type '" + ext + "' for " + path.string(), 0);
}

namespace {

std::optional<unsigned long long> first_number(const std::string& name) {
    const auto it = std::find_if(name.begin(), name.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
    if (it == name.end()) {
        return std::nullopt;
    }
    const auto end = std::find_if(it, name.end(), [](unsigned char c) { return std::isdigit(c) == 0; });
    return std::stoull(std::string(it, end));
}

} // namespace

std::vector<fs::path> list_image_stack(const fs::path& dir) {
    if (!fs::is_directory(dir)) {
        throw IoError("image stack directory not found: " + dir.string());
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) {
            continue;
        }
        std::string ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
        if (ext == ".png" || ext == ".ppm") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
        const auto na = first_number(a.filename().string());
        const auto nb = first_number(b.filename().string());
        if (na != nb) {
            return na < nb; // unnumbered files first
        }
        return a.filename() < b.filename();
    });
    return files;
}

std::vector<RgbImage> load_image_stack(const fs::path& dir) {
    const auto files = list_image_stack(dir);
    if (files.empty()) {
        throw EmptyInputError("no .png/.ppm slices in " + dir.string());
    }
    std::vector<RgbImage> slices;
    slices.reserve(files.size());
    for (const auto& f : files) {
        slices.push_back(load_image(f));
    }
    return slices;
}

namespace {

void write_netpbm(const fs::path& path, const char* magic, int width, int height, std::size_t channels,
                  std::span<const std::uint8_t> data, const std::string& comment) {
    if (data.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * channels) {
        throw DimensionError("raster size does not match " + std::to_string(width) + "x" + std::to_string(height));
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << magic << '\n';
    if (!comment.empty()) {
        out << "# " << comment << '\n';
    }
    out << width << ' ' << height << "\n255\n";
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

} // namespace

void write_pgm(const fs::path& path, int width, int height, std::span<const std::uint8_t> gray,
               const std::string& comment) {
    write_netpbm(path, "P5", width, height, 1, gray, comment);
}

void write_ppm(const fs::path& path, int width, int height, std::span<const std::uint8_t> rgb,
               const std::string& comment) {
    write_netpbm(path, "P6", width, height, 3, rgb, comment);
}

} // namespace adm
