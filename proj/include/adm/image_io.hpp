#pragma once

#include "adm/grid.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace adm {

/// Decodes a PNG (any bit depth / colour type) into 8-bit RGB.
RgbImage load_png(const std::filesystem::path& path);
/// Binary PPM (P6, maxval 255).
RgbImage load_ppm(const std::filesystem::path& path);
/// Dispatches on extension: .png, .ppm.
RgbImage load_image(const std::filesystem::path& path);

/// All .png/.ppm files of `dir`, ordered by the first decimal number in the file name
/// (ties broken by name).
std::vector<std::filesystem::path> list_image_stack(const std::filesystem::path& dir);
std::vector<RgbImage> load_image_stack(const std::filesystem::path& dir);

void write_pgm(const std::filesystem::path& path, int width, int height, std::span<const std::uint8_t> gray,
               const std::string& comment = {});
void write_ppm(const std::filesystem::path& path, int width, int height, std::span<const std::uint8_t> rgb,
               const std::string& comment = {});

} // namespace adm
