#pragma once

#include <filesystem>

#include "histomark/image.hpp"

namespace histomark {

enum class ImageFormat { Pgm, Png };

/// Picks the format from the file extension (.pgm or .png, any case).
ImageFormat format_from_path(const std::filesystem::path& path);

/// Reads binary PGM (P5, 8- or 16-bit) or PNG. Color PNGs are reduced to
/// BT.601 luma; alpha is dropped; palettes are expanded first.
GrayImage load_image(const std::filesystem::path& path, ImageFormat format);
GrayImage load_image(const std::filesystem::path& path);

/// PNG output supports 8-bit only. Values are written as stored, so the
/// image is expected to be quantized.
void save_image(const GrayImage& image, const std::filesystem::path& path, ImageFormat format);
void save_image(const GrayImage& image, const std::filesystem::path& path);

}  // namespace histomark
